#pragma once

// Cross-cutting invariant checks on a classification context: the transfer
// between sphere and projective-plane stabilizers, the monoid structure of
// the triple semigroup, and the clutching-map invariants in the twin regime.
// Used by the `check` subcommand and by the acceptance tests.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "equivect/clutching.hpp"
#include "equivect/context.hpp"
#include "equivect/semigroup.hpp"

namespace equivect {

// Concrete fiber model for a context in the twin regime, with commutant
// multiplicity k (bundle rank = k * chi(1)).
inline UnitaryRepModel context_rep_model(const ClassificationContext& ctx, long k) {
    if (!ctx.twin_regime)
        throw ScopeError("clutching construction applies to odd cyclic images only");
    return build_rep_model(ctx.Gchi.group, ctx.h_locals_chi, ctx.chi_on_h, ctx.chi_deg, k,
                           ctx.image.n, ctx.g1);
}

// ---------------------------------------------------------------------------
// Sphere <-> projective-plane stabilizer transfer at one site.

struct SiteTransfer {
    std::string site;
    StabilizerTransfer transfer;
    bool eps0_matches = false;       // sign-0 part projects onto the sphere stabilizer
    bool degrees_match = false;      // the row bijection preserves degrees
    bool roundtrip_identity = false; // multiplicity vectors of rank <= 3 survive a round trip
};

inline SiteTransfer site_transfer(const CoveringGroup& cover, const Subgroup& hat,
                                  const Subgroup& sphere, const std::string& site) {
    SiteTransfer r;
    r.site = site;
    r.transfer = p1_transfer(cover, hat);

    std::vector<int> eps0;
    for (int x : hat.members)
        if (cover.eps[x] == 0) eps0.push_back(cover.p1[x]);
    std::sort(eps0.begin(), eps0.end());
    r.eps0_matches = eps0 == sphere.members;

    const auto& T = r.transfer;
    r.degrees_match = true;
    for (int i = 0; i < T.hat_table.irrep_count(); ++i)
        if (T.hat_table.degrees[i] != T.image_table.degrees[T.row_map[i]]) r.degrees_match = false;

    // The row map must be a bijection; transporting a multiplicity vector over
    // and back is then the identity.  Checked explicitly on all vectors of
    // rank at most 3.
    std::vector<int> back(T.row_map.size(), -1);
    bool bijective = T.hat_table.irrep_count() == T.image_table.irrep_count();
    for (std::size_t i = 0; i < T.row_map.size() && bijective; ++i) {
        if (back[T.row_map[i]] != -1) bijective = false;
        back[T.row_map[i]] = static_cast<int>(i);
    }
    r.roundtrip_identity = bijective;
    if (bijective) {
        std::vector<long> degs;
        for (int i = 0; i < T.hat_table.irrep_count(); ++i) degs.push_back(T.hat_table.degrees[i]);
        for (long rank = 1; rank <= 3 && r.roundtrip_identity; ++rank)
            detail::weighted_compositions(degs, rank, [&](const std::vector<long>& m) {
                std::vector<long> forward(m.size(), 0), roundtrip(m.size(), 0);
                for (std::size_t i = 0; i < m.size(); ++i) forward[T.row_map[i]] = m[i];
                for (std::size_t i = 0; i < m.size(); ++i) roundtrip[back[T.row_map[i]]] = forward[T.row_map[i]];
                if (roundtrip != m) r.roundtrip_identity = false;
            });
    }
    return r;
}

inline std::vector<SiteTransfer> transfer_checks(const ClassificationContext& ctx) {
    return {
        site_transfer(ctx.cover, ctx.proj.anchor, ctx.sphere.anchor, "anchor"),
        site_transfer(ctx.cover, ctx.proj.arc_start, ctx.sphere.arc_start, "arc-start"),
        site_transfer(ctx.cover, ctx.proj.arc_end, ctx.sphere.arc_end, "arc-end"),
        site_transfer(ctx.cover, ctx.proj.chain_start, ctx.sphere.chain_start, "chain-start"),
        site_transfer(ctx.cover, ctx.proj.chain_end, ctx.sphere.chain_end, "chain-end"),
        site_transfer(ctx.cover, ctx.proj.arc, ctx.sphere.arc, "arc"),
    };
}

// ---------------------------------------------------------------------------
// The check suite.

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

inline void check_one_context(const ClassificationContext& ctx, std::vector<CheckResult>& out,
                              double tol, int samples, unsigned long seed,
                              const std::string& prefix) {
    auto add = [&](const std::string& name, bool pass, const std::string& detail = "") {
        out.push_back({prefix + name, pass, detail});
    };
    add("pipeline", true,
        "image " + ctx.image.to_string() + ", model " + ctx.model.name + ", cell action and arc "
        "coverage verified");

    for (const auto& st : transfer_checks(ctx)) {
        std::ostringstream d;
        d << "site " << st.site << ": |stab^| = " << st.transfer.hat->group.order;
        add("transfer/" + st.site,
            st.eps0_matches && st.degrees_match && st.roundtrip_identity, d.str());
    }

    const auto triples = enumerate_triples(ctx.problem, 3);
    bool counts_ok = true;
    for (long r = 1; r <= 3; ++r) {
        const long ntr = static_cast<long>(
            std::count_if(triples.begin(), triples.end(), [&](const Triple& t) { return t.rank == r; }));
        const long ncl = static_cast<long>(classify_bundles(ctx.problem, r, ctx.twin_regime).size());
        if (ncl != (ctx.twin_regime ? 2 * ntr : ntr)) counts_ok = false;
    }
    add("classes-per-triple", counts_ok,
        ctx.twin_regime ? "twin regime: two classes per triple" : "one class per triple");

    bool basis_ok = true;
    std::string basis_detail;
    try {
        const auto basis = hilbert_basis(ctx.problem.rows, ctx.problem.cols);
        for (const auto& t : triples)
            if (!decomposes_over(t.x, basis)) basis_ok = false;
        for (const auto& b : basis)
            if (!ctx.problem.satisfies(b)) basis_ok = false;
        basis_detail = std::to_string(basis.size()) + " generators";
    } catch (const std::exception& e) {
        basis_ok = false;
        basis_detail = e.what();
    }
    add("hilbert-basis", basis_ok, basis_detail);

    if (ctx.twin_regime) {
        try {
            const UnitaryRepModel model = context_rep_model(ctx, 1);
            const auto trivial = assemble_clutching_map(model, samples, false);
            const auto twisted = assemble_clutching_map(model, samples, true);
            const double res =
                std::max({e1_residual(trivial), e2_residual(trivial, model), e1_residual(twisted),
                          e2_residual(twisted, model)});
            const auto w0 = q_omega(trivial, model);
            const auto w1 = q_omega(twisted, model);
            add("clutching/assembled",
                res < tol && w0.omega == 0 && w1.omega == 1 && w0.lift_residual < tol &&
                    w1.lift_residual < tol && sphere_winding(trivial).winding == 0 &&
                    sphere_winding(twisted).winding == 0,
                "equivariance residual " + std::to_string(res));

            std::mt19937_64 rng(seed);
            const auto rnd = random_equivariant_map(model, samples, rng);
            const auto wr = q_omega(rnd, model);
            add("clutching/random",
                e1_residual(rnd) < tol && e2_residual(rnd, model) < tol &&
                    wr.lift_residual < tol && wr.roundtrip_residual < tol &&
                    sphere_winding(rnd).winding == 0,
                "twist " + std::to_string(wr.omega));

            bool parity_ok = true;
            for (const auto& cls : classify_bundles(ctx.problem, ctx.chi_deg, true)) {
                OmegaResult fake;
                fake.omega = *cls.twin;
                fake.mhat = *cls.twin;
                if (chern_from_winding(fake, ctx.chi_deg) != *cls.chern_parity) parity_ok = false;
            }
            add("clutching/parity", parity_ok, "class parities match the twist formula");
        } catch (const ScopeError& e) {
            add("clutching/skipped", true, e.what());
        }
    }
}

}  // namespace detail

// Run the invariant suite over every fiber character of the kernel.  Returns
// one line per check; characters whose stabilizer image falls outside the
// supported table are reported as skipped rather than failed.
inline std::vector<CheckResult> run_checks(const GroupSpec& spec, double tol, int samples,
                                           unsigned long seed) {
    std::vector<CheckResult> out;
    auto ctx0 = build_context(spec, 0);
    const int nchi = ctx0->h_table.irrep_count();
    for (int chi = 0; chi < nchi; ++chi) {
        const std::string prefix = "chi=" + std::to_string(chi) + "/";
        try {
            const auto ctx = chi == 0 ? std::move(ctx0) : build_context(spec, chi);
            detail::check_one_context(*ctx, out, tol, samples, seed, prefix);
        } catch (const ScopeError& e) {
            out.push_back({prefix + "pipeline", true, std::string("skipped: ") + e.what()});
        }
    }
    return out;
}

inline bool all_pass(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

}  // namespace equivect
