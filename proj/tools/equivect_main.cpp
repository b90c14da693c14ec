// equivect: classify equivariant complex vector bundles over the real
// projective plane for finite rotation-group actions given by a permutation
// group with a symbolic rotation assignment.
//
// Exit codes: 0 success, 1 invariant failure, 2 bad input, 3 action out of
// the supported scope.

#include <CLI11.hpp>
#include <iomanip>
#include <iostream>
#include <nlohmann/json.hpp>
#include <numeric>
#include <sstream>
#include <string>

#include "equivect/checks.hpp"
#include "equivect/clutching.hpp"
#include "equivect/context.hpp"
#include "equivect/errors.hpp"
#include "equivect/semigroup.hpp"
#include "equivect/spec_io.hpp"

using nlohmann::ordered_json;
using namespace equivect;

namespace {

struct Options {
    std::string spec_path;
    std::string format = "table";
    int chi = 0;
    long rank = 2;
    double tolerance = 1e-9;
    int samples = 4096;
    unsigned long seed = 12345;
};

ordered_json report_header(const std::string& command, const GroupSpec& spec) {
    ordered_json j;
    j["schema"] = kReportSchema;
    j["command"] = command;
    j["spec"] = spec.name;
    return j;
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

std::string fmt_residual(double r) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(3) << r;
    return os.str();
}

// ---------------------------------------------------------------------------
// table: the character table of the full permutation group.

int run_table(const Options& opt) {
    const GroupSpec spec = load_spec_file(opt.spec_path);
    detail::validate_spec(spec);
    std::vector<Permutation> gens = spec.generators;
    if (gens.empty()) {
        Permutation id(spec.points);
        std::iota(id.begin(), id.end(), 0);
        gens.push_back(id);
    }
    const FiniteGroup G = build_group(gens, 10000, spec.name);
    const CharacterTable T = character_table(G);

    if (opt.format == "json") {
        ordered_json j = report_header("table", spec);
        j["group_order"] = G.order;
        j["class_count"] = T.class_count();
        j["classes"] = ordered_json::array();
        for (const auto& cls : T.classes.classes)
            j["classes"].push_back({{"size", cls.size()}, {"element_order", G.element_order(cls[0])}});
        j["irreducibles"] = ordered_json::array();
        for (int chi = 0; chi < T.irrep_count(); ++chi) {
            ordered_json row;
            row["degree"] = T.degrees[chi];
            row["values"] = ordered_json::array();
            for (int c = 0; c < T.class_count(); ++c) row["values"].push_back(T.rows[chi][c].to_string());
            j["irreducibles"].push_back(row);
        }
        emit(j);
        return 0;
    }

    std::cout << "group " << spec.name << ", order " << G.order << ", " << T.class_count()
              << " conjugacy classes\n";
    std::cout << "class sizes:";
    for (const auto& cls : T.classes.classes) std::cout << " " << cls.size();
    std::cout << "\nelement orders:";
    for (const auto& cls : T.classes.classes) std::cout << " " << G.element_order(cls[0]);
    std::cout << "\n";
    for (int chi = 0; chi < T.irrep_count(); ++chi) {
        std::cout << "chi_" << chi << " (deg " << T.degrees[chi] << "):";
        for (int c = 0; c < T.class_count(); ++c) std::cout << "  " << T.rows[chi][c].to_string();
        std::cout << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// stabilizers: arc-site stabilizers on the sphere and in the covering group.

int run_stabilizers(const Options& opt) {
    const GroupSpec spec = load_spec_file(opt.spec_path);
    const auto ctx = build_context(spec, opt.chi);
    const auto sites = transfer_checks(*ctx);
    const auto sphere_order = [&](const std::string& site) {
        const ArcStabilizers& s = ctx->sphere;
        if (site == "anchor") return s.anchor.members.size();
        if (site == "arc-start") return s.arc_start.members.size();
        if (site == "arc-end") return s.arc_end.members.size();
        if (site == "chain-start") return s.chain_start.members.size();
        if (site == "chain-end") return s.chain_end.members.size();
        return s.arc.members.size();
    };

    if (opt.format == "json") {
        ordered_json j = report_header("stabilizers", spec);
        j["chi"] = opt.chi;
        j["chi_degree"] = ctx->chi_deg;
        j["kernel_order"] = ctx->Hm.group.order;
        j["image"] = ctx->image.to_string();
        j["model"] = ctx->model.name;
        j["twin_regime"] = ctx->twin_regime;
        j["sites"] = ordered_json::array();
        for (const auto& st : sites) {
            ordered_json s;
            s["site"] = st.site;
            s["sphere_order"] = sphere_order(st.site);
            s["cover_order"] = st.transfer.hat->group.order;
            s["transfer_ok"] = st.eps0_matches && st.degrees_match && st.roundtrip_identity;
            j["sites"].push_back(s);
        }
        emit(j);
        return 0;
    }

    std::cout << "spec " << spec.name << ", chi " << opt.chi << " (degree " << ctx->chi_deg
              << "), kernel order " << ctx->Hm.group.order << "\n";
    std::cout << "rotation image " << ctx->image.to_string() << ", cell model " << ctx->model.name
              << (ctx->twin_regime ? ", twin regime" : "") << "\n";
    std::cout << std::left << std::setw(14) << "site" << std::right << std::setw(8) << "sphere"
              << std::setw(8) << "cover" << std::setw(10) << "transfer" << "\n";
    for (const auto& st : sites)
        std::cout << std::left << std::setw(14) << st.site << std::right << std::setw(8)
                  << sphere_order(st.site) << std::setw(8) << st.transfer.hat->group.order
                  << std::setw(10)
                  << ((st.eps0_matches && st.degrees_match && st.roundtrip_identity) ? "ok" : "FAIL")
                  << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// Shared rendering of multiplicity triples.

ordered_json block_legend(const IrrBlock& b) {
    ordered_json j;
    j["stabilizer_order"] = b.sub->group.order;
    j["allowed"] = ordered_json::array();
    for (std::size_t i = 0; i < b.allowed.size(); ++i)
        j["allowed"].push_back({{"irrep", b.allowed[i]},
                                {"degree", b.allowed_deg[i]},
                                {"fiber_multiplicity", b.chi_mult[i]}});
    return j;
}

ordered_json triple_json(const TripleProblem& P, const std::vector<long>& x) {
    ordered_json j;
    j["anchor"] = std::vector<long>(x.begin(), x.begin() + P.off0);
    j["arc_start"] = std::vector<long>(x.begin() + P.off0, x.begin() + P.off1);
    j["arc_end"] = std::vector<long>(x.begin() + P.off1, x.end());
    return j;
}

std::string triple_text(const TripleProblem& P, const std::vector<long>& x) {
    std::ostringstream os;
    auto part = [&](std::size_t lo, std::size_t hi) {
        os << "[";
        for (std::size_t i = lo; i < hi; ++i) os << (i > lo ? " " : "") << x[i];
        os << "]";
    };
    os << "anchor ";
    part(0, P.off0);
    os << " start ";
    part(P.off0, P.off1);
    os << " end ";
    part(P.off1, P.cols);
    return os.str();
}

// ---------------------------------------------------------------------------
// semigroup: rank counts and the minimal generating set of the triple monoid.

int run_semigroup(const Options& opt) {
    const GroupSpec spec = load_spec_file(opt.spec_path);
    if (opt.rank < 1) throw InputError("rank must be positive");
    const auto ctx = build_context(spec, opt.chi);
    const auto counts = rank_counts(ctx->problem, opt.rank);
    const auto basis = hilbert_basis_triples(ctx->problem);

    if (opt.format == "json") {
        ordered_json j = report_header("semigroup", spec);
        j["chi"] = opt.chi;
        j["image"] = ctx->image.to_string();
        j["legend"] = {{"anchor", block_legend(ctx->problem.anchor)},
                       {"arc_start", block_legend(ctx->problem.start)},
                       {"arc_end", block_legend(ctx->problem.end)}};
        j["rank_counts"] = ordered_json::array();
        for (const auto& [r, c] : counts) j["rank_counts"].push_back({{"rank", r}, {"triples", c}});
        j["generators"] = ordered_json::array();
        for (const auto& t : basis) {
            ordered_json g = triple_json(ctx->problem, t.x);
            g["rank"] = t.rank;
            j["generators"].push_back(g);
        }
        emit(j);
        return 0;
    }

    std::cout << "spec " << spec.name << ", chi " << opt.chi << ", image "
              << ctx->image.to_string() << "\n";
    for (const auto& [r, c] : counts)
        std::cout << c << " rank-" << r << " triple" << (c == 1 ? "" : "s") << "\n";
    std::cout << "monoid generators (" << basis.size() << "):\n";
    for (const auto& t : basis)
        std::cout << "  rank " << t.rank << ": " << triple_text(ctx->problem, t.x) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// classify: isomorphism classes at an exact rank.

int run_classify(const Options& opt) {
    const GroupSpec spec = load_spec_file(opt.spec_path);
    if (opt.rank < 1) throw InputError("rank must be positive");
    const auto ctx = build_context(spec, opt.chi);
    const auto classes = classify_bundles(ctx->problem, opt.rank, ctx->twin_regime);

    if (opt.format == "json") {
        ordered_json j = report_header("classify", spec);
        j["chi"] = opt.chi;
        j["rank"] = opt.rank;
        j["image"] = ctx->image.to_string();
        j["twin_regime"] = ctx->twin_regime;
        j["legend"] = {{"anchor", block_legend(ctx->problem.anchor)},
                       {"arc_start", block_legend(ctx->problem.start)},
                       {"arc_end", block_legend(ctx->problem.end)}};
        j["class_count"] = classes.size();
        j["classes"] = ordered_json::array();
        for (const auto& c : classes) {
            ordered_json e = triple_json(ctx->problem, c.triple.x);
            if (c.twin) e["twin"] = *c.twin;
            if (c.chern_parity) e["chern_parity"] = *c.chern_parity;
            j["classes"].push_back(e);
        }
        emit(j);
        return 0;
    }

    std::cout << "spec " << spec.name << ", chi " << opt.chi << ", image "
              << ctx->image.to_string() << (ctx->twin_regime ? ", twin regime" : "") << "\n";
    std::cout << classes.size() << " class" << (classes.size() == 1 ? "" : "es") << " of rank "
              << opt.rank << "\n";
    for (const auto& c : classes) {
        std::cout << "  " << triple_text(ctx->problem, c.triple.x);
        if (c.twin) std::cout << " twin " << *c.twin;
        if (c.chern_parity) std::cout << " parity " << *c.chern_parity;
        std::cout << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// chern-demo: assemble both twists at a given rank and measure everything.

int run_chern_demo(const Options& opt) {
    const GroupSpec spec = load_spec_file(opt.spec_path);
    if (opt.rank < 1) throw InputError("rank must be positive");
    const auto ctx = build_context(spec, opt.chi);
    if (!ctx->twin_regime)
        throw ScopeError("the clutching demonstration needs an odd cyclic rotation image");
    if (opt.rank % ctx->chi_deg != 0)
        throw InputError("rank must be a multiple of the fiber character degree " +
                         std::to_string(ctx->chi_deg));
    const UnitaryRepModel model = context_rep_model(*ctx, opt.rank / ctx->chi_deg);

    bool ok = true;
    ordered_json maps = ordered_json::array();
    std::ostringstream text;
    for (int twist = 0; twist <= 1; ++twist) {
        const auto map = assemble_clutching_map(model, opt.samples, twist == 1);
        const double r1 = e1_residual(map);
        const double r2 = e2_residual(map, model);
        const auto omega = q_omega(map, model);
        const auto wind = sphere_winding(map);
        const bool pass = r1 < opt.tolerance && r2 < opt.tolerance &&
                          omega.lift_residual < opt.tolerance &&
                          omega.roundtrip_residual < opt.tolerance && omega.omega == twist &&
                          wind.winding == 0;
        ok = ok && pass;
        ordered_json m;
        m["twist"] = twist;
        m["e1_residual"] = r1;
        m["e2_residual"] = r2;
        m["omega"] = omega.omega;
        m["chern_parity"] = chern_from_winding(omega, ctx->chi_deg);
        m["lift_residual"] = omega.lift_residual;
        m["roundtrip_residual"] = omega.roundtrip_residual;
        m["sphere_winding"] = wind.winding;
        m["pass"] = pass;
        maps.push_back(m);
        text << "twist " << twist << ": e1 " << fmt_residual(r1) << ", e2 " << fmt_residual(r2)
             << ", omega " << omega.omega << ", chern parity "
             << chern_from_winding(omega, ctx->chi_deg) << ", sphere winding " << wind.winding
             << (pass ? "" : "  <- FAIL") << "\n";
    }

    if (opt.format == "json") {
        ordered_json j = report_header("chern-demo", spec);
        j["chi"] = opt.chi;
        j["rank"] = opt.rank;
        j["commutant_multiplicity"] = model.k;
        j["fiber_degree"] = model.d;
        j["samples"] = round_up_samples(opt.samples, model.n);
        j["tolerance"] = opt.tolerance;
        j["maps"] = maps;
        j["pass"] = ok;
        emit(j);
    } else {
        std::cout << "spec " << spec.name << ", chi " << opt.chi << ", rank " << opt.rank
                  << " (commutant multiplicity " << model.k << "), samples "
                  << round_up_samples(opt.samples, model.n) << "\n"
                  << text.str();
    }
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// check: the full invariant suite over every fiber character.

int run_check(const Options& opt) {
    const GroupSpec spec = load_spec_file(opt.spec_path);
    const auto results = run_checks(spec, opt.tolerance, opt.samples, opt.seed);

    if (opt.format == "json") {
        ordered_json j = report_header("check", spec);
        j["tolerance"] = opt.tolerance;
        j["samples"] = opt.samples;
        j["seed"] = opt.seed;
        j["checks"] = ordered_json::array();
        for (const auto& r : results)
            j["checks"].push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        j["pass"] = all_pass(results);
        emit(j);
    } else {
        for (const auto& r : results)
            std::cout << (r.pass ? "[ok]   " : "[FAIL] ") << r.name
                      << (r.detail.empty() ? "" : "  (" + r.detail + ")") << "\n";
        std::cout << (all_pass(results) ? "all checks passed" : "CHECKS FAILED") << "\n";
    }
    return all_pass(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"classify equivariant complex vector bundles over the real projective plane"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* cmd, bool with_chi) {
        cmd->add_option("--spec", opt.spec_path, "group spec JSON file")->required();
        cmd->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"json", "table"}));
        if (with_chi) cmd->add_option("--chi", opt.chi, "fiber character index (default 0)");
    };

    CLI::App* table = app.add_subcommand("table", "character table of the acting group");
    add_common(table, false);

    CLI::App* stab = app.add_subcommand("stabilizers", "arc-site stabilizers and their transfer");
    add_common(stab, true);

    CLI::App* semi = app.add_subcommand("semigroup", "triple counts and monoid generators");
    add_common(semi, true);
    semi->add_option("--rank", opt.rank, "count triples up to this rank (default 2)");

    CLI::App* classify = app.add_subcommand("classify", "isomorphism classes at an exact rank");
    add_common(classify, true);
    classify->add_option("--rank", opt.rank, "bundle rank (default 2)");

    CLI::App* chern = app.add_subcommand("chern-demo", "assemble clutching maps at both twists");
    add_common(chern, true);
    chern->add_option("--rank", opt.rank, "bundle rank (default 2)");
    chern->add_option("--tolerance", opt.tolerance, "residual tolerance (default 1e-9)");
    chern->add_option("--samples", opt.samples, "samples per clutching parameter period");

    CLI::App* check = app.add_subcommand("check", "run the invariant suite on a spec");
    add_common(check, false);
    check->add_option("--tolerance", opt.tolerance, "residual tolerance (default 1e-9)");
    check->add_option("--samples", opt.samples, "samples per clutching parameter period");
    check->add_option("--seed", opt.seed, "random-map seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(table)) return run_table(opt);
        if (app.got_subcommand(stab)) return run_stabilizers(opt);
        if (app.got_subcommand(semi)) return run_semigroup(opt);
        if (app.got_subcommand(classify)) return run_classify(opt);
        if (app.got_subcommand(chern)) return run_chern_demo(opt);
        return run_check(opt);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ScopeError& e) {
        std::cerr << "out of scope: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "invariant failure: " << e.what() << "\n";
        return 1;
    }
}
