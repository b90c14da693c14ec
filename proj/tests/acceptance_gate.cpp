// Acceptance gate: one line per criterion, [PASS]/[FAIL], nonzero exit on any
// failure.  Tolerances are pinned here and nowhere else.

#include <cstdio>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "equivect/checks.hpp"
#include "equivect/clutching.hpp"
#include "equivect/context.hpp"
#include "equivect/semigroup.hpp"
#include "oracles.hpp"

using namespace equivect;

namespace {

constexpr double kResidualTol = 1e-9;
constexpr double kOracleTol = 1e-8;
constexpr int kSamples = 4096;
constexpr unsigned long kSeed = 424242;

int failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %d. %s%s%s\n", pass ? "PASS" : "FAIL", index, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++failures;
}

std::map<std::pair<std::string, int>, std::unique_ptr<ClassificationContext>> cache;

const ClassificationContext& ctx(const std::string& name, int chi = 0) {
    auto key = std::make_pair(name, chi);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, build_context(oracles::spec(name), chi)).first;
    return *it->second;
}

// every spec/character pair whose classification the gate exercises
const std::vector<std::pair<std::string, int>> kCorpus = {
    {"z1", 0}, {"z2", 0}, {"z3", 0},    {"z4", 0},    {"z5", 0},     {"z6", 0},
    {"z7", 0}, {"d2", 0}, {"d3", 0},    {"d4", 0},    {"tetra", 0},  {"octa", 0},
    {"icosa", 0}, {"q8xz3", 0}, {"q8xz3", 4}, {"d3kernel", 0}, {"d3kernel", 1}, {"d3kernel", 2}};

// --------------------------------------------------------------------------

void criterion_rank_one_counts() {
    bool pass = true;
    std::ostringstream d;
    for (long n : {1L, 3L, 5L, 7L}) {
        const auto& c = ctx("z" + std::to_string(n));
        const long got = rank_counts(c.problem, 1).at(1);
        if (got != n) pass = false;
        d << "n=" << n << ":" << got << " ";
    }
    report(1, "odd cyclic images have exactly n rank-one triples", pass, d.str());
}

void criterion_no_twin_regimes() {
    bool pass = true;
    std::ostringstream d;
    for (const char* name : {"z4", "d3", "d4", "tetra"}) {
        const auto& c = ctx(name);
        if (c.twin_regime) pass = false;
        const long triples = static_cast<long>(enumerate_triples(c.problem, 3).size());
        long classes = 0;
        for (long r = 1; r <= 3; ++r) {
            for (const auto& cls : classify_bundles(c.problem, r, c.twin_regime)) {
                ++classes;
                if (cls.twin || cls.chern_parity) pass = false;
            }
        }
        if (classes != triples) pass = false;
        d << name << ":" << classes << "/" << triples << " ";
    }
    report(2, "single-class regimes match classes to triples through rank 3 with no twins", pass,
           d.str());
}

void criterion_twist_parities() {
    bool pass = true;
    std::ostringstream d;

    // odd cyclic with a linear fiber character: parities 0 and 1
    {
        const auto& c = ctx("z3");
        const auto model = context_rep_model(c, 1);
        for (int twist = 0; twist <= 1; ++twist) {
            const auto map = assemble_clutching_map(model, kSamples, twist == 1);
            const auto w = q_omega(map, model);  // guard active at 4096 samples
            const int parity = chern_from_winding(w, c.chi_deg);
            if (w.omega != twist || parity != twist) pass = false;
            if (w.lift_residual > kResidualTol || w.roundtrip_residual > kResidualTol) pass = false;
        }
        std::vector<int> parities;
        for (const auto& cls : classify_bundles(c.problem, 1, true))
            parities.push_back(*cls.chern_parity);
        int zeros = 0, ones = 0;
        for (int p : parities) (p ? ones : zeros)++;
        if (zeros != 3 || ones != 3) pass = false;
        d << "z3 parities " << zeros << "+" << ones << " ";
    }

    // quaternion kernel with the degree-two character: both twists, parity 0
    {
        const auto& c = ctx("q8xz3", 4);
        const auto model = context_rep_model(c, 1);
        for (int twist = 0; twist <= 1; ++twist) {
            const auto map = assemble_clutching_map(model, kSamples, twist == 1);
            const auto w = q_omega(map, model);
            if (w.omega != twist || chern_from_winding(w, c.chi_deg) != 0) pass = false;
        }
        d << "q8xz3[deg2] parity 0 at both twists";
    }
    report(3, "assembled clutching maps recover the twist and its first-Chern parity", pass,
           d.str());
}

void criterion_random_maps() {
    std::mt19937_64 rng(kSeed);
    int count = 0;
    double worst = 0.0;
    bool pass = true;
    const std::vector<std::tuple<std::string, int, long, int>> plan = {
        {"z3", 0, 1, 34}, {"z5", 0, 2, 33}, {"q8xz3", 4, 1, 33}};
    for (const auto& [name, chi, k, reps] : plan) {
        const auto model = context_rep_model(ctx(name, chi), k);
        for (int i = 0; i < reps; ++i) {
            const auto map = random_equivariant_map(model, kSamples, rng);
            const auto w = q_omega(map, model);
            const double r = std::max({e1_residual(map), e2_residual(map, model),
                                       w.lift_residual, w.roundtrip_residual});
            worst = std::max(worst, r);
            if (r > kResidualTol || (w.omega != 0 && w.omega != 1)) pass = false;
            ++count;
        }
    }
    std::ostringstream d;
    d << count << " maps, worst residual " << std::scientific << worst << " (tol 1e-9)";
    report(4, "randomized equivariant clutching maps satisfy both equivariance laws", pass, d.str());
}

void criterion_stabilizer_transfer() {
    bool pass = true;
    int sites = 0;
    for (const auto& [name, chi] : kCorpus) {
        try {
            for (const auto& st : transfer_checks(ctx(name, chi))) {
                ++sites;
                if (!st.eps0_matches || !st.degrees_match || !st.roundtrip_identity) pass = false;
            }
        } catch (const std::exception&) {
            pass = false;
        }
    }
    std::ostringstream d;
    d << sites << " sites over " << kCorpus.size() << " classifications, round trip to rank 3";
    report(5, "stabilizer transfer between sphere and quotient is a degree-preserving bijection",
           pass, d.str());
}

void criterion_hilbert_basis() {
    bool pass = true;
    std::ostringstream d;
    for (const auto& [name, chi] : kCorpus) {
        const auto& c = ctx(name, chi);
        const auto basis = hilbert_basis(c.problem.rows, c.problem.cols);
        std::vector<std::vector<long>> upto4;
        for (const auto& t : enumerate_triples(c.problem, 4)) upto4.push_back(t.x);
        const auto minimal = minimal_elements(upto4);
        std::vector<std::vector<long>> basis4;
        for (const auto& b : basis)
            if (c.problem.rank_of(b) <= 4) basis4.push_back(b);
        std::sort(basis4.begin(), basis4.end());
        if (basis4 != minimal) pass = false;
        for (const auto& x : upto4)
            if (!decomposes_over(x, basis)) pass = false;
    }
    d << kCorpus.size() << " classifications, brute force through rank 4";
    report(6, "monoid generators agree with componentwise-minimal triples", pass, d.str());
}

void criterion_character_tables() {
    bool pass = true;
    int tables = 0;
    const auto check = [&](const FiniteGroup& G) {
        ++tables;
        const CharacterTable T = character_table(G);
        // exact row orthogonality
        for (int i = 0; i < T.irrep_count() && pass; ++i)
            for (int j = i; j < T.irrep_count(); ++j) {
                CycloNum acc = CycloNum::zero(T.conductor);
                for (int c = 0; c < T.class_count(); ++c)
                    acc = acc + Rational(static_cast<long>(T.classes.classes[c].size())) *
                                    (T.rows[i][c] * T.rows[j][c].conj());
                if (acc != CycloNum::from_rational(T.conductor, i == j ? G.order : 0)) {
                    pass = false;
                    break;
                }
            }
        if (!oracles::tables_match(T, oracles::numeric_character_table(G, 0xBEEF), kOracleTol))
            pass = false;
    };

    for (long n = 1; n <= 12; ++n) {
        Permutation cyc(n);
        for (long i = 0; i < n; ++i) cyc[i] = static_cast<int>((i + 1) % n);
        check(build_group({cyc}, 50, "Z" + std::to_string(n)));
    }
    check(build_group({{1, 0}}, 10, "D1"));
    check(build_group({{1, 0, 3, 2}, {2, 3, 0, 1}}, 10, "D2"));
    for (long n = 3; n <= 6; ++n) {
        Permutation r(n), s(n);
        for (long i = 0; i < n; ++i) {
            r[i] = static_cast<int>((i + 1) % n);
            s[i] = static_cast<int>((n - i) % n);
        }
        check(build_group({r, s}, 50, "D" + std::to_string(n)));
    }
    check(build_group({{1, 0, 3, 2}, {0, 3, 1, 2}}, 20, "A4"));
    check(build_group({{1, 2, 3, 0}, {0, 3, 1, 2}}, 30, "S4"));
    check(build_group(
        {{0, 7, 4, 3, 8, 2, 1, 11, 10, 6, 5, 9}, {4, 5, 6, 7, 8, 9, 10, 11, 0, 1, 2, 3}}, 70, "A5"));
    check(build_group({{2, 3, 1, 0, 6, 7, 5, 4}, {4, 5, 7, 6, 1, 0, 2, 3}}, 10, "Q8"));

    std::ostringstream d;
    d << tables << " tables, exact orthogonality plus class-algebra eigen oracle (tol 1e-8)";
    report(7, "character tables match the independent numeric oracle", pass, d.str());
}

void criterion_trivial_group() {
    bool pass = true;
    const auto& c = ctx("z1");
    std::ostringstream d;
    for (long r = 1; r <= 4; ++r) {
        const auto classes = classify_bundles(c.problem, r, c.twin_regime);
        if (classes.size() != 2) pass = false;
        int zeros = 0, ones = 0;
        for (const auto& cls : classes) {
            if (!cls.chern_parity) pass = false;
            else (*cls.chern_parity ? ones : zeros)++;
        }
        if (zeros != 1 || ones != 1) pass = false;
        d << "rank" << r << ":" << classes.size() << " ";
    }
    report(8, "the trivial action yields two classes per rank with both parities", pass, d.str());
}

}  // namespace

int main() {
    criterion_rank_one_counts();
    criterion_no_twin_regimes();
    criterion_twist_parities();
    criterion_random_maps();
    criterion_stabilizer_transfer();
    criterion_hilbert_basis();
    criterion_character_tables();
    criterion_trivial_group();
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    else std::printf("all acceptance criteria passed\n");
    return failures ? 1 : 0;
}
