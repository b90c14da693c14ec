#include <catch2/catch_amalgamated.hpp>
#include <numeric>

#include "equivect/characters.hpp"
#include "oracles.hpp"

using namespace equivect;

namespace {

// Natural permutation models for the benchmark groups.
FiniteGroup cyclic(long n) {
    Permutation c(n);
    for (long i = 0; i < n; ++i) c[i] = static_cast<int>((i + 1) % n);
    return build_group({c}, 2 * n + 1, "Z" + std::to_string(n));
}

FiniteGroup dihedral(long n) {
    if (n == 1) return build_group({{1, 0}}, 10, "D1");
    if (n == 2) return build_group({{1, 0, 3, 2}, {2, 3, 0, 1}}, 10, "D2");
    Permutation r(n), s(n);
    for (long i = 0; i < n; ++i) {
        r[i] = static_cast<int>((i + 1) % n);
        s[i] = static_cast<int>((n - i) % n);
    }
    return build_group({r, s}, 4 * n + 1, "D" + std::to_string(n));
}

FiniteGroup alt4() { return build_group({{1, 0, 3, 2}, {0, 3, 1, 2}}, 20, "A4"); }
FiniteGroup sym4() { return build_group({{1, 2, 3, 0}, {0, 3, 1, 2}}, 30, "S4"); }
FiniteGroup alt5() {
    return build_group({{0, 7, 4, 3, 8, 2, 1, 11, 10, 6, 5, 9}, {4, 5, 6, 7, 8, 9, 10, 11, 0, 1, 2, 3}},
                       70, "A5");
}
FiniteGroup quat8() {
    return build_group({{2, 3, 1, 0, 6, 7, 5, 4}, {4, 5, 7, 6, 1, 0, 2, 3}}, 10, "Q8");
}

void check_table(const FiniteGroup& G) {
    INFO("group " << G.name);
    const CharacterTable T = character_table(G);
    REQUIRE(T.irrep_count() == T.class_count());

    // sum of squared degrees is the group order
    long sq = 0;
    for (long d : T.degrees) sq += d * d;
    REQUIRE(sq == G.order);

    // row 0 is the trivial character
    for (int c = 0; c < T.class_count(); ++c)
        REQUIRE(T.rows[0][c] == CycloNum::one(T.conductor));

    // exact first orthogonality: sum_g chi(g) conj(psi(g)) = |G| delta
    for (int i = 0; i < T.irrep_count(); ++i)
        for (int j = i; j < T.irrep_count(); ++j) {
            CycloNum acc = CycloNum::zero(T.conductor);
            for (int c = 0; c < T.class_count(); ++c)
                acc = acc + Rational(static_cast<long>(T.classes.classes[c].size())) *
                                (T.rows[i][c] * T.rows[j][c].conj());
            REQUIRE(acc == CycloNum::from_rational(T.conductor, i == j ? G.order : 0));
        }

    // exact second orthogonality: columns are orthogonal with norm |G|/|C|
    for (int c1 = 0; c1 < T.class_count(); ++c1)
        for (int c2 = c1; c2 < T.class_count(); ++c2) {
            CycloNum acc = CycloNum::zero(T.conductor);
            for (int i = 0; i < T.irrep_count(); ++i)
                acc = acc + T.rows[i][c1] * T.rows[i][c2].conj();
            const long want =
                c1 == c2 ? G.order / static_cast<long>(T.classes.classes[c1].size()) : 0;
            REQUIRE(acc == CycloNum::from_rational(T.conductor, want));
        }

    // independent numeric oracle from the class algebra
    const auto N = oracles::numeric_character_table(G, 0xC0FFEE);
    REQUIRE(oracles::tables_match(T, N, 1e-8));
}

}  // namespace

TEST_CASE("cyclic group tables up to order twelve") {
    for (long n = 1; n <= 12; ++n) check_table(cyclic(n));
}

TEST_CASE("dihedral group tables up to order twelve") {
    for (long n = 1; n <= 6; ++n) check_table(dihedral(n));
}

TEST_CASE("tetrahedral rotation group table") { check_table(alt4()); }

TEST_CASE("octahedral rotation group table") { check_table(sym4()); }

TEST_CASE("icosahedral rotation group table") { check_table(alt5()); }

TEST_CASE("quaternion group table has a two-dimensional irreducible") {
    const FiniteGroup G = quat8();
    check_table(G);
    const CharacterTable T = character_table(G);
    std::vector<long> degs = T.degrees;
    std::sort(degs.begin(), degs.end());
    REQUIRE(degs == std::vector<long>{1, 1, 1, 1, 2});
}

TEST_CASE("restriction multiplicities are exact and nonnegative") {
    const FiniteGroup G = sym4();
    const CharacterTable T = character_table(G);

    // restrict to the rotation subgroup of a face axis: a cyclic group of order 4
    int c4 = -1;
    for (int g = 0; g < G.order; ++g)
        if (G.element_order(g) == 4) c4 = g;
    std::vector<int> members;
    for (long k = 0; k < 4; ++k) members.push_back(G.power(c4, k));
    const MaterializedSubgroup S = materialize(make_subgroup(G, members));
    const CharacterTable TS = character_table(S.group);

    for (int chi = 0; chi < T.irrep_count(); ++chi) {
        long total = 0;
        for (int psi = 0; psi < TS.irrep_count(); ++psi) {
            const long m = restriction_multiplicity(T, chi, S, TS, psi);
            REQUIRE(m >= 0);
            total += m * TS.degrees[psi];
        }
        REQUIRE(total == T.degrees[chi]);  // restriction preserves degree
    }
}

TEST_CASE("character stabilizer of a kernel character") {
    // In the dihedral group of order 6, the kernel of the half-turn assignment
    // is the rotation subgroup; its nontrivial characters are swapped by the
    // flip, so their stabilizer is just the rotation subgroup.
    const FiniteGroup G = dihedral(3);
    std::vector<int> rot;
    for (int g = 0; g < G.order; ++g)
        if (G.element_order(g) != 2) rot.push_back(g);
    const MaterializedSubgroup H = materialize(make_subgroup(G, rot));
    const CharacterTable TH = character_table(H.group);

    const Subgroup s0 = chi_stabilizer(G, H, TH, 0);
    REQUIRE(s0.members.size() == 6);  // trivial character is fixed by everyone
    for (int chi = 1; chi < TH.irrep_count(); ++chi) {
        const Subgroup s = chi_stabilizer(G, H, TH, chi);
        REQUIRE(s.members.size() == 3);
    }
}
