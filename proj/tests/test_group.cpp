#include <algorithm>
#include <catch2/catch_amalgamated.hpp>

#include "equivect/group.hpp"

using namespace equivect;

namespace {
FiniteGroup sym3() { return build_group({{1, 2, 0}, {0, 2, 1}}, 100, "S3"); }

FiniteGroup quat8() {
    return build_group({{2, 3, 1, 0, 6, 7, 5, 4}, {4, 5, 7, 6, 1, 0, 2, 3}}, 100, "Q8");
}

std::vector<std::size_t> class_sizes(const FiniteGroup& G) {
    std::vector<std::size_t> sizes;
    for (const auto& c : conjugacy_classes(G).classes) sizes.push_back(c.size());
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}
}  // namespace

TEST_CASE("symmetric group on three points") {
    const FiniteGroup G = sym3();
    REQUIRE(G.order == 6);
    verify_group_axioms(G);
    REQUIRE(G.exponent() == 6);
    REQUIRE(class_sizes(G) == std::vector<std::size_t>{1, 2, 3});

    // element orders come in multiset {1, 2, 2, 2, 3, 3}
    std::vector<long> orders;
    for (int g = 0; g < G.order; ++g) orders.push_back(G.element_order(g));
    std::sort(orders.begin(), orders.end());
    REQUIRE(orders == std::vector<long>{1, 2, 2, 2, 3, 3});
}

TEST_CASE("quaternion group structure") {
    const FiniteGroup G = quat8();
    REQUIRE(G.order == 8);
    verify_group_axioms(G);
    REQUIRE(G.exponent() == 4);
    REQUIRE(class_sizes(G) == std::vector<std::size_t>{1, 1, 2, 2, 2});

    // a unique central involution
    int central_involutions = 0;
    for (int g = 0; g < G.order; ++g) {
        if (G.element_order(g) != 2) continue;
        bool central = true;
        for (int h = 0; h < G.order; ++h)
            if (G.mul(g, h) != G.mul(h, g)) central = false;
        if (central) ++central_involutions;
    }
    REQUIRE(central_involutions == 1);
}

TEST_CASE("empty generator list yields the trivial group") {
    const FiniteGroup G = build_group({}, 100, "triv");
    REQUIRE(G.order == 1);
    REQUIRE(G.id_index == 0);
    verify_group_axioms(G);
}

TEST_CASE("build_group rejects malformed input") {
    REQUIRE_THROWS(build_group({{0, 0, 1}}, 100, "bad"));
    REQUIRE_THROWS(build_group({{1, 2, 0}, {0, 1}}, 100, "mixed degree"));
}

TEST_CASE("power and conjugation identities") {
    const FiniteGroup G = sym3();
    for (int g = 0; g < G.order; ++g) {
        REQUIRE(G.power(g, G.element_order(g)) == G.id_index);
        REQUIRE(G.mul(g, G.inv[g]) == G.id_index);
        for (int h = 0; h < G.order; ++h)
            REQUIRE(G.element_order(G.conjugate(h, g)) == G.element_order(g));
    }
}

TEST_CASE("subgroups, kernels, and materialization") {
    const FiniteGroup G = sym3();
    // the rotation subgroup: identity plus both 3-cycles
    std::vector<int> rot;
    for (int g = 0; g < G.order; ++g)
        if (G.element_order(g) != 2) rot.push_back(g);
    const Subgroup A3 = make_subgroup(G, rot);
    REQUIRE(A3.members.size() == 3);
    REQUIRE(A3.is_normal());

    const MaterializedSubgroup M = materialize(A3);
    REQUIRE(M.group.order == 3);
    verify_group_axioms(M.group);
    // embedding intertwines multiplication
    for (int a = 0; a < M.group.order; ++a)
        for (int b = 0; b < M.group.order; ++b)
            REQUIRE(M.embed[M.group.mul(a, b)] == G.mul(M.embed[a], M.embed[b]));
    for (int a = 0; a < M.group.order; ++a) REQUIRE(M.local(M.embed[a]) == a);

    // kernel of the sign homomorphism
    const auto sign = [&](int g) { return G.element_order(g) == 2 ? -1 : 1; };
    std::vector<int> sgn;
    for (int g = 0; g < G.order; ++g) sgn.push_back(sign(g));
    std::vector<int> ker;
    for (int g = 0; g < G.order; ++g)
        if (sgn[g] == 1) ker.push_back(g);
    REQUIRE(ker == A3.members);

    // a non-closed subset is rejected
    int transposition = -1;
    for (int g = 0; g < G.order; ++g)
        if (G.element_order(g) == 2) transposition = g;
    REQUIRE_THROWS(make_subgroup(G, {G.id_index, transposition, rot[1]}));
}

TEST_CASE("extend_from_generators reproduces the sign character") {
    const FiniteGroup G = sym3();
    // generators recorded by build_group: a 3-cycle (sign +1) and a flip (-1)
    const std::vector<int> gen_values = {1, -1};
    const auto vals = G.extend_from_generators<int>(
        gen_values, 1, [](const int& a, const int& b) { return a * b; });
    for (int g = 0; g < G.order; ++g) REQUIRE(vals[g] == (G.element_order(g) == 2 ? -1 : 1));
}
