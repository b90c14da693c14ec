#pragma once

// The additive monoid of compatible multiplicity triples.  A bundle is
// recorded by the isotypic multiplicities of its fibers over the anchor point
// and the two endpoints of the fundamental arc; compatibility along the two
// chains and the arc, plus transport between the endpoints when the acting
// group moves one to the other, compiles down to a homogeneous linear
// Diophantine system over the multiplicity coordinates.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <vector>

#include "equivect/characters.hpp"
#include "equivect/polyhedra.hpp"

namespace equivect {

// ---------------------------------------------------------------------------
// Character-row matching under an element identification.

// Row of `target` whose values equal chi∘iso, where iso maps target-local
// element indices to source-local ones.
inline int matching_row(const CharacterTable& target, const CharacterTable& source, int chi,
                        const std::vector<int>& iso) {
    const long M = std::lcm(target.conductor, source.conductor);
    for (int r = 0; r < target.irrep_count(); ++r) {
        bool ok = true;
        for (int y = 0; y < static_cast<int>(iso.size()) && ok; ++y)
            ok = target.value(r, y).promote(M) == source.value(chi, iso[y]).promote(M);
        if (ok) return r;
    }
    throw std::logic_error("transported character matches no irreducible of the target");
}

// ---------------------------------------------------------------------------
// Isotypic blocks and the constraint system.

struct IrrBlock {
    std::shared_ptr<MaterializedSubgroup> sub;  // stabilizer inside the acting group
    CharacterTable table;
    std::vector<int> allowed;        // irreps restricting H-isotypically to chi
    std::vector<long> allowed_deg;   // their degrees
    std::vector<long> chi_mult;      // degree / chi(1)
};

struct Triple {
    std::vector<long> x;  // concatenated allowed coordinates (anchor, start, end)
    long rank = 0;

    friend bool operator==(const Triple& a, const Triple& b) { return a.x == b.x; }
    friend bool operator<(const Triple& a, const Triple& b) { return a.x < b.x; }
};

struct TripleProblem {
    IrrBlock anchor, start, end;
    std::vector<std::vector<long>> rows;  // homogeneous constraints over all coords
    // Position map start-block -> end-block induced by arc transport, when the
    // acting group carries the start point to the end point.
    std::optional<std::vector<int>> transport;
    long chi_deg = 1;
    std::size_t off0 = 0, off1 = 0, cols = 0;

    long rank_of(const std::vector<long>& x) const {
        long r = 0;
        for (std::size_t i = 0; i < anchor.allowed.size(); ++i) r += x[i] * anchor.allowed_deg[i];
        return r;
    }

    bool satisfies(const std::vector<long>& x) const {
        for (const auto& row : rows) {
            long s = 0;
            for (std::size_t i = 0; i < cols; ++i) s += row[i] * x[i];
            if (s != 0) return false;
        }
        return true;
    }
};

namespace detail {

// <res phi, psi> computed over the listed members; both subgroups are
// materialized inside the same ambient group, small <= big.
inline long res_mult_members(const CharacterTable& big_table, int phi,
                             const MaterializedSubgroup& big, const CharacterTable& small_table,
                             int psi, const MaterializedSubgroup& small) {
    const long M = std::lcm(big_table.conductor, small_table.conductor);
    CycloNum acc = CycloNum::zero(M);
    for (int s = 0; s < small.group.order; ++s) {
        const int ambient = small.embed[s];
        acc = acc + big_table.value(phi, big.local(ambient)).promote(M) *
                        small_table.value(psi, s).promote(M).conj();
    }
    acc = Rational(1, small.group.order) * acc;
    auto q = acc.as_rational();
    if (!q || q->get_den() != 1 || *q < 0)
        throw std::logic_error("restriction multiplicity is not a nonnegative integer");
    return q->get_num().get_si();
}

inline IrrBlock build_block(const Subgroup& stab, const std::vector<int>& h_members,
                            const std::vector<CycloNum>& chi_values, long chi_deg) {
    IrrBlock b;
    b.sub = std::make_shared<MaterializedSubgroup>(materialize(stab));
    b.table = character_table(b.sub->group);
    const long Mchi = h_members.empty() ? 1 : chi_values[0].conductor();
    const long M = std::lcm(b.table.conductor, Mchi);
    for (int phi = 0; phi < b.table.irrep_count(); ++phi) {
        const long deg = b.table.degrees[phi];
        bool isotypic = true;
        for (std::size_t i = 0; i < h_members.size() && isotypic; ++i) {
            if (!b.sub->local_of.count(h_members[i]))
                throw std::logic_error("kernel element missing from a stabilizer");
            const int loc = b.sub->local(h_members[i]);
            isotypic = Rational(chi_deg) * b.table.value(phi, loc).promote(M) ==
                       Rational(deg) * chi_values[i].promote(M);
        }
        if (!isotypic) continue;
        if (deg % chi_deg != 0)
            throw std::logic_error("isotypic irreducible degree not divisible by chi(1)");
        b.allowed.push_back(phi);
        b.allowed_deg.push_back(deg);
        b.chi_mult.push_back(deg / chi_deg);
    }
    return b;
}

// Rows equating the inner-stabilizer restriction multiplicities of two blocks.
inline void append_restriction_rows(TripleProblem& P, const IrrBlock& A, std::size_t offA,
                                    const IrrBlock& B, std::size_t offB,
                                    const Subgroup& inner_ambient) {
    auto inner = std::make_shared<MaterializedSubgroup>(materialize(inner_ambient));
    const CharacterTable inner_table = character_table(inner->group);
    for (int psi = 0; psi < inner_table.irrep_count(); ++psi) {
        std::vector<long> row(P.cols, 0);
        for (std::size_t i = 0; i < A.allowed.size(); ++i)
            row[offA + i] = res_mult_members(A.table, A.allowed[i], *A.sub, inner_table, psi, *inner);
        for (std::size_t j = 0; j < B.allowed.size(); ++j)
            row[offB + j] -= res_mult_members(B.table, B.allowed[j], *B.sub, inner_table, psi, *inner);
        P.rows.push_back(std::move(row));
    }
}

}  // namespace detail

// Compile the compatibility conditions for one group action.  `acting` is the
// group whose stabilizers appear in `st` (for the projective plane this is
// the antipodal covering group); `h_members`/`chi_values` describe the
// fiberwise character on the kernel of the action.
inline TripleProblem build_triple_problem(const FiniteGroup& acting, const ArcStabilizers& st,
                                          const std::vector<int>& h_members,
                                          const std::vector<CycloNum>& chi_values, long chi_deg) {
    TripleProblem P;
    P.chi_deg = chi_deg;
    P.anchor = detail::build_block(st.anchor, h_members, chi_values, chi_deg);
    P.start = detail::build_block(st.arc_start, h_members, chi_values, chi_deg);
    P.end = detail::build_block(st.arc_end, h_members, chi_values, chi_deg);
    P.off0 = P.anchor.allowed.size();
    P.off1 = P.off0 + P.start.allowed.size();
    P.cols = P.off1 + P.end.allowed.size();

    detail::append_restriction_rows(P, P.anchor, 0, P.start, P.off0, st.chain_start);
    detail::append_restriction_rows(P, P.anchor, 0, P.end, P.off1, st.chain_end);
    detail::append_restriction_rows(P, P.start, P.off0, P.end, P.off1, st.arc);

    if (!st.transporter_elements.empty()) {
        // Transport irreducibles of the start stabilizer to the end stabilizer
        // by conjugation; every transporter must induce the same permutation.
        std::optional<std::vector<int>> perm;
        for (int t : st.transporter_elements) {
            const int tinv = acting.inv[t];
            std::vector<int> iso(P.end.sub->group.order);  // end-local -> start-local
            for (int y = 0; y < P.end.sub->group.order; ++y)
                iso[y] = P.start.sub->local(acting.conjugate(tinv, P.end.sub->embed[y]));
            std::vector<int> cur;
            for (std::size_t j = 0; j < P.start.allowed.size(); ++j) {
                const int img = matching_row(P.end.table, P.start.table, P.start.allowed[j], iso);
                const auto it = std::find(P.end.allowed.begin(), P.end.allowed.end(), img);
                if (it == P.end.allowed.end())
                    throw std::logic_error("transport does not preserve isotypic irreducibles");
                cur.push_back(static_cast<int>(it - P.end.allowed.begin()));
            }
            if (perm && *perm != cur)
                throw std::logic_error("transporters disagree on irreducible transport");
            perm = cur;
        }
        P.transport = perm;
        for (std::size_t j = 0; j < P.start.allowed.size(); ++j) {
            std::vector<long> row(P.cols, 0);
            row[P.off0 + j] = 1;
            row[P.off1 + (*P.transport)[j]] = -1;
            P.rows.push_back(std::move(row));
        }
    }
    return P;
}

// ---------------------------------------------------------------------------
// Enumeration.

namespace detail {

inline void weighted_compositions(const std::vector<long>& degs, long target,
                                  const std::function<void(const std::vector<long>&)>& emit) {
    std::vector<long> cur(degs.size(), 0);
    std::function<void(std::size_t, long)> rec = [&](std::size_t i, long remaining) {
        if (i == degs.size()) {
            if (remaining == 0) emit(cur);
            return;
        }
        for (long c = 0; c * degs[i] <= remaining; ++c) {
            cur[i] = c;
            rec(i + 1, remaining - c * degs[i]);
        }
        cur[i] = 0;
    };
    rec(0, target);
}

}  // namespace detail

// All nonzero solutions with rank (anchor fiber dimension) at most max_rank,
// ordered by rank and then lexicographically.
inline std::vector<Triple> enumerate_triples(const TripleProblem& P, long max_rank) {
    std::vector<Triple> out;
    for (long r = 1; r <= max_rank; ++r) {
        detail::weighted_compositions(P.anchor.allowed_deg, r, [&](const std::vector<long>& xm) {
            detail::weighted_compositions(P.start.allowed_deg, r, [&](const std::vector<long>& x0) {
                std::vector<long> x(P.cols, 0);
                std::copy(xm.begin(), xm.end(), x.begin());
                std::copy(x0.begin(), x0.end(), x.begin() + P.off0);
                if (P.transport) {
                    for (std::size_t j = 0; j < x0.size(); ++j)
                        x[P.off1 + (*P.transport)[j]] = x0[j];
                    if (P.satisfies(x)) out.push_back({x, r});
                    return;
                }
                detail::weighted_compositions(P.end.allowed_deg, r, [&](const std::vector<long>& x1) {
                    std::copy(x1.begin(), x1.end(), x.begin() + P.off1);
                    if (P.satisfies(x)) out.push_back({x, r});
                });
                std::fill(x.begin() + P.off1, x.end(), 0);
            });
        });
    }
    return out;
}

inline std::map<long, long> rank_counts(const TripleProblem& P, long max_rank) {
    std::map<long, long> counts;
    for (long r = 1; r <= max_rank; ++r) counts[r] = 0;
    for (const auto& t : enumerate_triples(P, max_rank)) ++counts[t.rank];
    return counts;
}

// ---------------------------------------------------------------------------
// Hilbert basis of { x >= 0 : rows * x = 0 } (Contejean-Devie search).

inline bool dominates(const std::vector<long>& small, const std::vector<long>& big) {
    for (std::size_t i = 0; i < small.size(); ++i)
        if (small[i] > big[i]) return false;
    return true;
}

inline std::vector<std::vector<long>> hilbert_basis(const std::vector<std::vector<long>>& rows,
                                                    std::size_t cols,
                                                    std::size_t state_cap = 100000) {
    auto apply = [&](const std::vector<long>& x) {
        std::vector<long> v(rows.size(), 0);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t i = 0; i < cols; ++i) v[r] += rows[r][i] * x[i];
        return v;
    };
    std::vector<std::vector<long>> unit_values(cols);
    for (std::size_t i = 0; i < cols; ++i) {
        std::vector<long> e(cols, 0);
        e[i] = 1;
        unit_values[i] = apply(e);
    }

    std::vector<std::vector<long>> minimal;
    std::set<std::vector<long>> seen;
    std::queue<std::vector<long>> frontier;
    for (std::size_t i = 0; i < cols; ++i) {
        std::vector<long> e(cols, 0);
        e[i] = 1;
        if (seen.insert(e).second) frontier.push(e);
    }
    while (!frontier.empty()) {
        if (seen.size() > state_cap) throw std::runtime_error("Hilbert basis search exceeded cap");
        std::vector<long> x = std::move(frontier.front());
        frontier.pop();
        bool dominated = false;
        for (const auto& m : minimal)
            if (dominates(m, x)) {
                dominated = true;
                break;
            }
        if (dominated) continue;
        const std::vector<long> v = apply(x);
        if (std::all_of(v.begin(), v.end(), [](long a) { return a == 0; })) {
            minimal.push_back(x);
            continue;
        }
        for (std::size_t i = 0; i < cols; ++i) {
            long inner = 0;
            for (std::size_t r = 0; r < rows.size(); ++r) inner += v[r] * unit_values[i][r];
            if (inner >= 0) continue;
            std::vector<long> y = x;
            ++y[i];
            if (seen.insert(y).second) frontier.push(std::move(y));
        }
    }
    std::sort(minimal.begin(), minimal.end());
    return minimal;
}

inline std::vector<Triple> hilbert_basis_triples(const TripleProblem& P,
                                                 std::size_t state_cap = 100000) {
    std::vector<Triple> out;
    for (auto& x : hilbert_basis(P.rows, P.cols, state_cap)) {
        Triple t{x, P.rank_of(x)};
        out.push_back(std::move(t));
    }
    std::sort(out.begin(), out.end(),
              [](const Triple& a, const Triple& b) { return a.rank != b.rank ? a.rank < b.rank : a.x < b.x; });
    return out;
}

// Componentwise-minimal members of a solution list (oracle for small ranks).
inline std::vector<std::vector<long>> minimal_elements(std::vector<std::vector<long>> xs) {
    std::vector<std::vector<long>> out;
    for (const auto& x : xs) {
        bool minimal = true;
        for (const auto& y : xs)
            if (y != x && dominates(y, x)) {
                minimal = false;
                break;
            }
        if (minimal) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Can x be written as a nonnegative integer combination of basis vectors?
inline bool decomposes_over(const std::vector<long>& x,
                            const std::vector<std::vector<long>>& basis) {
    if (std::all_of(x.begin(), x.end(), [](long a) { return a == 0; })) return true;
    std::set<std::vector<long>> dead;
    std::function<bool(const std::vector<long>&)> rec = [&](const std::vector<long>& cur) -> bool {
        if (std::all_of(cur.begin(), cur.end(), [](long a) { return a == 0; })) return true;
        if (dead.count(cur)) return false;
        for (const auto& b : basis) {
            if (!dominates(b, cur)) continue;
            if (std::all_of(b.begin(), b.end(), [](long a) { return a == 0; })) continue;
            std::vector<long> next = cur;
            for (std::size_t i = 0; i < next.size(); ++i) next[i] -= b[i];
            if (rec(next)) return true;
        }
        dead.insert(cur);
        return false;
    };
    return rec(x);
}

// ---------------------------------------------------------------------------
// Classes.

// In the twin regime (odd cyclic image on the projective plane) every triple
// carries two bundle classes distinguished by a binary twist; the first Chern
// parity of the twist is chi(1) mod 2.
struct BundleClass {
    Triple triple;
    std::optional<int> twin;
    std::optional<int> chern_parity;
};

inline std::vector<BundleClass> classify_bundles(const TripleProblem& P, long rank,
                                                 bool twin_regime) {
    std::vector<BundleClass> out;
    for (const auto& t : enumerate_triples(P, rank)) {
        if (t.rank != rank) continue;
        if (!twin_regime) {
            out.push_back({t, std::nullopt, std::nullopt});
            continue;
        }
        for (int omega = 0; omega < 2; ++omega)
            out.push_back({t, omega, static_cast<int>((omega * P.chi_deg) % 2)});
    }
    return out;
}

inline BundleClass direct_sum(const BundleClass& a, const BundleClass& b) {
    if (a.triple.x.size() != b.triple.x.size())
        throw std::invalid_argument("direct sum needs classes over the same problem");
    BundleClass s;
    s.triple.x.resize(a.triple.x.size());
    for (std::size_t i = 0; i < s.triple.x.size(); ++i)
        s.triple.x[i] = a.triple.x[i] + b.triple.x[i];
    s.triple.rank = a.triple.rank + b.triple.rank;
    if (a.twin.has_value() != b.twin.has_value())
        throw std::invalid_argument("direct sum mixes twin and non-twin classes");
    if (a.twin) s.twin = *a.twin ^ *b.twin;
    if (a.chern_parity && b.chern_parity) s.chern_parity = (*a.chern_parity + *b.chern_parity) % 2;
    return s;
}

// ---------------------------------------------------------------------------
// Transfer between sphere and projective-plane stabilizers.

// A stabilizer in the covering group meets each +/- pair at most once, so the
// projection to the base group is injective on it; its image refines to the
// plain rotation stabilizer on the sphere side.
struct StabilizerTransfer {
    std::shared_ptr<MaterializedSubgroup> hat;    // subgroup of the covering group
    std::shared_ptr<MaterializedSubgroup> image;  // its projection downstairs
    std::vector<int> p1_local;                    // hat-local -> image-local
    CharacterTable hat_table;
    CharacterTable image_table;
    std::vector<int> row_map;  // hat irrep -> image irrep under the isomorphism
};

inline StabilizerTransfer p1_transfer(const CoveringGroup& cover, const Subgroup& hat_stab) {
    StabilizerTransfer T;
    T.hat = std::make_shared<MaterializedSubgroup>(materialize(hat_stab));
    std::set<int> image_set;
    for (int l = 0; l < T.hat->group.order; ++l) image_set.insert(cover.p1[T.hat->embed[l]]);
    if (static_cast<int>(image_set.size()) != T.hat->group.order)
        throw std::runtime_error("projection is not injective on an antipodal stabilizer");
    std::vector<int> members(image_set.begin(), image_set.end());
    T.image = std::make_shared<MaterializedSubgroup>(materialize(make_subgroup(*cover.base, members)));
    T.p1_local.resize(T.hat->group.order);
    for (int l = 0; l < T.hat->group.order; ++l)
        T.p1_local[l] = T.image->local(cover.p1[T.hat->embed[l]]);
    T.hat_table = character_table(T.hat->group);
    T.image_table = character_table(T.image->group);
    std::vector<int> iso(T.image->group.order);  // image-local -> hat-local
    for (int l = 0; l < T.hat->group.order; ++l) iso[T.p1_local[l]] = l;
    for (int r = 0; r < T.hat_table.irrep_count(); ++r)
        T.row_map.push_back(matching_row(T.image_table, T.hat_table, r, iso));
    return T;
}

}  // namespace equivect
