#pragma once

// Exact character tables of finite groups via Dixon's method: the class-sum
// matrices are simultaneously diagonalized over a prime field F_p with
// p = 1 (mod exponent), degrees and character values are recovered mod p,
// and the values are lifted to exact cyclotomic numbers by discrete Fourier
// inversion over the eigenvalue multiplicities.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "equivect/cyclotomic.hpp"
#include "equivect/group.hpp"

namespace equivect {

namespace modp {

inline long pow(long b, long e, long p) {
    long r = 1 % p;
    b %= p;
    if (b < 0) b += p;
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

inline long inv(long a, long p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) throw std::domain_error("modp::inv of zero");
    return pow(a, p - 2, p);
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline long primitive_root(long p) {
    std::vector<long> prime_factors;
    long m = p - 1;
    for (long d = 2; d * d <= m; ++d) {
        if (m % d) continue;
        prime_factors.push_back(d);
        while (m % d == 0) m /= d;
    }
    if (m > 1) prime_factors.push_back(m);
    for (long g = 2; g < p; ++g) {
        bool ok = true;
        for (long q : prime_factors)
            if (pow(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw std::logic_error("no primitive root found");
}

using Vec = std::vector<long>;
using Mat = std::vector<Vec>;

// Basis of the kernel of a square matrix, as column vectors.
inline std::vector<Vec> kernel_basis(Mat m, long p) {
    const int k = static_cast<int>(m.size());
    std::vector<int> pivot_row_of_col(k, -1);
    int rank = 0;
    for (int c = 0; c < k && rank < k; ++c) {
        int piv = -1;
        for (int r = rank; r < k; ++r)
            if (m[r][c] % p != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[rank], m[piv]);
        const long s = inv(m[rank][c], p);
        for (int j = 0; j < k; ++j) m[rank][j] = m[rank][j] % p * s % p;
        for (int r = 0; r < k; ++r) {
            if (r == rank || m[r][c] % p == 0) continue;
            const long f = m[r][c] % p;
            for (int j = 0; j < k; ++j) m[r][j] = ((m[r][j] - f * m[rank][j]) % p + p) % p;
        }
        pivot_row_of_col[c] = rank;
        ++rank;
    }
    std::vector<Vec> basis;
    for (int c = 0; c < k; ++c) {
        if (pivot_row_of_col[c] >= 0) continue;
        Vec v(k, 0);
        v[c] = 1;
        for (int j = 0; j < k; ++j)
            if (pivot_row_of_col[j] >= 0) v[j] = (p - m[pivot_row_of_col[j]][c] % p) % p;
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace modp

struct CharacterTable {
    const FiniteGroup* group = nullptr;
    ConjugacyClasses classes;
    long conductor = 1;  // group exponent; all values live in Q(zeta_conductor)
    long prime = 0;      // the working prime (informational)
    std::vector<long> degrees;
    std::vector<std::vector<CycloNum>> rows;  // rows[chi][class]

    int class_count() const { return classes.count(); }
    int irrep_count() const { return static_cast<int>(rows.size()); }

    const CycloNum& value(int chi, int element) const {
        return rows[chi][classes.class_of[element]];
    }

    // Row 0 is always the trivial character (enforced by the final ordering).
    int trivial_row() const { return 0; }
};

inline CharacterTable character_table(const FiniteGroup& G) {
    CharacterTable T;
    T.group = &G;
    T.classes = conjugacy_classes(G);
    const int r = T.classes.count();
    const long e = G.exponent();
    T.conductor = e;

    // Working prime: p = 1 (mod e), p > 2*sqrt(|G|), p coprime to |G|.
    long p = e + 1;
    const double bound = 2.0 * std::sqrt(static_cast<double>(G.order));
    while (!(modp::is_prime(p) && static_cast<double>(p) > bound && G.order % p != 0)) p += e;
    T.prime = p;

    std::vector<int> rep(r);
    for (int k = 0; k < r; ++k) rep[k] = T.classes.classes[k][0];
    std::vector<int> inverse_class(r);
    for (int k = 0; k < r; ++k) inverse_class[k] = T.classes.class_of[G.inv[rep[k]]];

    // Class-sum structure constants: (M_i)_{jk} = #{x in C_i : x^{-1} z_k in C_j}.
    std::vector<modp::Mat> class_mat(r, modp::Mat(r, modp::Vec(r, 0)));
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k)
            for (int x : T.classes.classes[i]) {
                const int j = T.classes.class_of[G.mult[G.inv[x]][rep[k]]];
                class_mat[i][j][k] = (class_mat[i][j][k] + 1) % p;
            }

    // Split F_p^r into common eigenspaces of all class-sum matrices.
    std::vector<std::vector<modp::Vec>> spaces;
    {
        std::vector<modp::Vec> full;
        for (int k = 0; k < r; ++k) {
            modp::Vec v(r, 0);
            v[k] = 1;
            full.push_back(std::move(v));
        }
        spaces.push_back(std::move(full));
    }
    for (int i = 1; i < r; ++i) {
        bool all_split = true;
        for (const auto& s : spaces) all_split = all_split && s.size() == 1;
        if (all_split) break;

        std::vector<std::vector<modp::Vec>> next;
        for (auto& basis : spaces) {
            const int dim = static_cast<int>(basis.size());
            if (dim == 1) {
                next.push_back(std::move(basis));
                continue;
            }
            // Restriction R of M_i to the subspace: M_i * B = B * R, solved by
            // row reduction of [B | M_i B].
            modp::Mat aug(r, modp::Vec(2 * dim, 0));
            for (int row = 0; row < r; ++row)
                for (int c = 0; c < dim; ++c) {
                    aug[row][c] = basis[c][row];
                    long acc = 0;
                    for (int k = 0; k < r; ++k)
                        acc = (acc + class_mat[i][row][k] * basis[c][k]) % p;
                    aug[row][dim + c] = acc;
                }
            int rank = 0;
            std::vector<int> pivot_col;
            for (int c = 0; c < dim && rank < r; ++c) {
                int piv = -1;
                for (int row = rank; row < r; ++row)
                    if (aug[row][c] % p != 0) {
                        piv = row;
                        break;
                    }
                if (piv < 0) continue;
                std::swap(aug[rank], aug[piv]);
                const long s = modp::inv(aug[rank][c], p);
                for (int j = 0; j < 2 * dim; ++j) aug[rank][j] = aug[rank][j] % p * s % p;
                for (int row = 0; row < r; ++row) {
                    if (row == rank || aug[row][c] % p == 0) continue;
                    const long f = aug[row][c] % p;
                    for (int j = 0; j < 2 * dim; ++j)
                        aug[row][j] = ((aug[row][j] - f * aug[rank][j]) % p + p) % p;
                }
                pivot_col.push_back(c);
                ++rank;
            }
            if (rank != dim) throw std::logic_error("character table: basis not independent");
            for (int row = rank; row < r; ++row)
                for (int j = dim; j < 2 * dim; ++j)
                    if (aug[row][j] % p != 0)
                        throw std::logic_error("character table: subspace not invariant");
            modp::Mat R(dim, modp::Vec(dim, 0));
            for (int q = 0; q < dim; ++q)
                for (int c = 0; c < dim; ++c) R[pivot_col[q]][c] = aug[q][dim + c];

            // Eigenspaces of R partition the subspace (class algebra is split
            // semisimple over F_p).
            int found = 0;
            for (long lam = 0; lam < p && found < dim; ++lam) {
                modp::Mat shifted = R;
                for (int q = 0; q < dim; ++q) shifted[q][q] = ((shifted[q][q] - lam) % p + p) % p;
                auto ker = modp::kernel_basis(shifted, p);
                if (ker.empty()) continue;
                std::vector<modp::Vec> sub;
                for (const auto& kv : ker) {
                    modp::Vec v(r, 0);
                    for (int c = 0; c < dim; ++c)
                        for (int row = 0; row < r; ++row)
                            v[row] = (v[row] + kv[c] * basis[c][row]) % p;
                    sub.push_back(std::move(v));
                }
                found += static_cast<int>(sub.size());
                next.push_back(std::move(sub));
            }
            if (found != dim)
                throw std::logic_error("character table: eigenspaces do not fill subspace");
        }
        spaces = std::move(next);
    }
    if (static_cast<int>(spaces.size()) != r)
        throw std::logic_error("character table: wrong number of common eigenspaces");

    // Central character values omega, normalized so the identity class reads 1.
    std::vector<modp::Vec> omega;
    for (const auto& basis : spaces) {
        modp::Vec v = basis[0];
        if (v[0] % p == 0) throw std::logic_error("character table: eigenvector vanishes at 1");
        const long s = modp::inv(v[0], p);
        for (auto& x : v) x = x % p * s % p;
        omega.push_back(std::move(v));
    }

    // Degrees from the second orthogonality of central characters.
    const long root_bound = static_cast<long>(std::sqrt(static_cast<double>(G.order))) + 1;
    std::vector<long> degree(r, 0);
    for (int i = 0; i < r; ++i) {
        long s = 0;
        for (int k = 0; k < r; ++k) {
            const long sz = static_cast<long>(T.classes.classes[k].size()) % p;
            s = (s + omega[i][k] * omega[i][inverse_class[k]] % p * modp::inv(sz, p)) % p;
        }
        const long val = G.order % p * modp::inv(s, p) % p;
        for (long d = 1; d <= root_bound; ++d)
            if (d * d % p == val) {
                degree[i] = d;
                break;
            }
        if (degree[i] == 0) throw std::logic_error("character table: no degree matches");
    }
    long degree_sq_sum = 0;
    for (int i = 0; i < r; ++i) degree_sq_sum += degree[i] * degree[i];
    if (degree_sq_sum != G.order)
        throw std::logic_error("character table: degree squares do not sum to |G|");

    // Lift to exact cyclotomic values.  w generates the image of zeta_e in F_p;
    // the multiplicity of eigenvalue zeta_m^t in rho(z) is recovered mod p and
    // read off as an integer (it is at most the degree, which is < p).
    const long w = modp::pow(modp::primitive_root(p), (p - 1) / e, p);
    std::vector<std::vector<CycloNum>> rows;
    for (int i = 0; i < r; ++i) {
        std::vector<long> chis(r);
        for (int k = 0; k < r; ++k) {
            const long sz = static_cast<long>(T.classes.classes[k].size()) % p;
            chis[k] = degree[i] % p * omega[i][k] % p * modp::inv(sz, p) % p;
        }
        std::vector<CycloNum> row;
        for (int k = 0; k < r; ++k) {
            const int z = rep[k];
            const long m = G.element_order(z);
            const long zm = modp::pow(w, e / m, p);
            const long zm_inv = modp::inv(zm, p);
            const long m_inv = modp::inv(m % p, p);
            CycloNum val = CycloNum::zero(e);
            long mu_sum = 0;
            int zl = G.id_index;
            std::vector<long> chi_pow(m);
            for (long l = 0; l < m; ++l) {
                chi_pow[l] = chis[T.classes.class_of[zl]];
                zl = G.mult[zl][z];
            }
            for (long t = 0; t < m; ++t) {
                long mu = 0;
                for (long l = 0; l < m; ++l)
                    mu = (mu + chi_pow[l] * modp::pow(zm_inv, t * l % m, p)) % p;
                mu = mu * m_inv % p;
                if (mu > degree[i])
                    throw std::logic_error("character table: eigenvalue multiplicity too large");
                mu_sum += mu;
                if (mu > 0)
                    val = val + Rational(mu) * CycloNum::zeta_pow(e, (e / m) * t);
            }
            if (mu_sum != degree[i])
                throw std::logic_error("character table: multiplicities do not sum to degree");
            row.push_back(std::move(val));
        }
        rows.push_back(std::move(row));
    }

    // Exact first orthogonality.
    for (int i = 0; i < r; ++i)
        for (int j = i; j < r; ++j) {
            CycloNum acc = CycloNum::zero(e);
            for (int k = 0; k < r; ++k)
                acc = acc + Rational(static_cast<long>(T.classes.classes[k].size())) *
                                (rows[i][k] * rows[j][k].conj());
            const CycloNum want = i == j ? CycloNum::from_rational(e, Rational(G.order))
                                         : CycloNum::zero(e);
            if (!(acc == want))
                throw std::logic_error("character table: row orthogonality failed");
        }

    // Deterministic row order: trivial character first, then by degree, then
    // by structural comparison of the value vector.
    std::vector<int> order(r);
    std::iota(order.begin(), order.end(), 0);
    const CycloNum one = CycloNum::one(e);
    auto is_trivial = [&](int i) {
        if (degree[i] != 1) return false;
        for (int k = 0; k < r; ++k)
            if (!(rows[i][k] == one)) return false;
        return true;
    };
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const bool ta = is_trivial(a), tb = is_trivial(b);
        if (ta != tb) return ta;
        if (degree[a] != degree[b]) return degree[a] < degree[b];
        for (int k = 0; k < r; ++k) {
            const int c = CycloNum::compare(rows[a][k], rows[b][k]);
            if (c != 0) return c < 0;
        }
        return false;
    });
    if (!is_trivial(order[0]))
        throw std::logic_error("character table: trivial character missing");
    for (int i : order) {
        T.degrees.push_back(degree[i]);
        T.rows.push_back(std::move(rows[i]));
    }
    return T;
}

// Multiplicity of psi (irreducible of the materialized subgroup) in the
// restriction of phi (irreducible of the parent table).  Exact; throws if the
// inner product is not a nonnegative integer.
inline long restriction_multiplicity(const CharacterTable& big, int phi,
                                     const MaterializedSubgroup& sub,
                                     const CharacterTable& small, int psi) {
    const long M = std::lcm(big.conductor, small.conductor);
    CycloNum acc = CycloNum::zero(M);
    for (int s = 0; s < sub.group.order; ++s)
        acc = acc + big.value(phi, sub.embed[s]).promote(M) *
                        small.value(psi, s).promote(M).conj();
    acc = Rational(1, sub.group.order) * acc;
    auto q = acc.as_rational();
    if (!q || q->get_den() != 1 || *q < 0)
        throw std::logic_error("restriction multiplicity is not a nonnegative integer");
    return q->get_num().get_si();
}

// Stabilizer of chi (an irreducible of the normal subgroup H) under the
// conjugation action of G.
inline Subgroup chi_stabilizer(const FiniteGroup& G, const MaterializedSubgroup& H,
                               const CharacterTable& h_table, int chi) {
    std::vector<int> members;
    for (int g = 0; g < G.order; ++g) {
        bool ok = true;
        for (int hl = 0; hl < H.group.order && ok; ++hl) {
            const int conj = G.mult[G.mult[G.inv[g]][H.embed[hl]]][g];
            ok = h_table.value(chi, H.local(conj)) == h_table.value(chi, hl);
        }
        if (ok) members.push_back(g);
    }
    return make_subgroup(G, members);
}

}  // namespace equivect
