#pragma once

// Numerical clutching laboratory for the twin regime (odd cyclic rotation
// image).  Bundles over the projective plane are realized by transition maps
// on the equator circle sampled on a uniform grid; the binary twist invariant
// is read off the winding of the commutant determinant.
//
// Parameterization: the equator of the 2n-gon model is the parameter line
// t in [0, 2n], vertex j at t = j.  A transition map satisfies
//   (rotation equivariance)   Phi(t + 2) = U Phi(t) U*        (U = basic rotation)
//   (antipodal compatibility) Phi(t + n) = Phi(t)^{-1}
// and takes values in the commutant of the kernel action, Phi = phi ⊗ I_d.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "equivect/characters.hpp"
#include "equivect/errors.hpp"
#include "equivect/group.hpp"

namespace equivect {

using Eigen::MatrixXcd;
using complexd = std::complex<double>;

// ---------------------------------------------------------------------------
// Concrete unitary fiber model: a representation U of the character
// stabilizer on C^k ⊗ C^d whose kernel part acts as I_k ⊗ V, with V carrying
// the fiber character.  The commutant is M_k ⊗ I_d.

struct UnitaryRepModel {
    const FiniteGroup* group = nullptr;  // the character stabilizer
    long k = 1;  // commutant multiplicity
    long d = 1;  // fiber character degree
    long n = 1;  // order of the (odd cyclic) rotation image
    int g1 = 0;  // element projecting to the basic rotation
    std::vector<MatrixXcd> U;

    long dim() const { return k * d; }

    MatrixXcd embed(const MatrixXcd& a) const {
        MatrixXcd m = MatrixXcd::Zero(k * d, k * d);
        for (long i = 0; i < k; ++i)
            for (long j = 0; j < k; ++j)
                for (long s = 0; s < d; ++s) m(i * d + s, j * d + s) = a(i, j);
        return m;
    }

    MatrixXcd extract(const MatrixXcd& m) const {
        MatrixXcd a = MatrixXcd::Zero(k, k);
        for (long i = 0; i < k; ++i)
            for (long j = 0; j < k; ++j) {
                complexd acc = 0;
                for (long s = 0; s < d; ++s) acc += m(i * d + s, j * d + s);
                a(i, j) = acc / static_cast<double>(d);
            }
        return a;
    }

    void verify(const std::vector<int>& h_locals, const std::vector<MatrixXcd>& v_of_h,
                double tol = 1e-10) const {
        for (int g = 0; g < group->order; ++g)
            for (int h = 0; h < group->order; ++h)
                if ((U[g] * U[h] - U[group->mul(g, h)]).norm() > tol)
                    throw std::logic_error("fiber model is not multiplicative");
        for (std::size_t i = 0; i < h_locals.size(); ++i) {
            MatrixXcd want = MatrixXcd::Zero(k * d, k * d);
            for (long a = 0; a < k; ++a)
                want.block(a * d, a * d, d, d) = v_of_h[i];
            if ((U[h_locals[i]] - want).norm() > tol)
                throw std::logic_error("fiber model kernel part is not I ⊗ V");
        }
    }
};

namespace detail {

inline std::optional<std::vector<MatrixXcd>> word_extend_from_pair(
    const FiniteGroup& G, int x, int y, const MatrixXcd& vx, const MatrixXcd& vy) {
    if (G.elements.empty()) return std::nullopt;
    FiniteGroup rebuilt;
    try {
        rebuilt = build_group({G.elements[x], G.elements[y]}, G.order + 1, "rebuilt");
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (rebuilt.order != G.order) return std::nullopt;
    const auto vals = rebuilt.extend_from_generators<MatrixXcd>(
        {vx, vy}, MatrixXcd::Identity(vx.rows(), vx.cols()),
        [](const MatrixXcd& a, const MatrixXcd& b) { return a * b; });
    std::map<Permutation, int> index;
    for (int g = 0; g < rebuilt.order; ++g) index[rebuilt.elements[g]] = g;
    std::vector<MatrixXcd> out(G.order);
    for (int g = 0; g < G.order; ++g) out[g] = vals[index.at(G.elements[g])];
    return out;
}

// Degree-2 fiber models for the kernel groups we know how to realize
// concretely: the quaternion group and the dihedral rotation models.
inline std::optional<std::vector<MatrixXcd>> degree2_kernel_model(
    const FiniteGroup& H, const std::vector<CycloNum>& chi /* by local element */) {
    auto trace_matches = [&](const std::vector<MatrixXcd>& v) {
        for (int h = 0; h < H.order; ++h) {
            const complexd want = chi[h].eval();
            if (std::abs(v[h].trace() - want) > 1e-8) return false;
        }
        return true;
    };
    const complexd i01(0.0, 1.0);

    // Quaternion-type generating pair: x, y of order 4 with y^2 = x^2 and
    // y x y^{-1} = x^{-1}.
    for (int x = 0; x < H.order; ++x) {
        if (H.element_order(x) != 4) continue;
        for (int y = 0; y < H.order; ++y) {
            if (H.element_order(y) != 4) continue;
            const int x2 = H.mul(x, x);
            if (H.mul(y, y) != x2) continue;
            if (H.conjugate(y, x) != H.inv[x]) continue;
            MatrixXcd vx(2, 2), vy(2, 2);
            vx << i01, 0, 0, -i01;
            vy << 0, 1, -1, 0;
            auto v = word_extend_from_pair(H, x, y, vx, vy);
            if (v && trace_matches(*v)) return v;
        }
    }

    // Dihedral rotation pair: r of order m >= 3 and an inverting involution.
    for (int r = 0; r < H.order; ++r) {
        const int m = H.element_order(r);
        if (m < 3) continue;
        for (int s = 0; s < H.order; ++s) {
            if (H.element_order(s) != 2) continue;
            if (H.conjugate(s, r) != H.inv[r]) continue;
            // Choose the rotation eigenvalue from the character value.
            const complexd c = chi[r].eval();
            const double im2 = 1.0 - std::norm(c) / 4.0;
            if (im2 < -1e-9) continue;
            const complexd w(c.real() / 2.0, std::sqrt(std::max(0.0, im2)));
            MatrixXcd vr(2, 2), vs(2, 2);
            vr << w, 0, 0, std::conj(w);
            vs << 0, 1, 1, 0;
            auto v = word_extend_from_pair(H, r, s, vr, vs);
            if (v && trace_matches(*v)) return v;
        }
    }
    return std::nullopt;
}

}  // namespace detail

// Build a concrete fiber model for multiplicity k over the character chi of
// the kernel.  `h_locals` lists the kernel as local indices of `Gchi`,
// `chi_values` the exact character on them (same order).
inline UnitaryRepModel build_rep_model(const FiniteGroup& Gchi, const std::vector<int>& h_locals,
                                       const std::vector<CycloNum>& chi_values, long chi_deg,
                                       long k, long n, int g1) {
    UnitaryRepModel M;
    M.group = &Gchi;
    M.k = k;
    M.d = chi_deg;
    M.n = n;
    M.g1 = g1;

    std::vector<int> is_h(Gchi.order, -1);
    for (std::size_t i = 0; i < h_locals.size(); ++i) is_h[h_locals[i]] = static_cast<int>(i);

    // A linear character of the stabilizer extending chi gives the simplest
    // model: U(g) = lambda(g) I.
    if (chi_deg == 1) {
        const CharacterTable table = character_table(Gchi);
        const long Mc = std::lcm(table.conductor,
                                 chi_values.empty() ? 1 : chi_values[0].conductor());
        for (int row = 0; row < table.irrep_count(); ++row) {
            if (table.degrees[row] != 1) continue;
            bool extends = true;
            for (std::size_t i = 0; i < h_locals.size() && extends; ++i)
                extends = table.value(row, h_locals[i]).promote(Mc) == chi_values[i].promote(Mc);
            if (!extends) continue;
            M.U.resize(Gchi.order);
            for (int g = 0; g < Gchi.order; ++g)
                M.U[g] = table.value(row, g).eval() * MatrixXcd::Identity(k, k);
            std::vector<MatrixXcd> v_of_h;
            for (std::size_t i = 0; i < h_locals.size(); ++i) {
                MatrixXcd v(1, 1);
                v(0, 0) = chi_values[i].eval();
                v_of_h.push_back(v);
            }
            M.verify(h_locals, v_of_h);
            return M;
        }
    }

    // Otherwise look for a central cyclic complement z of the kernel and set
    // U(h z^j) = zeta^j (I_k ⊗ V(h)).
    const long q = Gchi.order / static_cast<long>(h_locals.size());
    int z = -1;
    for (int c = 0; c < Gchi.order && z < 0; ++c) {
        if (Gchi.element_order(c) != q) continue;
        bool central = true;
        for (int g = 0; g < Gchi.order && central; ++g) central = Gchi.mul(c, g) == Gchi.mul(g, c);
        if (!central) continue;
        bool clean = true;
        int p = c;
        for (long j = 1; j < q && clean; ++j) {
            clean = is_h[p] < 0;
            p = Gchi.mul(p, c);
        }
        if (clean) z = c;
    }
    if (z < 0)
        throw ScopeError("no concrete fiber model: the kernel has no central cyclic complement");

    std::vector<MatrixXcd> v_of_h;
    if (chi_deg == 1) {
        for (std::size_t i = 0; i < h_locals.size(); ++i) {
            MatrixXcd v(1, 1);
            v(0, 0) = chi_values[i].eval();
            v_of_h.push_back(v);
        }
    } else if (chi_deg == 2) {
        // The kernel subgroup rebuilt as its own group, in local order.
        FiniteGroup Hg;
        Hg.order = static_cast<int>(h_locals.size());
        std::map<int, int> pos;
        for (std::size_t i = 0; i < h_locals.size(); ++i) pos[h_locals[i]] = static_cast<int>(i);
        Hg.mult.assign(Hg.order, std::vector<int>(Hg.order));
        Hg.inv.resize(Hg.order);
        for (std::size_t a = 0; a < h_locals.size(); ++a) {
            for (std::size_t b = 0; b < h_locals.size(); ++b)
                Hg.mult[a][b] = pos.at(Gchi.mul(h_locals[a], h_locals[b]));
            Hg.inv[a] = pos.at(Gchi.inv[h_locals[a]]);
            if (h_locals[a] == Gchi.id_index) Hg.id_index = static_cast<int>(a);
            if (!Gchi.elements.empty()) Hg.elements.push_back(Gchi.elements[h_locals[a]]);
        }
        auto v = detail::degree2_kernel_model(Hg, chi_values);
        if (!v)
            throw ScopeError("no concrete fiber model: unrecognized degree-2 kernel character");
        v_of_h = *v;
    } else {
        throw ScopeError("no concrete fiber model for fiber characters of degree > 2");
    }

    const complexd zeta = std::polar(1.0, 2.0 * M_PI / static_cast<double>(q));
    M.U.assign(Gchi.order, MatrixXcd());
    for (int g = 0; g < Gchi.order; ++g) {
        int zj = Gchi.id_index;
        bool placed = false;
        for (long j = 0; j < q && !placed; ++j) {
            const int h = Gchi.mul(g, Gchi.inv[zj]);
            if (is_h[h] >= 0) {
                MatrixXcd block = MatrixXcd::Zero(k * chi_deg, k * chi_deg);
                for (long a = 0; a < k; ++a)
                    block.block(a * chi_deg, a * chi_deg, chi_deg, chi_deg) = v_of_h[is_h[h]];
                M.U[g] = std::pow(zeta, static_cast<double>(j)) * block;
                placed = true;
            }
            zj = Gchi.mul(zj, z);
        }
        if (!placed) throw std::logic_error("complement decomposition failed");
    }
    M.verify(h_locals, v_of_h);
    return M;
}

// ---------------------------------------------------------------------------
// Sampled maps.

struct SampledClutchingMap {
    long n = 1;
    int N = 0;  // samples per full period [0, 2n], multiple of 2n
    std::vector<MatrixXcd> samples;  // N + 1 entries, endpoints included
};

inline int round_up_samples(int requested, long n) {
    const int block = static_cast<int>(2 * n);
    return ((requested + block - 1) / block) * block;
}

namespace detail {

inline MatrixXcd matrix_power(const MatrixXcd& u, long e) {
    MatrixXcd r = MatrixXcd::Identity(u.rows(), u.cols());
    for (long i = 0; i < e; ++i) r = r * u;
    return r;
}

// Fill the mirror part (t in (1, 2)) and propagate by rotation equivariance.
inline void complete_map(SampledClutchingMap& map, const UnitaryRepModel& model) {
    const int stride2 = map.N / static_cast<int>(map.n);
    const int half = stride2 / 2;
    const MatrixXcd um = matrix_power(model.U[model.g1], (map.n + 1) / 2);
    for (int j = half + 1; j < stride2; ++j)
        map.samples[j] = um * map.samples[j - half].adjoint() * um.adjoint();
    const MatrixXcd& ug = model.U[model.g1];
    for (int j = stride2; j <= map.N; ++j)
        map.samples[j] = ug * map.samples[j - stride2] * ug.adjoint();
}

}  // namespace detail

// The two reference bundles over a 2n-gon equator: the trivial transition map
// and the one whose commutant determinant picks up a single twist across the
// fundamental domain.
inline SampledClutchingMap assemble_clutching_map(const UnitaryRepModel& model, int requested,
                                                  bool twisted) {
    SampledClutchingMap map;
    map.n = model.n;
    map.N = round_up_samples(requested, model.n);
    map.samples.assign(map.N + 1, MatrixXcd());
    const int half = map.N / static_cast<int>(2 * map.n);
    for (int j = 0; j <= half; ++j) {
        MatrixXcd a = MatrixXcd::Identity(model.k, model.k);
        if (twisted) a(0, 0) = std::polar(1.0, 2.0 * M_PI * j / half);
        map.samples[j] = model.embed(a);
    }
    detail::complete_map(map, model);
    return map;
}

// A pseudorandom equivariant map: a random commutant value at t = 0, carried
// to the forced value at t = 1 along a geodesic with a vanishing-at-endpoints
// Hermitian wiggle, then completed by the equivariance relations.
inline SampledClutchingMap random_equivariant_map(const UnitaryRepModel& model, int requested,
                                                  std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const long k = model.k;
    auto random_hermitian = [&](double scale) {
        MatrixXcd h(k, k);
        for (long i = 0; i < k; ++i) {
            h(i, i) = gauss(rng) * scale;
            for (long j = i + 1; j < k; ++j) {
                h(i, j) = complexd(gauss(rng), gauss(rng)) * (scale / std::sqrt(2.0));
                h(j, i) = std::conj(h(i, j));
            }
        }
        return h;
    };
    auto exp_i_hermitian = [&](const MatrixXcd& h) {
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
        MatrixXcd d = MatrixXcd::Zero(k, k);
        for (long i = 0; i < k; ++i) d(i, i) = std::polar(1.0, es.eigenvalues()[i]);
        return MatrixXcd(es.eigenvectors() * d * es.eigenvectors().adjoint());
    };

    const MatrixXcd a = exp_i_hermitian(random_hermitian(0.8));
    const MatrixXcd um = detail::matrix_power(model.U[model.g1], (model.n + 1) / 2);
    const MatrixXcd b = model.extract(um * model.embed(a).adjoint() * um.adjoint());

    // Principal logarithm of the unitary a^* b.
    Eigen::ComplexEigenSolver<MatrixXcd> es(MatrixXcd(a.adjoint() * b));
    const MatrixXcd v = es.eigenvectors();
    const MatrixXcd vinv = v.inverse();
    const MatrixXcd w = random_hermitian(0.4);

    SampledClutchingMap map;
    map.n = model.n;
    map.N = round_up_samples(requested, model.n);
    map.samples.assign(map.N + 1, MatrixXcd());
    const int half = map.N / static_cast<int>(2 * map.n);
    for (int j = 0; j <= half; ++j) {
        const double t = static_cast<double>(j) / half;
        MatrixXcd d = MatrixXcd::Zero(k, k);
        for (long i = 0; i < k; ++i)
            d(i, i) = std::pow(es.eigenvalues()[i], t);  // principal power on the circle
        const MatrixXcd geo = a * v * d * vinv;
        map.samples[j] = model.embed(geo * exp_i_hermitian(std::sin(M_PI * t) * w));
    }
    detail::complete_map(map, model);
    return map;
}

// ---------------------------------------------------------------------------
// Residuals and invariants.

inline double e1_residual(const SampledClutchingMap& map) {
    const int shift = map.N / 2;
    double worst = 0.0;
    for (int j = 0; j + shift <= map.N; ++j) {
        const MatrixXcd p = map.samples[j + shift] * map.samples[j];
        worst = std::max(worst, (p - MatrixXcd::Identity(p.rows(), p.cols())).norm());
    }
    return worst;
}

inline double e2_residual(const SampledClutchingMap& map, const UnitaryRepModel& model) {
    const int stride2 = map.N / static_cast<int>(map.n);
    const MatrixXcd& u = model.U[model.g1];
    double worst = 0.0;
    for (int j = 0; j + stride2 <= map.N; ++j)
        worst = std::max(worst,
                         (map.samples[j + stride2] - u * map.samples[j] * u.adjoint()).norm());
    return worst;
}

struct OmegaResult {
    int omega = 0;       // the binary twist
    long mhat = 0;       // integer lift: delta(t+n) + delta(t) = 2 pi mhat
    double lift_residual = 0.0;       // distance of the lift relation from 2 pi Z
    double roundtrip_residual = 0.0;  // arg lift reproduces the determinant samples
};

// Twist of an equivariant map, read from the commutant determinant.  The
// determinant is 2-periodic up to conjugation, and the antipodal relation
// pins delta(t+n) + delta(t) to a constant 2 pi integer whose parity is the
// twist.
inline OmegaResult q_omega(const SampledClutchingMap& map, const UnitaryRepModel& model) {
    std::vector<complexd> dets;
    for (const auto& s : map.samples) dets.push_back(model.extract(s).determinant());
    std::vector<double> theta(dets.size());
    theta[0] = std::arg(dets[0]);
    for (std::size_t j = 1; j < dets.size(); ++j) {
        const double step = std::arg(dets[j] / dets[j - 1]);
        if (!(std::abs(step) < M_PI / 2))
            throw std::runtime_error("winding guard: determinant step too large, undersampled");
        theta[j] = theta[j - 1] + step;
    }
    OmegaResult r;
    double roundtrip = 0.0;
    for (std::size_t j = 0; j < dets.size(); ++j)
        roundtrip = std::max(roundtrip,
                             std::abs(std::polar(1.0, theta[j]) - dets[j] / std::abs(dets[j])));
    r.roundtrip_residual = roundtrip;
    const double s = theta[map.N / 2] + theta[0];
    r.mhat = std::lround(s / (2.0 * M_PI));
    r.lift_residual = std::abs(s - 2.0 * M_PI * r.mhat);
    r.omega = static_cast<int>(((r.mhat % 2) + 2) % 2);
    return r;
}

// First Chern parity of the class with the given twist.
inline int chern_from_winding(const OmegaResult& omega, long chi_deg) {
    return static_cast<int>((omega.omega * (chi_deg % 2)) % 2);
}

struct WindingResult {
    long winding = 0;
    double residual = 0.0;
};

// Integer winding of the full determinant over one period; for maps
// satisfying the antipodal relation this is the first Chern class of the
// sphere pullback and must vanish.
inline WindingResult sphere_winding(const SampledClutchingMap& map) {
    std::vector<complexd> dets;
    for (const auto& s : map.samples) dets.push_back(s.determinant());
    double theta = 0.0;
    for (std::size_t j = 1; j < dets.size(); ++j) {
        const double step = std::arg(dets[j] / dets[j - 1]);
        if (!(std::abs(step) < M_PI / 2))
            throw std::runtime_error("winding guard: determinant step too large, undersampled");
        theta += step;
    }
    WindingResult r;
    r.winding = std::lround(theta / (2.0 * M_PI));
    r.residual = std::abs(theta - 2.0 * M_PI * r.winding);
    return r;
}

}  // namespace equivect
