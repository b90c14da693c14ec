#pragma once

// Exact 3-vectors and 3x3 matrices over a cyclotomic field, plus a small
// Gaussian solver.  All entries of one object share a conductor.

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "equivect/cyclotomic.hpp"

namespace equivect {

struct ExactVec3 {
    std::array<CycloNum, 3> v;

    const CycloNum& operator[](int i) const { return v[i]; }
    CycloNum& operator[](int i) { return v[i]; }

    friend bool operator==(const ExactVec3& a, const ExactVec3& b) { return a.v == b.v; }
    friend bool operator!=(const ExactVec3& a, const ExactVec3& b) { return !(a == b); }

    friend ExactVec3 operator+(const ExactVec3& a, const ExactVec3& b) {
        return {{a[0] + b[0], a[1] + b[1], a[2] + b[2]}};
    }
    friend ExactVec3 operator-(const ExactVec3& a, const ExactVec3& b) {
        return {{a[0] - b[0], a[1] - b[1], a[2] - b[2]}};
    }
    ExactVec3 operator-() const { return {{-v[0], -v[1], -v[2]}}; }

    friend ExactVec3 operator*(const Rational& s, const ExactVec3& a) {
        return {{s * a[0], s * a[1], s * a[2]}};
    }

    CycloNum dot(const ExactVec3& o) const {
        return v[0] * o[0] + v[1] * o[1] + v[2] * o[2];
    }
    CycloNum norm2() const { return dot(*this); }

    ExactVec3 promote(long target) const {
        return {{v[0].promote(target), v[1].promote(target), v[2].promote(target)}};
    }
};

inline ExactVec3 exact_vec3_rational(long conductor, const Rational& x, const Rational& y,
                                     const Rational& z) {
    return {{CycloNum::from_rational(conductor, x), CycloNum::from_rational(conductor, y),
             CycloNum::from_rational(conductor, z)}};
}

struct ExactMat3 {
    std::array<CycloNum, 9> m;  // row-major

    const CycloNum& at(int r, int c) const { return m[3 * r + c]; }
    CycloNum& at(int r, int c) { return m[3 * r + c]; }

    friend bool operator==(const ExactMat3& a, const ExactMat3& b) { return a.m == b.m; }
    friend bool operator!=(const ExactMat3& a, const ExactMat3& b) { return !(a == b); }

    static ExactMat3 identity(long conductor) {
        ExactMat3 r = zero(conductor);
        for (int i = 0; i < 3; ++i) r.at(i, i) = CycloNum::one(conductor);
        return r;
    }

    static ExactMat3 zero(long conductor) {
        ExactMat3 r;
        for (auto& e : r.m) e = CycloNum::zero(conductor);
        return r;
    }

    // diag(a, b, c) with rational entries.
    static ExactMat3 diag_rational(long conductor, const Rational& a, const Rational& b,
                                   const Rational& c) {
        ExactMat3 r = zero(conductor);
        r.at(0, 0) = CycloNum::from_rational(conductor, a);
        r.at(1, 1) = CycloNum::from_rational(conductor, b);
        r.at(2, 2) = CycloNum::from_rational(conductor, c);
        return r;
    }

    friend ExactMat3 operator*(const ExactMat3& a, const ExactMat3& b) {
        const long M = a.m[0].conductor();
        ExactMat3 r = zero(M);
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (int j = 0; j < 3; ++j) {
                    if (b.at(k, j).is_zero()) continue;
                    r.at(i, j) = r.at(i, j) + a.at(i, k) * b.at(k, j);
                }
            }
        return r;
    }

    friend ExactVec3 operator*(const ExactMat3& a, const ExactVec3& x) {
        const long M = a.m[0].conductor();
        ExactVec3 r{{CycloNum::zero(M), CycloNum::zero(M), CycloNum::zero(M)}};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (a.at(i, j).is_zero()) continue;
                r[i] = r[i] + a.at(i, j) * x[j];
            }
        return r;
    }

    ExactMat3 operator-() const {
        ExactMat3 r = *this;
        for (auto& e : r.m) e = -e;
        return r;
    }

    ExactMat3 transpose() const {
        ExactMat3 r = *this;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < i; ++j) std::swap(r.at(i, j), r.at(j, i));
        return r;
    }

    CycloNum det() const {
        return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
               at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
               at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
    }

    bool is_orthogonal() const {
        return transpose() * (*this) == identity(m[0].conductor());
    }

    ExactMat3 promote(long target) const {
        ExactMat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i].promote(target);
        return r;
    }
};

struct ExactMat3Less {
    bool operator()(const ExactMat3& a, const ExactMat3& b) const {
        for (int i = 0; i < 9; ++i) {
            const int c = CycloNum::compare(a.m[i], b.m[i]);
            if (c != 0) return c < 0;
        }
        return false;
    }
};

// Solve A x = b exactly over the field, A given row-major with `rows` rows and
// `cols` columns.  Returns nullopt when inconsistent; free variables are 0.
inline std::optional<std::vector<CycloNum>> solve_exact(
    std::vector<std::vector<CycloNum>> a, std::vector<CycloNum> b, long conductor) {
    const long rows = static_cast<long>(a.size());
    const long cols = rows ? static_cast<long>(a[0].size()) : 0;
    long rank = 0;
    std::vector<long> pivot_col;
    for (long c = 0; c < cols && rank < rows; ++c) {
        long p = -1;
        for (long r = rank; r < rows; ++r)
            if (!a[r][c].is_zero()) { p = r; break; }
        if (p < 0) continue;
        std::swap(a[rank], a[p]);
        std::swap(b[rank], b[p]);
        const CycloNum lead_inv = a[rank][c].inverse();
        for (long j = c; j < cols; ++j) a[rank][j] = a[rank][j] * lead_inv;
        b[rank] = b[rank] * lead_inv;
        for (long r = 0; r < rows; ++r) {
            if (r == rank || a[r][c].is_zero()) continue;
            const CycloNum f = a[r][c];
            for (long j = c; j < cols; ++j) a[r][j] = a[r][j] - f * a[rank][j];
            b[r] = b[r] - f * b[rank];
        }
        pivot_col.push_back(c);
        ++rank;
    }
    for (long r = rank; r < rows; ++r)
        if (!b[r].is_zero()) return std::nullopt;
    std::vector<CycloNum> x(cols, CycloNum::zero(conductor));
    for (long r = 0; r < rank; ++r) x[pivot_col[r]] = b[r];
    return x;
}

}  // namespace equivect
