#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_M), represented as residues
// modulo the M-th cyclotomic polynomial with arbitrary-precision rational
// coefficients.  Equality of field elements is a coefficient comparison,
// which is what makes exact stabilizer tests downstream decidable.

#include <gmpxx.h>

#include <complex>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace equivect {

using Rational = mpq_class;

inline long euler_phi(long m) {
    long result = m;
    long n = m;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            result -= result / p;
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

namespace detail {

// Exact division of integer polynomials, quotient known to be integral.
// Coefficients ascending; leading coefficient of the divisor must be 1 or -1.
inline std::vector<mpz_class> poly_div_exact(std::vector<mpz_class> num,
                                             const std::vector<mpz_class>& den) {
    const long dn = static_cast<long>(num.size()) - 1;
    const long dd = static_cast<long>(den.size()) - 1;
    if (dn < dd) throw std::logic_error("poly_div_exact: degree underflow");
    std::vector<mpz_class> quot(dn - dd + 1, 0);
    for (long d = dn; d >= dd; --d) {
        mpz_class c = num[d] / den[dd];
        quot[d - dd] = c;
        if (c == 0) continue;
        for (long j = 0; j <= dd; ++j) num[d - dd + j] -= c * den[j];
    }
    for (const auto& c : num)
        if (c != 0) throw std::logic_error("poly_div_exact: nonzero remainder");
    return quot;
}

}  // namespace detail

// Monic integer coefficients of Phi_M, ascending degree, cached per conductor.
inline const std::vector<mpz_class>& cyclotomic_polynomial(long m) {
    static std::map<long, std::vector<mpz_class>> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    if (m < 1) throw std::invalid_argument("cyclotomic_polynomial: conductor must be >= 1");

    // x^m - 1 divided by the product of Phi_d over proper divisors d | m.
    std::vector<mpz_class> num(m + 1, 0);
    num[0] = -1;
    num[m] = 1;
    for (long d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        num = detail::poly_div_exact(std::move(num), cyclotomic_polynomial(d));
    }
    return cache.emplace(m, std::move(num)).first->second;
}

// One element of Q(zeta_M).  coeffs()[j] multiplies zeta_M^j, j < phi(M).
class CycloNum {
public:
    CycloNum() : conductor_(1), coeffs_(1, Rational(0)) {}

    static CycloNum zero(long conductor) { return CycloNum(conductor); }

    static CycloNum one(long conductor) {
        CycloNum x(conductor);
        x.coeffs_[0] = 1;
        return x;
    }

    static CycloNum from_rational(long conductor, const Rational& r) {
        CycloNum x(conductor);
        x.coeffs_[0] = r;
        // mpq arithmetic and comparison assume canonical operands, but
        // mpq_class(n, d) does not reduce n/d itself.
        x.coeffs_[0].canonicalize();
        return x;
    }

    // zeta_M^k for any integer k (reduced mod M, then mod Phi_M).
    static CycloNum zeta_pow(long conductor, long k) {
        k %= conductor;
        if (k < 0) k += conductor;
        std::vector<Rational> raw(static_cast<size_t>(k) + 1, Rational(0));
        raw.back() = 1;
        return CycloNum(conductor, std::move(raw));
    }

    long conductor() const { return conductor_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    bool is_rational() const {
        for (size_t j = 1; j < coeffs_.size(); ++j)
            if (coeffs_[j] != 0) return false;
        return true;
    }

    Rational rational_value() const {
        if (!is_rational()) throw std::domain_error("CycloNum: not rational");
        return coeffs_[0];
    }

    bool is_integer(long* out = nullptr) const {
        if (!is_rational()) return false;
        if (coeffs_[0].get_den() != 1) return false;
        if (out) {
            if (!coeffs_[0].get_num().fits_slong_p())
                throw std::overflow_error("CycloNum: integer too large");
            *out = coeffs_[0].get_num().get_si();
        }
        return true;
    }

    friend CycloNum operator+(const CycloNum& a, const CycloNum& b) {
        a.require_same_conductor(b);
        CycloNum r = a;
        for (size_t j = 0; j < r.coeffs_.size(); ++j) r.coeffs_[j] += b.coeffs_[j];
        return r;
    }

    friend CycloNum operator-(const CycloNum& a, const CycloNum& b) {
        a.require_same_conductor(b);
        CycloNum r = a;
        for (size_t j = 0; j < r.coeffs_.size(); ++j) r.coeffs_[j] -= b.coeffs_[j];
        return r;
    }

    CycloNum operator-() const {
        CycloNum r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend CycloNum operator*(const CycloNum& a, const CycloNum& b) {
        a.require_same_conductor(b);
        std::vector<Rational> prod(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (size_t j = 0; j < b.coeffs_.size(); ++j) {
                if (b.coeffs_[j] == 0) continue;
                prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return CycloNum(a.conductor_, std::move(prod));
    }

    friend CycloNum operator*(const Rational& s, const CycloNum& a) {
        Rational t = s;
        t.canonicalize();  // see from_rational
        CycloNum r = a;
        for (auto& c : r.coeffs_) c *= t;
        return r;
    }

    // Multiplicative inverse via the extended Euclidean algorithm in Q[x]
    // against Phi_M (irreducible over Q, so every nonzero residue is a unit).
    CycloNum inverse() const {
        if (is_zero()) throw std::domain_error("CycloNum: division by zero");
        std::vector<Rational> r0 = phi_as_rationals();
        std::vector<Rational> r1 = coeffs_;
        trim(r1);
        std::vector<Rational> t0{Rational(0)}, t1{Rational(1)};
        while (true) {
            if (r1.size() == 1) break;  // nonzero constant: done
            auto [q, rem] = poly_divmod(r0, r1);
            r0 = std::move(r1);
            r1 = std::move(rem);
            if (r1.empty()) throw std::logic_error("CycloNum: gcd degenerated");
            auto t2 = poly_sub(t0, poly_mul(q, t1));
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        const Rational lead = r1[0];
        std::vector<Rational> inv = t1;
        for (auto& c : inv) c /= lead;
        return CycloNum(conductor_, std::move(inv));
    }

    friend CycloNum operator/(const CycloNum& a, const CycloNum& b) { return a * b.inverse(); }

    friend bool operator==(const CycloNum& a, const CycloNum& b) {
        return a.conductor_ == b.conductor_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const CycloNum& a, const CycloNum& b) { return !(a == b); }

    // Complex conjugation, i.e. the Galois map zeta -> zeta^{-1}.
    CycloNum conj() const {
        std::vector<Rational> raw(conductor_, Rational(0));
        raw[0] = coeffs_[0];
        for (size_t j = 1; j < coeffs_.size(); ++j)
            raw[conductor_ - j] += coeffs_[j];
        return CycloNum(conductor_, std::move(raw));
    }

    bool is_real() const { return *this == conj(); }

    // Reinterpret in Q(zeta_target) for conductor_ | target.
    CycloNum promote(long target) const {
        if (target == conductor_) return *this;
        if (target % conductor_ != 0)
            throw std::invalid_argument("CycloNum::promote: conductor must divide target");
        const long stride = target / conductor_;
        std::vector<Rational> raw(static_cast<size_t>(stride) * (coeffs_.size() - 1) + 1,
                                  Rational(0));
        for (size_t j = 0; j < coeffs_.size(); ++j) raw[stride * j] = coeffs_[j];
        return CycloNum(target, std::move(raw));
    }

    // Express in the subfield Q(zeta_target), target | conductor_, when possible.
    std::optional<CycloNum> try_demote(long target) const {
        if (target == conductor_) return *this;
        if (target < 1 || conductor_ % target != 0)
            throw std::invalid_argument("CycloNum::try_demote: target must divide conductor");
        const long cols = euler_phi(target);
        const long rows = static_cast<long>(coeffs_.size());
        // Solve promote(sum x_i zeta_target^i) = *this by Gaussian elimination.
        std::vector<std::vector<Rational>> aug(rows, std::vector<Rational>(cols + 1, Rational(0)));
        for (long i = 0; i < cols; ++i) {
            CycloNum basis = CycloNum::zeta_pow(target, i).promote(conductor_);
            for (long r = 0; r < rows; ++r) aug[r][i] = basis.coeffs_[r];
        }
        for (long r = 0; r < rows; ++r) aug[r][cols] = coeffs_[r];

        long rank = 0;
        std::vector<long> pivot_col;
        for (long c = 0; c < cols && rank < rows; ++c) {
            long p = -1;
            for (long r = rank; r < rows; ++r)
                if (aug[r][c] != 0) { p = r; break; }
            if (p < 0) continue;
            std::swap(aug[rank], aug[p]);
            const Rational lead = aug[rank][c];
            for (long j = c; j <= cols; ++j) aug[rank][j] /= lead;
            for (long r = 0; r < rows; ++r) {
                if (r == rank || aug[r][c] == 0) continue;
                const Rational f = aug[r][c];
                for (long j = c; j <= cols; ++j) aug[r][j] -= f * aug[rank][j];
            }
            pivot_col.push_back(c);
            ++rank;
        }
        for (long r = rank; r < rows; ++r)
            if (aug[r][cols] != 0) return std::nullopt;
        std::vector<Rational> sol(cols, Rational(0));
        for (long r = 0; r < rank; ++r) sol[pivot_col[r]] = aug[r][cols];
        return CycloNum(target, std::move(sol));
    }

    CycloNum demote(long target) const {
        auto r = try_demote(target);
        if (!r) throw std::domain_error("CycloNum::demote: value not in subfield");
        return *r;
    }

    // The value as a rational number, when it is one.
    std::optional<Rational> as_rational() const {
        auto r = try_demote(1);
        if (!r) return std::nullopt;
        return r->coeffs_.empty() ? Rational(0) : r->coeffs_[0];
    }

    std::complex<double> eval() const {
        std::complex<double> acc(0.0, 0.0);
        const double step = 2.0 * 3.14159265358979323846264338327950288 / conductor_;
        for (size_t j = 0; j < coeffs_.size(); ++j) {
            if (coeffs_[j] == 0) continue;
            const double c = coeffs_[j].get_d();
            acc += std::complex<double>(c * std::cos(step * j), c * std::sin(step * j));
        }
        return acc;
    }

    // Sign of a real cyclotomic value: exact zero test first, then a numeric
    // evaluation with a safety margin.  Aborts rather than guessing when the
    // value is nonzero but numerically indistinguishable from zero.
    int sign_of_real() const {
        if (!is_real()) throw std::domain_error("CycloNum::sign_of_real: value is not real");
        if (is_zero()) return 0;
        double magnitude = 0.0;
        for (const auto& c : coeffs_) magnitude += std::abs(c.get_d());
        const double margin = 1e-12 * (1.0 + magnitude);
        const double v = eval().real();
        if (std::abs(v) <= margin)
            throw std::runtime_error("CycloNum::sign_of_real: below numeric guard");
        return v > 0 ? 1 : -1;
    }

    // Structural total order (conductor, then coefficients); used for
    // deterministic container ordering, not numeric comparison.
    static int compare(const CycloNum& a, const CycloNum& b) {
        if (a.conductor_ != b.conductor_) return a.conductor_ < b.conductor_ ? -1 : 1;
        for (size_t j = 0; j < a.coeffs_.size(); ++j) {
            const int c = cmp(a.coeffs_[j], b.coeffs_[j]);
            if (c != 0) return c;
        }
        return 0;
    }

    // Renders as a polynomial in z = exp(2*pi*i/conductor), e.g. "-1-z3".
    std::string to_string() const {
        std::string s;
        const std::string z = "z" + std::to_string(conductor_);
        for (size_t j = 0; j < coeffs_.size(); ++j) {
            if (coeffs_[j] == 0) continue;
            const bool neg = coeffs_[j] < 0;
            Rational a = neg ? Rational(-coeffs_[j]) : coeffs_[j];
            s += neg ? "-" : (s.empty() ? "" : "+");
            if (a != 1 || j == 0) s += a.get_str();
            if (j > 0) {
                if (a != 1) s += "*";
                s += z;
                if (j > 1) s += "^" + std::to_string(j);
            }
        }
        return s.empty() ? "0" : s;
    }

private:
    explicit CycloNum(long conductor)
        : conductor_(conductor), coeffs_(euler_phi(conductor), Rational(0)) {
        if (conductor < 1) throw std::invalid_argument("CycloNum: conductor must be >= 1");
    }

    // From a raw polynomial in zeta of arbitrary degree; reduces mod Phi_M.
    CycloNum(long conductor, std::vector<Rational> raw) : CycloNum(conductor) {
        const auto& phi = cyclotomic_polynomial(conductor);
        const long deg_phi = static_cast<long>(phi.size()) - 1;
        for (long d = static_cast<long>(raw.size()) - 1; d >= deg_phi; --d) {
            if (raw[d] == 0) continue;
            const Rational c = raw[d];
            raw[d] = 0;
            for (long j = 0; j < deg_phi; ++j)
                raw[d - deg_phi + j] -= c * Rational(phi[j]);
        }
        for (size_t j = 0; j < coeffs_.size() && j < raw.size(); ++j) coeffs_[j] = raw[j];
    }

    void require_same_conductor(const CycloNum& other) const {
        if (conductor_ != other.conductor_)
            throw std::invalid_argument("CycloNum: conductor mismatch (promote first)");
    }

    std::vector<Rational> phi_as_rationals() const {
        const auto& phi = cyclotomic_polynomial(conductor_);
        std::vector<Rational> r(phi.size());
        for (size_t j = 0; j < phi.size(); ++j) r[j] = Rational(phi[j]);
        return r;
    }

    static void trim(std::vector<Rational>& p) {
        while (p.size() > 1 && p.back() == 0) p.pop_back();
    }

    static std::vector<Rational> poly_mul(const std::vector<Rational>& a,
                                          const std::vector<Rational>& b) {
        std::vector<Rational> r(a.size() + b.size() - 1, Rational(0));
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        trim(r);
        return r;
    }

    static std::vector<Rational> poly_sub(const std::vector<Rational>& a,
                                          const std::vector<Rational>& b) {
        std::vector<Rational> r(std::max(a.size(), b.size()), Rational(0));
        for (size_t j = 0; j < a.size(); ++j) r[j] += a[j];
        for (size_t j = 0; j < b.size(); ++j) r[j] -= b[j];
        trim(r);
        return r;
    }

    static std::pair<std::vector<Rational>, std::vector<Rational>> poly_divmod(
        std::vector<Rational> num, const std::vector<Rational>& den) {
        std::vector<Rational> quot(
            num.size() >= den.size() ? num.size() - den.size() + 1 : 1, Rational(0));
        const long dd = static_cast<long>(den.size()) - 1;
        for (long d = static_cast<long>(num.size()) - 1; d >= dd; --d) {
            if (num[d] == 0) continue;
            const Rational c = num[d] / den[dd];
            quot[d - dd] = c;
            for (long j = 0; j <= dd; ++j) num[d - dd + j] -= c * den[j];
        }
        trim(num);
        if (num.size() == 1 && num[0] == 0) num.clear();
        trim(quot);
        return {std::move(quot), std::move(num)};
    }

    long conductor_;
    std::vector<Rational> coeffs_;
};

struct CycloLess {
    bool operator()(const CycloNum& a, const CycloNum& b) const {
        return CycloNum::compare(a, b) < 0;
    }
};

// Common real constants as exact cyclotomic values.

inline CycloNum cyclo_cos2pi(long n, long conductor) {
    // cos(2*pi/n) = (zeta_n + zeta_n^{-1}) / 2; needs n | conductor.
    if (conductor % n != 0) throw std::invalid_argument("cyclo_cos2pi: n must divide conductor");
    const long s = conductor / n;
    return Rational(1, 2) *
           (CycloNum::zeta_pow(conductor, s) + CycloNum::zeta_pow(conductor, -s));
}

inline CycloNum cyclo_sin2pi(long n, long conductor) {
    // sin(2*pi/n) = (zeta_n - zeta_n^{-1}) / (2i); needs lcm(4,n) | conductor.
    if (conductor % n != 0 || conductor % 4 != 0)
        throw std::invalid_argument("cyclo_sin2pi: lcm(4,n) must divide conductor");
    const long s = conductor / n;
    const CycloNum i = CycloNum::zeta_pow(conductor, conductor / 4);
    return Rational(1, 2) *
           ((CycloNum::zeta_pow(conductor, s) - CycloNum::zeta_pow(conductor, -s)) / i);
}

inline CycloNum cyclo_cos2pi_frac(long k, long n, long conductor) {
    // cos(2*pi*k/n); needs n | conductor.
    if (conductor % n != 0)
        throw std::invalid_argument("cyclo_cos2pi_frac: n must divide conductor");
    const long s = conductor / n;
    return Rational(1, 2) *
           (CycloNum::zeta_pow(conductor, s * k) + CycloNum::zeta_pow(conductor, -s * k));
}

inline CycloNum cyclo_sin2pi_frac(long k, long n, long conductor) {
    // sin(2*pi*k/n); needs lcm(4,n) | conductor.
    if (conductor % n != 0 || conductor % 4 != 0)
        throw std::invalid_argument("cyclo_sin2pi_frac: lcm(4,n) must divide conductor");
    const long s = conductor / n;
    const CycloNum i = CycloNum::zeta_pow(conductor, conductor / 4);
    return Rational(1, 2) *
           ((CycloNum::zeta_pow(conductor, s * k) - CycloNum::zeta_pow(conductor, -s * k)) / i);
}

// (1 + sqrt 5)/2 with sqrt 5 as the quadratic Gauss sum in Q(zeta_5).
inline CycloNum cyclo_golden_ratio(long conductor) {
    if (conductor % 5 != 0)
        throw std::invalid_argument("cyclo_golden_ratio: 5 must divide conductor");
    const long s = conductor / 5;
    CycloNum sqrt5 = CycloNum::zeta_pow(conductor, s) - CycloNum::zeta_pow(conductor, 2 * s) -
                     CycloNum::zeta_pow(conductor, 3 * s) + CycloNum::zeta_pow(conductor, 4 * s);
    return Rational(1, 2) * (CycloNum::one(conductor) + sqrt5);
}

}  // namespace equivect
