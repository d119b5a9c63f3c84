#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_M).  Values are stored in the
// power basis 1, z, ..., z^(phi(M)-1) reduced modulo the M-th cyclotomic
// polynomial, with a common positive denominator.  The representation is
// canonical: equal values over the same modulus have identical coefficients.

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cuspgamma {

using BigInt = mpz_class;
using BigRat = mpq_class;

namespace detail {

inline std::vector<long> divisors_of(long m) {
    std::vector<long> out;
    for (long d = 1; d * d <= m; ++d) {
        if (m % d == 0) {
            out.push_back(d);
            if (d != m / d) out.push_back(m / d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Exact division of integer polynomials, low-degree-first coefficients.
// Divisor must be monic and must divide exactly.
inline std::vector<BigInt> poly_div_exact(std::vector<BigInt> a, const std::vector<BigInt>& b) {
    const std::size_t db = b.size() - 1;
    if (b.back() != 1) throw std::invalid_argument("poly_div_exact: divisor not monic");
    if (a.size() < b.size()) throw std::invalid_argument("poly_div_exact: degree underflow");
    std::vector<BigInt> q(a.size() - db);
    for (std::size_t k = q.size(); k-- > 0;) {
        q[k] = a[k + db];
        if (q[k] == 0) continue;
        for (std::size_t i = 0; i <= db; ++i) a[k + i] -= q[k] * b[i];
    }
    for (std::size_t i = 0; i < db; ++i)
        if (a[i] != 0) throw std::invalid_argument("poly_div_exact: nonzero remainder");
    return q;
}

}  // namespace detail

// Immutable per-modulus tables: the cyclotomic polynomial Phi_M and canonical
// coefficient rows of z^k for 0 <= k < M.  Shared via a process-wide registry.
class CycContext {
public:
    static const CycContext& get(long modulus) {
        if (modulus < 1) throw std::invalid_argument("cyclotomic modulus must be >= 1");
        if (modulus > 100000) throw std::invalid_argument("cyclotomic modulus too large");
        static std::mutex mu;
        static std::map<long, std::unique_ptr<CycContext>> registry;
        std::lock_guard<std::mutex> lock(mu);
        auto it = registry.find(modulus);
        if (it == registry.end())
            it = registry.emplace(modulus, std::unique_ptr<CycContext>(new CycContext(modulus))).first;
        return *it->second;
    }

    long modulus() const { return modulus_; }
    std::size_t degree() const { return degree_; }  // phi(M)
    const std::vector<BigInt>& cyclotomic_poly() const { return phi_; }

    // Canonical coefficients of z^k modulo Phi_M; k is reduced mod M.
    const std::vector<BigInt>& power_row(long k) const {
        k %= modulus_;
        if (k < 0) k += modulus_;
        return rows_[static_cast<std::size_t>(k)];
    }

private:
    explicit CycContext(long modulus) : modulus_(modulus) {
        phi_ = cyclotomic_polynomial(modulus);
        degree_ = phi_.size() - 1;
        // z^M = 1 in Q(zeta_M), so rows for 0..M-1 cover every power.
        rows_.reserve(static_cast<std::size_t>(modulus));
        std::vector<BigInt> cur(degree_, BigInt(0));
        if (degree_ == 0) throw std::logic_error("cyclotomic polynomial of degree 0");
        cur[0] = 1;
        for (long k = 0; k < modulus; ++k) {
            rows_.push_back(cur);
            // multiply by z, reduce the overflow coefficient against Phi_M
            BigInt top = cur[degree_ - 1];
            for (std::size_t i = degree_ - 1; i > 0; --i) cur[i] = cur[i - 1];
            cur[0] = 0;
            if (top != 0)
                for (std::size_t i = 0; i < degree_; ++i) cur[i] -= top * phi_[i];
        }
    }

    static std::vector<BigInt> cyclotomic_polynomial(long m) {
        // Phi_m = (x^m - 1) / prod_{d|m, d<m} Phi_d, by exact division.
        std::vector<BigInt> num(static_cast<std::size_t>(m) + 1, BigInt(0));
        num[0] = -1;
        num[static_cast<std::size_t>(m)] = 1;
        if (m == 1) return num;
        for (long d : detail::divisors_of(m))
            if (d < m) num = detail::poly_div_exact(std::move(num), cyclotomic_polynomial(d));
        return num;
    }

    long modulus_;
    std::size_t degree_;
    std::vector<BigInt> phi_;
    std::vector<std::vector<BigInt>> rows_;
};

class CycNum {
public:
    CycNum() : modulus_(1), num_(1, BigInt(0)), den_(1) {}

    /* implicit */ CycNum(long v) : modulus_(1), num_(1, BigInt(v)), den_(1) {}

    static CycNum from_rational(BigInt numerator, BigInt denominator) {
        if (denominator == 0) throw std::domain_error("rational with zero denominator");
        CycNum r;
        r.num_[0] = std::move(numerator);
        r.den_ = std::move(denominator);
        r.normalize();
        return r;
    }

    static CycNum from_rational(const BigRat& q) {
        return from_rational(q.get_num(), q.get_den());
    }

    // zeta_M^e, canonical; e taken mod M.
    static CycNum root(long modulus, long exponent) {
        const CycContext& ctx = CycContext::get(modulus);
        CycNum r;
        r.modulus_ = modulus;
        r.num_ = ctx.power_row(exponent);
        r.den_ = 1;
        r.normalize();
        return r;
    }

    long modulus() const { return modulus_; }
    const std::vector<BigInt>& numerators() const { return num_; }
    const BigInt& denominator() const { return den_; }

    bool is_zero() const {
        for (const auto& c : num_)
            if (c != 0) return false;
        return true;
    }

    bool is_rational() const {
        for (std::size_t i = 1; i < num_.size(); ++i)
            if (num_[i] != 0) return false;
        return true;
    }

    // Valid only when is_rational().
    BigRat rational_value() const {
        if (!is_rational()) throw std::domain_error("value is not rational");
        BigRat q(num_[0], den_);
        q.canonicalize();
        return q;
    }

    // Re-express over a larger modulus (current modulus must divide it).
    CycNum promoted(long big_modulus) const {
        if (big_modulus == modulus_) return *this;
        if (big_modulus % modulus_ != 0)
            throw std::invalid_argument("promotion target modulus not a multiple");
        const CycContext& ctx = CycContext::get(big_modulus);
        const long t = big_modulus / modulus_;
        CycNum r;
        r.modulus_ = big_modulus;
        r.num_.assign(ctx.degree(), BigInt(0));
        r.den_ = den_;
        for (std::size_t i = 0; i < num_.size(); ++i) {
            if (num_[i] == 0) continue;
            const auto& row = ctx.power_row(static_cast<long>(i) * t);
            for (std::size_t j = 0; j < row.size(); ++j)
                if (row[j] != 0) r.num_[j] += num_[i] * row[j];
        }
        r.normalize();
        return r;
    }

    // Attempt to re-express over a divisor modulus.  Returns nullopt when the
    // value does not lie in the subfield.
    std::optional<CycNum> demoted(long small_modulus) const;

    // Smallest-divisor modulus that still contains the value.
    CycNum minimized() const {
        for (long d : detail::divisors_of(modulus_)) {
            if (d == modulus_) break;
            if (auto down = demoted(d)) return *down;
        }
        return *this;
    }

    // Galois map zeta -> zeta^j; requires gcd(j, M) = 1.
    CycNum galois(long j) const {
        j %= modulus_;
        if (j < 0) j += modulus_;
        if (std::gcd(j, modulus_) != 1) throw std::invalid_argument("galois exponent not coprime");
        const CycContext& ctx = CycContext::get(modulus_);
        CycNum r;
        r.modulus_ = modulus_;
        r.num_.assign(ctx.degree(), BigInt(0));
        r.den_ = den_;
        for (std::size_t i = 0; i < num_.size(); ++i) {
            if (num_[i] == 0) continue;
            const auto& row = ctx.power_row(static_cast<long>(i) * j);
            for (std::size_t k = 0; k < row.size(); ++k)
                if (row[k] != 0) r.num_[k] += num_[i] * row[k];
        }
        r.normalize();
        return r;
    }

    // Complex conjugation, zeta -> zeta^(-1).
    CycNum conj() const { return modulus_ == 1 ? *this : galois(modulus_ - 1); }

    CycNum operator-() const {
        CycNum r = *this;
        for (auto& c : r.num_) c = -c;
        return r;
    }

    friend CycNum operator+(const CycNum& a, const CycNum& b) {
        auto [x, y] = aligned(a, b);
        CycNum r;
        r.modulus_ = x.modulus_;
        r.den_ = x.den_ * y.den_;
        r.num_.resize(x.num_.size());
        for (std::size_t i = 0; i < r.num_.size(); ++i)
            r.num_[i] = x.num_[i] * y.den_ + y.num_[i] * x.den_;
        r.normalize();
        return r;
    }

    friend CycNum operator-(const CycNum& a, const CycNum& b) { return a + (-b); }

    friend CycNum operator*(const CycNum& a, const CycNum& b) {
        auto [x, y] = aligned(a, b);
        const CycContext& ctx = CycContext::get(x.modulus_);
        const std::size_t d = ctx.degree();
        CycNum r;
        r.modulus_ = x.modulus_;
        r.den_ = x.den_ * y.den_;
        if (d == 1) {
            r.num_.assign(1, x.num_[0] * y.num_[0]);
            r.normalize();
            return r;
        }
        // schoolbook convolution, skipping zero coefficients of the sparser side
        std::vector<BigInt> conv(2 * d - 1, BigInt(0));
        const CycNum* outer = &x;
        const CycNum* inner = &y;
        if (nonzero_count(y.num_) < nonzero_count(x.num_)) std::swap(outer, inner);
        for (std::size_t i = 0; i < d; ++i) {
            const BigInt& oi = outer->num_[i];
            if (oi == 0) continue;
            for (std::size_t j = 0; j < d; ++j) {
                const BigInt& ij = inner->num_[j];
                if (ij != 0) conv[i + j] += oi * ij;
            }
        }
        r.num_.assign(conv.begin(), conv.begin() + static_cast<long>(d));
        for (std::size_t k = d; k < conv.size(); ++k) {
            if (conv[k] == 0) continue;
            const auto& row = ctx.power_row(static_cast<long>(k));
            for (std::size_t i = 0; i < d; ++i)
                if (row[i] != 0) r.num_[i] += conv[k] * row[i];
        }
        r.normalize();
        return r;
    }

    CycNum inverse() const {
        if (is_zero()) throw std::domain_error("division by zero cyclotomic value");
        if (is_rational()) {
            CycNum r;
            r.modulus_ = modulus_;
            r.num_.assign(num_.size(), BigInt(0));
            r.num_[0] = den_;
            r.den_ = num_[0];
            r.normalize();
            return r;
        }
        // extended Euclid against Phi_M over Q; Phi_M irreducible, so the gcd
        // with a nonzero reduced value is a nonzero constant
        const CycContext& ctx = CycContext::get(modulus_);
        std::vector<BigRat> r0, r1, s0, s1;
        for (const auto& c : ctx.cyclotomic_poly()) r0.emplace_back(c);
        for (const auto& c : num_) r1.emplace_back(BigRat(c) / BigRat(den_));
        rat_trim(r1);
        s0.assign(1, BigRat(0));
        s1.assign(1, BigRat(1));
        while (rat_degree(r1) > 0) {
            auto [q, rem] = rat_divmod(r0, r1);
            std::vector<BigRat> s2 = rat_sub(s0, rat_mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        if (r1.empty()) throw std::logic_error("cyclotomic inverse: unexpected zero remainder");
        BigRat c = r1[0];
        CycNum out;
        out.modulus_ = modulus_;
        out.num_.assign(ctx.degree(), BigInt(0));
        // common denominator of s1 / c
        BigInt den_acc(1);
        std::vector<BigRat> coeffs(ctx.degree(), BigRat(0));
        for (std::size_t i = 0; i < s1.size() && i < coeffs.size(); ++i) {
            coeffs[i] = s1[i] / c;
            coeffs[i].canonicalize();
            BigInt d = coeffs[i].get_den();
            den_acc = den_acc / gcd(den_acc, d) * d;
        }
        out.den_ = den_acc;
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            out.num_[i] = coeffs[i].get_num() * (den_acc / coeffs[i].get_den());
        out.normalize();
        return out;
    }

    friend CycNum operator/(const CycNum& a, const CycNum& b) {
        auto [x, y] = aligned(a, b);
        return x * y.inverse();
    }

    CycNum& operator+=(const CycNum& o) { *this = *this + o; return *this; }
    CycNum& operator-=(const CycNum& o) { *this = *this - o; return *this; }
    CycNum& operator*=(const CycNum& o) { *this = *this * o; return *this; }
    CycNum& operator/=(const CycNum& o) { *this = *this / o; return *this; }

    friend bool operator==(const CycNum& a, const CycNum& b) {
        if (a.modulus_ == b.modulus_) return a.den_ == b.den_ && a.num_ == b.num_;
        auto [x, y] = aligned(a, b);
        return x.den_ == y.den_ && x.num_ == y.num_;
    }
    friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

    std::complex<double> embed() const {
        const double tau = 6.283185307179586476925286766559;
        std::complex<double> acc(0.0, 0.0);
        const double d = den_.get_d();
        for (std::size_t i = 0; i < num_.size(); ++i) {
            if (num_[i] == 0) continue;
            const double arg = tau * static_cast<double>(i) / static_cast<double>(modulus_);
            acc += (num_[i].get_d() / d) * std::complex<double>(std::cos(arg), std::sin(arg));
        }
        return acc;
    }

    // "a0 + a1*z + ..." with z = zeta_M; rationals print bare.
    std::string to_string() const {
        if (is_rational()) return rat_str(num_[0], den_);
        std::string s;
        for (std::size_t i = 0; i < num_.size(); ++i) {
            if (num_[i] == 0) continue;
            if (!s.empty()) s += " + ";
            s += rat_str(num_[i], den_);
            if (i >= 1) s += "*z" + (i > 1 ? "^" + std::to_string(i) : "");
        }
        if (s.empty()) s = "0";
        return s + "  [z = zeta_" + std::to_string(modulus_) + "]";
    }

    // Reduced numerator/denominator of a single basis coefficient.
    std::pair<BigInt, BigInt> coeff_fraction(std::size_t i) const {
        BigInt g = gcd(num_[i], den_);
        if (g == 0) return {BigInt(0), BigInt(1)};
        return {num_[i] / g, den_ / g};
    }

private:
    static std::size_t nonzero_count(const std::vector<BigInt>& v) {
        std::size_t n = 0;
        for (const auto& c : v)
            if (c != 0) ++n;
        return n;
    }

    static std::pair<CycNum, CycNum> aligned(const CycNum& a, const CycNum& b) {
        if (a.modulus_ == b.modulus_) return {a, b};
        const long l = std::lcm(a.modulus_, b.modulus_);
        return {a.promoted(l), b.promoted(l)};
    }

    void normalize() {
        bool all_zero = true;
        BigInt g = den_;
        if (g < 0) g = -g;
        for (const auto& c : num_) {
            if (c != 0) {
                all_zero = false;
                g = gcd(g, c);
            }
        }
        if (all_zero) {
            den_ = 1;
            return;
        }
        if (den_ < 0) {
            den_ = -den_;
            for (auto& c : num_) c = -c;
        }
        if (g > 1) {
            den_ /= g;
            for (auto& c : num_) c /= g;
        }
    }

    static std::string rat_str(const BigInt& n, const BigInt& d) {
        BigInt g = gcd(n, d);
        if (g == 0) return "0";
        BigInt nn = n / g, dd = d / g;
        return dd == 1 ? nn.get_str() : nn.get_str() + "/" + dd.get_str();
    }

    static int rat_degree(const std::vector<BigRat>& p) {
        for (std::size_t i = p.size(); i-- > 0;)
            if (p[i] != 0) return static_cast<int>(i);
        return -1;
    }
    static void rat_trim(std::vector<BigRat>& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    }
    static std::vector<BigRat> rat_mul(const std::vector<BigRat>& a, const std::vector<BigRat>& b) {
        if (a.empty() || b.empty()) return {};
        std::vector<BigRat> r(a.size() + b.size() - 1, BigRat(0));
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        }
        rat_trim(r);
        return r;
    }
    static std::vector<BigRat> rat_sub(const std::vector<BigRat>& a, const std::vector<BigRat>& b) {
        std::vector<BigRat> r = a;
        if (r.size() < b.size()) r.resize(b.size(), BigRat(0));
        for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
        rat_trim(r);
        return r;
    }
    static std::pair<std::vector<BigRat>, std::vector<BigRat>> rat_divmod(
        std::vector<BigRat> a, const std::vector<BigRat>& b) {
        int db = rat_degree(b);
        if (db < 0) throw std::domain_error("polynomial division by zero");
        std::vector<BigRat> q;
        int da = rat_degree(a);
        if (da >= db) q.assign(static_cast<std::size_t>(da - db) + 1, BigRat(0));
        while ((da = rat_degree(a)) >= db) {
            BigRat c = a[static_cast<std::size_t>(da)] / b[static_cast<std::size_t>(db)];
            q[static_cast<std::size_t>(da - db)] = c;
            for (int i = 0; i <= db; ++i)
                a[static_cast<std::size_t>(da - db + i)] -= c * b[static_cast<std::size_t>(i)];
        }
        rat_trim(a);
        return {q, a};
    }

    long modulus_;
    std::vector<BigInt> num_;  // length phi(modulus_)
    BigInt den_;               // > 0, coprime to the content of num_
};

namespace detail {

// Row-reduction transform for expressing values over a divisor modulus.
// Columns of B are the promoted power-basis images of zeta_{M0}^k; P records
// the row operations with P*B in reduced echelon form.
struct DemoteSolver {
    std::size_t big_deg, small_deg;
    std::vector<std::vector<BigRat>> P;
    std::vector<long> pivot_row_of_col;  // size small_deg

    DemoteSolver(long big_modulus, long small_modulus) {
        const CycContext& big = CycContext::get(big_modulus);
        big_deg = big.degree();
        small_deg = CycContext::get(small_modulus).degree();
        const long t = big_modulus / small_modulus;
        std::vector<std::vector<BigRat>> B(big_deg, std::vector<BigRat>(small_deg, BigRat(0)));
        for (std::size_t k = 0; k < small_deg; ++k) {
            const auto& row = big.power_row(static_cast<long>(k) * t);
            for (std::size_t i = 0; i < big_deg; ++i) B[i][k] = BigRat(row[i]);
        }
        P.assign(big_deg, std::vector<BigRat>(big_deg, BigRat(0)));
        for (std::size_t i = 0; i < big_deg; ++i) P[i][i] = 1;
        pivot_row_of_col.assign(small_deg, -1);
        std::size_t next_row = 0;
        for (std::size_t col = 0; col < small_deg; ++col) {
            std::size_t piv = next_row;
            while (piv < big_deg && B[piv][col] == 0) ++piv;
            if (piv == big_deg) throw std::logic_error("demote basis not independent");
            std::swap(B[piv], B[next_row]);
            std::swap(P[piv], P[next_row]);
            BigRat inv = BigRat(1) / B[next_row][col];
            for (auto& v : B[next_row]) v *= inv;
            for (auto& v : P[next_row]) v *= inv;
            for (std::size_t r = 0; r < big_deg; ++r) {
                if (r == next_row || B[r][col] == 0) continue;
                BigRat f = B[r][col];
                for (std::size_t c = col; c < small_deg; ++c) B[r][c] -= f * B[next_row][c];
                for (std::size_t c = 0; c < big_deg; ++c) P[r][c] -= f * P[next_row][c];
            }
            pivot_row_of_col[col] = static_cast<long>(next_row);
            ++next_row;
        }
    }

    static const DemoteSolver& get(long big_modulus, long small_modulus) {
        static std::mutex mu;
        static std::map<std::pair<long, long>, std::unique_ptr<DemoteSolver>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_pair(big_modulus, small_modulus);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, std::make_unique<DemoteSolver>(big_modulus, small_modulus)).first;
        return *it->second;
    }
};

}  // namespace detail

inline std::optional<CycNum> CycNum::demoted(long small_modulus) const {
    if (small_modulus == modulus_) return *this;
    if (small_modulus < 1 || modulus_ % small_modulus != 0)
        throw std::invalid_argument("demotion target must divide the modulus");
    const auto& solver = detail::DemoteSolver::get(modulus_, small_modulus);
    std::vector<BigRat> y(solver.big_deg, BigRat(0));
    for (std::size_t r = 0; r < solver.big_deg; ++r) {
        BigRat acc(0);
        for (std::size_t c = 0; c < solver.big_deg; ++c) {
            if (solver.P[r][c] == 0 || num_[c] == 0) continue;
            acc += solver.P[r][c] * BigRat(num_[c]);
        }
        y[r] = acc;
    }
    std::vector<bool> is_pivot_row(solver.big_deg, false);
    for (long r : solver.pivot_row_of_col) is_pivot_row[static_cast<std::size_t>(r)] = true;
    for (std::size_t r = 0; r < solver.big_deg; ++r)
        if (!is_pivot_row[r] && y[r] != 0) return std::nullopt;
    // assemble over the small modulus with a shared denominator
    BigInt den_acc = den_;
    std::vector<BigRat> coeffs(solver.small_deg, BigRat(0));
    for (std::size_t k = 0; k < solver.small_deg; ++k) {
        coeffs[k] = y[static_cast<std::size_t>(solver.pivot_row_of_col[k])] / BigRat(den_);
        coeffs[k].canonicalize();
        BigInt d = coeffs[k].get_den();
        den_acc = den_acc / gcd(den_acc, d) * d;
    }
    CycNum out;
    out.modulus_ = small_modulus;
    out.num_.assign(solver.small_deg, BigInt(0));
    out.den_ = den_acc;
    for (std::size_t k = 0; k < solver.small_deg; ++k)
        out.num_[k] = coeffs[k].get_num() * (den_acc / coeffs[k].get_den());
    out.normalize();
    return out;
}

}  // namespace cuspgamma
