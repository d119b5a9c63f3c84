#pragma once

// The p-adic side as exact symbolic data: level zero representations given by
// pairs (lambda, sigma), and their L-, gamma- and epsilon-factors as rational
// functions of X = q^{-s} with cyclotomic coefficients.

#include "cuspgamma/bessel.hpp"
#include "cuspgamma/characters.hpp"
#include "cuspgamma/cyclotomic.hpp"
#include "cuspgamma/gamma_finite.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cuspgamma {

// Laurent polynomial in X: coeffs_[i] multiplies X^(lo_ + i); trimmed so the
// first and last stored coefficients are nonzero (zero polynomial is empty)
class LaurentPoly {
public:
    LaurentPoly() = default;

    static LaurentPoly monomial(CycNum c, long e) {
        LaurentPoly r;
        if (!c.is_zero()) {
            r.lo_ = e;
            r.coeffs_.push_back(std::move(c));
        }
        return r;
    }

    static LaurentPoly constant(CycNum c) { return monomial(std::move(c), 0); }
    static LaurentPoly one() { return constant(CycNum(1)); }

    bool is_zero() const { return coeffs_.empty(); }
    long lo() const { return lo_; }                                     // valid when nonzero
    long hi() const { return lo_ + static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<CycNum>& coeffs() const { return coeffs_; }

    CycNum coeff(long e) const {
        if (is_zero() || e < lo_ || e > hi()) return CycNum(0);
        return coeffs_[static_cast<std::size_t>(e - lo_)];
    }

    bool is_monomial() const { return coeffs_.size() == 1; }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        const long lo = std::min(a.lo_, b.lo_);
        const long hi = std::max(a.hi(), b.hi());
        LaurentPoly r;
        r.lo_ = lo;
        r.coeffs_.assign(static_cast<std::size_t>(hi - lo + 1), CycNum(0));
        for (long e = lo; e <= hi; ++e)
            r.coeffs_[static_cast<std::size_t>(e - lo)] = a.coeff(e) + b.coeff(e);
        r.trim();
        return r;
    }

    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

    LaurentPoly operator-() const {
        LaurentPoly r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.is_zero() || b.is_zero()) return LaurentPoly();
        LaurentPoly r;
        r.lo_ = a.lo_ + b.lo_;
        r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, CycNum(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                if (!b.coeffs_[j].is_zero()) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        r.trim();
        return r;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
        if (a.lo_ != b.lo_ || a.coeffs_.size() != b.coeffs_.size()) return false;
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            if (a.coeffs_[i] != b.coeffs_[i]) return false;
        return true;
    }

    // X -> c * X^{-1}
    LaurentPoly substituted_inverse(const CycNum& c) const {
        LaurentPoly r;
        if (is_zero()) return r;
        for (long e = lo_; e <= hi(); ++e) {
            CycNum v = coeff(e);
            if (v.is_zero()) continue;
            CycNum scaled = v;
            long k = e;
            while (k > 0) {
                scaled *= c;
                --k;
            }
            while (k < 0) {
                scaled *= CycNum(1) / c;
                ++k;
            }
            r = r + monomial(std::move(scaled), -e);
        }
        return r;
    }

    LaurentPoly shifted(long e) const {
        LaurentPoly r = *this;
        if (!r.is_zero()) r.lo_ += e;
        return r;
    }

    LaurentPoly scaled(const CycNum& c) const {
        if (c.is_zero()) return LaurentPoly();
        LaurentPoly r = *this;
        for (auto& v : r.coeffs_) v *= c;
        return r;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (long e = lo_; e <= hi(); ++e) {
            CycNum c = coeff(e);
            if (c.is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "(" + c.minimized().to_string() + ")";
            if (e != 0) s += "*X^" + std::to_string(e);
        }
        return s;
    }

private:
    void trim() {
        std::size_t head = 0;
        while (head < coeffs_.size() && coeffs_[head].is_zero()) ++head;
        if (head == coeffs_.size()) {
            coeffs_.clear();
            lo_ = 0;
            return;
        }
        std::size_t tail = coeffs_.size();
        while (tail > head && coeffs_[tail - 1].is_zero()) --tail;
        if (head > 0 || tail < coeffs_.size()) {
            std::vector<CycNum> next(coeffs_.begin() + static_cast<long>(head),
                                     coeffs_.begin() + static_cast<long>(tail));
            coeffs_ = std::move(next);
            lo_ += static_cast<long>(head);
        }
    }

    long lo_ = 0;
    std::vector<CycNum> coeffs_;
};

// ratio of Laurent polynomials, canonicalized: common polynomial factors
// removed, denominator with lowest exponent 0 and leading coefficient 1
class LaurentRat {
public:
    LaurentRat() : num_(LaurentPoly()), den_(LaurentPoly::one()) {}
    LaurentRat(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
        canonicalize();
    }

    static LaurentRat constant(CycNum c) { return LaurentRat(LaurentPoly::constant(std::move(c)), LaurentPoly::one()); }
    static LaurentRat monomial(CycNum c, long e) { return LaurentRat(LaurentPoly::monomial(std::move(c), e), LaurentPoly::one()); }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }

    bool is_monomial() const { return num_.is_monomial() && den_.is_monomial(); }

    // exponent and coefficient when the value is c * X^e
    std::pair<CycNum, long> monomial_parts() const {
        if (!is_monomial()) throw std::domain_error("value is not a monomial");
        return {num_.coeffs().front() / den_.coeffs().front(), num_.lo() - den_.lo()};
    }

    friend LaurentRat operator+(const LaurentRat& a, const LaurentRat& b) {
        return LaurentRat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend LaurentRat operator-(const LaurentRat& a, const LaurentRat& b) {
        return LaurentRat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend LaurentRat operator*(const LaurentRat& a, const LaurentRat& b) {
        return LaurentRat(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend LaurentRat operator/(const LaurentRat& a, const LaurentRat& b) {
        if (b.is_zero()) throw std::domain_error("division by zero rational function");
        return LaurentRat(a.num_ * b.den_, a.den_ * b.num_);
    }

    // equality via cross-multiplication (independent of canonical form)
    friend bool operator==(const LaurentRat& a, const LaurentRat& b) {
        return a.num_ * b.den_ == b.num_ * a.den_;
    }
    friend bool operator!=(const LaurentRat& a, const LaurentRat& b) { return !(a == b); }

    // X -> c * X^{-1} (used for s -> 1-s with c = 1/q)
    LaurentRat substituted_inverse(const CycNum& c) const {
        return LaurentRat(num_.substituted_inverse(c), den_.substituted_inverse(c));
    }

    CycNum value_at(const CycNum& x) const {
        auto eval = [&](const LaurentPoly& p) {
            CycNum acc(0);
            if (p.is_zero()) return acc;
            for (long e = p.lo(); e <= p.hi(); ++e) {
                CycNum c = p.coeff(e);
                if (c.is_zero()) continue;
                CycNum pw(1);
                long k = e;
                while (k > 0) {
                    pw *= x;
                    --k;
                }
                while (k < 0) {
                    pw *= CycNum(1) / x;
                    ++k;
                }
                acc += c * pw;
            }
            return acc;
        };
        CycNum d = eval(den_);
        if (d.is_zero()) throw std::domain_error("evaluation at a pole");
        return eval(num_) / d;
    }

    std::string to_string() const {
        if (den_ == LaurentPoly::one()) return num_.to_string();
        return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
    }

private:
    // ordinary polynomial gcd (monic), on vectors low-first
    static std::vector<CycNum> poly_gcd(std::vector<CycNum> a, std::vector<CycNum> b) {
        auto deg = [](const std::vector<CycNum>& p) {
            for (std::size_t i = p.size(); i-- > 0;)
                if (!p[i].is_zero()) return static_cast<int>(i);
            return -1;
        };
        auto make_monic = [&](std::vector<CycNum>& p) {
            int d = deg(p);
            if (d < 0) return;
            CycNum lead = p[static_cast<std::size_t>(d)];
            p.resize(static_cast<std::size_t>(d) + 1);
            for (auto& c : p) c /= lead;
        };
        while (deg(b) >= 0) {
            // a mod b
            int db = deg(b);
            CycNum lead = b[static_cast<std::size_t>(db)];
            while (deg(a) >= db && deg(a) >= 0) {
                int da = deg(a);
                CycNum f = a[static_cast<std::size_t>(da)] / lead;
                for (int i = 0; i <= db; ++i)
                    a[static_cast<std::size_t>(da - db + i)] -= f * b[static_cast<std::size_t>(i)];
                a[static_cast<std::size_t>(da)] = CycNum(0);
                auto d2 = deg(a);
                a.resize(static_cast<std::size_t>(d2 + 1));
                if (d2 < 0) break;
            }
            std::swap(a, b);
        }
        make_monic(a);
        return a;
    }

    static std::vector<CycNum> poly_div(std::vector<CycNum> a, const std::vector<CycNum>& b) {
        auto deg = [](const std::vector<CycNum>& p) {
            for (std::size_t i = p.size(); i-- > 0;)
                if (!p[i].is_zero()) return static_cast<int>(i);
            return -1;
        };
        int db = deg(b);
        int da = deg(a);
        if (da < db) throw std::logic_error("polynomial division underflow");
        std::vector<CycNum> q(static_cast<std::size_t>(da - db) + 1, CycNum(0));
        CycNum lead = b[static_cast<std::size_t>(db)];
        while ((da = deg(a)) >= db && da >= 0) {
            CycNum f = a[static_cast<std::size_t>(da)] / lead;
            q[static_cast<std::size_t>(da - db)] = f;
            for (int i = 0; i <= db; ++i)
                a[static_cast<std::size_t>(da - db + i)] -= f * b[static_cast<std::size_t>(i)];
        }
        for (const auto& c : a)
            if (!c.is_zero()) throw std::logic_error("polynomial division remainder");
        return q;
    }

    void canonicalize() {
        if (num_.is_zero()) {
            den_ = LaurentPoly::one();
            return;
        }
        // shift X powers so both are ordinary polynomials with nonzero constant term
        std::vector<CycNum> a = num_.coeffs();
        std::vector<CycNum> b = den_.coeffs();
        long shift = num_.lo() - den_.lo();
        std::vector<CycNum> g = poly_gcd(a, b);
        auto degg = g.size();
        if (degg > 1) {
            a = poly_div(std::move(a), g);
            b = poly_div(std::move(b), g);
        }
        // denominator: lowest stored coefficient index 0, leading coefficient 1
        CycNum lead = b.back();
        LaurentPoly nn, dd;
        for (std::size_t i = 0; i < a.size(); ++i)
            nn = nn + LaurentPoly::monomial(a[i] / lead, static_cast<long>(i) + shift);
        for (std::size_t i = 0; i < b.size(); ++i)
            dd = dd + LaurentPoly::monomial(b[i] / lead, static_cast<long>(i));
        num_ = std::move(nn);
        den_ = std::move(dd);
    }

    LaurentPoly num_, den_;
};

// ---- level zero representations ----

struct LevelZeroRep {
    CycNum lambda;
    CuspidalRep sigma;

    LevelZeroRep(CycNum l, CuspidalRep s) : lambda(std::move(l)), sigma(std::move(s)) {
        if (lambda.is_zero()) throw std::invalid_argument("level zero parameter lambda must be nonzero");
    }

    std::string name() const {
        return "(lambda=" + lambda.minimized().to_string() + ", " + sigma.name() + ")";
    }
};

inline LevelZeroRep lz_contragredient(const LevelZeroRep& pi) {
    return LevelZeroRep(CycNum(1) / pi.lambda, pi.sigma.contragredient());
}

// twist by |det|^{s_0}: lambda -> lambda * t with t = q^{-n s_0}
inline LevelZeroRep lz_twist(const LevelZeroRep& pi, const CycNum& t) {
    if (t.is_zero()) throw std::invalid_argument("twist scalar must be nonzero");
    return LevelZeroRep(pi.lambda * t, pi.sigma);
}

// L(s, pi1 x pi2) = (1 - lambda1 lambda2 X^n)^{-1} when sigma_1 ~ dual of
// sigma_2, else 1
inline LaurentRat L_factor(const LevelZeroRep& pi1, const LevelZeroRep& pi2) {
    if (pi1.sigma.n() == pi2.sigma.n() &&
        pi1.sigma.isomorphic(pi2.sigma.contragredient())) {
        LaurentPoly den = LaurentPoly::one() - LaurentPoly::monomial(pi1.lambda * pi2.lambda, pi1.sigma.n());
        return LaurentRat(LaurentPoly::one(), std::move(den));
    }
    return LaurentRat::constant(CycNum(1));
}

namespace detail {

// gamma(s) = q^{n(s-1)} (q^n - 1) / (lambda1 lambda2 - q^{n(s-1)}) + gamma_fin,
// with q^{n(s-1)} = q^{-n} X^{-n}
inline LaurentRat contragredient_gamma_curve(long q, int n, const CycNum& lambda12,
                                             const CycNum& gamma_finite_value) {
    BigInt qn(1);
    for (int i = 0; i < n; ++i) qn *= q;
    CycNum qminusn = CycNum::from_rational(BigInt(1), qn);      // q^{-n}
    CycNum qn_minus_1 = CycNum::from_rational(qn - 1, BigInt(1));
    LaurentPoly num = LaurentPoly::monomial(qminusn * qn_minus_1, -n);
    LaurentPoly den = LaurentPoly::constant(lambda12) - LaurentPoly::monomial(qminusn, -n);
    return LaurentRat(std::move(num), std::move(den)) + LaurentRat::constant(gamma_finite_value);
}

}  // namespace detail

// the contragredient-case gamma through a given finite gamma value
inline LaurentRat gamma_curve_from_finite(long q, int n, const CycNum& lambda12,
                                          const CycNum& gamma_finite_value) {
    return detail::contragredient_gamma_curve(q, n, lambda12, gamma_finite_value);
}

// closed form -(X^{-n} - lambda12) / (q^{-n} X^{-n} - lambda12)
inline LaurentRat gamma_closed_form(long q, int n, const CycNum& lambda12) {
    BigInt qn(1);
    for (int i = 0; i < n; ++i) qn *= q;
    CycNum qminusn = CycNum::from_rational(BigInt(1), qn);
    LaurentPoly num = LaurentPoly::monomial(CycNum(1), -n) - LaurentPoly::constant(lambda12);
    LaurentPoly den = LaurentPoly::monomial(qminusn, -n) - LaurentPoly::constant(lambda12);
    return LaurentRat(-num, std::move(den));
}

// gamma(s, pi1 x pi2, psi) as a rational function of X = q^{-s}; constant and
// equal to the finite gamma factor unless n = m with contragredient cuspidal
// data, in which case the rational curve through the finite value is returned.
// Jbig must carry (sigma of the larger group, psi) and Jsmall_inv the other
// representation with psi^{-1}.
inline LaurentRat gamma_local(const LevelZeroRep& pi1, const LevelZeroRep& pi2,
                              const AddCharacter& psi, BesselPool& pool,
                              std::size_t coset_budget = 600000) {
    const int n = pi1.sigma.n();
    const int m = pi2.sigma.n();
    if (n == m) {
        BesselFn& Jn = pool.get(pi1.sigma, psi);
        BesselFn& Jm = pool.get(pi2.sigma, psi.inverted());
        CycNum gamma_fin = gamma_equal(Jn, Jm, psi, coset_budget);
        if (pi2.sigma.isomorphic(pi1.sigma.contragredient()))
            return detail::contragredient_gamma_curve(pi1.sigma.field()->q(), n,
                                                      pi1.lambda * pi2.lambda, gamma_fin);
        return LaurentRat::constant(gamma_fin);
    }
    const LevelZeroRep& big = (n > m) ? pi1 : pi2;
    const LevelZeroRep& small = (n > m) ? pi2 : pi1;
    BesselFn& Jn = pool.get(big.sigma, psi);
    BesselFn& Jm = pool.get(small.sigma, psi.inverted());
    return LaurentRat::constant(gamma_unequal(Jn, Jm, coset_budget));
}

inline LaurentRat gamma_local(const LevelZeroRep& pi1, const LevelZeroRep& pi2,
                              const AddCharacter& psi, std::size_t coset_budget = 600000) {
    BesselPool pool;
    return gamma_local(pi1, pi2, psi, pool, coset_budget);
}

// epsilon(s) = gamma(s) L(s, pi1 x pi2) / L(1-s, dual pair); always a
// monomial c X^{-k}; returns the monomial and the conductor k
inline std::pair<LaurentRat, long> epsilon_local(const LevelZeroRep& pi1, const LevelZeroRep& pi2,
                                                 const AddCharacter& psi, BesselPool& pool,
                                                 std::size_t coset_budget = 600000) {
    LaurentRat gamma = gamma_local(pi1, pi2, psi, pool, coset_budget);
    LaurentRat Ls = L_factor(pi1, pi2);
    LaurentRat Ldual = L_factor(lz_contragredient(pi1), lz_contragredient(pi2));
    // L(1-s, ...): substitute X -> q^{-1} X^{-1}
    const long q = pi1.sigma.field()->q();
    LaurentRat L1ms = Ldual.substituted_inverse(CycNum::from_rational(BigInt(1), BigInt(q)));
    LaurentRat eps = gamma * Ls / L1ms;
    if (!eps.is_monomial())
        throw std::logic_error("epsilon factor is not a monomial: " + eps.to_string());
    auto [c, e] = eps.monomial_parts();
    (void)c;
    return {eps, -e};
}

inline std::pair<LaurentRat, long> epsilon_local(const LevelZeroRep& pi1, const LevelZeroRep& pi2,
                                                 const AddCharacter& psi,
                                                 std::size_t coset_budget = 600000) {
    BesselPool pool;
    return epsilon_local(pi1, pi2, psi, pool, coset_budget);
}

// Whittaker-function values on the p-adic group through the finite Bessel
// function: for a = varpi^v u and k reducing to kbar, the value is
// lambda^v omega_sigma(u) J(kbar)
inline CycNum j_level_zero(const LevelZeroRep& pi, long v, long unit, const Mat& kbar, BesselFn& J) {
    if (unit == 0) throw std::invalid_argument("unit part must be nonzero");
    if (!kbar.invertible()) throw std::domain_error("reduction of k is singular");
    CycNum lam_pow(1);
    for (long i = 0; i < (v >= 0 ? v : -v); ++i) lam_pow *= pi.lambda;
    if (v < 0) lam_pow = CycNum(1) / lam_pow;
    return lam_pow * pi.sigma.central_character(unit) * J.value(kbar);
}

}  // namespace cuspgamma
