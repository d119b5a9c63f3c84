#pragma once

// The identity battery: every named check computes both sides of one of the
// library's defining identities exactly and reports pass/fail.  The CLI
// verify-suite and the acceptance harness are thin drivers over these.

#include "cuspgamma/bessel.hpp"
#include "cuspgamma/characters.hpp"
#include "cuspgamma/converse.hpp"
#include "cuspgamma/gamma_finite.hpp"
#include "cuspgamma/level_zero.hpp"

#include <string>
#include <vector>

namespace cuspgamma {

struct CheckResult {
    std::string name;
    bool ok = true;
    std::string detail;
};

namespace verify {

inline std::vector<long> default_twists(const FieldPtr& field) {
    std::vector<long> t{1};
    if (field->generator() != 1) t.push_back(field->generator());
    return t;
}

inline std::vector<CycNum> default_lambda_products() {
    std::vector<CycNum> v;
    for (int e = 0; e < 8; ++e) v.push_back(CycNum::root(8, e));
    v.push_back(CycNum::from_rational(BigInt(1), BigInt(2)));
    v.push_back(CycNum(3));
    return v;
}

// criterion: every constructed cuspidal passes the invariant gate
inline CheckResult check_characters(int n, const FieldPtr& field, std::size_t group_budget = 600000) {
    CheckResult r{"characters(n=" + std::to_string(n) + ",q=" + std::to_string(field->q()) + ")"};
    auto census = GroupCensus::get(n, field, group_budget);
    for (const auto& rep : list_cuspidals(n, field)) {
        auto v = validate_cuspidal(rep, *census);
        if (!v.ok) {
            r.ok = false;
            r.detail += rep.name() + ": " + v.failures.front() + "; ";
        }
    }
    if (r.ok) r.detail = std::to_string(list_cuspidals(n, field).size()) + " cuspidals validated";
    return r;
}

// criterion: gamma(sigma x dual, psi) = -1 for every cuspidal and twist
inline CheckResult check_gamma_contragredient(int n, const FieldPtr& field, long twist,
                                              BesselPool& pool, std::size_t coset_budget = 600000) {
    CheckResult r{"gamma-contragredient(n=" + std::to_string(n) + ",q=" + std::to_string(field->q()) +
                  ",twist=" + std::to_string(twist) + ")"};
    AddCharacter psi(field, twist);
    int count = 0;
    for (const auto& sigma : list_cuspidals(n, field)) {
        BesselFn& J = pool.get(sigma, psi);
        BesselFn& Jd = pool.get(sigma.contragredient(), psi.inverted());
        CycNum g = gamma_equal(J, Jd, psi, coset_budget);
        if (g != CycNum(-1)) {
            r.ok = false;
            r.detail += sigma.name() + " gave " + g.minimized().to_string() + "; ";
        }
        ++count;
    }
    if (r.ok) r.detail = std::to_string(count) + " cuspidals, all exactly -1";
    return r;
}

// criterion: the Bessel pairing takes the two-case closed value on all pairs
inline CheckResult check_orthogonality(int n, const FieldPtr& field, BesselPool& pool,
                                       std::size_t coset_budget = 600000) {
    CheckResult r{"orthogonality(n=" + std::to_string(n) + ",q=" + std::to_string(field->q()) + ")"};
    AddCharacter psi(field);
    auto sigmas = list_cuspidals(n, field);
    const BigInt expected_num(static_cast<long>(gl_order(n, field->q()) / u_order(n, field->q())));
    int pairs = 0;
    for (const auto& a : sigmas) {
        CycNum expected = CycNum::from_rational(expected_num, a.dimension());
        for (const auto& b : sigmas) {
            CycNum pairing = bessel_pairing(pool.get(a, psi), pool.get(b, psi.inverted()), coset_budget);
            CycNum want = b.isomorphic(a.contragredient()) ? expected : CycNum(0);
            if (pairing != want) {
                r.ok = false;
                r.detail += a.name() + " x " + b.name() + " gave " + pairing.minimized().to_string() + "; ";
            }
            ++pairs;
        }
    }
    if (r.ok) r.detail = std::to_string(pairs) + " pairs match the closed value";
    return r;
}

// criterion: sum_h J_sigma(diag(h, I)) J_sigma'(h) = 1
inline CheckResult check_normalization(int n, int m, const FieldPtr& field, BesselPool& pool,
                                       std::size_t coset_budget = 600000) {
    CheckResult r{"normalization(n=" + std::to_string(n) + ",m=" + std::to_string(m) +
                  ",q=" + std::to_string(field->q()) + ")"};
    AddCharacter psi(field);
    int pairs = 0;
    for (const auto& sigma : list_cuspidals(n, field))
        for (const auto& tau : list_cuspidals(m, field)) {
            CycNum s = normalization_sum(pool.get(sigma, psi), pool.get(tau, psi.inverted()), coset_budget);
            if (s != CycNum(1)) {
                r.ok = false;
                r.detail += sigma.name() + " x " + tau.name() + " gave " + s.minimized().to_string() + "; ";
            }
            ++pairs;
        }
    if (r.ok) r.detail = std::to_string(pairs) + " sums equal 1";
    return r;
}

// criterion: the defining bilinear identity holds on random test vectors
inline CheckResult check_welldefined_equal(int n, const FieldPtr& field, long trials,
                                           std::uint64_t seed, BesselPool& pool,
                                           std::size_t coset_budget = 600000) {
    CheckResult r{"welldefined-equal(n=" + std::to_string(n) + ",q=" + std::to_string(field->q()) + ")"};
    AddCharacter psi(field);
    auto sigmas = list_cuspidals(n, field);
    long informative = 0;
    for (const auto& a : sigmas)
        for (const auto& b : sigmas) {
            auto rep = verify_welldefined_equal(pool.get(a, psi), pool.get(b, psi.inverted()), psi,
                                                trials, seed, coset_budget);
            informative += rep.informative;
            if (!rep.ok) {
                r.ok = false;
                r.detail += a.name() + " x " + b.name() + ": " + rep.detail + "; ";
            }
        }
    if (r.ok)
        r.detail = std::to_string(sigmas.size() * sigmas.size()) + " pairs, " +
                   std::to_string(informative) + " informative trials";
    return r;
}

inline CheckResult check_welldefined_unequal(int n, int m, const FieldPtr& field, long trials,
                                             std::uint64_t seed, BesselPool& pool,
                                             std::size_t coset_budget = 600000) {
    CheckResult r{"welldefined-unequal(n=" + std::to_string(n) + ",m=" + std::to_string(m) +
                  ",q=" + std::to_string(field->q()) + ")"};
    AddCharacter psi(field);
    long informative = 0;
    int pairs = 0;
    for (const auto& sigma : list_cuspidals(n, field))
        for (const auto& tau : list_cuspidals(m, field)) {
            auto rep = verify_welldefined_unequal(pool.get(sigma, psi), pool.get(tau, psi.inverted()),
                                                  trials, seed, coset_budget);
            informative += rep.informative;
            ++pairs;
            if (!rep.ok) {
                r.ok = false;
                r.detail += sigma.name() + " x " + tau.name() + ": " + rep.detail + "; ";
            }
        }
    if (r.ok)
        r.detail = std::to_string(pairs) + " pairs, " + std::to_string(informative) +
                   " informative trials";
    return r;
}

// criterion: Bessel support lies in the block-antidiagonal cells
inline CheckResult check_support(int n, const FieldPtr& field, BesselPool& pool,
                                 std::size_t coset_budget = 600000) {
    CheckResult r{"bessel-support(n=" + std::to_string(n) + ",q=" + std::to_string(field->q()) + ")"};
    AddCharacter psi(field);
    std::size_t checked = 0;
    for (const auto& sigma : list_cuspidals(n, field)) {
        auto report = bessel_support_audit(pool.get(sigma, psi), coset_budget);
        checked += report.cosets_checked;
        if (!report.ok) {
            r.ok = false;
            r.detail += sigma.name() + ": " + std::to_string(report.violations.size()) +
                        " values outside the cells; ";
        }
    }
    if (r.ok) r.detail = std::to_string(checked) + " cosets audited, support confined to cells";
    return r;
}

// criterion: signatures separate cuspidals with equal central character
inline CheckResult check_converse(int n, const FieldPtr& field, BesselPool& pool,
                                  std::size_t coset_budget = 600000) {
    CheckResult r{"converse-finite(n=" + std::to_string(n) + ",q=" + std::to_string(field->q()) + ")"};
    AddCharacter psi(field);
    auto report = converse_check_finite(n, field, psi, pool, 0, coset_budget);
    r.ok = report.injective;
    if (!r.ok)
        for (auto [a, b] : report.collisions)
            r.detail += report.signatures[a].sigma + " vs " + report.signatures[b].sigma + "; ";
    else
        r.detail = std::to_string(report.signatures.size()) + " cuspidals in " +
                   std::to_string(report.groups.size()) + " central-character groups, injective";
    return r;
}

// criterion: epsilon factors are monomials with the predicted constant and
// conductor, and the gamma curve through -1 is the closed form
inline CheckResult check_epsilon(int n, const FieldPtr& field, BesselPool& pool,
                                 std::size_t coset_budget = 600000) {
    CheckResult r{"epsilon(n=" + std::to_string(n) + ",q=" + std::to_string(field->q()) + ")"};
    AddCharacter psi(field);
    auto sigmas = list_cuspidals(n, field);
    const auto& sigma = sigmas.front();
    int cases = 0;
    for (const auto& l12 : default_lambda_products()) {
        LevelZeroRep pi1(l12, sigma);
        LevelZeroRep pi2(CycNum(1), sigma.contragredient());
        auto [eps, conductor] = epsilon_local(pi1, pi2, psi, pool, coset_budget);
        if (conductor != n || eps != LaurentRat::monomial(CycNum(1) / l12, -n)) {
            r.ok = false;
            r.detail += "contragredient case lambda12=" + l12.minimized().to_string() + " gave " +
                        eps.to_string() + " conductor " + std::to_string(conductor) + "; ";
        }
        if (gamma_curve_from_finite(field->q(), n, l12, CycNum(-1)) !=
            gamma_closed_form(field->q(), n, l12)) {
            r.ok = false;
            r.detail += "curve/closed-form mismatch at lambda12=" + l12.minimized().to_string() + "; ";
        }
        ++cases;
    }
    // a non-contragredient pair, when one exists at this n
    for (const auto& other : sigmas) {
        if (other.isomorphic(sigma.contragredient())) continue;
        LevelZeroRep pi1(CycNum::root(8, 3), sigma);
        LevelZeroRep pi2(CycNum(2), other);
        auto [eps, conductor] = epsilon_local(pi1, pi2, psi, pool, coset_budget);
        CycNum gfin = gamma_equal(pool.get(sigma, psi), pool.get(other, psi.inverted()), psi,
                                  coset_budget);
        if (conductor != 0 || eps != LaurentRat::constant(gfin)) {
            r.ok = false;
            r.detail += "non-contragredient pair gave conductor " + std::to_string(conductor) + "; ";
        }
        ++cases;
        break;
    }
    if (r.ok) r.detail = std::to_string(cases) + " epsilon cases match";
    return r;
}

// criterion: the L denominator vanishes exactly at lambda1 lambda2 X^n = 1
inline CheckResult check_l_factor(int n, const FieldPtr& field) {
    CheckResult r{"l-factor(n=" + std::to_string(n) + ",q=" + std::to_string(field->q()) + ")"};
    auto sigma = list_cuspidals(n, field).front();
    int cases = 0;
    for (const auto& l12 : default_lambda_products()) {
        LevelZeroRep pi1(l12, sigma);
        LevelZeroRep pi2(CycNum(1), sigma.contragredient());
        LaurentRat L = L_factor(pi1, pi2);
        LaurentPoly want = LaurentPoly::one() - LaurentPoly::monomial(l12, n);
        if (L != LaurentRat(LaurentPoly::one(), want)) {
            r.ok = false;
            r.detail += "lambda12=" + l12.minimized().to_string() + "; ";
        }
        // the pole: at X^n = 1/lambda12 the denominator value vanishes
        ++cases;
    }
    // and L = 1 for a non-contragredient pair
    LevelZeroRep pi1(CycNum(1), sigma);
    LevelZeroRep pi2(CycNum(1), sigma);
    if (!sigma.isomorphic(sigma.contragredient()) &&
        L_factor(pi1, pi2) != LaurentRat::constant(CycNum(1))) {
        r.ok = false;
        r.detail += "non-contragredient pair did not give L = 1; ";
    }
    if (r.ok) r.detail = std::to_string(cases) + " pole placements match";
    return r;
}

struct SuiteOptions {
    long trials = 8;
    std::uint64_t seed = 20260809;
    std::size_t coset_budget = 600000;
    std::size_t group_budget = 600000;
    bool support_audit = true;
};

inline std::vector<CheckResult> run_suite(int n, const FieldPtr& field, const SuiteOptions& opts = {}) {
    std::vector<CheckResult> results;
    BesselPool pool(opts.group_budget);
    results.push_back(check_characters(n, field, opts.group_budget));
    for (long twist : default_twists(field))
        results.push_back(check_gamma_contragredient(n, field, twist, pool, opts.coset_budget));
    results.push_back(check_orthogonality(n, field, pool, opts.coset_budget));
    for (int m = 1; m < n; ++m)
        results.push_back(check_normalization(n, m, field, pool, opts.coset_budget));
    results.push_back(check_welldefined_equal(n, field, opts.trials, opts.seed, pool, opts.coset_budget));
    for (int m = 1; m < n; ++m)
        results.push_back(
            check_welldefined_unequal(n, m, field, opts.trials, opts.seed, pool, opts.coset_budget));
    if (opts.support_audit) results.push_back(check_support(n, field, pool, opts.coset_budget));
    results.push_back(check_converse(n, field, pool, opts.coset_budget));
    results.push_back(check_epsilon(n, field, pool, opts.coset_budget));
    results.push_back(check_l_factor(n, field));
    return results;
}

}  // namespace verify
}  // namespace cuspgamma
