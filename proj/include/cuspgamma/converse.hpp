#pragma once

// Exhaustive converse-theorem experiments: cuspidal representations (and then
// level zero representations) with the same central character are separated
// by their gamma-factor signatures against the small groups G_r, r <= n/2.

#include "cuspgamma/bessel.hpp"
#include "cuspgamma/gamma_finite.hpp"
#include "cuspgamma/level_zero.hpp"

#include <map>
#include <string>
#include <vector>

namespace cuspgamma {

struct GammaSignature {
    std::string sigma;
    std::vector<long> orbit;
    std::vector<CycNum> central;  // omega_sigma on f^x, z = 1..q-1

    struct Entry {
        int r;
        long tau_exponent;
        CycNum gamma;
    };
    std::vector<Entry> entries;  // deterministic tau order

    bool same_central(const GammaSignature& o) const { return central == o.central; }

    bool same_gammas(const GammaSignature& o) const {
        if (entries.size() != o.entries.size()) return false;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (entries[i].r != o.entries[i].r || entries[i].tau_exponent != o.entries[i].tau_exponent)
                return false;
            if (entries[i].gamma != o.entries[i].gamma) return false;
        }
        return true;
    }
};

inline GammaSignature signature(const CuspidalRep& sigma, int rmax, const AddCharacter& psi,
                                BesselPool& pool, std::size_t coset_budget = 600000) {
    if (rmax > sigma.n() / 2)
        throw std::invalid_argument("signature radius exceeds n/2");
    GammaSignature sig;
    sig.sigma = sigma.name();
    sig.orbit = sigma.orbit();
    sig.central = sigma.central_character_vector();
    BesselFn& J = pool.get(sigma, psi);
    for (int r = 1; r <= rmax; ++r) {
        for (const auto& tau : list_cuspidals(r, sigma.field())) {
            BesselFn& Jt = pool.get(tau, psi.inverted());
            sig.entries.push_back({r, tau.theta_exponent(), gamma_unequal(J, Jt, coset_budget)});
        }
    }
    return sig;
}

struct ConverseReport {
    int n = 0;
    long q = 0;
    int rmax = 0;
    std::vector<GammaSignature> signatures;          // one per cuspidal, in list order
    std::vector<std::vector<std::size_t>> groups;    // indices grouped by central character
    bool injective = true;
    std::vector<std::pair<std::size_t, std::size_t>> collisions;
};

inline ConverseReport converse_check_finite(int n, const FieldPtr& field, const AddCharacter& psi,
                                            BesselPool& pool, int rmax = 0,
                                            std::size_t coset_budget = 600000) {
    if (rmax == 0) rmax = n / 2;
    ConverseReport report;
    report.n = n;
    report.q = field->q();
    report.rmax = rmax;

    auto cuspidals = list_cuspidals(n, field);
    for (const auto& sigma : cuspidals)
        report.signatures.push_back(signature(sigma, rmax, psi, pool, coset_budget));

    // group by central character
    std::vector<bool> grouped(cuspidals.size(), false);
    for (std::size_t i = 0; i < cuspidals.size(); ++i) {
        if (grouped[i]) continue;
        std::vector<std::size_t> group{i};
        grouped[i] = true;
        for (std::size_t j = i + 1; j < cuspidals.size(); ++j) {
            if (grouped[j]) continue;
            if (report.signatures[i].same_central(report.signatures[j])) {
                group.push_back(j);
                grouped[j] = true;
            }
        }
        report.groups.push_back(std::move(group));
    }

    // injectivity of the signature map within each group
    for (const auto& group : report.groups)
        for (std::size_t a = 0; a < group.size(); ++a)
            for (std::size_t b = a + 1; b < group.size(); ++b)
                if (report.signatures[group[a]].same_gammas(report.signatures[group[b]])) {
                    report.injective = false;
                    report.collisions.emplace_back(group[a], group[b]);
                }
    return report;
}

struct LevelZeroConverseReport {
    int n = 0;
    long q = 0;
    std::size_t representations = 0;
    std::size_t pairs_with_same_central_character = 0;
    std::size_t distinguishable_pairs = 0;
    bool ok = true;
    std::vector<std::string> violations;
};

// for sampled exact lambda values, check that level zero representations with
// the same central character and identical families gamma(s, pi x tau) over
// sampled tau of G_r (r <= n/2) are in fact the same pair (lambda, sigma)
inline LevelZeroConverseReport converse_check_level_zero(int n, const FieldPtr& field,
                                                         const AddCharacter& psi,
                                                         const std::vector<CycNum>& lambda_samples,
                                                         BesselPool& pool,
                                                         std::size_t coset_budget = 600000) {
    LevelZeroConverseReport report;
    report.n = n;
    report.q = field->q();

    std::vector<LevelZeroRep> reps;
    for (const auto& sigma : list_cuspidals(n, field))
        for (const auto& lambda : lambda_samples) reps.emplace_back(lambda, sigma);
    report.representations = reps.size();

    // tau sample: level zero representations of G_r with lambda over the samples
    std::vector<LevelZeroRep> taus;
    for (int r = 1; r <= n / 2; ++r)
        for (const auto& tau_sigma : list_cuspidals(r, field))
            for (const auto& mu : lambda_samples) taus.emplace_back(mu, tau_sigma);

    auto gamma_family = [&](const LevelZeroRep& pi) {
        std::vector<LaurentRat> fam;
        fam.reserve(taus.size());
        for (const auto& tau : taus) fam.push_back(gamma_local(pi, tau, psi, pool, coset_budget));
        return fam;
    };
    std::vector<std::vector<LaurentRat>> families;
    families.reserve(reps.size());
    for (const auto& pi : reps) families.push_back(gamma_family(pi));

    for (std::size_t i = 0; i < reps.size(); ++i) {
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
            // same central character: equal lambda and equal omega_sigma
            if (!(reps[i].lambda == reps[j].lambda)) continue;
            if (reps[i].sigma.central_character_vector() != reps[j].sigma.central_character_vector())
                continue;
            ++report.pairs_with_same_central_character;
            bool same_family = true;
            for (std::size_t t = 0; t < taus.size(); ++t)
                if (families[i][t] != families[j][t]) {
                    same_family = false;
                    break;
                }
            bool same_rep = reps[i].lambda == reps[j].lambda &&
                            reps[i].sigma.isomorphic(reps[j].sigma);
            if (same_family && !same_rep) {
                report.ok = false;
                report.violations.push_back(reps[i].name() + " vs " + reps[j].name());
            }
            if (!same_family) ++report.distinguishable_pairs;
        }
    }
    return report;
}

}  // namespace cuspgamma
