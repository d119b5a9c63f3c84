#pragma once

// JSON encodings shared by the CLI and the disk cache.  Cyclotomic numbers
// are {"modulus": M, "coeffs": [[num, den], ...]} with reduced per-coefficient
// fractions; integers that do not fit in 64 bits are emitted as strings.

#include "cuspgamma/converse.hpp"
#include "cuspgamma/cyclotomic.hpp"
#include "cuspgamma/finite_field.hpp"
#include "cuspgamma/level_zero.hpp"
#include "cuspgamma/matrix_group.hpp"

#include <json.hpp>

#include <string>

namespace cuspgamma {

using Json = nlohmann::json;

inline Json bigint_to_json(const BigInt& v) {
    if (v.fits_slong_p()) return Json(static_cast<long long>(v.get_si()));
    return Json(v.get_str());
}

inline BigInt bigint_from_json(const Json& j) {
    if (j.is_string()) return BigInt(j.get<std::string>());
    return BigInt(static_cast<long>(j.get<long long>()));
}

inline Json cyc_to_json(const CycNum& v) {
    Json coeffs = Json::array();
    for (std::size_t i = 0; i < v.numerators().size(); ++i) {
        auto [num, den] = v.coeff_fraction(i);
        coeffs.push_back(Json::array({bigint_to_json(num), bigint_to_json(den)}));
    }
    return Json{{"modulus", v.modulus()}, {"coeffs", coeffs}};
}

inline CycNum cyc_from_json(const Json& j) {
    const long modulus = j.at("modulus").get<long>();
    const auto& coeffs = j.at("coeffs");
    CycNum acc;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        BigInt num = bigint_from_json(coeffs[i][0]);
        BigInt den = bigint_from_json(coeffs[i][1]);
        if (num == 0) continue;
        acc += CycNum::from_rational(std::move(num), std::move(den)) *
               CycNum::root(modulus, static_cast<long>(i));
    }
    return acc.promoted(modulus);
}

inline Json field_to_json(const FieldSpec& F) {
    return Json{{"p", F.p()}, {"f", F.f()}, {"modulus", F.modulus()}, {"generator", F.generator()}};
}

// entries as coordinate vectors over the prime field
inline Json mat_to_json(const Mat& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.n; ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.n; ++j) row.push_back(m.field->digits(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline Mat mat_from_json(const Json& j, const FieldPtr& field) {
    const int n = static_cast<int>(j.size());
    Mat m(n, field);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < n; ++c)
            m.at(i, c) = field->from_digits(j[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]
                                                .get<std::vector<long>>());
    return m;
}

inline Json classkey_to_json(const ClassKey& k) {
    Json parts = Json::array();
    for (const auto& [poly, blocks] : k.parts)
        parts.push_back(Json{{"poly", poly}, {"blocks", blocks}});
    return parts;
}

inline ClassKey classkey_from_json(const Json& j) {
    ClassKey k;
    for (const auto& part : j)
        k.parts.emplace_back(part.at("poly").get<std::vector<long>>(),
                             part.at("blocks").get<std::vector<int>>());
    return k;
}

inline Json laurent_poly_to_json(const LaurentPoly& p) {
    Json coeffs = Json::array();
    for (const auto& c : p.coeffs()) coeffs.push_back(cyc_to_json(c.minimized()));
    return Json{{"lo", p.is_zero() ? 0 : p.lo()}, {"coeffs", coeffs}};
}

inline Json laurent_rat_to_json(const LaurentRat& r) {
    return Json{{"num", laurent_poly_to_json(r.num())}, {"den", laurent_poly_to_json(r.den())}};
}

inline Json embed_to_json(const CycNum& v) {
    auto z = v.embed();
    return Json::array({z.real(), z.imag()});
}

inline Json signature_to_json(const GammaSignature& sig) {
    Json entries = Json::array();
    for (const auto& e : sig.entries)
        entries.push_back(Json{{"r", e.r},
                               {"tau_k", e.tau_exponent},
                               {"gamma", cyc_to_json(e.gamma.minimized())},
                               {"embed", embed_to_json(e.gamma)}});
    Json central = Json::array();
    for (const auto& c : sig.central) central.push_back(cyc_to_json(c.minimized()));
    return Json{{"sigma", sig.sigma}, {"orbit", sig.orbit}, {"central", central}, {"gammas", entries}};
}

}  // namespace cuspgamma
