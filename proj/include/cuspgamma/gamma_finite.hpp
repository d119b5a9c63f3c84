#pragma once

// Finite-field Rankin-Selberg gamma factors in both regimes (n > m and
// n = m), the finite Fourier transform, the Bessel pairing sum, and the
// randomized functional-equation verification.  All equalities are exact in
// the compositum Q(zeta_p, zeta_{q^n-1}, zeta_{q^m-1}).

#include "cuspgamma/bessel.hpp"
#include "cuspgamma/characters.hpp"
#include "cuspgamma/cyclotomic.hpp"
#include "cuspgamma/matrix_group.hpp"

#include <future>
#include <random>
#include <thread>
#include <vector>

namespace cuspgamma {

namespace detail {

// exact chunked reduction; addition is associative and commutative so the
// split does not affect the result
template <typename Fn>
CycNum parallel_sum(std::size_t count, Fn&& term) {
    unsigned workers = std::thread::hardware_concurrency();
    if (workers < 2 || count < 64) {
        CycNum acc(0);
        for (std::size_t i = 0; i < count; ++i) acc += term(i);
        return acc;
    }
    if (workers > 8) workers = 8;
    std::vector<std::future<CycNum>> parts;
    const std::size_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        parts.push_back(std::async(std::launch::async, [lo, hi, &term]() {
            CycNum acc(0);
            for (std::size_t i = lo; i < hi; ++i) acc += term(i);
            return acc;
        }));
    }
    CycNum acc(0);
    for (auto& f : parts) acc += f.get();
    return acc;
}

}  // namespace detail

// function on f^n; index of (x_0, ..., x_{n-1}) is sum x_i q^i
struct PhiFn {
    int n = 0;
    FieldPtr field;
    std::vector<CycNum> table;

    static std::size_t point_count(int n, const FieldPtr& field) {
        std::size_t c = 1;
        for (int i = 0; i < n; ++i) c *= static_cast<std::size_t>(field->q());
        return c;
    }

    static PhiFn zero(int n, FieldPtr field) {
        PhiFn r;
        r.n = n;
        r.table.assign(point_count(n, field), CycNum(0));
        r.field = std::move(field);
        return r;
    }

    static PhiFn delta(int n, FieldPtr field, std::size_t point_index) {
        PhiFn r = zero(n, std::move(field));
        r.table[point_index] = CycNum(1);
        return r;
    }

    static std::size_t index_of(const std::vector<long>& x, const FieldPtr& field) {
        std::size_t idx = 0;
        for (std::size_t i = x.size(); i-- > 0;)
            idx = idx * static_cast<std::size_t>(field->q()) + static_cast<std::size_t>(x[i]);
        return idx;
    }

    static std::vector<long> point_of(std::size_t idx, int n, const FieldPtr& field) {
        std::vector<long> x(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            x[static_cast<std::size_t>(i)] = static_cast<long>(idx % static_cast<std::size_t>(field->q()));
            idx /= static_cast<std::size_t>(field->q());
        }
        return x;
    }

    bool zero_at_origin() const { return table[0].is_zero(); }

    const CycNum& at(const std::vector<long>& x) const { return table[index_of(x, field)]; }
};

// phi_hat(x) = sum_y phi(y) psi(<x, y>)
inline PhiFn fourier(const PhiFn& phi, const AddCharacter& psi) {
    PhiFn out = PhiFn::zero(phi.n, phi.field);
    const std::size_t count = phi.table.size();
    const FieldSpec& F = *phi.field;
    for (std::size_t xi = 0; xi < count; ++xi) {
        auto x = PhiFn::point_of(xi, phi.n, phi.field);
        CycNum acc(0);
        for (std::size_t yi = 0; yi < count; ++yi) {
            if (phi.table[yi].is_zero()) continue;
            auto y = PhiFn::point_of(yi, phi.n, phi.field);
            long dot = 0;
            for (int i = 0; i < phi.n; ++i)
                dot = F.add(dot, F.mul(x[static_cast<std::size_t>(i)], y[static_cast<std::size_t>(i)]));
            acc += phi.table[yi] * psi.value(dot);
        }
        out.table[xi] = std::move(acc);
    }
    return out;
}

// row vector times matrix
inline std::vector<long> vec_mat(const std::vector<long>& x, const Mat& g) {
    const FieldSpec& F = *g.field;
    std::vector<long> y(static_cast<std::size_t>(g.n), 0);
    for (int j = 0; j < g.n; ++j) {
        long acc = 0;
        for (int i = 0; i < g.n; ++i) acc = F.add(acc, F.mul(x[static_cast<std::size_t>(i)], g.at(i, j)));
        y[static_cast<std::size_t>(j)] = acc;
    }
    return y;
}

// ---- gamma factors from the Bessel formulas ----

// n = m: gamma = sum over U_n\G_n of J(g) J'(g) psi((g^{-1})_{n,1});
// Jn carries (sigma, psi), Jm_inv carries (sigma', psi^{-1})
inline CycNum gamma_equal(BesselFn& Jn, BesselFn& Jm_inv, const AddCharacter& psi,
                          std::size_t coset_budget = 600000) {
    if (Jn.rep().n() != Jm_inv.rep().n()) throw std::invalid_argument("gamma_equal needs equal sizes");
    const auto& reps = Jn.coset_reps(coset_budget);
    const int n = Jn.rep().n();
    return detail::parallel_sum(reps.size(), [&](std::size_t i) {
        const Mat& g = reps[i];
        CycNum a = Jn.value_at_rep(g);
        if (a.is_zero()) return CycNum(0);
        CycNum b = Jm_inv.value_at_rep(g);
        if (b.is_zero()) return CycNum(0);
        long corner = g.inverse().at(n - 1, 0);
        return a * b * psi.value(corner);
    });
}

// n > m: gamma = sum over U_m\G_m and x in M_{m,n-m-1} of
// J_sigma(block(h, x)) J_sigma'(h)
inline CycNum gamma_unequal(BesselFn& Jn, BesselFn& Jm_inv, std::size_t coset_budget = 600000) {
    const int n = Jn.rep().n();
    const int m = Jm_inv.rep().n();
    if (n <= m) throw std::invalid_argument("gamma_unequal needs n > m");
    const auto& hreps = Jm_inv.coset_reps(coset_budget);
    const FieldPtr& field = Jn.rep().field();
    const long q = field->q();
    const int w = n - m - 1;
    std::size_t xcount = 1;
    for (int i = 0; i < m * w; ++i) xcount *= static_cast<std::size_t>(q);

    return detail::parallel_sum(hreps.size(), [&](std::size_t hi) {
        const Mat& h = hreps[hi];
        CycNum b = Jm_inv.value_at_rep(h);
        if (b.is_zero()) return CycNum(0);
        CycNum inner(0);
        std::vector<std::vector<long>> x(static_cast<std::size_t>(m), std::vector<long>(static_cast<std::size_t>(w), 0));
        for (std::size_t xi = 0; xi < xcount; ++xi) {
            std::size_t t = xi;
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < w; ++c) {
                    x[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                        static_cast<long>(t % static_cast<std::size_t>(q));
                    t /= static_cast<std::size_t>(q);
                }
            inner += Jn.value(gamma_block_matrix(n, h, x));
        }
        return inner * b;
    });
}

// sum over U_n\G_n of J(g) J'(g); the orthogonality pairing
inline CycNum bessel_pairing(BesselFn& Ja, BesselFn& Jb_inv, std::size_t coset_budget = 600000) {
    if (Ja.rep().n() != Jb_inv.rep().n()) throw std::invalid_argument("pairing needs equal sizes");
    const auto& reps = Ja.coset_reps(coset_budget);
    return detail::parallel_sum(reps.size(), [&](std::size_t i) {
        CycNum a = Ja.value_at_rep(reps[i]);
        if (a.is_zero()) return CycNum(0);
        return a * Jb_inv.value_at_rep(reps[i]);
    });
}

// sum over U_m\G_m of J_sigma(diag(h, I)) J_sigma'(h); equals 1
inline CycNum normalization_sum(BesselFn& Jn, BesselFn& Jm_inv, std::size_t coset_budget = 600000) {
    const int n = Jn.rep().n();
    const auto& hreps = Jm_inv.coset_reps(coset_budget);
    return detail::parallel_sum(hreps.size(), [&](std::size_t i) {
        const Mat& h = hreps[i];
        CycNum a = Jn.value(embed_upper_left(n, h));
        if (a.is_zero()) return CycNum(0);
        return a * Jm_inv.value_at_rep(h);
    });
}

// ---- randomized functional-equation verification ----

struct WellDefinedReport {
    bool ok = true;
    long informative = 0;
    long attempts = 0;
    CycNum gamma;
    std::string detail;
};

// n = m case: both sides of the defining bilinear identity, random
// (W, W', phi) with phi(0) = 0
inline WellDefinedReport verify_welldefined_equal(BesselFn& Jn, BesselFn& Jm_inv,
                                                  const AddCharacter& psi, long trials,
                                                  std::uint64_t seed,
                                                  std::size_t coset_budget = 600000,
                                                  bool phi_zero_at_origin = true) {
    WellDefinedReport report;
    report.gamma = gamma_equal(Jn, Jm_inv, psi, coset_budget);
    const auto& reps = Jn.coset_reps(coset_budget);
    const int n = Jn.rep().n();
    const FieldPtr& field = Jn.rep().field();

    std::mt19937_64 rng(seed);
    const std::size_t points = PhiFn::point_count(n, field);

    std::vector<long> e_n(static_cast<std::size_t>(n), 0);
    e_n[static_cast<std::size_t>(n - 1)] = 1;

    const long max_attempts = trials * 10;
    while (report.informative < trials && report.attempts < max_attempts) {
        ++report.attempts;
        WhittakerFn W = whittaker_random(Jn, rng());
        WhittakerFn Wp = whittaker_random(Jm_inv, rng());
        PhiFn phi = PhiFn::zero(n, field);
        for (std::size_t i = phi_zero_at_origin ? 1 : 0; i < points; ++i)
            phi.table[i] = CycNum(detail::rand_range(rng, -3, 3));
        PhiFn phi_hat = fourier(phi, psi);

        CycNum L1(0), L2(0);
        for (const Mat& g : reps) {
            CycNum wv = W.value(g);
            if (wv.is_zero()) continue;
            CycNum prod = wv * Wp.value(g);
            if (prod.is_zero()) continue;
            L1 += prod * phi.table[PhiFn::index_of(vec_mat(e_n, g), field)];
            Mat ginv = g.inverse();
            std::vector<long> y(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j) y[static_cast<std::size_t>(j)] = ginv.at(j, 0);
            L2 += prod * phi_hat.table[PhiFn::index_of(y, field)];
        }
        if (L2 != report.gamma * L1) {
            report.ok = false;
            report.detail = "functional equation mismatch on attempt " + std::to_string(report.attempts);
            return report;
        }
        if (!L1.is_zero()) ++report.informative;
    }
    if (report.informative < trials) {
        report.ok = false;
        report.detail = "insufficient informative trials";
    }
    return report;
}

// n > m case
inline WellDefinedReport verify_welldefined_unequal(BesselFn& Jn, BesselFn& Jm_inv, long trials,
                                                    std::uint64_t seed,
                                                    std::size_t coset_budget = 600000) {
    WellDefinedReport report;
    report.gamma = gamma_unequal(Jn, Jm_inv, coset_budget);
    const int n = Jn.rep().n();
    const int m = Jm_inv.rep().n();
    const auto& hreps = Jm_inv.coset_reps(coset_budget);
    const FieldPtr& field = Jn.rep().field();
    const long q = field->q();
    const int wdt = n - m - 1;
    std::size_t xcount = 1;
    for (int i = 0; i < m * wdt; ++i) xcount *= static_cast<std::size_t>(q);

    std::mt19937_64 rng(seed);
    const long max_attempts = trials * 10;
    while (report.informative < trials && report.attempts < max_attempts) {
        ++report.attempts;
        WhittakerFn W = whittaker_random(Jn, rng());
        WhittakerFn Wp = whittaker_random(Jm_inv, rng());

        CycNum L1(0), L2(0);
        for (const Mat& h : hreps) {
            CycNum wp = Wp.value(h);
            if (wp.is_zero()) continue;
            L1 += W.value(embed_upper_left(n, h)) * wp;
            CycNum inner(0);
            std::vector<std::vector<long>> x(static_cast<std::size_t>(m),
                                             std::vector<long>(static_cast<std::size_t>(wdt), 0));
            for (std::size_t xi = 0; xi < xcount; ++xi) {
                std::size_t t = xi;
                for (int r = 0; r < m; ++r)
                    for (int c = 0; c < wdt; ++c) {
                        x[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                            static_cast<long>(t % static_cast<std::size_t>(q));
                        t /= static_cast<std::size_t>(q);
                    }
                inner += W.value(gamma_block_matrix(n, h, x));
            }
            L2 += inner * wp;
        }
        if (L2 != report.gamma * L1) {
            report.ok = false;
            report.detail = "functional equation mismatch on attempt " + std::to_string(report.attempts);
            return report;
        }
        if (!L1.is_zero()) ++report.informative;
    }
    if (report.informative < trials) {
        report.ok = false;
        report.detail = "insufficient informative trials";
    }
    return report;
}

}  // namespace cuspgamma
