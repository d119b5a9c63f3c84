#include <catch2/catch_amalgamated.hpp>

#include <cuspgamma/gamma_finite.hpp>

#include <random>

using namespace cuspgamma;

TEST_CASE("finite Fourier transform", "[gamma]") {
    auto field = FieldSpec::build(3, 1);
    AddCharacter psi(field);
    const int n = 2;
    const std::size_t points = PhiFn::point_count(n, field);

    // delta at the origin transforms to the constant 1
    PhiFn d0 = PhiFn::delta(n, field, 0);
    PhiFn d0h = fourier(d0, psi);
    for (const auto& v : d0h.table) CHECK(v == CycNum(1));

    // the constant 1 transforms to q^n delta_0
    PhiFn ones = PhiFn::zero(n, field);
    for (auto& v : ones.table) v = CycNum(1);
    PhiFn oh = fourier(ones, psi);
    CHECK(oh.table[0] == CycNum(9));
    for (std::size_t i = 1; i < points; ++i) CHECK(oh.table[i].is_zero());

    // double transform: phi-hat-hat(x) = q^n phi(-x)
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<long> small(-4, 4);
    for (int t = 0; t < 10; ++t) {
        PhiFn phi = PhiFn::zero(n, field);
        for (auto& v : phi.table) v = CycNum(small(rng));
        PhiFn once = fourier(phi, psi);
        PhiFn twice = fourier(once, psi);
        for (std::size_t i = 0; i < points; ++i) {
            auto x = PhiFn::point_of(i, n, field);
            for (auto& c : x) c = field->neg(c);
            CHECK(twice.table[i] == CycNum(9) * phi.table[PhiFn::index_of(x, field)]);
        }
    }
}

TEST_CASE("gamma for GL_2 x GL_1 matches the direct sum", "[gamma]") {
    auto field = FieldSpec::build(3, 1);
    auto census = GroupCensus::get(2, field);
    AddCharacter psi(field);
    auto sigmas = list_cuspidals(2, field);
    auto taus = list_cuspidals(1, field);
    for (const auto& sigma : sigmas)
        for (const auto& tau : taus) {
            BesselFn J(sigma, psi, census);
            BesselFn Jt(tau, psi.inverted());
            CycNum gamma = gamma_unequal(J, Jt);
            // direct evaluation: sum over h in f^x of J([[0,1],[h,0]]) theta'(h)
            CycNum direct(0);
            for (long h = 1; h < 3; ++h) {
                Mat m(2, field);
                m.at(0, 1) = 1;
                m.at(1, 0) = h;
                Mat h1(1, field);
                h1.at(0, 0) = h;
                direct += J.value(m) * Jt.value(h1);
            }
            CHECK(gamma == direct);
        }
}

TEST_CASE("normalization sum equals one", "[gamma]") {
    for (auto [n, m, q] : {std::tuple<int, int, long>{2, 1, 2}, {2, 1, 3}, {2, 1, 5},
                           {3, 1, 2}, {3, 2, 2}, {3, 1, 3}, {3, 2, 3}}) {
        auto field = FieldSpec::build(q, 1);
        AddCharacter psi(field);
        auto sigmas = list_cuspidals(n, field);
        auto taus = list_cuspidals(m, field);
        auto census_n = GroupCensus::get(n, field);
        auto census_m = m > 1 ? GroupCensus::get(m, field) : nullptr;
        for (const auto& sigma : sigmas)
            for (const auto& tau : taus) {
                BesselFn J(sigma, psi, census_n);
                BesselFn Jt(tau, psi.inverted(), census_m);
                CHECK(normalization_sum(J, Jt) == CycNum(1));
            }
    }
}

TEST_CASE("gamma for GL_1 x GL_1 is a Gauss sum", "[gamma]") {
    auto field = FieldSpec::build(3, 1);
    AddCharacter psi(field);
    auto chars = list_cuspidals(1, field);  // k = 0 trivial, k = 1 quadratic

    BesselFn Jq(chars[1], psi);
    BesselFn Jt(chars[0], psi.inverted());
    CycNum gamma = gamma_equal(Jq, Jt, psi);
    CHECK(gamma == CycNum::root(3, 1) - CycNum::root(3, 2));

    // |gamma|^2 = q for every pair with nontrivial product character
    for (const auto& c1 : chars)
        for (const auto& c2 : chars) {
            if ((c1.theta_exponent() + c2.theta_exponent()) % 2 == 0) continue;
            BesselFn Ja(c1, psi);
            BesselFn Jb(c2, psi.inverted());
            CycNum g = gamma_equal(Ja, Jb, psi);
            CHECK(g * g.conj() == CycNum(3));
        }
}

TEST_CASE("gamma of a contragredient pair is -1", "[gamma]") {
    for (auto [n, q] : {std::pair<int, long>{2, 2}, {2, 3}, {3, 2}}) {
        auto field = FieldSpec::build(q, 1);
        auto census = GroupCensus::get(n, field);
        AddCharacter psi(field);
        for (const auto& sigma : list_cuspidals(n, field)) {
            BesselFn J(sigma, psi, census);
            BesselFn Jd(sigma.contragredient(), psi.inverted(), census);
            CHECK(gamma_equal(J, Jd, psi) == CycNum(-1));
        }
    }
}

TEST_CASE("orthogonality pairing", "[gamma]") {
    // contragredient pairs: |G|/(|U| dim); others: 0
    {
        auto field = FieldSpec::build(3, 1);
        auto census = GroupCensus::get(2, field);
        AddCharacter psi(field);
        auto sigmas = list_cuspidals(2, field);
        for (const auto& a : sigmas)
            for (const auto& b : sigmas) {
                BesselFn Ja(a, psi, census);
                BesselFn Jb(b, psi.inverted(), census);
                CycNum pair = bessel_pairing(Ja, Jb);
                if (b.isomorphic(a.contragredient()))
                    CHECK(pair == CycNum(8));  // 48 / (3 * 2)
                else
                    CHECK(pair.is_zero());
            }
    }
    {
        auto field = FieldSpec::build(2, 1);
        auto census = GroupCensus::get(3, field);
        AddCharacter psi(field);
        auto sigmas = list_cuspidals(3, field);
        for (const auto& a : sigmas)
            for (const auto& b : sigmas) {
                BesselFn Ja(a, psi, census);
                BesselFn Jb(b, psi.inverted(), census);
                CycNum pair = bessel_pairing(Ja, Jb);
                if (b.isomorphic(a.contragredient()))
                    CHECK(pair == CycNum(7));  // 168 / (8 * 3)
                else
                    CHECK(pair.is_zero());
            }
    }
}

TEST_CASE("pairing detects the contragredient parameter", "[gamma]") {
    // nonzero pairing exactly against the parameter-level dual, n=2, q<=5
    for (long q : {2L, 3L, 5L}) {
        auto field = FieldSpec::build(q, 1);
        auto census = GroupCensus::get(2, field);
        AddCharacter psi(field);
        auto sigmas = list_cuspidals(2, field);
        for (const auto& a : sigmas) {
            auto dual = a.contragredient();
            for (const auto& b : sigmas) {
                BesselFn Ja(a, psi, census);
                BesselFn Jb(b, psi.inverted(), census);
                CHECK(bessel_pairing(Ja, Jb).is_zero() == !b.isomorphic(dual));
            }
        }
    }
}

TEST_CASE("coset-representative invariance of the gamma sums", "[gamma]") {
    // recompute gamma_unequal with perturbed representatives u*h
    auto field = FieldSpec::build(3, 1);
    auto census2 = GroupCensus::get(2, field);
    AddCharacter psi(field);
    auto sigma = list_cuspidals(3, field)[0];
    auto tau = list_cuspidals(2, field)[0];
    auto census3 = GroupCensus::get(3, field);
    BesselFn J(sigma, psi, census3);
    BesselFn Jt(tau, psi.inverted(), census2);
    CycNum reference = gamma_unequal(J, Jt);

    const auto& U = unipotent_group(2, field);
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::size_t> pu(0, U.size() - 1);
    CycNum perturbed(0);
    for (const Mat& h : enumerate_cosets(2, field)) {
        Mat h2 = U[pu(rng)] * h;  // a different representative of the same coset
        CycNum b = Jt.value(h2);
        if (b.is_zero()) continue;
        // n - m - 1 = 0: the x block is empty
        perturbed += J.value(gamma_block_matrix(3, h2, {{}, {}})) * b;
    }
    CHECK(perturbed == reference);
}

TEST_CASE("well-definedness of the equal-size gamma", "[gamma]") {
    auto field = FieldSpec::build(3, 1);
    auto census = GroupCensus::get(2, field);
    AddCharacter psi(field);
    auto sigmas = list_cuspidals(2, field);

    // specific vectors: W = J, W' = J', phi = indicator of e_n recovers gamma
    {
        BesselFn J(sigmas[0], psi, census);
        BesselFn Jp(sigmas[1], psi.inverted(), census);
        CycNum gamma = gamma_equal(J, Jp, psi);
        PhiFn phi = PhiFn::delta(2, field, PhiFn::index_of({0, 1}, field));
        PhiFn phi_hat = fourier(phi, psi);
        CycNum L1(0), L2(0);
        for (const Mat& g : J.coset_reps()) {
            CycNum prod = J.value_at_rep(g) * Jp.value_at_rep(g);
            if (prod.is_zero()) continue;
            std::vector<long> en{0, 1};
            L1 += prod * phi.table[PhiFn::index_of(vec_mat(en, g), field)];
            Mat gi = g.inverse();
            L2 += prod * phi_hat.table[PhiFn::index_of({gi.at(0, 0), gi.at(1, 0)}, field)];
        }
        CHECK_FALSE(L1.is_zero());
        CHECK(L2 == gamma * L1);
    }

    // randomized trials, all cuspidal pairs
    for (const auto& a : sigmas)
        for (const auto& b : sigmas) {
            BesselFn Ja(a, psi, census);
            BesselFn Jb(b, psi.inverted(), census);
            auto report = verify_welldefined_equal(Ja, Jb, psi, 20, 4242);
            INFO(a.name() << " x " << b.name() << ": " << report.detail);
            CHECK(report.ok);
            CHECK(report.informative >= 20);
        }

    // n = m = 1
    auto chars = list_cuspidals(1, field);
    for (const auto& a : chars)
        for (const auto& b : chars) {
            BesselFn Ja(a, psi);
            BesselFn Jb(b, psi.inverted());
            auto report = verify_welldefined_equal(Ja, Jb, psi, 20, 777);
            CHECK(report.ok);
        }
}

TEST_CASE("scaling a test vector leaves gamma unchanged", "[gamma]") {
    auto field = FieldSpec::build(3, 1);
    auto census = GroupCensus::get(2, field);
    AddCharacter psi(field);
    auto sigmas = list_cuspidals(2, field);
    BesselFn J(sigmas[0], psi, census);
    BesselFn Jp(sigmas[2], psi.inverted(), census);
    CycNum gamma = gamma_equal(J, Jp, psi);

    WhittakerFn W = whittaker_random(J, 5);
    WhittakerFn Wp = whittaker_random(Jp, 6);
    PhiFn phi = PhiFn::zero(2, field);
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<long> small(-3, 3);
    for (std::size_t i = 1; i < phi.table.size(); ++i) phi.table[i] = CycNum(small(rng));
    PhiFn phi_hat = fourier(phi, psi);

    for (long c : {1L, 2L, 5L}) {
        CycNum L1(0), L2(0);
        for (const Mat& g : J.coset_reps()) {
            CycNum prod = CycNum(c) * W.value(g) * Wp.value(g);
            if (prod.is_zero()) continue;
            std::vector<long> en{0, 1};
            L1 += prod * phi.table[PhiFn::index_of(vec_mat(en, g), field)];
            Mat gi = g.inverse();
            L2 += prod * phi_hat.table[PhiFn::index_of({gi.at(0, 0), gi.at(1, 0)}, field)];
        }
        CHECK(L2 == gamma * L1);
    }
}

TEST_CASE("well-definedness of the unequal-size gamma", "[gamma]") {
    for (auto [n, m, q] : {std::tuple<int, int, long>{2, 1, 2}, {2, 1, 3}, {3, 1, 2}, {3, 2, 2}}) {
        auto field = FieldSpec::build(q, 1);
        AddCharacter psi(field);
        auto sigmas = list_cuspidals(n, field);
        auto taus = list_cuspidals(m, field);
        auto census_n = GroupCensus::get(n, field);
        auto census_m = m > 1 ? GroupCensus::get(m, field) : nullptr;
        for (const auto& sigma : sigmas)
            for (const auto& tau : taus) {
                BesselFn J(sigma, psi, census_n);
                BesselFn Jt(tau, psi.inverted(), census_m);
                auto report = verify_welldefined_unequal(J, Jt, 10, 31337);
                INFO(sigma.name() << " x " << tau.name() << ": " << report.detail);
                CHECK(report.ok);
                CHECK(report.informative >= 10);
            }
    }
}

TEST_CASE("behavior when phi does not vanish at the origin", "[gamma]") {
    auto field = FieldSpec::build(3, 1);
    auto census = GroupCensus::get(2, field);
    AddCharacter psi(field);
    auto sigmas = list_cuspidals(2, field);

    // non-contragredient pair: the identity holds even with phi(0) != 0
    {
        BesselFn Ja(sigmas[0], psi, census);
        BesselFn Jb(sigmas[0], psi.inverted(), census);  // sigma_0 dual is sigma_2 here
        REQUIRE_FALSE(sigmas[0].isomorphic(sigmas[0].contragredient()));
        auto report = verify_welldefined_equal(Ja, Jb, psi, 10, 2020, 600000,
                                               /*phi_zero_at_origin=*/false);
        CHECK(report.ok);
    }

    // contragredient pair: the identity generally fails with phi(0) != 0
    {
        BesselFn Ja(sigmas[0], psi, census);
        BesselFn Jb(sigmas[0].contragredient(), psi.inverted(), census);
        auto report = verify_welldefined_equal(Ja, Jb, psi, 10, 2021, 600000,
                                               /*phi_zero_at_origin=*/false);
        CHECK_FALSE(report.ok);
    }
}
