#include <catch2/catch_amalgamated.hpp>

#include <cuspgamma/cyclotomic.hpp>

#include <complex>
#include <random>

using cuspgamma::BigRat;
using cuspgamma::CycNum;

namespace {

// Random small element of Q(zeta_M) for a handful of moduli.
CycNum random_cyc(std::mt19937_64& rng, bool nonzero = false) {
    static const long moduli[] = {1, 2, 3, 4, 5, 6, 8, 12};
    std::uniform_int_distribution<int> mpick(0, 7);
    std::uniform_int_distribution<long> coeff(-4, 4);
    std::uniform_int_distribution<long> den(1, 5);
    for (;;) {
        const long m = moduli[mpick(rng)];
        CycNum v;
        for (long e = 0; e < m; ++e) {
            long c = coeff(rng);
            if (c != 0)
                v += CycNum::from_rational(cuspgamma::BigInt(c), cuspgamma::BigInt(den(rng))) *
                     CycNum::root(m, e);
        }
        if (!nonzero || !v.is_zero()) return v;
    }
}

}  // namespace

TEST_CASE("roots of unity reduce to canonical form", "[cyclotomic]") {
    CHECK(CycNum::root(4, 2) == CycNum(-1));
    CHECK(CycNum::root(3, 0) == CycNum(1));
    CHECK(CycNum::root(3, 1) + CycNum::root(3, 2) == CycNum(-1));
    CHECK(CycNum::root(3, 5) == CycNum::root(3, 2));   // exponent mod M
    CHECK(CycNum::root(3, -1) == CycNum::root(3, 2));  // negative exponent
    CHECK_THROWS_AS(CycNum::root(0, 1), std::invalid_argument);
}

TEST_CASE("field arithmetic", "[cyclotomic]") {
    CHECK(CycNum::root(5, 1) * CycNum::root(5, 4) == CycNum(1));
    CycNum a = CycNum(1) + CycNum::root(8, 1);
    CHECK((a - a).is_zero());

    // inverse of 1 - zeta_3, checked by multiplying back
    CycNum b = CycNum(1) - CycNum::root(3, 1);
    CycNum inv = CycNum(1) / b;
    CHECK(inv * b == CycNum(1));

    CHECK_THROWS_AS(a / CycNum(0), std::domain_error);
}

TEST_CASE("cross-modulus promotion", "[cyclotomic]") {
    // zeta_3 = zeta_6^2; arithmetic mixing moduli promotes to the lcm
    CHECK(CycNum::root(3, 1) == CycNum::root(6, 2));
    CycNum mixed = CycNum::root(4, 1) * CycNum::root(3, 1);
    CHECK(mixed == CycNum::root(12, 7));
    CHECK(mixed.modulus() == 12);
}

TEST_CASE("conjugation", "[cyclotomic]") {
    CHECK(CycNum::root(5, 1).conj() == CycNum::root(5, 4));
    CHECK(CycNum(-1).conj() == CycNum(-1));

    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        CycNum x = random_cyc(rng);
        CHECK(x.conj().conj() == x);
    }
    for (int i = 0; i < 50; ++i) {
        CycNum x = random_cyc(rng), y = random_cyc(rng);
        CHECK((x * y).conj() == x.conj() * y.conj());
    }
}

TEST_CASE("complex embedding", "[cyclotomic]") {
    auto i4 = CycNum::root(4, 1).embed();
    CHECK(std::abs(i4 - std::complex<double>(0, 1)) < 1e-12);

    auto z8 = CycNum::root(8, 1).embed();
    CHECK(std::abs(z8 - std::complex<double>(0.7071067811865476, 0.7071067811865476)) < 1e-9);

    auto s = (CycNum::root(3, 1) - CycNum::root(3, 2)).embed();
    CHECK(std::abs(s - std::complex<double>(0, 1.7320508075688772)) < 1e-9);
}

TEST_CASE("embedding is a ring homomorphism", "[cyclotomic]") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 200; ++i) {
        CycNum x = random_cyc(rng), y = random_cyc(rng);
        CHECK(std::abs((x + y).embed() - (x.embed() + y.embed())) < 1e-9);
        CHECK(std::abs((x * y).embed() - (x.embed() * y.embed())) < 1e-9);
    }
}

TEST_CASE("ring axioms on random triples", "[cyclotomic]") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 1000; ++i) {
        CycNum a = random_cyc(rng), b = random_cyc(rng), c = random_cyc(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a + b == b + a);
    }
}

TEST_CASE("canonical form decides equality", "[cyclotomic]") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 300; ++i) {
        CycNum a = random_cyc(rng), b = random_cyc(rng);
        bool diff_zero = (a - b).is_zero();
        CHECK(diff_zero == (a == b));
    }
    // 1 + zeta_3 + zeta_3^2 = 0 exactly
    CycNum z = CycNum(1) + CycNum::root(3, 1) + CycNum::root(3, 2);
    CHECK(z.is_zero());
    CHECK(z == CycNum(0));
}

TEST_CASE("division in the field", "[cyclotomic]") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 150; ++i) {
        CycNum a = random_cyc(rng), b = random_cyc(rng, /*nonzero=*/true);
        CycNum q = a / b;
        CHECK(q * b == a);
    }
}

TEST_CASE("promotion and demotion round-trip", "[cyclotomic]") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
        CycNum x = random_cyc(rng);
        long big = x.modulus() * 4;
        CycNum up = x.promoted(big);
        CHECK(std::abs(up.embed() - x.embed()) < 1e-9);
        auto down = up.demoted(x.modulus());
        REQUIRE(down.has_value());
        CHECK(*down == x);
    }
    // a value not in the subfield demotes to nothing
    CHECK_FALSE(CycNum::root(8, 1).demoted(4).has_value());
    CHECK(CycNum::root(8, 2).demoted(4).has_value());
}

TEST_CASE("minimized picks the smallest containing field", "[cyclotomic]") {
    CycNum x = CycNum::root(12, 6);  // equals -1
    CycNum m = x.minimized();
    CHECK(m.modulus() == 1);
    CHECK(m == CycNum(-1));

    CycNum y = CycNum::root(12, 4);  // a primitive cube root
    CHECK(y.minimized().modulus() == 3);
}

TEST_CASE("rational access and rendering", "[cyclotomic]") {
    CycNum half = CycNum::from_rational(cuspgamma::BigInt(1), cuspgamma::BigInt(2));
    CHECK(half.is_rational());
    CHECK(half.rational_value() == BigRat(1, 2));
    CHECK(half.to_string() == "1/2");
    CHECK_FALSE(CycNum::root(5, 1).is_rational());
}
