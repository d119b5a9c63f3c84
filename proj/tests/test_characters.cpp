#include <catch2/catch_amalgamated.hpp>

#include <cuspgamma/characters.hpp>

#include "dixon_oracle.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace cuspgamma;

TEST_CASE("cuspidal counts", "[characters]") {
    CHECK(list_cuspidals(2, FieldSpec::build(3, 1)).size() == 3);
    CHECK(list_cuspidals(2, FieldSpec::build(2, 1)).size() == 1);
    CHECK(list_cuspidals(3, FieldSpec::build(2, 1)).size() == 2);
    CHECK(list_cuspidals(3, FieldSpec::build(3, 1)).size() == 8);
    CHECK(list_cuspidals(1, FieldSpec::build(5, 1)).size() == 4);
    CHECK_THROWS_AS(list_cuspidals(4, FieldSpec::build(2, 1)), std::invalid_argument);
}

TEST_CASE("dimension and identity value", "[characters]") {
    for (long q : {2L, 3L, 5L}) {
        auto field = FieldSpec::build(q, 1);
        for (const auto& rep : list_cuspidals(2, field)) {
            Mat id = Mat::identity(2, field);
            CHECK(rep.char_value(id) == CycNum(q - 1));
        }
    }
    auto f2 = FieldSpec::build(2, 1);
    for (const auto& rep : list_cuspidals(3, f2))
        CHECK(rep.char_value(Mat::identity(3, f2)) == CycNum(3));  // (q-1)(q^2-1) = 3
}

TEST_CASE("central character", "[characters]") {
    for (long q : {3L, 5L, 7L}) {
        auto field = FieldSpec::build(q, 1);
        for (const auto& rep : list_cuspidals(2, field)) {
            CHECK(rep.central_character(1) == CycNum(1));
            Mat id = Mat::identity(2, field);
            CycNum deg = rep.char_value(id);
            for (long z = 1; z < q; ++z) {
                Mat zi(2, field);
                zi.at(0, 0) = z;
                zi.at(1, 1) = z;
                CHECK(rep.char_value(zi) == rep.central_character(z) * deg);
            }
            // multiplicative in z, exhaustively
            for (long z1 = 1; z1 < q; ++z1)
                for (long z2 = 1; z2 < q; ++z2)
                    CHECK(rep.central_character(field->mul(z1, z2)) ==
                          rep.central_character(z1) * rep.central_character(z2));
        }
    }
}

TEST_CASE("cuspidality sum for n=2", "[characters]") {
    auto field = FieldSpec::build(3, 1);
    for (const auto& rep : list_cuspidals(2, field)) {
        CycNum s(0);
        for (long b = 0; b < 3; ++b) {
            Mat u = Mat::identity(2, field);
            u.at(0, 1) = b;
            s += rep.char_value(u);
        }
        CHECK(s.is_zero());
    }
}

TEST_CASE("contragredient on parameters", "[characters]") {
    auto field = FieldSpec::build(5, 1);
    for (const auto& rep : list_cuspidals(2, field)) {
        CHECK(rep.contragredient().contragredient().isomorphic(rep));
        // chi-dual(g) = chi(g^{-1}) on a few classes
        auto dual = rep.contragredient();
        auto census = GroupCensus::get(2, field);
        for (const Mat& g : census->class_rep) CHECK(dual.char_value(g) == rep.char_value(g.inverse()));
    }
    // the unique cuspidal of GL_2(F_2) is self-contragredient
    auto f2 = FieldSpec::build(2, 1);
    auto only = list_cuspidals(2, f2);
    REQUIRE(only.size() == 1);
    CHECK(only[0].self_contragredient());
}

TEST_CASE("validation gate passes at desk scale", "[characters]") {
    for (auto [n, q] : {std::pair<int, long>{2, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 2}}) {
        long p = (q == 4) ? 2 : q;
        int f = (q == 4) ? 2 : 1;
        auto field = FieldSpec::build(p, f);
        auto census = GroupCensus::get(n, field);
        for (const auto& rep : list_cuspidals(n, field)) {
            auto v = validate_cuspidal(rep, *census);
            INFO(rep.name() << ": " << (v.failures.empty() ? "" : v.failures.front()));
            CHECK(v.ok);
            CHECK(rep.validated());
        }
    }
}

TEST_CASE("distinct cuspidals are orthogonal", "[characters]") {
    for (auto [n, q] : {std::pair<int, long>{2, 3}, {2, 5}, {3, 2}}) {
        auto field = FieldSpec::build(q, 1);
        auto census = GroupCensus::get(n, field);
        auto reps = list_cuspidals(n, field);
        for (std::size_t a = 0; a < reps.size(); ++a)
            for (std::size_t b = a + 1; b < reps.size(); ++b) {
                CycNum inner(0);
                for (std::size_t c = 0; c < census->keys.size(); ++c)
                    inner += CycNum(census->class_size[c]) * reps[a].char_value(census->keys[c]) *
                             reps[b].char_value(census->keys[c]).conj();
                CHECK(inner.is_zero());
            }
    }
}

TEST_CASE("character values are class functions", "[characters]") {
    auto field = FieldSpec::build(3, 1);
    auto census = GroupCensus::get(2, field);
    auto reps = list_cuspidals(2, field);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> pick(0, census->elements->size() - 1);
    for (int t = 0; t < 100; ++t) {
        const Mat& g = (*census->elements)[pick(rng)];
        const Mat& h = (*census->elements)[pick(rng)];
        Mat conj = h * g * h.inverse();
        for (const auto& rep : reps) CHECK(rep.char_value(g) == rep.char_value(conj));
    }
}

TEST_CASE("brute-force character table agrees row-for-row", "[characters][dixon]") {
    for (long q : {2L, 3L}) {
        auto field = FieldSpec::build(q, 1);
        auto census = GroupCensus::get(2, field);
        auto table = dixon::character_table(*census);

        // sanity: the table is complete and orthonormal
        CHECK(table.size() == census->keys.size());
        long sum_sq = 0;
        for (const auto& row : table) sum_sq += row.degree * row.degree;
        CHECK(sum_sq == static_cast<long>(census->elements->size()));

        // cuspidal rows of the oracle: degree q-1 and all unipotent-radical
        // sums vanish
        const auto& U = unipotent_group(2, field);
        auto is_cuspidal_row = [&](const dixon::CharacterRow& row) {
            if (row.degree != q - 1) return false;
            for (const Mat& g : *census->elements) {
                CycNum s(0);
                for (const Mat& u : U)
                    s += row.values[static_cast<std::size_t>(
                        census->key_id[static_cast<std::size_t>(census->lookup(g * u))])];
                if (!s.is_zero()) return false;
            }
            return true;
        };

        std::vector<std::vector<CycNum>> oracle_rows;
        for (const auto& row : table)
            if (is_cuspidal_row(row)) oracle_rows.push_back(row.values);

        auto reps = list_cuspidals(2, field);
        REQUIRE(oracle_rows.size() == reps.size());

        // every closed-form row appears among the oracle rows exactly once
        std::vector<bool> used(oracle_rows.size(), false);
        for (const auto& rep : reps) {
            bool matched = false;
            for (std::size_t i = 0; i < oracle_rows.size(); ++i) {
                if (used[i]) continue;
                bool same = true;
                for (std::size_t c = 0; c < census->keys.size(); ++c)
                    if (oracle_rows[i][c] != rep.char_value(census->keys[c])) {
                        same = false;
                        break;
                    }
                if (same) {
                    used[i] = true;
                    matched = true;
                    break;
                }
            }
            INFO(rep.name());
            CHECK(matched);
        }
    }
}
