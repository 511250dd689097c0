#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rmk3/errors.hpp"
#include "rmk3/ffield.hpp"

using namespace rmk3;

TEST_CASE("build_extension moduli are canonical") {
    auto F1 = build_extension(7, 1);
    CHECK(F1.q == 7);
    CHECK(F1.modulus.empty());
    // least monic irreducible of degree 2 over F_3 is x^2 + 1
    auto F2 = build_extension(3, 2);
    CHECK(F2.q == 9);
    CHECK(F2.modulus == std::vector<int64_t>{1, 0, 1});
    // x^2 + 2 is reducible mod 3 only if -2 is a square; 1 is a square so
    // x^2+1 wins lexicographically (constant varies fastest)
    auto F5 = build_extension(5, 2);
    CHECK(F5.modulus == std::vector<int64_t>{2, 0, 1});  // x^2+2, since x^2+1 splits mod 5
    auto F34 = build_extension(3, 4);
    CHECK(F34.q == 81);
    CHECK(F34.modulus.size() == 5);
    CHECK(F34.modulus[4] == 1);
}

TEST_CASE("field element arithmetic") {
    auto F = build_extension(5, 2);
    auto one = fe_one();
    auto g = field_generator(F);
    // generator has multiplicative order exactly q-1
    CHECK(fe_pow(F, g, Int(24)) == one);
    CHECK(fe_pow(F, g, Int(12)) != one);
    CHECK(fe_pow(F, g, Int(8)) != one);
    // index round trip covers the whole field
    for (int64_t i = 0; i < 25; i++) CHECK(fe_index(F, fe_from_index(F, i)) == i);
    // distributivity spot check
    auto a = fe_from_index(F, 7), b = fe_from_index(F, 13), c = fe_from_index(F, 21);
    CHECK(fe_mul(F, a, fe_add(F, b, c)) == fe_add(F, fe_mul(F, a, b), fe_mul(F, a, c)));
}

TEST_CASE("quad_char agrees with legendre on prime fields") {
    auto F = build_extension(13, 1);
    for (int64_t x = 0; x < 13; x++)
        CHECK(quad_char(F, fe_from_index(F, x)) == legendre(x, 13));
}

TEST_CASE("character table") {
    auto chi = build_character_table(11);
    REQUIRE(chi.size() == 11);
    CHECK(chi[0] == 0);
    for (int64_t x = 1; x < 11; x++) CHECK(chi[x] == legendre(x, 11));
}

TEST_CASE("quad_split_type") {
    // d = 2: split iff p = +-1 mod 8
    CHECK(quad_split_type(7, Int(2)) == SplitType::split);
    CHECK(quad_split_type(17, Int(2)) == SplitType::split);
    CHECK(is_inert(3, Int(2)));
    CHECK(is_inert(5, Int(2)));
    CHECK(is_inert(13, Int(2)));
    CHECK(quad_split_type(2, Int(2)) == SplitType::ramified);
    // d = 5: 2 is inert since 5 = 5 mod 8
    CHECK(is_inert(2, Int(5)));
    CHECK(is_inert(3, Int(5)));
    CHECK(quad_split_type(5, Int(5)) == SplitType::ramified);
    CHECK(quad_split_type(11, Int(5)) == SplitType::split);
    // d = -1 = 1 mod 4 fails; -1 = 3 mod 4: 2 ramifies
    CHECK(quad_split_type(2, Int(-1)) == SplitType::ramified);
    CHECK(quad_split_type(5, Int(-1)) == SplitType::split);
    CHECK(quad_split_type(7, Int(-1)) == SplitType::inert);
    // d = 17 = 1 mod 8: 2 splits
    CHECK(quad_split_type(2, Int(17)) == SplitType::split);
}

TEST_CASE("Fq tables") {
    for (auto [p, k] : {std::pair<int64_t, int>{7, 1}, {3, 2}, {5, 2}, {7, 2}, {3, 3}}) {
        auto Fp = fq_get(p, k);
        const Fq& F = *Fp;
        int64_t q = F.q;
        // chi via tables equals the table-free character
        for (int64_t x = 0; x < q; x++)
            CHECK(F.chi(x) == quad_char(F.F, fe_from_index(F.F, x)));
        // mul consistency with the descriptor arithmetic
        for (int64_t x = 1; x < q; x += 3)
            for (int64_t y = 1; y < q; y += 5) {
                auto z = fe_mul(F.F, fe_from_index(F.F, x), fe_from_index(F.F, y));
                CHECK(F.mul(x, y) == fe_index(F.F, z));
            }
        // inverses
        for (int64_t x = 1; x < q; x++) CHECK(F.mul(x, F.inv(x)) == 1);
        // add/sub/neg
        for (int64_t x = 0; x < q; x += 2)
            for (int64_t y = 0; y < q; y += 3) {
                CHECK(F.sub(F.add(x, y), y) == x);
                CHECK(F.add(x, F.neg(x)) == 0);
            }
    }
}

TEST_CASE("Fq sqrt and frobenius") {
    auto Fp = fq_get(13, 2);
    const Fq& F = *Fp;
    for (int64_t x = 1; x < F.q; x++) {
        if (F.chi(x) == 1) {
            int64_t r = F.sqrt(x);
            CHECK(F.mul(r, r) == x);
        } else {
            CHECK_THROWS_AS(F.sqrt(x), Error);
        }
        // frobenius is the p-power map and fixes exactly F_p
        CHECK(F.frobenius(x) == [&] {
            int64_t y = 1;
            for (int i = 0; i < 13; i++) y = F.mul(y, x);
            return y;
        }());
    }
    int fixed = 0;
    for (int64_t x = 0; x < F.q; x++)
        if (F.frobenius(x) == x) fixed++;
    CHECK(fixed == 13);
}

TEST_CASE("Fq form_value") {
    auto Fp = fq_get(5, 2);
    const Fq& F = *Fp;
    // 2u^2 + 3uv + c v^2 at (u,v) via direct arithmetic
    for (int64_t u = 0; u < F.q; u += 4)
        for (int64_t v = 0; v < F.q; v += 3) {
            int64_t direct = F.add(F.add(F.mul(F.scalar(2), F.mul(u, u)),
                                         F.mul(F.scalar(3), F.mul(u, v))),
                                   F.mul(F.scalar(4), F.mul(v, v)));
            CHECK(F.form_value(F.scalar(2), F.scalar(3), F.scalar(4), u, v) == direct);
        }
}

TEST_CASE("fq_get caches and validates") {
    CHECK(fq_get(7, 2).get() == fq_get(7, 2).get());
    CHECK_THROWS_AS(fq_get(4, 1), BadPrime);
    CHECK_THROWS_AS(fq_get(2, 1), BadPrime);
    CHECK_THROWS_AS(fq_get(7, 5), BadPrime);
    CHECK_THROWS_AS(fq_get(2053, 2), BadPrime);  // 2053^2 > 2^21
}
