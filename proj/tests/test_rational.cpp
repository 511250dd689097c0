#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rmk3/rational.hpp"

using namespace rmk3;

TEST_CASE("primes_below") {
    auto ps = primes_below(30);
    CHECK(ps == std::vector<int64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
    CHECK(primes_below(2).empty());
    CHECK(primes_below(0).empty());
    CHECK(primes_below(3) == std::vector<int64_t>{2});
}

TEST_CASE("primality") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(97));
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(0));
    CHECK_FALSE(is_prime_u64(91));  // 7*13
    CHECK(is_prime_u64(4179340454199820289ULL));
    CHECK_FALSE(is_prime_u64(4179340454199820287ULL));
    CHECK(is_probable_prime(Int("170141183460469231731687303715884105727")));  // 2^127-1
    CHECK_FALSE(is_probable_prime(Int("170141183460469231731687303715884105725")));
}

TEST_CASE("mod_pow and mod_inv") {
    CHECK(mod_pow(2, 10, 1000) == 24);
    CHECK(mod_pow(3, 0, 7) == 1);
    CHECK(mod_pow(5, 6, 7) == 1);  // Fermat
    for (int64_t a = 1; a < 13; a++) CHECK(mod_inv(a, 13) * a % 13 == 1);
}

TEST_CASE("legendre") {
    // squares mod 7: 1,2,4
    CHECK(legendre(1, 7) == 1);
    CHECK(legendre(2, 7) == 1);
    CHECK(legendre(3, 7) == -1);
    CHECK(legendre(0, 7) == 0);
    CHECK(legendre(-1, 7) == -1);   // 7 = 3 mod 4
    CHECK(legendre(-1, 13) == 1);   // 13 = 1 mod 4
    CHECK(legendre(int64_t(14), 7) == 0);
    CHECK(legendre(Int(-5), 7) == legendre(int64_t(2), 7));
    CHECK(legendre(Int("123456789123456789"), 1000003) ==
          legendre(to_int64(Int("123456789123456789") % 1000003), 1000003));
}

TEST_CASE("integer square roots") {
    CHECK(int_sqrt(Int(0)) == 0);
    CHECK(int_sqrt(Int(15)) == 3);
    CHECK(int_sqrt(Int(16)) == 4);
    Int big = Int("12345678901234567890");
    CHECK(int_sqrt(big * big) == big);
    CHECK(int_sqrt(big * big + 1) == big);
    CHECK(int_sqrt(big * big - 1) == big - 1);
    CHECK(is_square(Int(49)));
    CHECK_FALSE(is_square(Int(50)));
    CHECK_FALSE(is_square(Int(-4)));
    CHECK(is_square(Rat(49, 64)));
    CHECK_FALSE(is_square(Rat(49, 63)));
}

TEST_CASE("rat_sqrt") {
    auto r = rat_sqrt(Rat(49, 64));
    REQUIRE(r.has_value());
    CHECK(*r == Rat(7, 8));
    CHECK_FALSE(rat_sqrt(Rat(2)).has_value());
    CHECK_FALSE(rat_sqrt(Rat(-1, 4)).has_value());
    CHECK(rat_sqrt(Rat(0)) == Rat(0));
}

TEST_CASE("factor_int") {
    auto f = factor_int(Int(360));  // 2^3 3^2 5
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::pair<Int, int>{Int(2), 3});
    CHECK(f[1] == std::pair<Int, int>{Int(3), 2});
    CHECK(f[2] == std::pair<Int, int>{Int(5), 1});
    auto g = factor_int(Int(-97));
    REQUIRE(g.size() == 1);
    CHECK(g[0].first == 97);
    // semiprime beyond trial division
    Int n = Int(1000003) * Int(1000033);
    auto h = factor_int(n);
    REQUIRE(h.size() == 2);
    CHECK(h[0].first == 1000003);
    CHECK(h[1].first == 1000033);
}

TEST_CASE("squarefree_part and radical") {
    CHECK(squarefree_part(Int(1)) == 1);
    CHECK(squarefree_part(Int(8)) == 2);
    CHECK(squarefree_part(Int(-8)) == -2);
    CHECK(squarefree_part(Int(360)) == 10);
    CHECK(squarefree_part(Int(49)) == 1);
    CHECK(squarefree_part(Rat(1, 2)) == 2);     // num*den = 2
    CHECK(squarefree_part(Rat(-49, 8)) == -2);  // -49*8 = -2^3*7^2
    CHECK(squarefree_part(Rat(7, 8)) == 14);
    CHECK(radical(Int(360)) == 30);
    CHECK(radical(Int(-97)) == 97);
}

TEST_CASE("to_int64 bounds") {
    CHECK(to_int64(Int(-5)) == -5);
    CHECK(to_int64(Int("9223372036854775807")) == INT64_MAX);
    CHECK_THROWS_AS(to_int64(Int("9223372036854775808")), Error);
}

TEST_CASE("rat_str and parse_rat") {
    CHECK(rat_str(Rat(0)) == "0");
    CHECK(rat_str(Rat(-3)) == "-3");
    CHECK(rat_str(Rat(1, 2)) == "1/2");
    CHECK(rat_str(Rat(-7, 8)) == "-7/8");
    CHECK(rat_str(Rat(2, 4)) == "1/2");
    CHECK(parse_rat("1/2") == Rat(1, 2));
    CHECK(parse_rat("-7/8") == Rat(-7, 8));
    CHECK(parse_rat("  42 ") == Rat(42));
    CHECK(parse_rat("6/-4") == Rat(-3, 2));
    CHECK_THROWS_AS(parse_rat("1/0"), Error);
    CHECK_THROWS_AS(parse_rat("abc"), Error);
    CHECK_THROWS_AS(parse_rat(""), Error);
    // round trip on a sample grid
    for (int n = -20; n <= 20; n++)
        for (int d = 1; d <= 9; d++) {
            Rat r(n, d);
            CHECK(parse_rat(rat_str(r)) == r);
        }
}
