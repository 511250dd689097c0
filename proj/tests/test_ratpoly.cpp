#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "rmk3/errors.hpp"
#include "rmk3/ratpoly.hpp"

using namespace rmk3;

namespace {

RatPoly rp(std::initializer_list<int> cs) {
    RatPoly f;
    for (int c : cs) f.push_back(Rat(c));
    return rp_norm(f);
}

}  // namespace

TEST_CASE("ring operations") {
    RatPoly f = rp({1, 2, 1});   // (x+1)^2
    RatPoly g = rp({-1, 1});     // x-1
    CHECK(rp_deg(f) == 2);
    CHECK(rp_deg(RatPoly{}) == -1);
    CHECK(rp_mul(g, g) == rp({1, -2, 1}));
    CHECK(rp_add(f, rp({-1, -2, -1})) == RatPoly{});
    CHECK(rp_sub(f, f) == RatPoly{});
    CHECK(rp_eval(f, Rat(3)) == Rat(16));
    auto [q, r] = rp_divmod(rp_mul(f, g), g);
    CHECK(q == f);
    CHECK(r == RatPoly{});
    auto [q2, r2] = rp_divmod(f, g);
    CHECK(rp_add(rp_mul(q2, g), r2) == f);
    CHECK(rp_derivative(f) == rp({2, 2}));
    CHECK(rp_pow(g, 3) == rp({-1, 3, -3, 1}));
    CHECK(rp_monic(rp({2, 4})) == rp({1, 2}));
}

TEST_CASE("gcd") {
    RatPoly f = rp_mul(rp({1, 1}), rp({-2, 1}));  // (x+1)(x-2)
    RatPoly g = rp_mul(rp({1, 1}), rp({3, 1}));   // (x+1)(x+3)
    CHECK(rp_gcd_monic(f, g) == rp({1, 1}));
    CHECK(rp_gcd_monic(f, rp({7})) == rp({1}));
}

TEST_CASE("int conversions") {
    RatPoly f = rp({1, -2, 1});
    auto z = rat_to_int(f);
    REQUIRE(z.has_value());
    CHECK(z->size() == 3);
    CHECK((*z)[1] == -2);
    CHECK_FALSE(rat_to_int(RatPoly{Rat(1, 2)}).has_value());
    CHECK(ip_eval(*z, Int(5)) == 16);
    CHECK(int_to_rat(*z) == f);
}

TEST_CASE("root_moduli") {
    // roots 1, 2, 3
    RatPoly f = rp_mul(rp_mul(rp({-1, 1}), rp({-2, 1})), rp({-3, 1}));
    auto m = root_moduli(f);
    std::sort(m.begin(), m.end());
    REQUIRE(m.size() == 3);
    CHECK(m[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(m[1] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(m[2] == doctest::Approx(3.0).epsilon(1e-9));
    // x^2+1: both moduli 1
    for (double v : root_moduli(rp({1, 0, 1}))) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("root_moduli on a repeated-root sextic") {
    // (Z-17)^2 (Z^4+28Z^3+646Z^2+8092Z+83521): every root has modulus 17;
    // the repeated factor forces the squarefree reduction path
    RatPoly quartic = rp({83521, 8092, 646, 28, 1});
    RatPoly f = rp_mul(rp_mul(rp({-17, 1}), rp({-17, 1})), quartic);
    auto m = root_moduli(f);
    REQUIRE(m.size() == 5);  // squarefree part has degree 5
    for (double v : m) CHECK(v == doctest::Approx(17.0).epsilon(1e-6));
}

TEST_CASE("power sums and newton round trip") {
    RatPoly f = rp_mul(rp_mul(rp({-1, 1}), rp({-2, 1})), rp({5, 1}));  // roots 1,2,-5
    auto t = power_sums_from_poly(f, 3);
    CHECK(t[0] == Rat(-2));   // 1+2-5
    CHECK(t[1] == Rat(30));   // 1+4+25
    CHECK(t[2] == Rat(-116)); // 1+8-125
    CHECK(newton_to_poly(t, 3) == rp_monic(f));
    auto e = elementary_from_power_sums(t);
    CHECK(e[0] == Rat(-2));
    CHECK(e[1] == Rat(-13));  // e2 = 2 - 5 - 10
    CHECK(e[2] == Rat(-10));
}

TEST_CASE("power_root_transform") {
    RatPoly f = rp_mul(rp({-2, 1}), rp({-3, 1}));  // roots 2,3
    CHECK(power_root_transform(f, 2) == rp({36, -13, 1}));  // roots 4,9
    CHECK(power_root_transform(f, 1) == rp_monic(f));
    CHECK(power_root_transform(f, 3) == rp({216, -35, 1}));  // roots 8,27
}

TEST_CASE("quartic_discriminant") {
    // disc of (x-1)(x-2)(x-3)(x-4) = prod (ri-rj)^2 = (1*2*3*1*2*1)^2 = 144
    RatPoly f = rp_mul(rp_mul(rp({-1, 1}), rp({-2, 1})), rp_mul(rp({-3, 1}), rp({-4, 1})));
    CHECK(quartic_discriminant(f) == Rat(144));
    CHECK(quartic_discriminant(rp({-1, 0, 0, 0, 1})) == Rat(-256));  // x^4-1
}

TEST_CASE("resolvent_cubic") {
    // x^4 + px^2 + qx + r has resolvent y^3 - py^2 - 4ry + (4pr - q^2)
    RatPoly f = rp({3, -2, 1, 0, 1});  // p=1, q=-2, r=3
    CHECK(resolvent_cubic(f) == rp({8, -12, -1, 1}));
}

TEST_CASE("rational_roots") {
    RatPoly f = rp_mul(rp_mul(rp({-1, 2}), rp({3, 1})), rp({1, 0, 1}));  // 1/2, -3, +-i
    auto r = rational_roots(f);
    std::sort(r.begin(), r.end());
    REQUIRE(r.size() == 2);
    CHECK(r[0] == Rat(-3));
    CHECK(r[1] == Rat(1, 2));
    CHECK(rational_roots(rp({1, 0, 1})).empty());
    // repeated roots listed once
    auto s = rational_roots(rp({1, 2, 1}));
    REQUIRE(s.size() == 1);
    CHECK(s[0] == Rat(-1));
}

TEST_CASE("is_square_of_quadratic") {
    RatPoly g = rp({3, -2, 1});
    auto sq = is_square_of_quadratic(rp_mul(g, g));
    REQUIRE(sq.has_value());
    CHECK(sq->first == Rat(-2));
    CHECK(sq->second == Rat(3));
    CHECK_FALSE(is_square_of_quadratic(rp({1, 0, 0, 0, 1})).has_value());
}

TEST_CASE("split_over_quadratic") {
    // (Z^2 + sqrt2 Z + 1)(Z^2 - sqrt2 Z + 1) = Z^4 + 0Z^3 + 0Z^2 + 0Z + 1... compute:
    // product = Z^4 + (2 - 2)Z^2 + ... use exact: (Z^2+1)^2 - 2Z^2 = Z^4 + 1? no, = Z^4+2Z^2+1-2Z^2
    RatPoly f = rp({1, 0, 0, 0, 1});  // Z^4 + 1 = (Z^2 + sqrt2 Z + 1)(Z^2 - sqrt2 Z + 1)
    auto s = split_over_quadratic(f, Int(2));
    REQUIRE(s.has_value());
    CHECK(s->A == Rat(0));
    CHECK(s->C == Rat(1));
    CHECK(s->E == Rat(0));
    CHECK(s->B * s->B == Rat(1, 2) || s->B * s->B == Rat(2));  // B sqrt2 = +-sqrt2
    CHECK_FALSE(split_over_quadratic(f, Int(3)).has_value());
}

TEST_CASE("quartic_irreducible") {
    CHECK(quartic_irreducible(rp({1, 0, 0, 0, 1})));       // Z^4+1
    CHECK(quartic_irreducible(rp({2, 0, 0, 0, 1})));       // Eisenstein
    CHECK_FALSE(quartic_irreducible(rp({1, 0, 2, 0, 1}))); // (Z^2+1)^2
    CHECK_FALSE(quartic_irreducible(rp({-1, 0, 0, 0, 1})));
    CHECK_FALSE(quartic_irreducible(rp({1, 2, 2, 2, 1})));  // has root -1... check: 1-2+2-2+1=0
}

TEST_CASE("weil_quartic_irreducible") {
    IntPoly f = {83521, 8092, 646, 28, 1};  // modulus-17 irreducible quartic
    CHECK(weil_quartic_irreducible(f, 17));
    // (Z-17)(Z+17)(Z^2+289): roots of modulus 17 but visibly reducible
    IntPoly g = {-83521, 0, 0, 0, 1};  // Z^4 - 17^4 = (Z^2-289)(Z^2+289)
    CHECK_FALSE(weil_quartic_irreducible(g, 17));
    IntPoly h = {83521, 0, 578, 0, 1};  // (Z^2+289)^2
    CHECK_FALSE(weil_quartic_irreducible(h, 17));
}

TEST_CASE("galois_group_quartic") {
    CHECK(galois_group_quartic(rp({83521, 8092, 646, 28, 1})) == QuarticGalois::C4);
    CHECK(galois_group_quartic(rp({1, 0, 0, 0, 1})) == QuarticGalois::V4);   // Z^4+1
    CHECK(galois_group_quartic(rp({-2, 0, 0, 0, 1})) == QuarticGalois::D4);  // Z^4-2
    CHECK(galois_group_quartic(rp({1, -4, 0, 4, 1})) == QuarticGalois::A4);
    CHECK(galois_group_quartic(rp({-2, 1, 0, 0, 1})) == QuarticGalois::S4);  // Z^4+Z-2? reducible...
    CHECK_THROWS_AS(galois_group_quartic(rp({1, 0, 2, 0, 1})), NotIrreducible);
    CHECK(galois_name(QuarticGalois::C4) == "C4");
    CHECK(galois_name(QuarticGalois::D4) == "D4");
}

TEST_CASE("real_quadratic_subfields") {
    auto s = real_quadratic_subfields(rp({83521, 8092, 646, 28, 1}));
    REQUIRE(s.subfields.size() == 1);
    CHECK(s.subfields[0] == 2);
    REQUIRE(s.split_radicands.size() >= 1);
    CHECK(std::find(s.split_radicands.begin(), s.split_radicands.end(), Int(2)) !=
          s.split_radicands.end());
    // Z^4+1 has splitting field Q(zeta_8), real subfield sqrt 2
    auto v4 = real_quadratic_subfields(rp({1, 0, 0, 0, 1}));
    CHECK(std::find(v4.subfields.begin(), v4.subfields.end(), Int(2)) != v4.subfields.end());
}
