#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rmk3/errors.hpp"
#include "rmk3/ffield.hpp"
#include "rmk3/json_io.hpp"
#include "rmk3/surface.hpp"

using namespace rmk3;

namespace {

// w^2 = q1 q2 q3 with q1 = -x^2/8+yz-... ; the standard rank-18 test surface
Surface sample_surface() {
    return make_surface({Rat(-1, 8), Rat(1), Rat(-1)}, {Rat(7, 8), Rat(5), Rat(7)},
                        {Rat(2), Rat(3), Rat(1)});
}

}  // namespace

TEST_CASE("QuadForm basics") {
    QuadForm f{Rat(2), Rat(3), Rat(1)};
    CHECK(f.disc() == Rat(1));  // 9 - 8
    CHECK(f.eval(Rat(1), Rat(2)) == Rat(12));
    CHECK(f == QuadForm{Rat(2), Rat(3), Rat(1)});
}

TEST_CASE("make_surface square classes") {
    Surface X = sample_surface();
    CHECK(X.q1.disc() == Rat(1, 2));
    CHECK(X.q2.disc() == Rat(1, 2));
    CHECK(X.q3.disc() == Rat(1));
    CHECK(X.d1 == 2);
    CHECK(X.d2 == 2);
    CHECK(X.d3 == 1);
    CHECK(X.disc_product_square);

    Surface Y = make_surface({Rat(1), Rat(0), Rat(-1)}, {Rat(1), Rat(0), Rat(-2)},
                             {Rat(1), Rat(0), Rat(-3)});
    CHECK(Y.d1 == 1);
    CHECK(Y.d2 == 2);
    CHECK(Y.d3 == 3);
    CHECK_FALSE(Y.disc_product_square);
}

TEST_CASE("make_surface rejects degenerate pairs") {
    CHECK_THROWS_AS(make_surface({Rat(1), Rat(2), Rat(1)}, {Rat(1), Rat(0), Rat(-1)},
                                 {Rat(1), Rat(0), Rat(-2)}),
                    ZeroDiscriminant);
}

TEST_CASE("rat_mod_p") {
    CHECK(rat_mod_p(Rat(1, 2), 7) == 4);
    CHECK(rat_mod_p(Rat(-1, 8), 17) == 2);
    CHECK(rat_mod_p(Rat(10), 7) == 3);
    CHECK(rat_mod_p(Rat(-1), 5) == 4);
    CHECK_THROWS_AS(rat_mod_p(Rat(1, 7), 7), BadDenominator);
    CHECK_THROWS_AS(rat_mod_p(Rat(3, 14), 7), BadDenominator);
}

TEST_CASE("reduce_mod_p") {
    Surface X = sample_surface();
    SurfaceModP Xp = reduce_mod_p(X, 17);
    CHECK(Xp.p == 17);
    CHECK(Xp.f1.a == 2);  // -1/8 = -15 = 2 (mod 17)
    CHECK(Xp.f1.b == 1);
    CHECK(Xp.f1.c == 16);
    CHECK(Xp.f3.a == 2);
    CHECK(Xp.f3.b == 3);
    CHECK(Xp.f3.c == 1);
    CHECK_THROWS_AS(reduce_mod_p(X, 2), BadDenominator);  // the 1/8 coefficients
}

TEST_CASE("is_good_prime") {
    Surface X = sample_surface();
    CHECK(is_good_prime(X, 5));
    CHECK(is_good_prime(X, 17));
    CHECK(is_good_prime(X, 23));
    CHECK_FALSE(is_good_prime(X, 7));
    CHECK_FALSE(is_good_prime(X, 3));
    CHECK_THROWS_AS(is_good_prime(X, 2), BadPrime);
    // the two overloads agree
    CHECK(is_good_prime(reduce_mod_p(X, 11)) == is_good_prime(X, 11));
}

TEST_CASE("node_fix_closed_form") {
    Surface X = sample_surface();
    CHECK(node_fix_closed_form(reduce_mod_p(X, 5), 1) == 3);
    CHECK(node_fix_closed_form(reduce_mod_p(X, 17), 1) == 15);
    CHECK(node_fix_closed_form(reduce_mod_p(X, 23), 1) == 15);
    // even powers of Frobenius fix all 15 nodes
    CHECK(node_fix_closed_form(reduce_mod_p(X, 5), 2) == 15);
    CHECK(node_fix_closed_form(reduce_mod_p(X, 5), 4) == 15);
    CHECK(node_fix_closed_form(reduce_mod_p(X, 17), 3) == 15);
    CHECK(node_fix_closed_form(reduce_mod_p(X, 5), 3) == 3);
}

TEST_CASE("cross_points") {
    Surface X = sample_surface();
    SurfaceModP Xp = reduce_mod_p(X, 17);
    auto Fq2 = fq_get(17, 2);
    const Fq& F = *Fq2;
    auto pts = cross_points(Xp, F);
    REQUIRE(pts.size() == 12);
    // pairwise distinct
    for (size_t i = 0; i < pts.size(); i++)
        for (size_t j = i + 1; j < pts.size(); j++) CHECK(pts[i] != pts[j]);
    // each point lies on exactly two of the three pair-products
    for (auto [x, y] : pts) {
        int vanishing = 0;
        if (F.form_value(F.scalar(Xp.f1.a), F.scalar(Xp.f1.b), F.scalar(Xp.f1.c), y, 1) == 0)
            vanishing++;
        if (F.form_value(F.scalar(Xp.f2.a), F.scalar(Xp.f2.b), F.scalar(Xp.f2.c), x, 1) == 0)
            vanishing++;
        if (F.form_value(F.scalar(Xp.f3.a), F.scalar(Xp.f3.b), F.scalar(Xp.f3.c), x, y) == 0)
            vanishing++;
        CHECK(vanishing == 2);
    }
}

TEST_CASE("surface_hash") {
    Surface X = sample_surface();
    CHECK(hash_hex(surface_hash(X)) == "988f68214bb311dc");
    CHECK(surface_hash(X) == surface_hash(sample_surface()));
    Surface Y = make_surface(X.q1, X.q2, {Rat(2), Rat(3), Rat(-1)});
    CHECK(surface_hash(Y) != surface_hash(X));
}

TEST_CASE("surface json round trip") {
    Surface X = sample_surface();
    std::string j = surface_to_json(X);
    CHECK(j ==
          R"({"q1":["-1/8","1","-1"],"q2":["7/8","5","7"],"q3":["2","3","1"]})");
    Surface Y = surface_from_json(j);
    CHECK(Y.q1 == X.q1);
    CHECK(Y.q2 == X.q2);
    CHECK(Y.q3 == X.q3);
    CHECK(Y.d1 == X.d1);
    // integer JSON numbers are accepted alongside strings
    Surface Z = surface_from_json(R"({"q1":[1,0,-1],"q2":[1,0,-2],"q3":["1","0","-3"]})");
    CHECK(Z.q2.c == Rat(-2));
    CHECK_THROWS_AS(surface_from_json(R"({"q1":[1,0,-1],"q2":[1,0,-2]})"), Error);
    CHECK_THROWS_AS(surface_from_json("not json"), Error);
}

TEST_CASE("hash_hex") {
    CHECK(hash_hex(0xdeadbeefULL) == "00000000deadbeef");
    CHECK(hash_hex(0) == "0000000000000000");
}
