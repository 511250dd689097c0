#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rmk3/errors.hpp"
#include "rmk3/ntt.hpp"

using namespace rmk3;

namespace {

std::vector<int64_t> convolve_naive(const std::vector<int8_t>& a, const std::vector<int8_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<int64_t> out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); i++)
        for (size_t j = 0; j < b.size(); j++) out[i + j] += (int64_t)a[i] * b[j];
    return out;
}

}  // namespace

TEST_CASE("mulmod and powmod") {
    CHECK(ntt::mulmod(0, 123456789) == 0);
    CHECK(ntt::mulmod(1, ntt::P - 1) == ntt::P - 1);
    CHECK(ntt::mulmod(ntt::P - 1, ntt::P - 1) == 1);  // (-1)^2
    CHECK(ntt::powmod(ntt::G, ntt::P - 1) == 1);      // Fermat
    CHECK(ntt::powmod(ntt::G, (ntt::P - 1) / 2) == ntt::P - 1);  // G generates
    // order of the 2^MAX_LOG2-th root is exactly 2^MAX_LOG2
    uint64_t w = ntt::powmod(ntt::G, (ntt::P - 1) >> ntt::MAX_LOG2);
    uint64_t x = w;
    for (int i = 0; i < ntt::MAX_LOG2 - 1; i++) x = ntt::mulmod(x, x);
    CHECK(x == ntt::P - 1);
}

TEST_CASE("transform round trip") {
    std::mt19937_64 rng(7);
    for (size_t n : {size_t(1), size_t(2), size_t(8), size_t(1024)}) {
        std::vector<uint64_t> a(n);
        for (auto& v : a) v = rng() % ntt::P;
        auto b = a;
        ntt::transform(b, false);
        ntt::transform(b, true);
        CHECK(a == b);
    }
}

TEST_CASE("transform convolution property") {
    // multiply (1+x)^2 via pointwise product of transforms
    std::vector<uint64_t> a = {1, 1, 0, 0}, b = {1, 1, 0, 0};
    ntt::transform(a, false);
    ntt::transform(b, false);
    for (size_t i = 0; i < 4; i++) a[i] = ntt::mulmod(a[i], b[i]);
    ntt::transform(a, true);
    CHECK(a == std::vector<uint64_t>{1, 2, 1, 0});
}

TEST_CASE("transform rejects non-power-of-two") {
    std::vector<uint64_t> a = {1, 2, 3};
    CHECK_THROWS_AS(ntt::transform(a, false), Error);
}

TEST_CASE("convolve_pm1 edge cases") {
    CHECK(ntt::convolve_pm1({}, {1, 1}).empty());
    CHECK(ntt::convolve_pm1({1}, {}).empty());
    CHECK(ntt::convolve_pm1({1}, {-1}) == std::vector<int64_t>{-1});
    CHECK(ntt::convolve_pm1({1, -1}, {1, 1}) == std::vector<int64_t>{1, 0, -1});
}

TEST_CASE("convolve_pm1 matches naive") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; trial++) {
        size_t na = 1 + rng() % 200, nb = 1 + rng() % 200;
        std::vector<int8_t> a(na), b(nb);
        for (auto& v : a) v = (int8_t)(rng() % 3) - 1;
        for (auto& v : b) v = (int8_t)(rng() % 3) - 1;
        CHECK(ntt::convolve_pm1(a, b) == convolve_naive(a, b));
    }
}

TEST_CASE("convolve_pm1 long all-ones") {
    // (sum x^i)^2 has a triangular coefficient profile; exercises a
    // transform length of 2^18 with maximal coefficient growth
    size_t n = 100000;
    std::vector<int8_t> a(n, 1);
    auto r = ntt::convolve_pm1(a, a);
    REQUIRE(r.size() == 2 * n - 1);
    CHECK(r[0] == 1);
    CHECK(r[n - 1] == (int64_t)n);
    CHECK(r[2 * n - 2] == 1);
    CHECK(r[n / 2] == (int64_t)(n / 2 + 1));
}
