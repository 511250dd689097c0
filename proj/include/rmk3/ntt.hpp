#pragma once
#include <cstdint>
#include <vector>

namespace rmk3::ntt {

// P = 29*2^57 + 1 is prime, 3 generates F_P*, and 2P < 2^63, so signed
// convolution values up to ~2^61 in magnitude are recovered exactly.
constexpr uint64_t P = 4179340454199820289ULL;
constexpr uint64_t G = 3;
constexpr int MAX_LOG2 = 25;

uint64_t mulmod(uint64_t a, uint64_t b);
uint64_t powmod(uint64_t b, uint64_t e);

// in-place radix-2 transform; a.size() must be a power of two <= 2^MAX_LOG2
void transform(std::vector<uint64_t>& a, bool invert);

// exact linear convolution of two {-1,0,1} sequences
std::vector<int64_t> convolve_pm1(const std::vector<int8_t>& a, const std::vector<int8_t>& b);

}  // namespace rmk3::ntt
