#include "rmk3/ntt.hpp"

#include "rmk3/errors.hpp"

namespace rmk3::ntt {

uint64_t mulmod(uint64_t a, uint64_t b) {
    return (uint64_t)((__uint128_t)a * b % P);
}

uint64_t powmod(uint64_t b, uint64_t e) {
    uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, b);
        b = mulmod(b, b);
        e >>= 1;
    }
    return r;
}

namespace {

// a * w mod P via Shoup's trick: wp = floor(w 2^64 / P) precomputed, so the
// reduction is two multiplies and a conditional subtract; needs 2P < 2^64
inline uint64_t mul_shoup(uint64_t a, uint64_t w, uint64_t wp) {
    uint64_t q = (uint64_t)(((__uint128_t)a * wp) >> 64);
    uint64_t r = a * w - q * P;
    return r >= P ? r - P : r;
}

// powers of one primitive n-th root; stage len reads stride n/len
struct RootTable {
    size_t n = 0;
    std::vector<uint64_t> w, wp;
    void rebuild(size_t n_, bool invert) {
        n = n_;
        w.resize(n / 2);
        wp.resize(n / 2);
        // order of the root is n; (P-1) = 29*2^57 so any n <= 2^25 divides it
        uint64_t r = powmod(G, (P - 1) / n);
        if (invert) r = powmod(r, P - 2);
        uint64_t x = 1;
        for (size_t j = 0; j < n / 2; j++) {
            w[j] = x;
            wp[j] = (uint64_t)((((__uint128_t)x) << 64) / P);
            x = mulmod(x, r);
        }
    }
};

}  // namespace

void transform(std::vector<uint64_t>& a, bool invert) {
    size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0 || n > (1u << MAX_LOG2))
        throw Error("ntt: size must be a power of two within range");
    thread_local RootTable tables[2];
    RootTable& T = tables[invert ? 1 : 0];
    if (n > 1 && T.n != n) T.rebuild(n, invert);
    for (size_t i = 1, j = 0; i < n; i++) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        size_t stride = n / len;
        for (size_t i = 0; i < n; i += len) {
            for (size_t k = 0; k < len / 2; k++) {
                size_t idx = k * stride;
                uint64_t u = a[i + k];
                uint64_t v = mul_shoup(a[i + k + len / 2], T.w[idx], T.wp[idx]);
                a[i + k] = u + v < P ? u + v : u + v - P;
                a[i + k + len / 2] = u >= v ? u - v : u + P - v;
            }
        }
    }
    if (invert) {
        uint64_t ninv = powmod(n % P, P - 2);
        uint64_t ninvp = (uint64_t)((((__uint128_t)ninv) << 64) / P);
        for (auto& x : a) x = mul_shoup(x, ninv, ninvp);
    }
}

namespace {

// 32-bit companion prime for the +-1 convolutions: values are bounded by
// the shorter input length <= 2^MAX_LOG2 << SP/2, so one residue recovers
// the integer exactly, at half the memory traffic of the 62-bit transform;
// SP < 2^31 keeps the Shoup remainder below 2^32
constexpr uint32_t SP = 2013265921u;  // 15*2^27 + 1, primitive root 31
constexpr uint32_t SG = 31;

inline uint32_t mulmod32(uint32_t a, uint32_t b) {
    return (uint32_t)((uint64_t)a * b % SP);
}

uint32_t powmod32(uint32_t b, uint64_t e) {
    uint32_t r = 1;
    while (e) {
        if (e & 1) r = mulmod32(r, b);
        b = mulmod32(b, b);
        e >>= 1;
    }
    return r;
}

inline uint32_t mul_shoup32(uint32_t a, uint32_t w, uint32_t wp) {
    uint32_t q = (uint32_t)(((uint64_t)a * wp) >> 32);
    uint32_t r = a * w - q * SP;  // exact mod 2^32, true value < 2 SP
    return r >= SP ? r - SP : r;
}

struct RootTable32 {
    size_t n = 0;
    std::vector<uint32_t> w, wp;
    void rebuild(size_t n_, bool invert) {
        n = n_;
        w.resize(n / 2);
        wp.resize(n / 2);
        uint32_t r = powmod32(SG, (SP - 1) / n);
        if (invert) r = powmod32(r, SP - 2);
        uint32_t x = 1;
        for (size_t j = 0; j < n / 2; j++) {
            w[j] = x;
            wp[j] = (uint32_t)((((uint64_t)x) << 32) / SP);
            x = mulmod32(x, r);
        }
    }
};

void transform32(std::vector<uint32_t>& a, bool invert) {
    size_t n = a.size();
    thread_local RootTable32 tables[2];
    RootTable32& T = tables[invert ? 1 : 0];
    if (n > 1 && T.n != n) T.rebuild(n, invert);
    for (size_t i = 1, j = 0; i < n; i++) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        size_t stride = n / len;
        for (size_t i = 0; i < n; i += len) {
            for (size_t k = 0; k < len / 2; k++) {
                size_t idx = k * stride;
                uint32_t u = a[i + k];
                uint32_t v = mul_shoup32(a[i + k + len / 2], T.w[idx], T.wp[idx]);
                a[i + k] = u + v < SP ? u + v : u + v - SP;
                a[i + k + len / 2] = u >= v ? u - v : u + SP - v;
            }
        }
    }
    if (invert) {
        uint32_t ninv = powmod32((uint32_t)(n % SP), SP - 2);
        uint32_t ninvp = (uint32_t)((((uint64_t)ninv) << 32) / SP);
        for (auto& x : a) x = mul_shoup32(x, ninv, ninvp);
    }
}

}  // namespace

std::vector<int64_t> convolve_pm1(const std::vector<int8_t>& a, const std::vector<int8_t>& b) {
    if (a.empty() || b.empty()) return {};
    size_t need = a.size() + b.size() - 1;
    size_t m = 1;
    while (m < need) m <<= 1;
    if (m > (1u << MAX_LOG2)) throw Error("ntt: size must be a power of two within range");
    std::vector<uint32_t> fa(m, 0), fb(m, 0);
    for (size_t i = 0; i < a.size(); i++) fa[i] = a[i] >= 0 ? a[i] : SP + a[i];
    for (size_t i = 0; i < b.size(); i++) fb[i] = b[i] >= 0 ? b[i] : SP + b[i];
    transform32(fa, false);
    transform32(fb, false);
    for (size_t i = 0; i < m; i++) fa[i] = mulmod32(fa[i], fb[i]);
    fb.clear();
    fb.shrink_to_fit();
    transform32(fa, true);
    std::vector<int64_t> out(need);
    // |true value| <= min(len a, len b) << SP/2, so the signed lift is exact
    for (size_t i = 0; i < need; i++)
        out[i] = fa[i] > SP / 2 ? (int64_t)fa[i] - SP : (int64_t)fa[i];
    return out;
}

}  // namespace rmk3::ntt
