#include "rmk3/ffield.hpp"

#include <map>
#include <mutex>

namespace rmk3 {

std::vector<int8_t> build_character_table(int64_t p) {
    if (p < 3 || !is_prime_u64((uint64_t)p)) throw BadPrime("character table needs an odd prime");
    std::vector<int8_t> t(p, -1);
    t[0] = 0;
    for (int64_t i = 1; i < p; i++) t[(i * i) % p] = 1;
    return t;
}

SplitType quad_split_type(int64_t p, const Int& d) {
    if (d == 0 || d == 1) throw Error("quad_split_type: d must be squarefree != 0,1");
    if (p == 2) {
        Int m = ((d % 4) + 4) % 4;
        if (m != 1) return SplitType::ramified;  // disc = 4d
        Int m8 = ((d % 8) + 8) % 8;
        return m8 == 1 ? SplitType::split : SplitType::inert;
    }
    if (d % p == 0) return SplitType::ramified;
    return legendre(d, p) == 1 ? SplitType::split : SplitType::inert;
}

FieldElement fe_zero() { return {0, 0, 0, 0}; }
FieldElement fe_one() { return {1, 0, 0, 0}; }

FieldElement fe_scalar(const FieldDescriptor& F, int64_t a) {
    a %= F.p;
    if (a < 0) a += F.p;
    return {a, 0, 0, 0};
}

bool fe_is_zero(const FieldElement& x) { return x[0] == 0 && x[1] == 0 && x[2] == 0 && x[3] == 0; }

FieldElement fe_add(const FieldDescriptor& F, const FieldElement& x, const FieldElement& y) {
    FieldElement r{};
    for (int i = 0; i < F.k; i++) {
        int64_t s = x[i] + y[i];
        r[i] = s >= F.p ? s - F.p : s;
    }
    return r;
}

FieldElement fe_mul(const FieldDescriptor& F, const FieldElement& x, const FieldElement& y) {
    int k = F.k;
    int64_t p = F.p;
    if (k == 1) return {(x[0] * y[0]) % p, 0, 0, 0};
    std::array<int64_t, 7> t{};
    for (int i = 0; i < k; i++) {
        if (x[i] == 0) continue;
        for (int j = 0; j < k; j++) t[i + j] += x[i] * y[j] % p;
    }
    for (int d = 2 * k - 2; d >= k; d--) {
        int64_t c = t[d] % p;
        if (c == 0) continue;
        // modulus is monic: X^k = -sum modulus[i] X^i
        for (int i = 0; i < k; i++) t[d - k + i] = (t[d - k + i] + (p - F.modulus[i]) % p * c) % p;
    }
    FieldElement r{};
    for (int i = 0; i < k; i++) r[i] = ((t[i] % p) + p) % p;
    return r;
}

FieldElement fe_pow(const FieldDescriptor& F, FieldElement x, Int e) {
    FieldElement r = fe_one();
    while (e > 0) {
        if ((e & 1) != 0) r = fe_mul(F, r, x);
        x = fe_mul(F, x, x);
        e >>= 1;
    }
    return r;
}

int64_t fe_index(const FieldDescriptor& F, const FieldElement& x) {
    int64_t idx = 0;
    for (int i = F.k - 1; i >= 0; i--) idx = idx * F.p + x[i];
    return idx;
}

FieldElement fe_from_index(const FieldDescriptor& F, int64_t idx) {
    FieldElement x{};
    for (int i = 0; i < F.k; i++) {
        x[i] = idx % F.p;
        idx /= F.p;
    }
    return x;
}

static bool modulus_irreducible(const FieldDescriptor& F) {
    // f of degree k is irreducible iff X^(p^k) = X mod f and, for each prime
    // r | k, X^(p^(k/r)) != X mod f
    auto xpow = [&](int j) {
        FieldElement x = F.k >= 2 ? FieldElement{0, 1, 0, 0} : fe_one();
        Int e = Int(F.p);
        for (int i = 1; i < j; i++) e *= F.p;
        return fe_pow(F, x, e);
    };
    FieldElement xk = xpow(F.k);
    FieldElement X{0, 1, 0, 0};
    if (xk != X) return false;
    for (int r : {2, 3}) {
        if (F.k % r != 0) continue;
        if (xpow(F.k / r) == X) return false;
    }
    return true;
}

FieldDescriptor build_extension(int64_t p, int k) {
    if (k < 1 || k > 4) throw BadPrime("extension degree must be 1..4");
    if (p < 3 || !is_prime_u64((uint64_t)p)) throw BadPrime("p must be an odd prime");
    FieldDescriptor F;
    F.p = p;
    F.k = k;
    F.q = 1;
    for (int i = 0; i < k; i++) F.q *= p;
    if (k == 1) return F;
    int64_t pk1 = 1;
    for (int i = 0; i < k; i++) pk1 *= p;
    for (int64_t n = 0; n < pk1; n++) {
        F.modulus.assign(k + 1, 0);
        int64_t m = n;
        for (int i = 0; i < k; i++) {
            F.modulus[i] = m % p;
            m /= p;
        }
        F.modulus[k] = 1;
        if (modulus_irreducible(F)) return F;
    }
    throw Error("build_extension: no irreducible modulus found");
}

FieldElement field_generator(const FieldDescriptor& F) {
    int64_t q = F.q;
    std::vector<int64_t> prime_divs;
    {
        int64_t m = q - 1;
        for (int64_t d = 2; d * d <= m; d++) {
            if (m % d == 0) {
                prime_divs.push_back(d);
                while (m % d == 0) m /= d;
            }
        }
        if (m > 1) prime_divs.push_back(m);
    }
    for (int64_t idx = 2; idx < q; idx++) {
        FieldElement g = fe_from_index(F, idx);
        bool ok = true;
        for (int64_t r : prime_divs) {
            if (fe_pow(F, g, Int((q - 1) / r)) == fe_one()) { ok = false; break; }
        }
        if (ok) return g;
    }
    throw Error("field_generator: none found");
}

int quad_char(const FieldDescriptor& F, const FieldElement& x) {
    if (fe_is_zero(x)) return 0;
    FieldElement r = fe_pow(F, x, Int((F.q - 1) / 2));
    return r == fe_one() ? 1 : -1;
}

Fq::Fq(int64_t pp, int kk) {
    F = build_extension(pp, kk);
    p = F.p;
    k = F.k;
    q = F.q;
    if (q > MAX_Q) throw BadPrime("field too large for tables: q=" + std::to_string(q));
    FieldElement g = field_generator(F);
    gen = fe_index(F, g);
    exp_.assign(q - 1, 0);
    log_.assign(q, 0);
    chi_.assign(q, 0);
    FieldElement x = fe_one();
    for (int64_t j = 0; j < q - 1; j++) {
        int64_t idx = fe_index(F, x);
        exp_[j] = (int32_t)idx;
        log_[idx] = (int32_t)j;
        chi_[idx] = (j & 1) ? -1 : 1;
        x = fe_mul(F, x, g);
    }
    if (x != fe_one()) throw Error("Fq: generator walk did not close");
}

int64_t Fq::add(int64_t x, int64_t y) const {
    if (k == 1) {
        int64_t s = x + y;
        return s >= p ? s - p : s;
    }
    int64_t r = 0, mult = 1;
    for (int i = 0; i < k; i++) {
        int64_t s = x % p + y % p;
        if (s >= p) s -= p;
        r += s * mult;
        mult *= p;
        x /= p;
        y /= p;
    }
    return r;
}

int64_t Fq::neg(int64_t x) const {
    if (k == 1) return x == 0 ? 0 : p - x;
    int64_t r = 0, mult = 1;
    for (int i = 0; i < k; i++) {
        int64_t c = x % p;
        r += (c == 0 ? 0 : p - c) * mult;
        mult *= p;
        x /= p;
    }
    return r;
}

int64_t Fq::sub(int64_t x, int64_t y) const { return add(x, neg(y)); }

int64_t Fq::inv(int64_t x) const {
    if (x == 0) throw Error("Fq::inv of zero");
    int64_t j = log_[x];
    return j == 0 ? x : exp_[q - 1 - j];
}

int64_t Fq::scalar(int64_t a) const {
    a %= p;
    if (a < 0) a += p;
    return a;
}

int64_t Fq::sqrt(int64_t x) const {
    if (x == 0) return 0;
    int64_t j = log_[x];
    if (j & 1) throw Error("Fq::sqrt: not a square");
    return exp_[j / 2];
}

int64_t Fq::frobenius(int64_t x) const {
    if (x == 0) return 0;
    // index shifts by factor p on the exponent lattice
    return exp_[(__int128)log_[x] * p % (q - 1)];
}

int64_t Fq::form_value(int64_t a, int64_t b, int64_t c, int64_t u, int64_t v) const {
    int64_t sa = scalar(a), sb = scalar(b), sc = scalar(c);
    int64_t t1 = mul(sa, mul(u, u));
    int64_t t2 = mul(sb, mul(u, v));
    int64_t t3 = mul(sc, mul(v, v));
    return add(add(t1, t2), t3);
}

std::shared_ptr<const Fq> fq_get(int64_t p, int k) {
    static std::mutex mu;
    static std::map<std::pair<int64_t, int>, std::shared_ptr<const Fq>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto f = std::make_shared<const Fq>(p, k);
    cache[key] = f;
    return f;
}

}  // namespace rmk3
