#include "rmk3/counter.hpp"

#include <vector>

#include "rmk3/errors.hpp"
#include "rmk3/ntt.hpp"

namespace rmk3 {

// Fibration of P^2 by the lines through the vertices: in the chart x=1 the
// point (1:u:t) contributes chi(q1(u,t)) chi(q2(1,t)) chi(q3(1,u)), the
// line x=0 contributes chi(q1(1,t)) chi(q2(0,t)) chi(q3(0,1)), and the
// vertex (0:0:1) lies on the sextic.
int64_t count_fp(const int8_t* chi, int64_t p, const FormModP& f1, const FormModP& f2,
                 const FormModP& f3) {
    std::vector<int8_t> chi2(p);
    std::vector<int64_t> c1t2(p);
    int64_t lam01 = 0;
    {
        int64_t bt = 0, ct2 = 0, b1t = 0, c1t2v = 0;  // f2.b*t, f2.c*t^2 etc. via add-walks
        for (int64_t t = 0; t < p; t++) {
            int64_t v2 = f2.a + bt + ct2;
            v2 -= (v2 >= p) ? p : 0;
            v2 -= (v2 >= p) ? p : 0;
            chi2[t] = chi[v2];
            c1t2[t] = c1t2v;
            int64_t v1 = f1.a + b1t + c1t2v;
            v1 -= (v1 >= p) ? p : 0;
            v1 -= (v1 >= p) ? p : 0;
            if (t != 0) lam01 += chi[v1];  // chi(q2(0,t)) = chi(c2) for t != 0
            // advance the walks: linear terms by b, quadratic by c*(2t+1)
            bt += f2.b;
            bt -= (bt >= p) ? p : 0;
            b1t += f1.b;
            b1t -= (b1t >= p) ? p : 0;
            ct2 += (f2.c * (2 * t + 1)) % p;
            ct2 %= p;
            c1t2v += (f1.c * (2 * t + 1)) % p;
            c1t2v %= p;
        }
        lam01 *= chi[f2.c];
    }
    int64_t total = p * p + p + 1 + (int64_t)chi[f3.c] * lam01;
    for (int64_t u = 0; u < p; u++) {
        int64_t w = f1.a * u % p * u % p;
        int64_t s = f1.b * u % p;
        int64_t chi3 = chi[(f3.a + f3.b * u % p + f3.c * u % p * u % p) % p];
        if (chi3 == 0) continue;
        int64_t lam = 0, st = 0;
        for (int64_t t = 0; t < p; t++) {
            int64_t v = w + st + c1t2[t];
            v -= (v >= p) ? p : 0;
            v -= (v >= p) ? p : 0;
            lam += (int64_t)chi[v] * chi2[t];
            st += s;
            st -= (st >= p) ? p : 0;
        }
        total += chi3 * lam;
    }
    return total;
}

int64_t count_direct(const SurfaceModP& Xp, const Fq& F) {
    int64_t q = F.q;
    int64_t A1 = F.scalar(Xp.f1.a), B1 = F.scalar(Xp.f1.b), C1 = F.scalar(Xp.f1.c);
    int64_t A2 = F.scalar(Xp.f2.a), B2 = F.scalar(Xp.f2.b), C2 = F.scalar(Xp.f2.c);
    int64_t A3 = F.scalar(Xp.f3.a), B3 = F.scalar(Xp.f3.b), C3 = F.scalar(Xp.f3.c);
    std::vector<int8_t> chi2(q);
    std::vector<int32_t> ct2(q);  // C1 * t^2 as element indices
    int64_t lam01 = 0;
    for (int64_t t = 0; t < q; t++) {
        int64_t t2 = F.mul(t, t);
        chi2[t] = F.chi(F.add(A2, F.add(F.mul(B2, t), F.mul(C2, t2))));
        ct2[t] = (int32_t)F.mul(C1, t2);
        int64_t v1 = F.add(A1, F.add(F.mul(B1, t), ct2[t]));
        lam01 += (int64_t)F.chi(v1) * F.chi(F.mul(C2, t2));
    }
    int64_t total = q * q + q + 1 + (int64_t)F.chi(C3) * lam01;
    for (int64_t u = 0; u < q; u++) {
        int64_t u2 = F.mul(u, u);
        int64_t chi3 = F.chi(F.add(A3, F.add(F.mul(B3, u), F.mul(C3, u2))));
        if (chi3 == 0) continue;
        int64_t au2 = F.mul(A1, u2), bu = F.mul(B1, u);
        int64_t lam = 0;
        for (int64_t t = 0; t < q; t++)
            lam += (int64_t)F.chi(F.add(au2, F.add(F.mul(bu, t), ct2[t]))) * chi2[t];
        total += chi3 * lam;
    }
    return total;
}

// Both-nonzero part of the double sum as a multiplicative convolution:
// with u=g^i, s=t/u=g^j, homogeneity gives chi(q1(u,t)) = chi(q1(1,s)), so
// sum_{u,t!=0} = sum_m G2[m] * (G3 (*) G1)[m] over Z/(q-1). The three
// edge sums cover u=0, t=0 and the line x=0.
int64_t count_ntt(const SurfaceModP& Xp, const Fq& F) {
    int64_t q = F.q, L = q - 1;
    int64_t A1 = F.scalar(Xp.f1.a), B1 = F.scalar(Xp.f1.b), C1 = F.scalar(Xp.f1.c);
    int64_t A2 = F.scalar(Xp.f2.a), B2 = F.scalar(Xp.f2.b), C2 = F.scalar(Xp.f2.c);
    int64_t A3 = F.scalar(Xp.f3.a), B3 = F.scalar(Xp.f3.b), C3 = F.scalar(Xp.f3.c);
    std::vector<int8_t> G1(L), G2(L), G3(L);
    int64_t S1 = 0, S2 = 0, S3 = 0;
    for (int64_t j = 0; j < L; j++) {
        int64_t t = F.exp(j);
        int64_t t2 = F.exp(2 * j >= L ? 2 * j - L : 2 * j);
        G1[j] = F.chi(F.add(A1, F.add(F.mul(B1, t), F.mul(C1, t2))));
        G2[j] = F.chi(F.add(A2, F.add(F.mul(B2, t), F.mul(C2, t2))));
        G3[j] = F.chi(F.add(A3, F.add(F.mul(B3, t), F.mul(C3, t2))));
        S1 += G1[j];
        S2 += G2[j];
        S3 += G3[j];
    }
    auto lin = ntt::convolve_pm1(G3, G1);  // length 2L-1
    int64_t W = 0;
    for (int64_t m = 0; m < L; m++) {
        int64_t c = lin[m] + (m + L < (int64_t)lin.size() ? lin[m + L] : 0);
        W += (int64_t)G2[m] * c;
    }
    int64_t total = q * q + q + 1 + W;
    total += (int64_t)F.chi(A1) * F.chi(A2) * S3;  // t=0, u != 0
    total += (int64_t)F.chi(A3) * F.chi(C1) * S2;  // u=0
    total += (int64_t)F.chi(C3) * F.chi(C2) * S1;  // line x=0
    return total;
}

// k=4 beyond the table bound: one pass to index the discrete log, one
// generator double-walk (t and t^2) to fill the G arrays. chi of an F_p
// scalar is +1 here (the norm map makes every scalar a square when k is
// even), or 0 when p divides it.
int64_t count_stream_k4(const SurfaceModP& Xp) {
    uint32_t p = (uint32_t)Xp.p;
    int64_t q = (int64_t)p * p * p * p, L = q - 1;
    FieldDescriptor F = build_extension(p, 4);
    FieldElement g = field_generator(F);
    // multiplication by a fixed field element is F_p-linear; column j of M
    // is g * X^j in the power basis (likewise M2 for g^2), so each walk
    // step is a 4x4 matrix apply instead of a generic fe_mul
    uint32_t Mg[4][4], Mg2[4][4];
    {
        FieldElement g2 = fe_mul(F, g, g);
        for (int j = 0; j < 4; j++) {
            FieldElement e{};
            e[j] = 1;
            FieldElement c1 = fe_mul(F, g, e), c2 = fe_mul(F, g2, e);
            for (int i = 0; i < 4; i++) {
                Mg[i][j] = (uint32_t)c1[i];
                Mg2[i][j] = (uint32_t)c2[i];
            }
        }
    }
    auto apply = [p](const uint32_t M[4][4], uint32_t x[4]) {
        uint32_t y[4];
        for (int i = 0; i < 4; i++)
            y[i] = (M[i][0] * x[0] + M[i][1] * x[1] + M[i][2] * x[2] + M[i][3] * x[3]) % p;
        for (int i = 0; i < 4; i++) x[i] = y[i];
    };
    // only the dlog parity is consumed downstream, one byte per element
    std::vector<uint8_t> parity(q);
    {
        uint32_t x[4] = {1, 0, 0, 0};
        for (int64_t j = 0; j < L; j++) {
            int64_t idx = (((int64_t)x[3] * p + x[2]) * p + x[1]) * p + x[0];
            parity[idx] = (uint8_t)(j & 1);
            apply(Mg, x);
        }
    }
    std::vector<int8_t> G1(L), G2(L), G3(L);
    int64_t S1 = 0, S2 = 0, S3 = 0;
    {
        uint32_t t[4] = {1, 0, 0, 0}, t2[4] = {1, 0, 0, 0};
        const FormModP* fs[3] = {&Xp.f1, &Xp.f2, &Xp.f3};
        int8_t* Gs[3] = {G1.data(), G2.data(), G3.data()};
        uint32_t a[3], b[3], c[3];
        for (int r = 0; r < 3; r++) {
            a[r] = (uint32_t)fs[r]->a;
            b[r] = (uint32_t)fs[r]->b;
            c[r] = (uint32_t)fs[r]->c;
        }
        for (int64_t j = 0; j < L; j++) {
            for (int r = 0; r < 3; r++) {
                uint32_t v0 = (a[r] + b[r] * t[0] + c[r] * t2[0]) % p;
                uint32_t v1 = (b[r] * t[1] + c[r] * t2[1]) % p;
                uint32_t v2 = (b[r] * t[2] + c[r] * t2[2]) % p;
                uint32_t v3 = (b[r] * t[3] + c[r] * t2[3]) % p;
                int64_t idx = (((int64_t)v3 * p + v2) * p + v1) * p + v0;
                Gs[r][j] = (v0 | v1 | v2 | v3) == 0 ? 0 : (int8_t)(1 - 2 * parity[idx]);
            }
            S1 += G1[j];
            S2 += G2[j];
            S3 += G3[j];
            apply(Mg, t);
            apply(Mg2, t2);
        }
    }
    parity.clear();
    parity.shrink_to_fit();
    auto lin = ntt::convolve_pm1(G3, G1);
    int64_t W = 0;
    for (int64_t m = 0; m < L; m++) {
        int64_t c = lin[m] + (m + L < (int64_t)lin.size() ? lin[m + L] : 0);
        W += (int64_t)G2[m] * c;
    }
    auto chi_scalar = [&](int64_t a) { return a % p == 0 ? 0 : 1; };
    int64_t total = q * q + q + 1 + W;
    total += (int64_t)chi_scalar(Xp.f1.a) * chi_scalar(Xp.f2.a) * S3;
    total += (int64_t)chi_scalar(Xp.f3.a) * chi_scalar(Xp.f1.c) * S2;
    total += (int64_t)chi_scalar(Xp.f3.c) * chi_scalar(Xp.f2.c) * S1;
    return total;
}

int64_t count_singular(const SurfaceModP& Xp, const Fq& F) {
    return F.q <= 4096 ? count_direct(Xp, F) : count_ntt(Xp, F);
}

int64_t count_singular(const Surface& X, int64_t p, int k) {
    if (p < 3 || p > (1 << 24) || !is_prime_u64((uint64_t)p))
        throw BadPrime("need an odd prime below 2^24, got " + std::to_string(p));
    if (k < 1 || k > 4) throw BadPrime("extension degree " + std::to_string(k));
    SurfaceModP Xp = reduce_mod_p(X, p);
    int64_t q = 1;
    for (int i = 0; i < k; i++) {
        if (q > (1 << 24)) throw BadPrime("field size beyond supported range");
        q *= p;
    }
    if (q <= Fq::MAX_Q) return count_singular(Xp, *fq_get(p, k));
    if (k == 4 && q <= (1 << 24)) return count_stream_k4(Xp);
    throw BadPrime("field size " + std::to_string(q) + " beyond supported range");
}

int64_t count_bruteforce(const SurfaceModP& Xp, const Fq& F) {
    int64_t q = F.q;
    int64_t A1 = F.scalar(Xp.f1.a), B1 = F.scalar(Xp.f1.b), C1 = F.scalar(Xp.f1.c);
    int64_t A2 = F.scalar(Xp.f2.a), B2 = F.scalar(Xp.f2.b), C2 = F.scalar(Xp.f2.c);
    int64_t A3 = F.scalar(Xp.f3.a), B3 = F.scalar(Xp.f3.b), C3 = F.scalar(Xp.f3.c);
    int64_t one = F.scalar(1), zero = 0;
    int64_t total = 0;
    for (int64_t y = 0; y < q; y++)
        for (int64_t z = 0; z < q; z++) {
            int64_t f = F.mul(F.form_value(A1, B1, C1, y, z),
                              F.mul(F.form_value(A2, B2, C2, one, z),
                                    F.form_value(A3, B3, C3, one, y)));
            total += 1 + F.chi(f);
        }
    for (int64_t z = 0; z < q; z++) {
        int64_t f = F.mul(F.form_value(A1, B1, C1, one, z),
                          F.mul(F.form_value(A2, B2, C2, zero, z),
                                F.form_value(A3, B3, C3, zero, one)));
        total += 1 + F.chi(f);
    }
    total += 1;  // (0:0:1) always lies on the branch sextic
    return total;
}

int64_t count_smooth(const Surface& X, int64_t p, int k, int node_fix) {
    int64_t n = count_singular(X, p, k);  // validates p, k
    int64_t q = 1;
    for (int i = 0; i < k; i++) q *= p;
    return n + q * node_fix;
}

}  // namespace rmk3
