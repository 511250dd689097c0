#pragma once
#include <cstdint>

#include "rmk3/ffield.hpp"
#include "rmk3/surface.hpp"

namespace rmk3 {

// #V(F_q) of the singular model: each point of P^2 carries 1 + chi(f)
// points of the double cover, so #V = q^2+q+1 + sum_P chi(q1 q2 q3).
// Valid at every odd p where the reduction exists, good or not.
int64_t count_singular(const SurfaceModP& Xp, const Fq& F);

// dispatching count over F_{p^k}, k <= 4; throws BadPrime when p is not an
// odd prime or q is beyond the supported range (2^21 tables, 2^24 for k=4)
int64_t count_singular(const Surface& X, int64_t p, int k = 1);

// naive projective sweep; the oracle for everything else
int64_t count_bruteforce(const SurfaceModP& Xp, const Fq& F);

// count of the minimal resolution: each Frobenius-fixed node contributes
// an extra rational curve, q points beyond the node itself
int64_t count_smooth(const Surface& X, int64_t p, int k, int node_fix);

// prime-field kernel: chi is the length-p character table of F_p;
// 8-bit tables, add-walk inner loop, no divisions
int64_t count_fp(const int8_t* chi, int64_t p, const FormModP& f1, const FormModP& f2,
                 const FormModP& f3);

// the three strategies behind count_singular, exposed for cross-testing
int64_t count_direct(const SurfaceModP& Xp, const Fq& F);
int64_t count_ntt(const SurfaceModP& Xp, const Fq& F);
int64_t count_stream_k4(const SurfaceModP& Xp);

}  // namespace rmk3
