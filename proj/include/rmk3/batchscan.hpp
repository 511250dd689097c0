#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "rmk3/rational.hpp"
#include "rmk3/surface.hpp"

namespace rmk3 {

// reduction of a form list mod p; entries whose denominators vanish mod p
// are flagged, not fatal
struct ReducedList {
    std::vector<FormModP> forms;
    std::vector<uint8_t> ok;
    std::vector<int> skipped;
};
ReducedList reduce_form_list(const std::vector<QuadForm>& fs, int64_t p);

// counts over F_p for the full Cartesian product q1s x q2s x q3s. After the
// per-q3 character rows and the per-(q1,q2) lambda vector are built, each
// cell is one length-p 8x16-bit dot product plus the lambda_{0,1} term:
// count = p^2+p+1 + chi(q3(0,1)) lambda_{0,1} + sum_u chi(q3(1,u)) lambda_{1,u}
struct ScanResult {
    int64_t p = 0;
    size_t n1 = 0, n2 = 0, n3 = 0;
    std::vector<int> skipped_q1, skipped_q2, skipped_q3;
    std::vector<int64_t> counts;  // cell (i,j,k) at (i*n2 + j)*n3 + k
    static constexpr int64_t skipped_cell = INT64_MIN;
    int64_t at(size_t i, size_t j, size_t k) const { return counts[(i * n2 + j) * n3 + k]; }
};
ScanResult scan_prime(const std::vector<QuadForm>& q1s, const std::vector<QuadForm>& q2s,
                      const std::vector<QuadForm>& q3s, int64_t p, int workers = 1);

struct SieveConfig {
    std::vector<int64_t> primes;         // odd, distinct, ascending, inert in Q(sqrt d)
    bool require_disc_square = false;    // product of the three disc classes is a square
    std::optional<Int> require_class_d;  // some disc class equals this value
    int workers = 1;
};

struct Survivor {
    int i1 = 0, i2 = 0, i3 = 0;
    std::vector<std::pair<int64_t, int64_t>> counts;  // (p, count) per tested prime
};

struct SieveResult {
    std::vector<Survivor> survivors;     // sorted by (i1, i2, i3)
    std::vector<int64_t> eliminated_at;  // per prime, surfaces dropped there
    int64_t tested = 0;                  // cells entering the congruence sieve
    int64_t filtered = 0;                // cells removed by the disc filters
};

// keeps exactly the triples with count = 1 (mod p) at every listed prime;
// primes ascending so the survivor set shrinks fastest; a prime where some
// coefficient denominator vanishes is skipped for that cell, never fatal
SieveResult rm_sieve(const std::vector<QuadForm>& q1s, const std::vector<QuadForm>& q2s,
                     const std::vector<QuadForm>& q3s, const Int& d, const SieveConfig& cfg);

}  // namespace rmk3
