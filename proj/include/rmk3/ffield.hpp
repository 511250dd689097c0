#pragma once
#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "rmk3/rational.hpp"

namespace rmk3 {

// F_{p^k}, k <= 4. For k >= 2 the modulus is the lexicographically least
// monic irreducible of degree k (coefficients read low to high as base-p
// digits), so all derived data is reproducible.
struct FieldDescriptor {
    int64_t p = 0;
    int k = 1;
    int64_t q = 0;
    std::vector<int64_t> modulus;  // coeffs low->high, size k+1, monic; empty when k=1
};

FieldDescriptor build_extension(int64_t p, int k);

// chi[x] in {-1,0,+1}: +1 iff x is a nonzero square mod p
std::vector<int8_t> build_character_table(int64_t p);

enum class SplitType { inert, split, ramified };
// splitting of p in Q(sqrt(d)), d squarefree != 0,1; correct at p=2 as well
SplitType quad_split_type(int64_t p, const Int& d);
inline bool is_inert(int64_t p, const Int& d) { return quad_split_type(p, d) == SplitType::inert; }

// coefficient-vector element, entries 0..p-1, unused high coeffs zero
using FieldElement = std::array<int64_t, 4>;

FieldElement fe_zero();
FieldElement fe_one();
FieldElement fe_scalar(const FieldDescriptor& F, int64_t a);
FieldElement fe_add(const FieldDescriptor& F, const FieldElement& x, const FieldElement& y);
FieldElement fe_mul(const FieldDescriptor& F, const FieldElement& x, const FieldElement& y);
FieldElement fe_pow(const FieldDescriptor& F, FieldElement x, Int e);
bool fe_is_zero(const FieldElement& x);
int64_t fe_index(const FieldDescriptor& F, const FieldElement& x);  // sum c_i p^i
FieldElement fe_from_index(const FieldDescriptor& F, int64_t idx);

// x^((q-1)/2) mapped to {-1,0,+1}; table-free
int quad_char(const FieldDescriptor& F, const FieldElement& x);

// index of the least generator of F_q* in index order
FieldElement field_generator(const FieldDescriptor& F);

// Table-backed field. Elements are indices x = sum c_i p^i < q. Supports
// q up to 2^21; multiplication via log/exp, quadratic character via the
// parity of the discrete log.
class Fq {
  public:
    Fq(int64_t p, int k);

    FieldDescriptor F;
    int64_t p, q;
    int k;
    int64_t gen;  // index of the generator used for the tables

    static constexpr int64_t MAX_Q = 1 << 21;

    int64_t add(int64_t x, int64_t y) const;
    int64_t sub(int64_t x, int64_t y) const;
    int64_t neg(int64_t x) const;
    int64_t mul(int64_t x, int64_t y) const {
        if (x == 0 || y == 0) return 0;
        int64_t s = (int64_t)log_[x] + log_[y];
        if (s >= q - 1) s -= q - 1;
        return exp_[s];
    }
    int64_t inv(int64_t x) const;
    int64_t scalar(int64_t a) const;  // embed an integer as an F_p scalar
    int8_t chi(int64_t x) const { return chi_[x]; }
    int64_t exp(int64_t j) const { return exp_[j]; }
    int32_t log(int64_t x) const { return log_[x]; }
    // a square root when one exists (even discrete log); throws otherwise
    int64_t sqrt(int64_t x) const;
    int64_t frobenius(int64_t x) const;  // x^p

    // value of a*u^2 + b*u*v + c*v^2 at indices u,v with scalar a,b,c
    int64_t form_value(int64_t a, int64_t b, int64_t c, int64_t u, int64_t v) const;

  private:
    std::vector<int32_t> exp_, log_;
    std::vector<int8_t> chi_;
};

// process-wide cache (fields are expensive to build and immutable)
std::shared_ptr<const Fq> fq_get(int64_t p, int k);

}  // namespace rmk3
