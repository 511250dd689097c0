#pragma once
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rmk3/rational.hpp"

namespace rmk3 {

// binary quadratic form a*u^2 + b*u*v + c*v^2
struct QuadForm {
    Rat a, b, c;
    Rat disc() const { return b * b - 4 * a * c; }
    Rat eval(const Rat& u, const Rat& v) const { return a * u * u + b * u * v + c * v * v; }
    bool operator==(const QuadForm&) const = default;
};

// Double cover w^2 = q1(y,z) q2(x,z) q3(x,y). The branch sextic is six
// lines, two through each coordinate vertex of P^2; each disc must be
// nonzero so the two lines in a pair are distinct.
struct Surface {
    QuadForm q1, q2, q3;  // q1 in (y,z), q2 in (x,z), q3 in (x,y)
    Int d1 = 0, d2 = 0, d3 = 0;  // square classes of the three discriminants
    bool disc_product_square = false;
};

Surface make_surface(const QuadForm& q1, const QuadForm& q2, const QuadForm& q3);

struct FormModP {
    int64_t a = 0, b = 0, c = 0;
};

struct SurfaceModP {
    int64_t p = 0;
    FormModP f1, f2, f3;
};

// num * den^-1 mod p; throws BadDenominator when p divides the denominator
int64_t rat_mod_p(const Rat& r, int64_t p);
FormModP reduce_form(const QuadForm& f, int64_t p);
SurfaceModP reduce_mod_p(const Surface& X, int64_t p);

// Good prime: odd p where the reduction keeps six distinct lines in general
// position: nonzero discriminants, nonzero outer coefficients (no line
// through a second vertex), and 12 distinct pairwise intersection points
// over F_{p^2}. Throws BadPrime on p < 3, propagates BadDenominator.
bool is_good_prime(const Surface& X, int64_t p);
bool is_good_prime(const SurfaceModP& Xp);

// Frobenius-fixed nodes among the 15: the 3 vertices are always fixed, and
// each pair of line families contributes 2*2 intersections fixed iff both
// discriminants are squares. Closed form for odd k; 15 for even k.
int node_fix_closed_form(const SurfaceModP& Xp, int k);

// FNV-1a over the canonical coefficient string
uint64_t surface_hash(const Surface& X);

class Fq;
// the 12 off-vertex intersection points over F_{p^2} (element indices,
// affine chart z=1), in generation order; F must be the degree-2 field
std::vector<std::pair<int64_t, int64_t>> cross_points(const SurfaceModP& Xp, const Fq& F);

}  // namespace rmk3
