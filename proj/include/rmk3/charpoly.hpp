#pragma once
#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rmk3/ratpoly.hpp"
#include "rmk3/surface.hpp"

namespace rmk3 {

// Frobenius action on the 15 nodes of the branch configuration: the three
// coordinate vertices (labels 0..2, always fixed) and the 12 off-vertex
// intersection points over F_{p^2}, labeled 3..14 in lexicographic order
// of their affine (x, y) element indices.
struct NodePermutation {
    int64_t p = 0;
    std::vector<std::array<int64_t, 3>> points;   // 15 projective points, label order
    std::vector<std::pair<int, int>> line_pairs;  // which two forms cut each point
    std::array<int, 15> perm{};                   // sigma: label -> label
    std::vector<int> cycle_type;                  // ascending
    std::array<int, 4> fix{};                     // #Fix(sigma^i), i = 1..4
};

NodePermutation picard_permutation(const SurfaceModP& Xp);

// power sums t_1..t_k of the six non-explicit Frobenius eigenvalues:
// t_i = (N_i + p^i Fix(sigma^i)) - 1 - p^{2i} - p^i (1 + Fix(sigma^i))
// with N_i the singular-model count over F_{p^i}; k <= 4
std::vector<Int> lefschetz_traces(const Surface& X, int64_t p, int k);

struct TranscendentalCharPoly {
    int64_t p = 0;
    IntPoly chi_T;             // monic degree 6, ascending coefficients
    IntPoly chi_tr;            // chi_T with all p-scaled cyclotomic factors removed
    std::vector<int> stripped; // cyclotomic indices of the removed factors, ascending
    int eps = 0;               // functional-equation sign
    std::array<Int, 3> traces; // t_1..t_3
};

// all sign candidates that survive Weil validation, eps=+1 first;
// resolution is "unique", "both" (equal chi_tr), "k4" (settled by an
// F_{p^4} count), or "ambiguous" (both kept, chi_tr differs)
struct CharpolyVariants {
    std::vector<TranscendentalCharPoly> variants;
    std::string resolution;
};

CharpolyVariants transcendental_charpoly_variants(const Surface& X, int64_t p);

// single result; throws Ambiguous when the F_{p^4} count cannot settle the
// sign, NoValidSign when neither sign passes validation
TranscendentalCharPoly transcendental_charpoly(const Surface& X, int64_t p);

// exact coefficient symmetry c_j = eps p^{n-2j} c_{n-j} for some sign, and
// every complex root within 1e-6 p of modulus p
bool weil_validate(const IntPoly& P, int64_t p);

// repeatedly divide out p^{n phi(k)} Phi_k(Z / p^n) for k with phi(k) <= 6;
// returns the quotient and the ascending multiset of stripped k
std::pair<IntPoly, std::vector<int>> strip_p_cyclotomic(const IntPoly& P, int64_t p, int n = 1);

// square class of disc Pic for the rank-18 configuration: the squarefree
// part of p * chi_tr(p). Milne's point-count form of Artin-Tate, with
// rational Neron-Severi classes, trivial torsion, alpha(X) = 1, and #Br a
// perfect square, leaves exactly this square class.
Int artin_tate_class(const IntPoly& chi_tr, int64_t p);
// guarded form: requires deg chi_tr = 4 and exactly two stripped roots,
// and refuses the twisted case where -p was stripped
Int artin_tate_class(const TranscendentalCharPoly& cp);

}  // namespace rmk3
