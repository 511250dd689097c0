#pragma once
#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "rmk3/rational.hpp"

namespace rmk3 {

// diagonal quadratic space: diag entries of the bilinear form, all nonzero
struct QuadraticSpace {
    int n = 0;
    std::vector<Rat> diag;
};

// the rank-6 transcendental model diag(1,1,-1,-1,-1,-1)
QuadraticSpace t_lattice_space();

struct RMEndomorphism {
    std::vector<std::vector<Rat>> mat;
    Rat d;
};

// witness u^2 + v^2 = d with 0 <= u <= v in lowest terms; nullopt when the
// squarefree part of num*den carries a prime = 3 (mod 4); throws on d <= 0
std::optional<std::pair<Rat, Rat>> sum_of_two_squares(const Rat& d);

// three 2x2 blocks (u v; v -u) on t_lattice_space; throws NotSumOfTwoSquares
RMEndomorphism build_rm_endomorphism(const Rat& d);

struct RMVerification {
    bool self_adjoint = false;
    bool square_is_scalar = false;                 // phi o phi = d * identity
    std::optional<std::pair<int, int>> offending;  // first failing entry
    bool pass = false;
};
// exact checks, independent of how phi was built
RMVerification verify_rm_endomorphism(const QuadraticSpace& space, const RMEndomorphism& phi,
                                      const Rat& d);

// x + y sqrt(d)
struct QuadFieldElement {
    Rat x, y;
};

// sign of the real number x + y sqrt(d) under sqrt(d) -> +-sqrt(d), exact
int sign_at_embedding(const QuadFieldElement& e, const Rat& d, bool positive_root);

struct DiscClassReport {
    std::vector<Int> classes;  // squarefree class of each block det 4 d N(a)
    Int product_class = 0;
    bool pass = false;
};
// block det((a+a', sqrt(d)(a-a')); (sqrt(d)(a-a'), d(a+a'))) = 4 d N(a);
// throws ZeroValue when some N(a) = 0
DiscClassReport disc_class_identities(const Rat& d, const std::vector<QuadFieldElement>& as);

struct TPlusReport {
    std::array<QuadFieldElement, 3> diag;      // diag(1+m^2, -1-m^2, -1-m^2), m = (u-sqrt d)/v
    std::array<int, 3> signs_pos, signs_neg;   // signs at the two real embeddings
    bool nondegenerate = false;
    bool indefinite = false;                   // pattern (+,-,-) at both embeddings
};
TPlusReport t_plus_form_matrix(const Rat& d, const Rat& u, const Rat& v);

// evidence-level nonexistence probe: deterministic sampling of self-adjoint
// rational matrices of small height, counting those with phi^2 = d I
int randomized_rm_search(const Rat& d, int trials);

}  // namespace rmk3
