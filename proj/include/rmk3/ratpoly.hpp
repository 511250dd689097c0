#pragma once
#include <optional>
#include <utility>
#include <vector>

#include "rmk3/rational.hpp"

namespace rmk3 {

// coefficients ascending; normalized form has no trailing zeros, zero poly = {}
using RatPoly = std::vector<Rat>;
using IntPoly = std::vector<Int>;

RatPoly rp_norm(RatPoly f);
int rp_deg(const RatPoly& f);
RatPoly rp_add(const RatPoly& f, const RatPoly& g);
RatPoly rp_sub(const RatPoly& f, const RatPoly& g);
RatPoly rp_mul(const RatPoly& f, const RatPoly& g);
RatPoly rp_scale(const RatPoly& f, const Rat& c);
std::pair<RatPoly, RatPoly> rp_divmod(const RatPoly& f, const RatPoly& g);
RatPoly rp_derivative(const RatPoly& f);
RatPoly rp_monic(const RatPoly& f);
RatPoly rp_gcd_monic(RatPoly a, RatPoly b);
Rat rp_eval(const RatPoly& f, const Rat& x);
RatPoly rp_pow(RatPoly f, int e);

RatPoly int_to_rat(const IntPoly& f);
std::optional<IntPoly> rat_to_int(const RatPoly& f);
Int ip_eval(const IntPoly& f, const Int& x);

// exact complex root moduli, Durand-Kerner on the squarefree part; degree <= 8
std::vector<double> root_moduli(const RatPoly& f);

// e_k from the Newton recurrence e_k = (1/k) sum_{i=1..k} (-1)^{i-1} e_{k-i} t_i
std::vector<Rat> elementary_from_power_sums(const std::vector<Rat>& t);
// monic degree-n polynomial with the given first n power sums
RatPoly newton_to_poly(const std::vector<Rat>& power_sums, int n);
// first m power sums of a monic polynomial
std::vector<Rat> power_sums_from_poly(const RatPoly& f, int m);
// monic polynomial whose roots are the f-th powers of the roots of h
RatPoly power_root_transform(const RatPoly& h, int f);

// resultant(f, f') / lc(f); exact
Rat quartic_discriminant(const RatPoly& f);
// y^3 - c2 y^2 + (c3 c1 - 4 c0) y - (c3^2 c0 - 4 c2 c0 + c1^2) for a monic quartic
RatPoly resolvent_cubic(const RatPoly& f);
// all rational roots, each listed once
std::vector<Rat> rational_roots(const RatPoly& f);
// (u,v) with f = (Z^2+uZ+v)^2 when the monic quartic is a perfect square
std::optional<std::pair<Rat, Rat>> is_square_of_quadratic(const RatPoly& f);

// f = (Z^2+(A+B sqrt d)Z+(C+E sqrt d)) * conjugate, with (B,E) != (0,0)
struct QuadSplit {
    Rat A, B, C, E;
};
std::optional<QuadSplit> split_over_quadratic(const RatPoly& f, const Int& d);

enum class QuarticGalois { C4, V4, D4, A4, S4 };
std::string galois_name(QuarticGalois g);

// irreducibility over Q for a monic integer quartic
bool quartic_irreducible(const RatPoly& f);
// shortcut when all roots have modulus p: rational roots can only be +-p,
// quadratic factors only Z^2+BZ+-p^2 with |B| <= 2p
bool weil_quartic_irreducible(const IntPoly& f, int64_t p);

// Kappe-Warren classification; throws NotIrreducible
QuarticGalois galois_group_quartic(const RatPoly& f);

struct QuarticSubfields {
    std::vector<Int> subfields;        // square classes d > 1 with Q(sqrt d) inside the splitting field
    std::vector<Int> split_radicands;  // all signed d over which f splits into conjugate quadratics
};
QuarticSubfields real_quadratic_subfields(const RatPoly& f);

}  // namespace rmk3
