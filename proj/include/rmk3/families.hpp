#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rmk3/ratpoly.hpp"
#include "rmk3/surface.hpp"

namespace rmk3 {

enum class FamilyId { X2, X5, X13 };

FamilyId family_from_name(const std::string& name);  // "x2" | "x5" | "x13"
std::string family_name(FamilyId id);

// X2/X5 need t; X2 also accepts nullopt for the t=infinity degeneration
// (leading t^2 coefficients only); X13 ignores t
Surface make_family(FamilyId id, std::optional<Rat> t = std::nullopt);

struct CongruenceFailure {
    int64_t p = 0;
    int64_t t = 0;  // residue of t, ignored for X13
    bool t_infinity = false;
    int64_t count_mod_p = 0;
};

struct CongruenceReport {
    FamilyId id{};
    int64_t prime_bound = 0;
    int64_t primes_checked = 0;
    int64_t cells_checked = 0;  // (p, t) pairs
    std::vector<CongruenceFailure> failures;
    bool pass() const { return failures.empty(); }
};

// count == 1 (mod p) over every qualifying prime p < bound (X2: p = 3,5
// mod 8; X5: p = 2,3 mod 5; X13: p = 2,5,...,11 mod 13; p = 2 skipped)
// and, for the two t-families, every t in F_p plus t = infinity for X2
CongruenceReport verify_family_congruences(FamilyId id, int64_t prime_bound);

// the factored-q3 model w^2 = q1(y,z) q2(x,z) (x+y)(2x+t^2 y) over F_q,
// q = p^k with 2 a non-square; t is a field element index, nullopt means
// t = infinity. Predicted: q^2+q+1 generically, q^2+2q+1 at t=0, q^2+1 at
// infinity; t^2 = -2 has no closed form and is refused.
struct SplitFamilyCheck {
    int64_t count = 0;
    int64_t predicted = 0;
    bool pass = false;
};
SplitFamilyCheck split_family_count_check(int64_t p, int k, std::optional<int64_t> t);

// classical invariants of a x^4 + b x^3 + c x^2 + d x + e, normalized so
// the Jacobian of w^2 = quartic is y^2 = x^3 - 27 c4 x - 54 c6 and
// delta = (c4^3 - c6^2)/1728
struct QuarticInvariants {
    Rat I, J, c4, c6, delta;
};
QuarticInvariants binary_quartic_invariants(const Rat& a, const Rat& b, const Rat& c, const Rat& d,
                                            const Rat& e);

struct FiberMismatch {
    int64_t l = 0;
    int64_t curve_count = 0;
    int64_t jacobian_count = 0;
};

// fiber-by-fiber genus-one counts of the X2(t) fibration over F_p against
// the Weierstrass models, plus the singular-fiber bookkeeping
struct FiberLedger {
    int64_t p = 0, t = 0;
    int64_t smooth_fibers = 0;
    int64_t smooth_sum = 0;
    int64_t c0_count = 0, cinf_count = 0;  // the l=0 and l=infinity fibers
    bool fiberwise_ok = false;
    bool sum_ok = false;       // smooth_sum == (p-3)(p+1)
    bool split_ok = false;     // {c0, cinf} == {p, p+2} via the character rule
    bool ramified_ok = false;  // the quartic vanishes identically at l=-1, -2/t^2
    std::vector<FiberMismatch> mismatches;
    bool pass = false;
};
FiberLedger jacobian_count_check(int64_t t, int64_t p);

struct IdentityCheck {
    std::string name;
    bool pass = false;
};

// the exact-arithmetic identity ledger of the X2(t) fibration: form
// discriminants and resultant factorization, the delta factorization, the
// l <-> 1/l twist, and the square-pairing twist-class identity
struct FibrationLedger {
    Rat t;
    std::vector<IdentityCheck> checks;
    bool pass = false;
};
FibrationLedger verify_fibration_identities(const Rat& t);

}  // namespace rmk3
