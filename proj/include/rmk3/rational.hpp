#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rmk3/errors.hpp"

namespace rmk3 {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

std::vector<int64_t> primes_below(int64_t n);
bool is_prime_u64(uint64_t n);
bool is_probable_prime(const Int& n);

int64_t mod_pow(int64_t base, int64_t exp, int64_t m);
int64_t mod_inv(int64_t a, int64_t m);

// Legendre symbol (a/p) in {-1,0,1}, p an odd prime
int legendre(int64_t a, int64_t p);
int legendre(const Int& a, int64_t p);

Int int_sqrt(const Int& n);
bool is_square(const Int& n);
bool is_square(const Rat& r);
// exact rational square root when it exists
std::optional<Rat> rat_sqrt(const Rat& r);

// full factorization of |n|, n != 0: trial division, then Miller-Rabin +
// Brent rho on the remainder; throws FactorError if a cofactor resists
std::vector<std::pair<Int, int>> factor_int(const Int& n);

// sign(n) * product of primes with odd exponent
Int squarefree_part(const Int& n);
// square class of a nonzero rational: squarefree part of num*den
Int squarefree_part(const Rat& r);
// product of the distinct primes dividing n
Int radical(const Int& n);

int64_t to_int64(const Int& n);

// canonical "n" / "n/d" forms, d > 0, lowest terms
std::string rat_str(const Rat& r);
Rat parse_rat(const std::string& s);

}  // namespace rmk3
