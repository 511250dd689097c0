#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "rmk3/charpoly.hpp"
#include "rmk3/surface.hpp"

namespace rmk3 {

struct DetectParams {
    int64_t screen_lo = 40;    // statistical congruence window (exclusive)
    int64_t screen_hi = 300;   // shared upper bound of the prime windows (exclusive)
    int64_t residue_mod = 4;   // statistical screen residue filter
    int64_t residue = 1;
    int hit_threshold = 5;     // more hits than this survive the screen
    int ordinary_bound = 10;   // ordinary good primes tried before giving up
    int64_t inert_bound = 300; // inert-congruence verification window
    int64_t good_bound = 100;  // deterministic per-prime window
};

struct PrimeWitness {
    int64_t p = 0;
    int64_t count_mod_p = 0;
    bool hit = false;  // count == 1 (mod p)
};

struct CharpolySummary {
    int64_t p = 0;
    IntPoly chi_tr;
    int deg = 0;
    bool square = false;         // square of a quadratic
    bool splits_over_d = false;  // splits into conjugate quadratics over sqrt(d)
    std::string galois;          // empty unless an irreducible quartic
    std::string verdict;
};

struct DetectionReport {
    std::string mode;     // "statistical" | "deterministic"
    std::string outcome;  // "candidate" | "rejected-step-*" | "ambiguous"
    Int d{0};             // candidate (statistical) or target (deterministic)
    int hits = 0;         // congruence-screen hit count
    int64_t p0 = 0;       // decisive prime
    std::vector<PrimeWitness> witnesses;
    std::vector<CharpolySummary> charpolys;
    std::vector<Int> subfields;  // real quadratic subfields at the decisive prime
    std::vector<Int> splits;     // radicands > 1 the quartic splits over
};

// ordinary <=> #X(F_p) != 1 (mod p); model-independent congruence
bool is_nonordinary(const Surface& X, int64_t p);

// one prime's verdict against a fixed radicand d:
// pass-deg0 | reject-deg | pass-square | pass-split | pass-V4 |
// reject-galois | reject-reducible
std::string det_verdict(const IntPoly& chi_tr, const Int& d, int64_t p);

// congruence screen, first ordinary good prime, quartic analysis, real
// subfield extraction, inert verification; throws ExhaustedPrimes when the
// ordinary-prime loop exceeds its bound
DetectionReport detect_statistical(const Surface& X, const DetectParams& params = {});

// inert screen for the given d, then per-prime verdicts over all good
// primes below the bound; variant disagreement degrades to "ambiguous"
DetectionReport detect_deterministic(const Surface& X, const Int& d, const DetectParams& params = {});

// chance that independent events with probabilities 1/p over the screen
// primes produce exactly six hits (exact_six) or at least six (tail);
// both evaluated by alternating sum and by the Poisson-binomial product,
// which must agree exactly
struct StatSurvival {
    Rat exact_six;
    Rat tail;
};
StatSurvival survival_probability_statistical(const DetectParams& params = {});

// product of 1/p over primes p < bound inert in Q(sqrt d)
Rat survival_probability_inert(const Int& d, int64_t bound = 300);

}  // namespace rmk3
