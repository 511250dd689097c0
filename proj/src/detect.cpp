#include "rmk3/detect.hpp"

#include <algorithm>

#include "rmk3/counter.hpp"
#include "rmk3/errors.hpp"
#include "rmk3/ffield.hpp"

namespace rmk3 {

bool is_nonordinary(const Surface& X, int64_t p) {
    int64_t cnt = count_singular(X, p, 1);
    return cnt % p == 1;
}

std::string det_verdict(const IntPoly& chi_tr0, const Int& d, int64_t p) {
    IntPoly f = chi_tr0;
    while (!f.empty() && f.back() == 0) f.pop_back();
    if (f.empty()) throw Error("det_verdict: zero polynomial");
    int deg = (int)f.size() - 1;
    if (deg == 0) return "pass-deg0";
    if (deg != 4) return "reject-deg";
    RatPoly fr = int_to_rat(f);
    if (is_square_of_quadratic(fr)) return "pass-square";
    if (split_over_quadratic(fr, d)) return "pass-split";
    if (weil_quartic_irreducible(f, p))
        return galois_group_quartic(fr) == QuarticGalois::V4 ? "pass-V4" : "reject-galois";
    return "reject-reducible";
}

namespace {

CharpolySummary summarize(const IntPoly& chi_tr, const Int& d, int64_t p, const std::string& verdict) {
    CharpolySummary s;
    s.p = p;
    s.chi_tr = chi_tr;
    s.deg = (int)chi_tr.size() - 1;
    s.verdict = verdict;
    if (s.deg == 4) {
        RatPoly fr = int_to_rat(chi_tr);
        s.square = is_square_of_quadratic(fr).has_value();
        if (d != 0 && d != 1) s.splits_over_d = split_over_quadratic(fr, d).has_value();
        if (!s.square && weil_quartic_irreducible(chi_tr, p))
            s.galois = galois_name(galois_group_quartic(fr));
    }
    return s;
}

}  // namespace

DetectionReport detect_deterministic(const Surface& X, const Int& d, const DetectParams& prm) {
    DetectionReport rep;
    rep.mode = "deterministic";
    rep.d = d;
    // step i: every inert prime below the bound, bad ones included, must
    // satisfy the count congruence
    for (int64_t p : primes_below(prm.inert_bound)) {
        if (p == 2 || !is_inert(p, d)) continue;
        int64_t cnt;
        try {
            cnt = count_singular(X, p, 1);
        } catch (const BadDenominator&) {
            continue;  // no reduction at p, nothing to test
        }
        PrimeWitness w{p, cnt % p, cnt % p == 1};
        rep.witnesses.push_back(w);
        if (!w.hit) {
            rep.outcome = "rejected-step-i";
            rep.p0 = p;
            return rep;
        }
    }
    // step ii: per-prime quartic verdicts over all good primes, every
    // charpoly variant evaluated
    bool ambiguous = false;
    for (int64_t p : primes_below(prm.good_bound)) {
        if (p == 2) continue;
        bool good;
        try {
            good = is_good_prime(X, p);
        } catch (const BadDenominator&) {
            good = false;
        }
        if (!good) continue;
        auto variants = transcendental_charpoly_variants(X, p);
        bool any_pass = false, any_reject = false;
        for (const auto& cp : variants.variants) {
            std::string verdict = det_verdict(cp.chi_tr, d, p);
            rep.charpolys.push_back(summarize(cp.chi_tr, d, p, verdict));
            (verdict.rfind("pass", 0) == 0 ? any_pass : any_reject) = true;
        }
        if (any_reject && any_pass) {
            ambiguous = true;
        } else if (any_reject) {
            rep.outcome = "rejected-step-ii";
            rep.p0 = p;
            return rep;
        }
    }
    rep.outcome = ambiguous ? "ambiguous" : "candidate";
    return rep;
}

DetectionReport detect_statistical(const Surface& X, const DetectParams& prm) {
    DetectionReport rep;
    rep.mode = "statistical";
    // step i: congruence screen over the residue-filtered window
    for (int64_t p : primes_below(prm.screen_hi)) {
        if (p <= prm.screen_lo || p % prm.residue_mod != prm.residue) continue;
        int64_t cnt;
        try {
            cnt = count_singular(X, p, 1);
        } catch (const BadDenominator&) {
            continue;
        }
        PrimeWitness w{p, cnt % p, cnt % p == 1};
        rep.witnesses.push_back(w);
        if (w.hit) rep.hits++;
    }
    if (rep.hits <= prm.hit_threshold) {
        rep.outcome = "rejected-step-i";
        return rep;
    }
    // steps ii-iv: ascending ordinary good primes
    int tried = 0;
    for (int64_t p : primes_below(prm.screen_hi)) {
        if (p == 2) continue;
        bool good;
        try {
            good = is_good_prime(X, p);
        } catch (const BadDenominator&) {
            good = false;
        }
        if (!good) continue;
        if (is_nonordinary(X, p)) continue;
        if (++tried > prm.ordinary_bound)
            throw ExhaustedPrimes("no decisive ordinary prime within " +
                                  std::to_string(prm.ordinary_bound) + " trials");
        auto cp = transcendental_charpoly(X, p);
        int deg = (int)cp.chi_tr.size() - 1;
        if (deg != 4) {
            rep.charpolys.push_back(summarize(cp.chi_tr, 0, p, "reject-deg"));
            rep.outcome = "rejected-step-iii";
            rep.p0 = p;
            return rep;
        }
        RatPoly fr = int_to_rat(cp.chi_tr);
        if (is_square_of_quadratic(fr)) {
            rep.charpolys.push_back(summarize(cp.chi_tr, 0, p, "skip-square"));
            continue;
        }
        if (!weil_quartic_irreducible(cp.chi_tr, p)) {
            rep.charpolys.push_back(summarize(cp.chi_tr, 0, p, "skip-reducible"));
            continue;
        }
        if (galois_group_quartic(fr) == QuarticGalois::V4) {
            rep.charpolys.push_back(summarize(cp.chi_tr, 0, p, "skip-V4"));
            continue;
        }
        // step iv: the real quadratic field the quartic splits over
        auto sub = real_quadratic_subfields(fr);
        rep.subfields = sub.subfields;
        for (const Int& m : sub.split_radicands)
            if (m > 1) rep.splits.push_back(m);
        rep.p0 = p;
        if (rep.splits.size() != 1) {
            rep.charpolys.push_back(summarize(cp.chi_tr, 0, p, "reject-subfield"));
            rep.outcome = "rejected-step-iv";
            return rep;
        }
        rep.d = rep.splits[0];
        rep.charpolys.push_back(summarize(cp.chi_tr, rep.d, p, "split-found"));
        // step v: inert congruence verification for the candidate
        for (int64_t pp : primes_below(prm.inert_bound)) {
            if (pp == 2 || !is_inert(pp, rep.d)) continue;
            int64_t cnt;
            try {
                cnt = count_singular(X, pp, 1);
            } catch (const BadDenominator&) {
                continue;
            }
            PrimeWitness w{pp, cnt % pp, cnt % pp == 1};
            rep.witnesses.push_back(w);
            if (!w.hit) {
                rep.outcome = "rejected-step-v";
                return rep;
            }
        }
        rep.outcome = "candidate";
        return rep;
    }
    throw ExhaustedPrimes("no ordinary good prime below " + std::to_string(prm.screen_hi));
}

namespace {

std::vector<int64_t> screen_primes(const DetectParams& prm) {
    std::vector<int64_t> S;
    for (int64_t p : primes_below(prm.screen_hi))
        if (p > prm.screen_lo && p % prm.residue_mod == prm.residue) S.push_back(p);
    return S;
}

}  // namespace

StatSurvival survival_probability_statistical(const DetectParams& prm) {
    auto S = screen_primes(prm);
    size_t n = S.size();
    size_t k = (size_t)prm.hit_threshold + 1;  // the minimal surviving hit count
    if (k > n) return {Rat(0), Rat(0)};
    // dp[j] = Poisson-binomial P(exactly j hits); E[r] = elementary
    // symmetric polynomial of the 1/p, the r-subset expectation
    std::vector<Rat> dp(n + 1), E(n + 1);
    dp[0] = 1;
    E[0] = 1;
    for (size_t i = 0; i < n; i++) {
        Rat x(1, S[i]);
        for (size_t j = i + 1; j > 0; j--) {
            dp[j] = dp[j] * (1 - x) + dp[j - 1] * x;
            E[j] += E[j - 1] * x;
        }
        dp[0] *= (1 - x);
    }
    // Jordan's sieve: P(=k) = sum (-1)^{r-k} C(r,k) E_r,
    //                 P(>=k) = sum (-1)^{r-k} C(r-1,k-1) E_r
    Rat alt_six = 0, alt_tail = 0, Crk = 1;
    for (size_t r = k; r <= n; r++) {
        if (r > k) Crk = Crk * (int64_t)r / (int64_t)(r - k);
        Rat Cr1k1 = Crk * (int64_t)k / (int64_t)r;
        int sign = ((r - k) % 2 == 0) ? 1 : -1;
        alt_six += sign * Crk * E[r];
        alt_tail += sign * Cr1k1 * E[r];
    }
    Rat dp_six = dp[k], dp_tail = 0;
    for (size_t j = k; j <= n; j++) dp_tail += dp[j];
    if (alt_six != dp_six || alt_tail != dp_tail)
        throw Error("survival probability: sieve and product distribution disagree");
    return {dp_six, dp_tail};
}

Rat survival_probability_inert(const Int& d, int64_t bound) {
    Rat prod = 1;
    for (int64_t p : primes_below(bound))
        if (is_inert(p, d)) prod *= Rat(1, p);
    return prod;
}

}  // namespace rmk3
