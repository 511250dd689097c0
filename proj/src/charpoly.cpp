#include "rmk3/charpoly.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "rmk3/counter.hpp"
#include "rmk3/errors.hpp"
#include "rmk3/ffield.hpp"

namespace rmk3 {

NodePermutation picard_permutation(const SurfaceModP& Xp) {
    if (!is_good_prime(Xp)) throw NotGoodPrime("p=" + std::to_string(Xp.p));
    auto F = fq_get(Xp.p, 2);
    NodePermutation out;
    out.p = Xp.p;
    int64_t one = F->scalar(1);
    out.points = {{one, 0, 0}, {0, one, 0}, {0, 0, one}};
    out.line_pairs = {{1, 1}, {2, 2}, {3, 3}};
    auto cross = cross_points(Xp, *F);
    static const std::pair<int, int> kinds[3] = {{1, 2}, {1, 3}, {2, 3}};
    std::vector<std::pair<std::pair<int64_t, int64_t>, std::pair<int, int>>> tagged;
    for (int i = 0; i < 12; i++) tagged.push_back({cross[i], kinds[i / 4]});
    std::sort(tagged.begin(), tagged.end());
    for (auto& [pt, kind] : tagged) {
        out.points.push_back({pt.first, pt.second, one});
        out.line_pairs.push_back(kind);
    }
    for (int i = 0; i < 15; i++) {
        std::array<int64_t, 3> img = {F->frobenius(out.points[i][0]), F->frobenius(out.points[i][1]),
                                      F->frobenius(out.points[i][2])};
        auto it = std::find(out.points.begin(), out.points.end(), img);
        if (it == out.points.end()) throw Error("picard_permutation: Frobenius image is not a node");
        out.perm[i] = (int)(it - out.points.begin());
    }
    std::array<bool, 15> seen{};
    for (int i = 0; i < 15; i++) {
        if (seen[i]) continue;
        int len = 0, j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = out.perm[j];
            len++;
        }
        out.cycle_type.push_back(len);
    }
    std::sort(out.cycle_type.begin(), out.cycle_type.end());
    for (int e = 1; e <= 4; e++) {
        int fixed = 0;
        for (int i = 0; i < 15; i++) {
            int j = i;
            for (int s = 0; s < e; s++) j = out.perm[j];
            if (j == i) fixed++;
        }
        out.fix[e - 1] = fixed;
    }
    return out;
}

std::vector<Int> lefschetz_traces(const Surface& X, int64_t p, int k) {
    if (k < 1 || k > 4) throw Error("lefschetz_traces: k must be 1..4");
    NodePermutation sigma = picard_permutation(reduce_mod_p(X, p));
    std::vector<Int> t;
    Int pi = 1;
    for (int i = 1; i <= k; i++) {
        pi *= p;
        Int N = count_singular(X, p, i);
        Int fx = sigma.fix[i - 1];
        Int ti = (N + pi * fx) - 1 - pi * pi - pi * (1 + fx);
        if (ti > 6 * pi || ti < -6 * pi)
            throw Error("lefschetz_traces: |t_" + std::to_string(i) + "| exceeds the Weil bound");
        t.push_back(ti);
    }
    return t;
}

bool weil_validate(const IntPoly& P0, int64_t p) {
    IntPoly P = P0;
    while (!P.empty() && P.back() == 0) P.pop_back();
    if (P.size() < 2 || P.back() != 1) return false;
    int n = (int)P.size() - 1;
    bool sym = false;
    for (int eps : {1, -1}) {
        bool ok = true;
        for (int j = 0; ok && 2 * j <= n; j++) {
            Int rhs = eps * P[n - j];
            for (int m = 0; m < n - 2 * j; m++) rhs *= p;
            if (P[j] != rhs) ok = false;
        }
        if (ok) {
            sym = true;
            break;
        }
    }
    if (!sym) return false;
    double tol = 1e-6 * (double)p;
    for (double m : root_moduli(int_to_rat(P)))
        if (std::abs(m - (double)p) > tol) return false;
    return true;
}

namespace {

// Phi_k ascending for every k with phi(k) <= 6
const std::vector<std::pair<int, std::vector<int>>>& cyclo_table() {
    static const std::vector<std::pair<int, std::vector<int>>> T = {
        {1, {-1, 1}},
        {2, {1, 1}},
        {3, {1, 1, 1}},
        {4, {1, 0, 1}},
        {5, {1, 1, 1, 1, 1}},
        {6, {1, -1, 1}},
        {7, {1, 1, 1, 1, 1, 1, 1}},
        {8, {1, 0, 0, 0, 1}},
        {9, {1, 0, 0, 1, 0, 0, 1}},
        {10, {1, -1, 1, -1, 1}},
        {12, {1, 0, -1, 0, 1}},
        {14, {1, -1, 1, -1, 1, -1, 1}},
        {18, {1, 0, 0, -1, 0, 0, 1}}};
    return T;
}

int cyclo_degree(int k) {
    for (auto& [kk, phi] : cyclo_table())
        if (kk == k) return (int)phi.size() - 1;
    throw Error("unknown cyclotomic index " + std::to_string(k));
}

// quotient when the monic g divides f exactly over Z
std::optional<IntPoly> int_divide_exact(const IntPoly& f, const IntPoly& g) {
    if (f.size() < g.size()) return std::nullopt;
    IntPoly r = f, q(f.size() - g.size() + 1);
    for (int i = (int)f.size() - 1; i >= (int)g.size() - 1; i--) {
        Int c = r[i];
        q[i - g.size() + 1] = c;
        if (c == 0) continue;
        for (size_t j = 0; j < g.size(); j++) r[i - (g.size() - 1) + j] -= c * g[j];
    }
    for (size_t i = 0; i + 1 < g.size(); i++)
        if (r[i] != 0) return std::nullopt;
    return q;
}

}  // namespace

std::pair<IntPoly, std::vector<int>> strip_p_cyclotomic(const IntPoly& P0, int64_t p, int n) {
    IntPoly cur = P0;
    while (!cur.empty() && cur.back() == 0) cur.pop_back();
    if (cur.empty()) throw Error("strip_p_cyclotomic: zero polynomial");
    Int pn = 1;
    for (int i = 0; i < n; i++) pn *= p;
    std::vector<int> ks;
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& [k, phi] : cyclo_table()) {
            size_t deg = phi.size() - 1;
            if (deg + 1 > cur.size()) continue;
            IntPoly fac(phi.size());
            Int s = 1;
            for (int j = (int)deg; j >= 0; j--) {
                fac[j] = phi[j] * s;
                s *= pn;
            }
            if (auto q = int_divide_exact(cur, fac)) {
                cur = std::move(*q);
                ks.push_back(k);
                changed = true;
                break;
            }
        }
    }
    std::sort(ks.begin(), ks.end());
    return {cur, ks};
}

CharpolyVariants transcendental_charpoly_variants(const Surface& X, int64_t p) {
    auto t = lefschetz_traces(X, p, 3);
    Int e1 = t[0];
    Int n2 = e1 * t[0] - t[1];
    if (n2 % 2 != 0) throw Error("charpoly: e2 is not integral");
    Int e2 = n2 / 2;
    Int n3 = e2 * t[0] - e1 * t[1] + t[2];
    if (n3 % 3 != 0) throw Error("charpoly: e3 is not integral");
    Int e3 = n3 / 3;
    Int c5 = -e1, c4 = e2, c3 = -e3;
    Int P2 = Int(p) * p, P4 = P2 * P2, P6 = P4 * P2;
    std::vector<int> signs = {1};
    if (c3 == 0) signs.push_back(-1);  // eps=-1 forces the middle coefficient to vanish
    CharpolyVariants out;
    for (int eps : signs) {
        IntPoly a(7);
        a[6] = 1;
        a[5] = c5;
        a[4] = c4;
        a[3] = c3;
        a[2] = eps * P2 * c4;
        a[1] = eps * P4 * c5;
        a[0] = eps * P6;
        if (!weil_validate(a, p)) continue;
        TranscendentalCharPoly cp;
        cp.p = p;
        cp.chi_T = std::move(a);
        cp.eps = eps;
        cp.traces = {t[0], t[1], t[2]};
        std::tie(cp.chi_tr, cp.stripped) = strip_p_cyclotomic(cp.chi_T, p, 1);
        out.variants.push_back(std::move(cp));
    }
    if (out.variants.empty())
        throw NoValidSign("no functional-equation sign passes validation at p=" + std::to_string(p));
    if (out.variants.size() == 1) {
        out.resolution = "unique";
        return out;
    }
    if (out.variants[0].chi_tr == out.variants[1].chi_tr) {
        out.resolution = "both";
        return out;
    }
    if (P4 <= (1 << 24)) {
        Int N4 = count_singular(X, p, 4);
        Int t4 = N4 - 1 - P4 - P4 * P4;
        std::vector<TranscendentalCharPoly> match;
        for (auto& cp : out.variants)
            if (power_sums_from_poly(int_to_rat(cp.chi_T), 4)[3] == Rat(t4)) match.push_back(cp);
        if (match.size() == 1) {
            out.variants = std::move(match);
            out.resolution = "k4";
            return out;
        }
    }
    out.resolution = "ambiguous";
    return out;
}

TranscendentalCharPoly transcendental_charpoly(const Surface& X, int64_t p) {
    auto v = transcendental_charpoly_variants(X, p);
    if (v.resolution == "ambiguous")
        throw Ambiguous("functional-equation sign undetermined at p=" + std::to_string(p));
    return v.variants[0];
}

Int artin_tate_class(const IntPoly& chi_tr, int64_t p) {
    Int v = ip_eval(chi_tr, Int(p));
    if (v == 0) throw ZeroValue("chi_tr(p) = 0 at p=" + std::to_string(p));
    return squarefree_part(Int(p * v));
}

Int artin_tate_class(const TranscendentalCharPoly& cp) {
    if ((int)cp.chi_tr.size() - 1 != 4)
        throw Error("artin_tate_class: rank-18 configuration needs deg chi_tr = 4");
    int roots = 0;
    bool twisted = false;
    for (int k : cp.stripped) {
        roots += cyclo_degree(k);
        if (k == 2) twisted = true;
    }
    if (roots != 2) throw Error("artin_tate_class: exactly two stripped roots required");
    if (twisted) throw Error("artin_tate_class: -p stripped, twisted lattice action; refusing");
    return artin_tate_class(cp.chi_tr, cp.p);
}

}  // namespace rmk3
