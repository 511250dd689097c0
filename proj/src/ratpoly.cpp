#include "rmk3/ratpoly.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>

#include "rmk3/errors.hpp"

namespace rmk3 {

RatPoly rp_norm(RatPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

int rp_deg(const RatPoly& f) { return (int)f.size() - 1; }

RatPoly rp_add(const RatPoly& f, const RatPoly& g) {
    RatPoly r(std::max(f.size(), g.size()), Rat(0));
    for (size_t i = 0; i < f.size(); i++) r[i] += f[i];
    for (size_t i = 0; i < g.size(); i++) r[i] += g[i];
    return rp_norm(std::move(r));
}

RatPoly rp_sub(const RatPoly& f, const RatPoly& g) {
    RatPoly r(std::max(f.size(), g.size()), Rat(0));
    for (size_t i = 0; i < f.size(); i++) r[i] += f[i];
    for (size_t i = 0; i < g.size(); i++) r[i] -= g[i];
    return rp_norm(std::move(r));
}

RatPoly rp_mul(const RatPoly& f, const RatPoly& g) {
    if (f.empty() || g.empty()) return {};
    RatPoly r(f.size() + g.size() - 1, Rat(0));
    for (size_t i = 0; i < f.size(); i++)
        for (size_t j = 0; j < g.size(); j++) r[i + j] += f[i] * g[j];
    return rp_norm(std::move(r));
}

RatPoly rp_scale(const RatPoly& f, const Rat& c) {
    if (c == 0) return {};
    RatPoly r = f;
    for (auto& x : r) x *= c;
    return r;
}

std::pair<RatPoly, RatPoly> rp_divmod(const RatPoly& f, const RatPoly& g0) {
    RatPoly g = rp_norm(g0);
    if (g.empty()) throw Error("rp_divmod: division by zero polynomial");
    RatPoly r = rp_norm(f);
    if (r.size() < g.size()) return {{}, r};
    RatPoly q(r.size() - g.size() + 1, Rat(0));
    for (int i = (int)r.size() - 1; i >= (int)g.size() - 1; i--) {
        if (r[i] == 0) continue;
        Rat c = r[i] / g.back();
        q[i - g.size() + 1] = c;
        for (size_t j = 0; j < g.size(); j++) r[i - g.size() + 1 + j] -= c * g[j];
    }
    return {rp_norm(std::move(q)), rp_norm(std::move(r))};
}

RatPoly rp_derivative(const RatPoly& f) {
    if (f.size() < 2) return {};
    RatPoly r(f.size() - 1);
    for (size_t i = 1; i < f.size(); i++) r[i - 1] = f[i] * (int)i;
    return rp_norm(std::move(r));
}

RatPoly rp_monic(const RatPoly& f0) {
    RatPoly f = rp_norm(f0);
    if (f.empty()) throw Error("rp_monic: zero polynomial");
    return rp_scale(f, 1 / f.back());
}

RatPoly rp_gcd_monic(RatPoly a, RatPoly b) {
    a = rp_norm(std::move(a));
    b = rp_norm(std::move(b));
    while (!b.empty()) {
        auto [q, r] = rp_divmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.empty()) throw Error("rp_gcd_monic: both inputs zero");
    return rp_monic(a);
}

Rat rp_eval(const RatPoly& f, const Rat& x) {
    Rat r = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) r = r * x + *it;
    return r;
}

RatPoly rp_pow(RatPoly f, int e) {
    RatPoly r = {Rat(1)};
    while (e > 0) {
        if (e & 1) r = rp_mul(r, f);
        f = rp_mul(f, f);
        e >>= 1;
    }
    return r;
}

RatPoly int_to_rat(const IntPoly& f) {
    RatPoly r(f.size());
    for (size_t i = 0; i < f.size(); i++) r[i] = Rat(f[i]);
    return rp_norm(std::move(r));
}

std::optional<IntPoly> rat_to_int(const RatPoly& f) {
    IntPoly r(f.size());
    for (size_t i = 0; i < f.size(); i++) {
        if (rat_den(f[i]) != 1) return std::nullopt;
        r[i] = rat_num(f[i]);
    }
    return r;
}

Int ip_eval(const IntPoly& f, const Int& x) {
    Int r = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) r = r * x + *it;
    return r;
}

namespace {

// Durand-Kerner on a monic double-coefficient polynomial; inputs here are
// squarefree, so simple roots and reliable convergence
std::vector<std::complex<double>> durand_kerner(const std::vector<double>& c) {
    int n = (int)c.size();  // c holds the non-leading coefficients of a monic f
    double radius = 1.0;
    for (int i = 0; i < n; i++) radius = std::max(radius, 2.0 * std::pow(std::abs(c[i]), 1.0 / (n - i)));
    std::vector<std::complex<double>> z(n);
    for (int i = 0; i < n; i++)
        z[i] = std::polar(radius, 2 * M_PI * (i + 0.25) / n + 0.4);
    auto eval = [&](std::complex<double> x) {
        std::complex<double> r = 1.0;
        for (int i = n - 1; i >= 0; i--) r = r * x + c[i];
        return r;
    };
    for (int it = 0; it < 600; it++) {
        double delta = 0;
        for (int i = 0; i < n; i++) {
            std::complex<double> den = 1.0;
            for (int j = 0; j < n; j++)
                if (j != i) den *= z[i] - z[j];
            std::complex<double> step = eval(z[i]) / den;
            z[i] -= step;
            delta = std::max(delta, std::abs(step));
        }
        if (delta < 1e-13 * radius) break;
    }
    return z;
}

}  // namespace

std::vector<double> root_moduli(const RatPoly& f0) {
    RatPoly f = rp_monic(f0);
    if (rp_deg(f) > 1) {
        RatPoly d = rp_derivative(f);
        RatPoly g = rp_gcd_monic(f, d);
        if (rp_deg(g) > 0) f = rp_divmod(f, g).first;
    }
    int n = rp_deg(f);
    if (n <= 0) return {};
    if (n > 8) throw Error("root_moduli: degree too large");
    std::vector<double> c(n);
    for (int i = 0; i < n; i++) c[i] = f[i].convert_to<double>();
    std::vector<double> out;
    for (auto& z : durand_kerner(c)) out.push_back(std::abs(z));
    return out;
}

std::vector<Rat> elementary_from_power_sums(const std::vector<Rat>& t) {
    std::vector<Rat> e(t.size() + 1);
    e[0] = 1;
    for (size_t k = 1; k <= t.size(); k++) {
        Rat s = 0;
        for (size_t i = 1; i <= k; i++) s += (i % 2 ? e[k - i] : -e[k - i]) * t[i - 1];
        e[k] = s / (int)k;
    }
    return e;
}

RatPoly newton_to_poly(const std::vector<Rat>& power_sums, int n) {
    if ((int)power_sums.size() < n) throw Error("newton_to_poly: need n power sums");
    auto e = elementary_from_power_sums({power_sums.begin(), power_sums.begin() + n});
    RatPoly f(n + 1);
    f[n] = 1;
    for (int k = 1; k <= n; k++) f[n - k] = (k % 2 ? -e[k] : e[k]);
    return f;
}

std::vector<Rat> power_sums_from_poly(const RatPoly& f0, int m) {
    RatPoly f = rp_norm(f0);
    int n = rp_deg(f);
    if (n < 1 || f.back() != 1) throw Error("power_sums_from_poly: monic polynomial required");
    std::vector<Rat> e(n + 1);
    e[0] = 1;
    for (int k = 1; k <= n; k++) e[k] = (k % 2 ? -f[n - k] : f[n - k]);
    std::vector<Rat> p(m + 1);
    for (int k = 1; k <= m; k++) {
        Rat s = 0;
        for (int i = 1; i <= std::min(k - 1, n); i++) s += (i % 2 ? e[i] : -e[i]) * p[k - i];
        if (k <= n) s += (k % 2 ? e[k] : -e[k]) * k;
        p[k] = s;
    }
    return {p.begin() + 1, p.end()};
}

RatPoly power_root_transform(const RatPoly& h, int f) {
    int n = rp_deg(rp_norm(h));
    if (f < 1) throw Error("power_root_transform: exponent must be positive");
    auto ps = power_sums_from_poly(h, n * f);
    std::vector<Rat> sel(n);
    for (int i = 1; i <= n; i++) sel[i - 1] = ps[i * f - 1];
    return newton_to_poly(sel, n);
}

Rat quartic_discriminant(const RatPoly& f0) {
    RatPoly a = rp_norm(f0);
    if (rp_deg(a) != 4) throw Error("quartic_discriminant: degree must be 4");
    RatPoly da = rp_derivative(a);
    // Sylvester matrix of (f, f'), 7x7, rational Gaussian elimination
    const int n = 4, m = 3, N = 7;
    std::vector<std::vector<Rat>> M(N, std::vector<Rat>(N, Rat(0)));
    for (int i = 0; i < m; i++)
        for (int j = 0; j <= n; j++) M[i][i + j] = a[n - j];
    for (int i = 0; i < n; i++)
        for (int j = 0; j <= m; j++) M[m + i][i + j] = da[m - j];
    Rat det = 1;
    for (int col = 0; col < N; col++) {
        int piv = -1;
        for (int r = col; r < N; r++)
            if (M[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != col) {
            std::swap(M[col], M[piv]);
            det = -det;
        }
        det *= M[col][col];
        Rat inv = 1 / M[col][col];
        for (int r = col + 1; r < N; r++) {
            if (M[r][col] == 0) continue;
            Rat fct = M[r][col] * inv;
            for (int c2 = col; c2 < N; c2++) M[r][c2] -= fct * M[col][c2];
        }
    }
    return det / a[4];
}

RatPoly resolvent_cubic(const RatPoly& f0) {
    RatPoly f = rp_norm(f0);
    if (rp_deg(f) != 4 || f[4] != 1) throw Error("resolvent_cubic: monic quartic required");
    const Rat &c0 = f[0], &c1 = f[1], &c2 = f[2], &c3 = f[3];
    return {-(c3 * c3 * c0 - 4 * c2 * c0 + c1 * c1), c3 * c1 - 4 * c0, -c2, Rat(1)};
}

std::vector<Rat> rational_roots(const RatPoly& f0) {
    RatPoly f = rp_norm(f0);
    if (f.empty()) throw Error("rational_roots: zero polynomial");
    std::set<Rat> roots;
    size_t shift = 0;
    while (shift < f.size() - 1 && f[shift] == 0) shift++;
    if (shift > 0) {
        roots.insert(Rat(0));
        f.erase(f.begin(), f.begin() + shift);
    }
    if (rp_deg(f) >= 1) {
        f = rp_monic(f);
        int n = rp_deg(f);
        Int L = 1;
        for (auto& c : f) L = boost::multiprecision::lcm(L, rat_den(c));
        // y = L x turns f into a monic integer polynomial; its rational
        // roots are integers
        IntPoly G(n + 1);
        Int Lp = 1;
        for (int i = n; i >= 0; i--) {
            Rat gi = f[i] * Lp;
            if (rat_den(gi) != 1) throw Error("rational_roots: internal scaling failure");
            G[i] = rat_num(gi);
            Lp *= L;
        }
        std::set<Int> cands;
        {  // numeric isolation, then an exact +-2 window check
            std::vector<double> c(n);
            bool finite = true;
            for (int i = 0; i < n; i++) {
                c[i] = G[i].convert_to<double>();
                if (!std::isfinite(c[i])) finite = false;
            }
            if (finite)
                for (auto& z : durand_kerner(c))
                    if (std::abs(z.imag()) < 0.5 && std::abs(z.real()) < 9e15) {
                        Int base = (int64_t)std::llround(z.real());
                        for (int off = -2; off <= 2; off++) cands.insert(base + off);
                    }
        }
        if (G[0] != 0) {  // divisor enumeration as the exact fallback
            try {
                auto fac = factor_int(G[0]);
                std::vector<Int> divs = {1};
                bool overflow = false;
                for (auto& [pr, e] : fac) {
                    size_t base = divs.size();
                    Int pe = 1;
                    for (int i = 1; i <= e && !overflow; i++) {
                        pe *= pr;
                        for (size_t j = 0; j < base; j++) divs.push_back(divs[j] * pe);
                        if (divs.size() > 20000) overflow = true;
                    }
                    if (overflow) break;
                }
                if (!overflow)
                    for (auto& dv : divs) {
                        cands.insert(dv);
                        cands.insert(-dv);
                    }
            } catch (const FactorError&) {
                // numeric candidates still stand
            }
        }
        for (auto& y : cands)
            if (ip_eval(G, y) == 0) roots.insert(Rat(y, L));
    }
    return {roots.begin(), roots.end()};
}

std::optional<std::pair<Rat, Rat>> is_square_of_quadratic(const RatPoly& f0) {
    RatPoly f = rp_norm(f0);
    if (rp_deg(f) != 4 || f[4] != 1) throw Error("is_square_of_quadratic: monic quartic required");
    Rat u = f[3] / 2;
    Rat v = (f[2] - u * u) / 2;
    if (2 * u * v == f[1] && v * v == f[0]) return std::make_pair(u, v);
    return std::nullopt;
}

std::optional<QuadSplit> split_over_quadratic(const RatPoly& f0, const Int& d) {
    RatPoly f = rp_norm(f0);
    if (rp_deg(f) != 4 || f[4] != 1) throw Error("split_over_quadratic: monic quartic required");
    if (d == 0 || d == 1) throw Error("split_over_quadratic: d must be a nontrivial radicand");
    const Rat &c0 = f[0], &c1 = f[1], &c2 = f[2], &c3 = f[3];
    Rat A = c3 / 2, P = c2 - A * A, Q = c1 / 2;
    Rat AP2Q = A * P - 2 * Q;
    RatPoly cubic = {-AP2Q * AP2Q, P * P - 2 * A * AP2Q - 4 * c0, 2 * P - A * A, Rat(1)};
    Rat dr(d);
    for (const Rat& w : rational_roots(cubic)) {
        Rat A_, B_, C_, E_;
        if (w == 0) {
            C_ = P / 2;
            auto E = rat_sqrt((C_ * C_ - c0) / dr);
            if (!E) continue;
            A_ = A;
            B_ = 0;
            E_ = *E;
        } else {
            auto B = rat_sqrt(w / dr);
            if (!B || *B == 0) continue;
            A_ = A;
            B_ = *B;
            C_ = (P + w) / 2;
            E_ = (A * C_ - Q) / (dr * B_);
        }
        if (B_ == 0 && E_ == 0) continue;
        // (Z^2+AZ+C)^2 - d (BZ+E)^2 must reproduce f exactly
        RatPoly quad = {C_, A_, Rat(1)};
        RatPoly lin = {E_, B_};
        RatPoly check = rp_sub(rp_mul(quad, quad), rp_scale(rp_mul(lin, lin), dr));
        if (check == f) return QuadSplit{A_, B_, C_, E_};
    }
    return std::nullopt;
}

std::string galois_name(QuarticGalois g) {
    switch (g) {
        case QuarticGalois::C4: return "C4";
        case QuarticGalois::V4: return "V4";
        case QuarticGalois::D4: return "D4";
        case QuarticGalois::A4: return "A4";
        case QuarticGalois::S4: return "S4";
    }
    return "?";
}

bool quartic_irreducible(const RatPoly& f0) {
    RatPoly f = rp_norm(f0);
    if (rp_deg(f) != 4 || f[4] != 1) throw Error("quartic_irreducible: monic quartic required");
    auto fi = rat_to_int(f);
    if (!fi) throw Error("quartic_irreducible: integer coefficients required");
    if (!rational_roots(f).empty()) return false;
    // no linear factor, so c0 != 0; monic integer quadratic factors have
    // C C' = c0, B + B' = c3 (Gauss)
    const Int &c0 = (*fi)[0], &c1 = (*fi)[1], &c2 = (*fi)[2], &c3 = (*fi)[3];
    std::vector<Int> divs = {1};
    for (auto& [pr, e] : factor_int(c0)) {
        size_t base = divs.size();
        Int pe = 1;
        for (int i = 1; i <= e; i++) {
            pe *= pr;
            for (size_t j = 0; j < base; j++) divs.push_back(divs[j] * pe);
        }
    }
    for (auto& dv : divs)
        for (int sgn : {1, -1}) {
            Int C = sgn * dv, Cp = c0 / C;
            if (C == Cp) {
                Int disc = c3 * c3 - 4 * (c2 - 2 * C);
                if (disc < 0 || !is_square(disc)) continue;
                Int r = int_sqrt(disc);
                if ((c3 + r) % 2 != 0) continue;
                Int B = (c3 + r) / 2, Bp = (c3 - r) / 2;
                if (B * Cp + Bp * C == c1) return false;
            } else {
                Int num = c1 - c3 * C, den = Cp - C;
                if (num % den != 0) continue;
                Int B = num / den, Bp = c3 - B;
                if (B * Bp + C + Cp == c2 && B * Cp + Bp * C == c1) return false;
            }
        }
    return true;
}

bool weil_quartic_irreducible(const IntPoly& h, int64_t p) {
    if (h.size() != 5 || h[4] != 1) throw Error("weil_quartic_irreducible: monic quartic required");
    if (ip_eval(h, Int(p)) == 0 || ip_eval(h, Int(-p)) == 0) return false;
    Int p2 = Int(p) * p;
    for (const Int& C : {p2, Int(-p2)})
        for (int64_t B = -2 * p; B <= 2 * p; B++) {
            // synthetic division by Z^2 + B Z + C
            Int q1 = h[3] - B, q0 = h[2] - B * q1 - C;
            if (h[1] - B * q0 - C * q1 == 0 && h[0] - C * q0 == 0) return false;
        }
    return true;
}

QuarticGalois galois_group_quartic(const RatPoly& f) {
    if (!quartic_irreducible(f)) throw NotIrreducible("quartic reducible over Q");
    Rat discR = quartic_discriminant(f);
    Int disc = rat_num(discR);  // integral for monic integer quartics
    Int delta = squarefree_part(disc);
    auto rr = rational_roots(resolvent_cubic(f));
    if (delta == 1) return rr.empty() ? QuarticGalois::A4 : QuarticGalois::V4;
    if (rr.empty()) return QuarticGalois::S4;
    return split_over_quadratic(f, delta) ? QuarticGalois::C4 : QuarticGalois::D4;
}

namespace {

std::vector<Int> signed_squarefree_divisors(const Int& rad) {
    std::vector<Int> divs = {1};
    for (auto& [pr, e] : factor_int(rad)) {
        size_t base = divs.size();
        for (size_t j = 0; j < base; j++) divs.push_back(divs[j] * pr);
    }
    std::set<Int> out;
    for (auto& dv : divs) {
        out.insert(dv);
        out.insert(-dv);
    }
    out.erase(1);
    return {out.begin(), out.end()};
}

}  // namespace

QuarticSubfields real_quadratic_subfields(const RatPoly& f) {
    if (!quartic_irreducible(f)) throw NotIrreducible("subfield search needs an irreducible quartic");
    Int disc = rat_num(quartic_discriminant(f));
    Int delta = squarefree_part(disc);
    QuarticSubfields out;
    for (const Int& m : signed_squarefree_divisors(radical(disc)))
        if (split_over_quadratic(f, m)) out.split_radicands.push_back(m);
    std::set<Int> subs;
    if (delta != 1) subs.insert(delta);
    for (const Int& m : out.split_radicands) {
        subs.insert(m);
        if (delta != 1) {
            Int pr = squarefree_part(Int(delta * m));
            if (pr != 1) subs.insert(pr);
        }
    }
    for (auto& s : subs)
        if (s > 1) out.subfields.push_back(s);
    return out;
}

}  // namespace rmk3
