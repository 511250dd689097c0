#include "rmk3/surface.hpp"

#include <algorithm>
#include <utility>
#include <vector>

#include "rmk3/errors.hpp"
#include "rmk3/ffield.hpp"

namespace rmk3 {

Surface make_surface(const QuadForm& q1, const QuadForm& q2, const QuadForm& q3) {
    const QuadForm* fs[3] = {&q1, &q2, &q3};
    Rat d[3];
    for (int i = 0; i < 3; i++) {
        d[i] = fs[i]->disc();
        if (d[i] == 0)
            throw ZeroDiscriminant("q" + std::to_string(i + 1) + " has coincident lines");
    }
    Surface X{q1, q2, q3};
    X.d1 = squarefree_part(d[0]);
    X.d2 = squarefree_part(d[1]);
    X.d3 = squarefree_part(d[2]);
    X.disc_product_square = squarefree_part(Int(X.d1 * X.d2 * X.d3)) == 1;
    return X;
}

int64_t rat_mod_p(const Rat& r, int64_t p) {
    Int den = rat_den(r) % p;
    if (den == 0) throw BadDenominator("denominator of " + rat_str(r) + " at p=" + std::to_string(p));
    Int num = rat_num(r) % p;
    int64_t n = to_int64((num + p) % p);
    int64_t d = to_int64((den + p) % p);
    return n * mod_inv(d, p) % p;
}

FormModP reduce_form(const QuadForm& f, int64_t p) {
    return {rat_mod_p(f.a, p), rat_mod_p(f.b, p), rat_mod_p(f.c, p)};
}

SurfaceModP reduce_mod_p(const Surface& X, int64_t p) {
    if (p < 2) throw BadPrime("p=" + std::to_string(p));
    return {p, reduce_form(X.q1, p), reduce_form(X.q2, p), reduce_form(X.q3, p)};
}

namespace {

// both roots of a*Y^2 + b*Y + c over F_{p^2}, a != 0, disc != 0
std::pair<int64_t, int64_t> form_roots(const Fq& F, const FormModP& f) {
    int64_t a = F.scalar(f.a), b = F.scalar(f.b), c = F.scalar(f.c);
    int64_t disc = F.sub(F.mul(b, b), F.mul(F.scalar(4), F.mul(a, c)));
    int64_t s = F.sqrt(disc);  // disc is an F_p scalar, always a square in F_{p^2}
    int64_t inv2a = F.inv(F.mul(F.scalar(2), a));
    return {F.mul(F.sub(s, b), inv2a), F.mul(F.sub(F.neg(s), b), inv2a)};
}

}  // namespace

// The 12 intersection points away from the vertices, in the affine chart
// z=1: lines are y=r (q1), x=s (q2), x=m*y (q3). All coordinates lie in
// F_{p^2} and are nonzero because the outer coefficients are nonzero.
std::vector<std::pair<int64_t, int64_t>> cross_points(const SurfaceModP& Xp, const Fq& F) {
    auto [r1, r2] = form_roots(F, Xp.f1);
    auto [s1, s2] = form_roots(F, Xp.f2);
    auto [m1, m2] = form_roots(F, Xp.f3);
    std::vector<std::pair<int64_t, int64_t>> pts;
    for (int64_t r : {r1, r2})
        for (int64_t s : {s1, s2}) pts.emplace_back(s, r);
    for (int64_t r : {r1, r2})
        for (int64_t m : {m1, m2}) pts.emplace_back(F.mul(m, r), r);
    for (int64_t s : {s1, s2})
        for (int64_t m : {m1, m2}) pts.emplace_back(s, F.mul(s, F.inv(m)));
    return pts;
}

bool is_good_prime(const SurfaceModP& Xp) {
    int64_t p = Xp.p;
    if (p < 3 || !is_prime_u64((uint64_t)p)) throw BadPrime("good primes are odd, got " + std::to_string(p));
    for (const FormModP* f : {&Xp.f1, &Xp.f2, &Xp.f3}) {
        if (f->a == 0 || f->c == 0) return false;
        if ((f->b * f->b - 4 * f->a * f->c) % p == 0) return false;
    }
    auto F = fq_get(p, 2);
    auto pts = cross_points(Xp, *F);
    std::sort(pts.begin(), pts.end());
    return std::adjacent_find(pts.begin(), pts.end()) == pts.end();
}

bool is_good_prime(const Surface& X, int64_t p) {
    if (p < 3 || !is_prime_u64((uint64_t)p)) throw BadPrime("good primes are odd, got " + std::to_string(p));
    return is_good_prime(reduce_mod_p(X, p));
}

int node_fix_closed_form(const SurfaceModP& Xp, int k) {
    if (k % 2 == 0) return 15;
    int64_t p = Xp.p;
    auto pair_fixed = [&](const FormModP& f) {
        return legendre(((f.b * f.b - 4 * f.a * f.c) % p + p) % p, p) == 1 ? 2 : 0;
    };
    int a1 = pair_fixed(Xp.f1), a2 = pair_fixed(Xp.f2), a3 = pair_fixed(Xp.f3);
    return 3 + a1 * a2 + a1 * a3 + a2 * a3;
}

uint64_t surface_hash(const Surface& X) {
    std::string s;
    for (const QuadForm* f : {&X.q1, &X.q2, &X.q3})
        s += rat_str(f->a) + "," + rat_str(f->b) + "," + rat_str(f->c) + ";";
    uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace rmk3
