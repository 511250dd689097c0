#include "rmk3/hodge.hpp"

#include <random>

#include "rmk3/errors.hpp"

namespace rmk3 {

namespace {

// prime two-squares decomposition, p = 2 or p = 1 (mod 4): descent via the
// Euclidean algorithm on (p, sqrt(-1) mod p) down to the first remainder
// below sqrt(p)
std::pair<Int, Int> two_squares_prime(const Int& p) {
    if (p == 2) return {1, 1};
    Int n = 2, e2 = (p - 1) / 2;
    while (boost::multiprecision::powm(n, e2, p) != p - 1) n++;
    Int b = boost::multiprecision::powm(n, (p - 1) / 4, p);
    Int a = p, bound = int_sqrt(p);
    while (b > bound) {
        Int r = a % b;
        a = b;
        b = r;
    }
    Int y = int_sqrt(p - b * b);
    if (y * y != p - b * b) throw Error("two-squares descent failed");
    return {b, y};
}

}  // namespace

QuadraticSpace t_lattice_space() {
    return {6, {1, 1, -1, -1, -1, -1}};
}

std::optional<std::pair<Rat, Rat>> sum_of_two_squares(const Rat& d) {
    if (d <= 0) throw Error("d must be positive");
    // d and d * den^2 share the same status; work with num * den
    Int N = rat_num(d) * rat_den(d);
    Int s = 1, X = 1, Y = 0;
    for (const auto& [p, e] : factor_int(N)) {
        for (int i = 0; i < e / 2; i++) s *= p;
        if (e % 2 == 0) continue;
        if (p % 4 == 3) return std::nullopt;
        auto [a, b] = two_squares_prime(p);
        Int X2 = X * a - Y * b, Y2 = X * b + Y * a;
        X = X2;
        Y = Y2;
    }
    Rat u = Rat(s * X, rat_den(d)), v = Rat(s * Y, rat_den(d));
    u = abs(u);
    v = abs(v);
    if (u > v) std::swap(u, v);
    return std::make_pair(u, v);
}

RMEndomorphism build_rm_endomorphism(const Rat& d) {
    auto w = sum_of_two_squares(d);
    if (!w) throw NotSumOfTwoSquares("d = " + rat_str(d));
    auto [u, v] = *w;
    RMEndomorphism phi;
    phi.d = d;
    phi.mat.assign(6, std::vector<Rat>(6, Rat(0)));
    for (int b = 0; b < 3; b++) {
        phi.mat[2 * b][2 * b] = u;
        phi.mat[2 * b][2 * b + 1] = v;
        phi.mat[2 * b + 1][2 * b] = v;
        phi.mat[2 * b + 1][2 * b + 1] = -u;
    }
    return phi;
}

RMVerification verify_rm_endomorphism(const QuadraticSpace& space, const RMEndomorphism& phi,
                                      const Rat& d) {
    const int n = space.n;
    if ((int)phi.mat.size() != n || (int)space.diag.size() != n) throw Error("dimension mismatch");
    RMVerification rep;
    rep.self_adjoint = true;
    // <phi e_i, e_j> = diag_j phi[j][i]
    for (int i = 0; i < n && rep.self_adjoint; i++)
        for (int j = 0; j < n; j++)
            if (space.diag[j] * phi.mat[j][i] != space.diag[i] * phi.mat[i][j]) {
                rep.self_adjoint = false;
                rep.offending = {i, j};
                break;
            }
    rep.square_is_scalar = true;
    for (int i = 0; i < n && rep.square_is_scalar; i++)
        for (int j = 0; j < n; j++) {
            Rat s = 0;
            for (int k = 0; k < n; k++) s += phi.mat[i][k] * phi.mat[k][j];
            if (s != (i == j ? d : Rat(0))) {
                rep.square_is_scalar = false;
                if (!rep.offending) rep.offending = {{i, j}};
                break;
            }
        }
    rep.pass = rep.self_adjoint && rep.square_is_scalar;
    return rep;
}

int sign_at_embedding(const QuadFieldElement& e, const Rat& d, bool positive_root) {
    Rat y = positive_root ? e.y : -e.y;
    int sx = e.x == 0 ? 0 : (e.x > 0 ? 1 : -1);
    int sy = y == 0 ? 0 : (y > 0 ? 1 : -1);
    if (sy == 0) return sx;
    if (sx == 0) return sy;
    if (sx == sy) return sx;
    Rat lhs = e.x * e.x, rhs = y * y * d;  // |x| vs |y| sqrt(d)
    if (lhs == rhs) return 0;
    return lhs > rhs ? sx : sy;
}

DiscClassReport disc_class_identities(const Rat& d, const std::vector<QuadFieldElement>& as) {
    if (d == 0) throw Error("d must be nonzero");
    DiscClassReport rep;
    rep.pass = true;
    Rat prod = 1;
    for (const auto& a : as) {
        Rat norm = a.x * a.x - d * a.y * a.y;
        if (norm == 0) throw ZeroValue("norm of a");
        // a+a' = 2x and sqrt(d)(a-a') = 2yd are rational, so the block is
        // ((2x, 2yd); (2yd, 2xd)) with det 4d(x^2 - d y^2)
        Rat det = 2 * a.x * (d * 2 * a.x) - (2 * a.y * d) * (2 * a.y * d);
        if (det != 4 * d * norm) rep.pass = false;
        rep.classes.push_back(squarefree_part(det));
        prod *= det;
    }
    rep.product_class = squarefree_part(prod);
    return rep;
}

TPlusReport t_plus_form_matrix(const Rat& d, const Rat& u, const Rat& v) {
    if (v == 0) throw Error("v must be nonzero");
    if (u * u + v * v != d) throw Error("u^2 + v^2 != d");
    // m^2 = ((u - sqrt d)/v)^2 = (u^2 + d)/v^2 - (2u/v^2) sqrt d
    Rat v2 = v * v;
    QuadFieldElement m2{(u * u + d) / v2, -2 * u / v2};
    TPlusReport rep;
    rep.diag[0] = {1 + m2.x, m2.y};
    rep.diag[1] = {-1 - m2.x, -m2.y};
    rep.diag[2] = rep.diag[1];
    for (int i = 0; i < 3; i++) {
        rep.signs_pos[i] = sign_at_embedding(rep.diag[i], d, true);
        rep.signs_neg[i] = sign_at_embedding(rep.diag[i], d, false);
    }
    rep.nondegenerate = true;
    for (int i = 0; i < 3; i++)
        if (rep.signs_pos[i] == 0 || rep.signs_neg[i] == 0) rep.nondegenerate = false;
    auto pattern = [](const std::array<int, 3>& s) { return s[0] == 1 && s[1] == -1 && s[2] == -1; };
    rep.indefinite = pattern(rep.signs_pos) && pattern(rep.signs_neg);
    return rep;
}

int randomized_rm_search(const Rat& d, int trials) {
    std::mt19937 rng(20240811u);
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
    QuadraticSpace S = t_lattice_space();
    int found = 0;
    for (int t = 0; t < trials; t++) {
        RMEndomorphism phi;
        phi.d = d;
        phi.mat.assign(6, std::vector<Rat>(6, Rat(0)));
        // self-adjoint by construction; only phi^2 = d I is left to chance
        for (int i = 0; i < 6; i++)
            for (int j = i; j < 6; j++) {
                Rat x(num(rng), den(rng));
                phi.mat[i][j] = x;
                phi.mat[j][i] = S.diag[i] * x / S.diag[j];
            }
        if (verify_rm_endomorphism(S, phi, d).pass) found++;
    }
    return found;
}

}  // namespace rmk3
