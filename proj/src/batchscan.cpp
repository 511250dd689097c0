#include "rmk3/batchscan.hpp"

#include <algorithm>
#include <thread>

#include "rmk3/errors.hpp"
#include "rmk3/ffield.hpp"

namespace rmk3 {

namespace {

// chi(q3(1,u)) for u = 0..p-1 (row k at offset k*p) and chi(q3(0,1))
struct Q3Tables {
    std::vector<int8_t> rows;
    std::vector<int8_t> at01;
};

Q3Tables build_q3_tables(const ReducedList& q3s, const std::vector<int8_t>& chi, int64_t p) {
    size_t n3 = q3s.forms.size();
    Q3Tables t;
    t.rows.assign(n3 * p, 0);
    t.at01.assign(n3, 0);
    for (size_t k = 0; k < n3; k++) {
        if (!q3s.ok[k]) continue;
        const FormModP& f = q3s.forms[k];
        int8_t* row = &t.rows[k * p];
        for (int64_t u = 0; u < p; u++) row[u] = chi[(f.a + f.b * u + f.c * (u * u % p)) % p];
        t.at01[k] = chi[f.c];
    }
    return t;
}

// lambda_{1,u} = sum_t chi(q1(u,t) q2(1,t)) and lambda_{0,1} = sum_t chi(q1(1,t) q2(0,t))
void build_lambda(const FormModP& f1, const FormModP& f2, const std::vector<int8_t>& chi,
                  int64_t p, std::vector<int16_t>& lam, int32_t& lam01) {
    lam.assign(p, 0);
    std::vector<int64_t> g2(p), h2(p);
    for (int64_t t = 0; t < p; t++) {
        int64_t t2 = t * t % p;
        g2[t] = (f2.a + f2.b * t + f2.c * t2) % p;
        h2[t] = f2.c * t2 % p;
    }
    for (int64_t u = 0; u < p; u++) {
        int64_t au = f1.a * u % p * u % p, bu = f1.b * u % p;
        int32_t s = 0;
        for (int64_t t = 0; t < p; t++) {
            int64_t v1 = (au + bu * t + f1.c * (t * t % p)) % p;
            s += chi[v1 * g2[t] % p];
        }
        lam[u] = (int16_t)s;
    }
    lam01 = 0;
    for (int64_t t = 0; t < p; t++) {
        int64_t v1 = (f1.a + f1.b * t + f1.c * (t * t % p)) % p;
        lam01 += chi[v1 * h2[t] % p];
    }
}

int64_t cell_count(int64_t p, const int8_t* row3, int8_t at01, const std::vector<int16_t>& lam,
                   int32_t lam01) {
    int32_t dot = 0;
    for (int64_t u = 0; u < p; u++) dot += (int32_t)row3[u] * lam[u];
    return p * p + p + 1 + (int64_t)at01 * lam01 + dot;
}

void validate_scan_prime(int64_t p) {
    if (p < 3 || p > (int64_t)1 << 21 || !is_prime_u64((uint64_t)p))
        throw BadPrime("scan prime out of range");
}

}  // namespace

ReducedList reduce_form_list(const std::vector<QuadForm>& fs, int64_t p) {
    ReducedList r;
    r.forms.resize(fs.size());
    r.ok.assign(fs.size(), 0);
    for (size_t i = 0; i < fs.size(); i++) {
        try {
            r.forms[i] = reduce_form(fs[i], p);
            r.ok[i] = 1;
        } catch (const BadDenominator&) {
            r.skipped.push_back((int)i);
        }
    }
    return r;
}

ScanResult scan_prime(const std::vector<QuadForm>& q1s, const std::vector<QuadForm>& q2s,
                      const std::vector<QuadForm>& q3s, int64_t p, int workers) {
    validate_scan_prime(p);
    auto chi = build_character_table(p);
    ReducedList r1 = reduce_form_list(q1s, p), r2 = reduce_form_list(q2s, p),
                r3 = reduce_form_list(q3s, p);
    Q3Tables t3 = build_q3_tables(r3, chi, p);

    ScanResult res;
    res.p = p;
    res.n1 = q1s.size();
    res.n2 = q2s.size();
    res.n3 = q3s.size();
    res.skipped_q1 = r1.skipped;
    res.skipped_q2 = r2.skipped;
    res.skipped_q3 = r3.skipped;
    res.counts.assign(res.n1 * res.n2 * res.n3, ScanResult::skipped_cell);

    size_t pairs = res.n1 * res.n2;
    auto run = [&](size_t lo, size_t hi) {
        std::vector<int16_t> lam;
        for (size_t m = lo; m < hi; m++) {
            size_t i = m / res.n2, j = m % res.n2;
            if (!r1.ok[i] || !r2.ok[j]) continue;
            int32_t lam01;
            build_lambda(r1.forms[i], r2.forms[j], chi, p, lam, lam01);
            int64_t* out = &res.counts[m * res.n3];
            for (size_t k = 0; k < res.n3; k++) {
                if (!r3.ok[k]) continue;
                out[k] = cell_count(p, &t3.rows[k * p], t3.at01[k], lam, lam01);
            }
        }
    };
    if (workers <= 1 || pairs <= 1) {
        run(0, pairs);
    } else {
        size_t nw = std::min<size_t>(workers, pairs);
        std::vector<std::thread> ts;
        for (size_t w = 0; w < nw; w++)
            ts.emplace_back(run, pairs * w / nw, pairs * (w + 1) / nw);
        for (auto& t : ts) t.join();
    }
    return res;
}

SieveResult rm_sieve(const std::vector<QuadForm>& q1s, const std::vector<QuadForm>& q2s,
                     const std::vector<QuadForm>& q3s, const Int& d, const SieveConfig& cfg) {
    if (d <= 1 || squarefree_part(d) != d) throw Error("d must be squarefree > 1");
    for (size_t i = 0; i < cfg.primes.size(); i++) {
        int64_t p = cfg.primes[i];
        if (p < 3 || !is_prime_u64((uint64_t)p)) throw BadPrime("sieve primes must be odd primes");
        if (i && cfg.primes[i - 1] >= p) throw Error("sieve primes must be ascending");
        if (!is_inert(p, d)) throw Error("sieve prime not inert: " + std::to_string(p));
    }

    SieveResult res;
    size_t n1 = q1s.size(), n2 = q2s.size(), n3 = q3s.size();

    // disc square classes, 0 marking a degenerate form
    auto classes = [](const std::vector<QuadForm>& fs) {
        std::vector<Int> c(fs.size());
        for (size_t i = 0; i < fs.size(); i++) {
            Rat disc = fs[i].disc();
            c[i] = disc == 0 ? Int(0) : squarefree_part(disc);
        }
        return c;
    };
    std::vector<Int> d1 = classes(q1s), d2 = classes(q2s), d3 = classes(q3s);
    auto filters_pass = [&](size_t i, size_t j, size_t k) {
        if (!cfg.require_disc_square && !cfg.require_class_d) return true;
        if (d1[i] == 0 || d2[j] == 0 || d3[k] == 0) return false;
        if (cfg.require_disc_square) {
            // squarefree parts compose via the gcd trick: sf(ab) = ab/gcd(a,b)^2
            Int g12 = gcd(d1[i], d2[j]);
            Int s12 = d1[i] * d2[j] / (g12 * g12);
            Int g = gcd(s12, d3[k]);
            if (s12 * d3[k] / (g * g) != 1) return false;
        }
        if (cfg.require_class_d && d1[i] != *cfg.require_class_d && d2[j] != *cfg.require_class_d &&
            d3[k] != *cfg.require_class_d)
            return false;
        return true;
    };

    struct Cell {
        int i1, i2, i3;
        std::vector<std::pair<int64_t, int64_t>> counts;
    };
    std::vector<Cell> alive;
    bool first = true;
    res.eliminated_at.assign(cfg.primes.size(), 0);

    for (size_t pi = 0; pi < cfg.primes.size(); pi++) {
        int64_t p = cfg.primes[pi];
        validate_scan_prime(p);
        auto chi = build_character_table(p);
        ReducedList r1 = reduce_form_list(q1s, p), r2 = reduce_form_list(q2s, p),
                    r3 = reduce_form_list(q3s, p);
        Q3Tables t3 = build_q3_tables(r3, chi, p);
        std::vector<Cell> next;
        std::vector<int16_t> lam;
        int32_t lam01 = 0;

        if (first) {
            for (size_t i = 0; i < n1; i++)
                for (size_t j = 0; j < n2; j++) {
                    bool have_lam = false;
                    for (size_t k = 0; k < n3; k++) {
                        if (!filters_pass(i, j, k)) {
                            res.filtered++;
                            continue;
                        }
                        res.tested++;
                        Cell c{(int)i, (int)j, (int)k, {}};
                        if (r1.ok[i] && r2.ok[j] && r3.ok[k]) {
                            if (!have_lam) {
                                build_lambda(r1.forms[i], r2.forms[j], chi, p, lam, lam01);
                                have_lam = true;
                            }
                            int64_t n = cell_count(p, &t3.rows[k * p], t3.at01[k], lam, lam01);
                            if (n % p != 1) {
                                res.eliminated_at[pi]++;
                                continue;
                            }
                            c.counts.push_back({p, n});
                        }
                        next.push_back(std::move(c));
                    }
                }
            first = false;
        } else {
            int last_i = -1, last_j = -1;
            for (auto& c : alive) {
                if (!r1.ok[c.i1] || !r2.ok[c.i2] || !r3.ok[c.i3]) {
                    next.push_back(std::move(c));  // untestable at p, keep
                    continue;
                }
                if (c.i1 != last_i || c.i2 != last_j) {
                    build_lambda(r1.forms[c.i1], r2.forms[c.i2], chi, p, lam, lam01);
                    last_i = c.i1, last_j = c.i2;
                }
                int64_t n = cell_count(p, &t3.rows[c.i3 * p], t3.at01[c.i3], lam, lam01);
                if (n % p != 1) {
                    res.eliminated_at[pi]++;
                    continue;
                }
                c.counts.push_back({p, n});
                next.push_back(std::move(c));
            }
        }
        alive = std::move(next);
    }
    if (first) {
        // no primes listed: every filtered-in cell survives untested
        for (size_t i = 0; i < n1; i++)
            for (size_t j = 0; j < n2; j++)
                for (size_t k = 0; k < n3; k++) {
                    if (!filters_pass(i, j, k)) {
                        res.filtered++;
                        continue;
                    }
                    res.tested++;
                    alive.push_back({(int)i, (int)j, (int)k, {}});
                }
    }
    for (auto& c : alive) res.survivors.push_back({c.i1, c.i2, c.i3, std::move(c.counts)});
    return res;
}

}  // namespace rmk3
