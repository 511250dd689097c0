// Command-line surface over the library: point counts, batch scans, RM
// sieves, detection, characteristic polynomials, family ledgers, Hodge
// witnesses, survival probabilities. Machine output is JSONL on stdout
// (or --out); human summaries go to stderr. Output is byte-deterministic
// for fixed inputs and worker counts.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rmk3/batchscan.hpp"
#include "rmk3/charpoly.hpp"
#include "rmk3/counter.hpp"
#include "rmk3/detect.hpp"
#include "rmk3/errors.hpp"
#include "rmk3/families.hpp"
#include "rmk3/hodge.hpp"
#include "rmk3/json_io.hpp"

using ojson = nlohmann::ordered_json;
using namespace rmk3;

namespace {

// bad flag combinations or unreadable inputs, distinct from computational
// refusals which exit 3
struct UsageError {
    std::string msg;
};

struct Machine {
    std::ostream* os = &std::cout;
    std::ofstream file;
    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw UsageError{"cannot open output file: " + path};
        os = &file;
    }
    void emit(const ojson& rec) { (*os) << rec.dump() << "\n"; }
};

std::string int_str(const Int& n) { return n.str(); }

ojson int_array(const std::vector<Int>& v) {
    ojson a = ojson::array();
    for (const Int& x : v) a.push_back(int_str(x));
    return a;
}

ojson form_array(const QuadForm& f) {
    return ojson::array({rat_str(f.a), rat_str(f.b), rat_str(f.c)});
}

// three significant digits, printf %.2e style: "3.26e-64"
std::string sci3(const Rat& r) {
    if (r == 0) return "0.00e+00";
    Int num = rat_num(r), den = rat_den(r);
    bool neg = num < 0;
    if (neg) num = -num;
    auto pow10 = [](int k) {
        Int t = 1;
        for (int i = 0; i < k; i++) t *= 10;
        return t;
    };
    // e with 10^e <= num/den < 10^{e+1}
    int e = static_cast<int>(num.str().size()) - static_cast<int>(den.str().size());
    auto cmp = [&](int k) {  // sign of num/den - 10^k
        return k >= 0 ? (num - den * pow10(k)).sign() : (num * pow10(-k) - den).sign();
    };
    while (cmp(e) < 0) e--;
    while (cmp(e + 1) >= 0) e++;
    // m = round(10^{2-e} num/den) in [100, 1000]
    Int sn = num, sd = den;
    if (e <= 2)
        sn *= pow10(2 - e);
    else
        sd *= pow10(e - 2);
    Int m = (2 * sn + sd) / (2 * sd);
    if (m >= 1000) {
        m = 100;
        e++;
    }
    std::string digits = m.str();
    std::string exp = std::to_string(e < 0 ? -e : e);
    if (exp.size() < 2) exp = "0" + exp;
    return (neg ? "-" : "") + digits.substr(0, 1) + "." + digits.substr(1) + "e" +
           (e < 0 ? "-" : "+") + exp;
}

int resolve_workers(int cli_value) {
    if (cli_value > 0) return cli_value;
    if (const char* env = std::getenv("RMK3_WORKERS")) {
        int w = std::atoi(env);
        if (w > 0) return w;
    }
    return 1;
}

Int parse_int_arg(const std::string& s, const std::string& flag) {
    Rat r;
    try {
        r = parse_rat(s);
    } catch (const Error& e) {
        throw UsageError{flag + ": " + e.what()};
    }
    if (rat_den(r) != 1) throw UsageError{flag + " must be an integer"};
    return rat_num(r);
}

Rat parse_rat_arg(const std::string& s, const std::string& flag) {
    try {
        return parse_rat(s);
    } catch (const Error& e) {
        throw UsageError{flag + ": " + e.what()};
    }
}

// one Surface from --surface FILE or --family NAME [--t RAT]; the two
// sources are mutually exclusive
Surface resolve_surface(const std::string& surface_path, const std::string& family,
                        const std::string& t_str, ojson& source) {
    if (!surface_path.empty() && !family.empty())
        throw UsageError{"--surface and --family are mutually exclusive"};
    if (!surface_path.empty()) {
        try {
            Surface X = load_surface_file(surface_path);
            source["surface_file"] = surface_path;
            return X;
        } catch (const Error& e) {
            throw UsageError{e.what()};
        }
    }
    if (family.empty()) throw UsageError{"one of --surface or --family is required"};
    FamilyId id;
    try {
        id = family_from_name(family);
    } catch (const Error& e) {
        throw UsageError{e.what()};
    }
    std::optional<Rat> t;
    if (!t_str.empty() && t_str != "inf") t = parse_rat_arg(t_str, "--t");
    source["family"] = family_name(id);
    if (id != FamilyId::X13) source["t"] = t ? rat_str(*t) : "inf";
    try {
        return make_family(id, t);
    } catch (const Error& e) {
        throw UsageError{e.what()};
    }
}

std::vector<QuadForm> load_forms_arg(const std::string& path, const std::string& flag) {
    if (path.empty()) throw UsageError{flag + " is required"};
    try {
        return load_form_list_csv(path);
    } catch (const Error& e) {
        throw UsageError{e.what()};
    }
}

ojson base_record(const char* command) {
    ojson rec;
    rec["command"] = command;
    return rec;
}

void finish_record(ojson& rec, const Surface* X) {
    if (X) rec["surface"] = hash_hex(surface_hash(*X));
    rec["version"] = toolkit_version;
}

int cmd_count(const Surface& X, const ojson& source, int64_t p, int ext, Machine& out) {
    std::vector<int64_t> counts;
    for (int k = 1; k <= ext; k++) counts.push_back(count_singular(X, p, k));
    ojson rec = base_record("count");
    rec.update(source);
    rec["p"] = p;
    rec["ext"] = ext;
    rec["counts"] = counts;
    finish_record(rec, &X);
    out.emit(rec);
    std::cerr << "count: p=" << p << " ext=" << ext << " ->";
    for (int64_t n : counts) std::cerr << " " << n;
    std::cerr << "\n";
    return 0;
}

int cmd_charpoly(const Surface& X, const ojson& source, int64_t p, Machine& out) {
    TranscendentalCharPoly cp = transcendental_charpoly(X, p);
    ojson rec = base_record("charpoly");
    rec.update(source);
    rec["p"] = p;
    rec["chi_T"] = int_array(cp.chi_T);
    rec["chi_tr"] = int_array(cp.chi_tr);
    rec["eps"] = cp.eps;
    rec["stripped"] = cp.stripped;
    rec["traces"] = int_array({cp.traces[0], cp.traces[1], cp.traces[2]});
    finish_record(rec, &X);
    out.emit(rec);
    std::cerr << "charpoly: p=" << p << " eps=" << (cp.eps > 0 ? "+1" : "-1")
              << " deg chi_tr=" << cp.chi_tr.size() - 1 << "\n";
    return 0;
}

int cmd_detect(const Surface& X, const ojson& source, const std::string& mode,
               const std::string& d_str, int64_t prime_bound, Machine& out) {
    DetectParams params;
    if (prime_bound > 0) {
        params.screen_hi = prime_bound;
        params.inert_bound = prime_bound;
    }
    DetectionReport rep;
    if (mode == "stat") {
        rep = detect_statistical(X, params);
    } else if (mode == "det") {
        if (d_str.empty()) throw UsageError{"--mode det requires --d"};
        rep = detect_deterministic(X, parse_int_arg(d_str, "--d"), params);
    } else {
        throw UsageError{"--mode must be stat or det"};
    }
    ojson rec = base_record("detect");
    rec.update(source);
    rec["mode"] = rep.mode;
    rec["outcome"] = rep.outcome;
    rec["d"] = int_str(rep.d);
    rec["hits"] = rep.hits;
    rec["p0"] = rep.p0;
    ojson wits = ojson::array();
    for (const PrimeWitness& w : rep.witnesses)
        wits.push_back({{"p", w.p}, {"count_mod_p", w.count_mod_p}, {"hit", w.hit}});
    rec["witnesses"] = wits;
    ojson cps = ojson::array();
    for (const CharpolySummary& c : rep.charpolys) {
        ojson e = {{"p", c.p},
                   {"deg", c.deg},
                   {"chi_tr", int_array(c.chi_tr)},
                   {"verdict", c.verdict}};
        if (!c.galois.empty()) e["galois"] = c.galois;
        cps.push_back(e);
    }
    rec["charpolys"] = cps;
    rec["subfields"] = int_array(rep.subfields);
    rec["splits"] = int_array(rep.splits);
    finish_record(rec, &X);
    out.emit(rec);
    std::cerr << "detect " << rep.mode << ": " << rep.outcome;
    if (rep.outcome == "candidate") std::cerr << " d=" << rep.d;
    std::cerr << "\n";
    if (rep.outcome == "candidate") return 0;
    if (rep.outcome == "ambiguous") return 3;
    return 1;
}

int cmd_prob(const std::string& mode, const std::string& d_str, int64_t prime_bound,
             Machine& out) {
    ojson rec = base_record("prob");
    rec["mode"] = mode;
    if (mode == "stat") {
        StatSurvival s = survival_probability_statistical();
        rec["exact_six"] = sci3(s.exact_six);
        rec["tail"] = sci3(s.tail);
        finish_record(rec, nullptr);
        out.emit(rec);
        std::cerr << "prob stat: exact_six=" << sci3(s.exact_six) << " tail=" << sci3(s.tail)
                  << "\n";
        return 0;
    }
    if (mode != "inert") throw UsageError{"--mode must be stat or inert"};
    if (d_str.empty()) throw UsageError{"--mode inert requires --d"};
    Int d = parse_int_arg(d_str, "--d");
    int64_t bound = prime_bound > 0 ? prime_bound : 300;
    Rat pr = survival_probability_inert(d, bound);
    rec["d"] = int_str(d);
    rec["bound"] = bound;
    rec["probability"] = sci3(pr);
    finish_record(rec, nullptr);
    out.emit(rec);
    std::cerr << "prob inert d=" << d << " bound=" << bound << ": " << sci3(pr) << "\n";
    return 0;
}

int cmd_family_emit(const std::string& family, const std::string& t_str, Machine& out) {
    ojson source;
    Surface X = resolve_surface("", family, t_str, source);
    ojson rec;
    rec["q1"] = form_array(X.q1);
    rec["q2"] = form_array(X.q2);
    rec["q3"] = form_array(X.q3);
    rec.update(source);
    finish_record(rec, &X);
    out.emit(rec);
    std::cerr << "family " << source["family"].get<std::string>() << ": surface emitted\n";
    return 0;
}

int cmd_family_congruence(const std::string& family, int64_t prime_bound, Machine& out) {
    if (family.empty()) throw UsageError{"--family is required"};
    FamilyId id;
    try {
        id = family_from_name(family);
    } catch (const Error& e) {
        throw UsageError{e.what()};
    }
    int64_t bound = prime_bound > 0 ? prime_bound : 100;
    CongruenceReport rep = verify_family_congruences(id, bound);
    ojson rec = base_record("family");
    rec["check"] = "congruence";
    rec["family"] = family_name(id);
    rec["prime_bound"] = rep.prime_bound;
    rec["primes_checked"] = rep.primes_checked;
    rec["cells_checked"] = rep.cells_checked;
    ojson fails = ojson::array();
    for (const CongruenceFailure& f : rep.failures) {
        ojson e = {{"p", f.p}, {"count_mod_p", f.count_mod_p}};
        if (f.t_infinity)
            e["t"] = "inf";
        else
            e["t"] = f.t;
        fails.push_back(e);
    }
    rec["failures"] = fails;
    rec["pass"] = rep.pass();
    finish_record(rec, nullptr);
    out.emit(rec);
    std::cerr << "family congruence " << family_name(id) << " p<" << bound << ": "
              << (rep.pass() ? "pass" : "FAIL") << " (" << rep.cells_checked << " cells)\n";
    return rep.pass() ? 0 : 1;
}

int cmd_family_split(int64_t p, int ext, const std::string& t_str, Machine& out) {
    std::optional<int64_t> t;
    if (!t_str.empty() && t_str != "inf") {
        Int ti = parse_int_arg(t_str, "--t");
        t = to_int64(ti);
    }
    SplitFamilyCheck chk = split_family_count_check(p, ext, t);
    ojson rec = base_record("family");
    rec["check"] = "split";
    rec["p"] = p;
    rec["ext"] = ext;
    rec["t"] = t ? ojson(*t) : ojson("inf");
    rec["count"] = chk.count;
    rec["predicted"] = chk.predicted;
    rec["pass"] = chk.pass;
    finish_record(rec, nullptr);
    out.emit(rec);
    std::cerr << "family split q=" << p << "^" << ext << ": count=" << chk.count
              << " predicted=" << chk.predicted << (chk.pass ? " pass" : " FAIL") << "\n";
    return chk.pass ? 0 : 1;
}

int cmd_family_jacobian(int64_t p, const std::string& t_str, Machine& out) {
    if (t_str.empty()) throw UsageError{"--verify jacobian requires --t"};
    int64_t t = to_int64(parse_int_arg(t_str, "--t"));
    FiberLedger led = jacobian_count_check(t, p);
    ojson rec = base_record("family");
    rec["check"] = "jacobian";
    rec["p"] = led.p;
    rec["t"] = led.t;
    rec["smooth_fibers"] = led.smooth_fibers;
    rec["smooth_sum"] = led.smooth_sum;
    rec["c0"] = led.c0_count;
    rec["cinf"] = led.cinf_count;
    rec["fiberwise_ok"] = led.fiberwise_ok;
    rec["sum_ok"] = led.sum_ok;
    rec["split_ok"] = led.split_ok;
    rec["ramified_ok"] = led.ramified_ok;
    ojson mm = ojson::array();
    for (const FiberMismatch& m : led.mismatches)
        mm.push_back({{"l", m.l}, {"curve", m.curve_count}, {"jacobian", m.jacobian_count}});
    rec["mismatches"] = mm;
    rec["pass"] = led.pass;
    finish_record(rec, nullptr);
    out.emit(rec);
    std::cerr << "family jacobian t=" << t << " p=" << p << ": "
              << (led.pass ? "pass" : "FAIL") << "\n";
    return led.pass ? 0 : 1;
}

int cmd_family_fibration(const std::string& t_str, Machine& out) {
    if (t_str.empty()) throw UsageError{"--verify fibration requires --t"};
    Rat t = parse_rat_arg(t_str, "--t");
    FibrationLedger led = verify_fibration_identities(t);
    ojson rec = base_record("family");
    rec["check"] = "fibration";
    rec["t"] = rat_str(led.t);
    ojson checks = ojson::array();
    for (const IdentityCheck& c : led.checks)
        checks.push_back({{"name", c.name}, {"pass", c.pass}});
    rec["checks"] = checks;
    rec["pass"] = led.pass;
    finish_record(rec, nullptr);
    out.emit(rec);
    std::cerr << "family fibration t=" << rat_str(t) << ": " << (led.pass ? "pass" : "FAIL")
              << "\n";
    return led.pass ? 0 : 1;
}

int cmd_hodge(const std::string& d_str, int trials, Machine& out) {
    if (d_str.empty()) throw UsageError{"--d is required"};
    Rat d = parse_rat_arg(d_str, "--d");
    ojson rec = base_record("hodge");
    rec["d"] = rat_str(d);
    auto wit = sum_of_two_squares(d);
    if (!wit) {
        rec["outcome"] = "not-sum-of-two-squares";
        if (trials > 0) {
            rec["search_trials"] = trials;
            rec["search_hits"] = randomized_rm_search(d, trials);
        }
        finish_record(rec, nullptr);
        out.emit(rec);
        std::cerr << "hodge d=" << rat_str(d) << ": not a sum of two squares\n";
        return 1;
    }
    rec["witness"] = ojson::array({rat_str(wit->first), rat_str(wit->second)});
    RMEndomorphism phi = build_rm_endomorphism(d);
    RMVerification ver = verify_rm_endomorphism(t_lattice_space(), phi, d);
    ojson mat = ojson::array();
    for (const auto& row : phi.mat) {
        ojson r = ojson::array();
        for (const Rat& x : row) r.push_back(rat_str(x));
        mat.push_back(r);
    }
    rec["matrix"] = mat;
    rec["self_adjoint"] = ver.self_adjoint;
    rec["square_is_scalar"] = ver.square_is_scalar;
    if (wit->second != 0) {
        TPlusReport tp = t_plus_form_matrix(d, wit->first, wit->second);
        rec["t_plus_nondegenerate"] = tp.nondegenerate;
        rec["t_plus_indefinite"] = tp.indefinite;
    }
    rec["outcome"] = ver.pass ? "verified" : "failed";
    finish_record(rec, nullptr);
    out.emit(rec);
    std::cerr << "hodge d=" << rat_str(d) << ": witness (" << rat_str(wit->first) << ", "
              << rat_str(wit->second) << ") " << (ver.pass ? "verified" : "FAILED") << "\n";
    return ver.pass ? 0 : 1;
}

int cmd_scan(const std::string& q1_path, const std::string& q2_path, const std::string& q3_path,
             int64_t p, int workers, Machine& out) {
    auto q1s = load_forms_arg(q1_path, "--q1");
    auto q2s = load_forms_arg(q2_path, "--q2");
    auto q3s = load_forms_arg(q3_path, "--q3");
    ScanResult res = scan_prime(q1s, q2s, q3s, p, workers);
    int64_t emitted = 0, skipped = 0;
    for (size_t i = 0; i < res.n1; i++)
        for (size_t j = 0; j < res.n2; j++)
            for (size_t k = 0; k < res.n3; k++) {
                int64_t n = res.at(i, j, k);
                ojson rec;
                rec["i1"] = i;
                rec["i2"] = j;
                rec["i3"] = k;
                rec["p"] = p;
                if (n == ScanResult::skipped_cell) {
                    rec["skipped"] = true;
                    skipped++;
                } else {
                    rec["count"] = n;
                }
                Surface X;
                X.q1 = q1s[i];
                X.q2 = q2s[j];
                X.q3 = q3s[k];
                finish_record(rec, &X);
                out.emit(rec);
                emitted++;
            }
    std::cerr << "scan: p=" << p << " cells=" << emitted << " skipped=" << skipped << "\n";
    return 0;
}

// odd primes below the bound that are inert in Q(sqrt d)
std::vector<int64_t> inert_primes_below(const Int& d, int64_t bound) {
    std::vector<int64_t> ps;
    for (int64_t p : primes_below(bound)) {
        if (p == 2 || d % p == 0) continue;
        if (legendre(d, p) == -1) ps.push_back(p);
    }
    return ps;
}

int cmd_sieve(const std::string& q1_path, const std::string& q2_path, const std::string& q3_path,
              const std::string& d_str, const std::string& primes_str, int64_t prime_bound,
              bool disc_square, const std::string& class_d_str, int workers, Machine& out) {
    auto q1s = load_forms_arg(q1_path, "--q1");
    auto q2s = load_forms_arg(q2_path, "--q2");
    auto q3s = load_forms_arg(q3_path, "--q3");
    if (d_str.empty()) throw UsageError{"--d is required"};
    Int d = parse_int_arg(d_str, "--d");
    SieveConfig cfg;
    cfg.workers = workers;
    cfg.require_disc_square = disc_square;
    if (!class_d_str.empty()) cfg.require_class_d = parse_int_arg(class_d_str, "--class-d");
    if (!primes_str.empty()) {
        if (prime_bound > 0) throw UsageError{"--primes and --prime-bound are mutually exclusive"};
        for (size_t pos = 0; pos < primes_str.size();) {
            size_t comma = primes_str.find(',', pos);
            if (comma == std::string::npos) comma = primes_str.size();
            cfg.primes.push_back(
                to_int64(parse_int_arg(primes_str.substr(pos, comma - pos), "--primes")));
            pos = comma + 1;
        }
    } else {
        cfg.primes = inert_primes_below(d, prime_bound > 0 ? prime_bound : 50);
    }
    SieveResult res = rm_sieve(q1s, q2s, q3s, d, cfg);
    for (const Survivor& s : res.survivors) {
        ojson rec;
        rec["q1"] = form_array(q1s[s.i1]);
        rec["q2"] = form_array(q2s[s.i2]);
        rec["q3"] = form_array(q3s[s.i3]);
        ojson counts;
        for (const auto& [p, n] : s.counts) counts[std::to_string(p)] = n;
        rec["counts"] = counts;
        Surface X;
        X.q1 = q1s[s.i1];
        X.q2 = q2s[s.i2];
        X.q3 = q3s[s.i3];
        finish_record(rec, &X);
        out.emit(rec);
    }
    std::cerr << "sieve d=" << d << " primes={";
    for (size_t i = 0; i < cfg.primes.size(); i++)
        std::cerr << (i ? "," : "") << cfg.primes[i];
    std::cerr << "}: tested=" << res.tested << " filtered=" << res.filtered
              << " survivors=" << res.survivors.size() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"degree-2 K3 point counts and real-multiplication detection"};
    app.require_subcommand(1);

    std::string surface_path, family, t_str, d_str, mode, out_path, verify;
    std::string q1_path, q2_path, q3_path, primes_str, class_d_str;
    int64_t p = 0, prime_bound = 0;
    int ext = 1, workers = 0, trials = 0;
    bool disc_square = false;

    auto add_surface_opts = [&](CLI::App* c) {
        c->add_option("--surface", surface_path, "surface JSON file");
        c->add_option("--family", family, "family id: x2, x5, x13");
        c->add_option("--t", t_str, "family parameter (rational, or inf)");
    };
    auto add_out_opt = [&](CLI::App* c) { c->add_option("--out", out_path, "JSONL output file"); };

    CLI::App* c_count = app.add_subcommand("count", "point counts over F_p .. F_{p^ext}");
    add_surface_opts(c_count);
    c_count->add_option("--p", p, "prime")->required();
    c_count->add_option("--ext", ext, "count over F_{p^k} for k = 1..ext")
        ->check(CLI::Range(1, 4));
    add_out_opt(c_count);

    CLI::App* c_charpoly =
        app.add_subcommand("charpoly", "transcendental Frobenius characteristic polynomial");
    add_surface_opts(c_charpoly);
    c_charpoly->add_option("--p", p, "good ordinary prime")->required();
    add_out_opt(c_charpoly);

    CLI::App* c_detect = app.add_subcommand("detect", "real-multiplication detection");
    add_surface_opts(c_detect);
    c_detect->add_option("--mode", mode, "stat or det")->required();
    c_detect->add_option("--d", d_str, "target real-multiplication discriminant class");
    c_detect->add_option("--prime-bound", prime_bound, "screen/verification prime bound");
    add_out_opt(c_detect);

    CLI::App* c_prob = app.add_subcommand("prob", "false-positive survival probabilities");
    c_prob->add_option("--mode", mode, "stat or inert")->required();
    c_prob->add_option("--d", d_str, "radicand for the inert product");
    c_prob->add_option("--prime-bound", prime_bound, "inert prime bound");
    add_out_opt(c_prob);

    CLI::App* c_family = app.add_subcommand("family", "family surfaces and verification ledgers");
    c_family->add_option("--family", family, "family id: x2, x5, x13");
    c_family->add_option("--t", t_str, "family parameter (rational, or inf)");
    c_family->add_option("--verify", verify, "congruence, split, jacobian, or fibration");
    c_family->add_option("--prime-bound", prime_bound, "congruence sweep bound");
    c_family->add_option("--p", p, "prime (split/jacobian checks)");
    c_family->add_option("--ext", ext, "field extension degree (split check)")
        ->check(CLI::Range(1, 4));
    add_out_opt(c_family);

    CLI::App* c_hodge = app.add_subcommand("hodge", "rational RM endomorphism witnesses");
    c_hodge->add_option("--d", d_str, "positive rational d")->required();
    c_hodge->add_option("--search-trials", trials, "randomized nonexistence probe trials");
    add_out_opt(c_hodge);

    CLI::App* c_scan = app.add_subcommand("scan", "counts over a form-list product at one prime");
    c_scan->add_option("--q1", q1_path, "CSV form list for q1")->required();
    c_scan->add_option("--q2", q2_path, "CSV form list for q2")->required();
    c_scan->add_option("--q3", q3_path, "CSV form list for q3")->required();
    c_scan->add_option("--p", p, "prime")->required();
    c_scan->add_option("--workers", workers, "worker threads (env RMK3_WORKERS)");
    add_out_opt(c_scan);

    CLI::App* c_sieve = app.add_subcommand("sieve", "congruence sieve over a form-list product");
    c_sieve->add_option("--q1", q1_path, "CSV form list for q1")->required();
    c_sieve->add_option("--q2", q2_path, "CSV form list for q2")->required();
    c_sieve->add_option("--q3", q3_path, "CSV form list for q3")->required();
    c_sieve->add_option("--d", d_str, "radicand, squarefree > 1")->required();
    c_sieve->add_option("--primes", primes_str, "explicit comma-separated inert primes");
    c_sieve->add_option("--prime-bound", prime_bound, "inert prime bound (default 50)");
    c_sieve->add_flag("--disc-square", disc_square, "require square disc product");
    c_sieve->add_option("--class-d", class_d_str, "require some disc class equal to this");
    c_sieve->add_option("--workers", workers, "worker threads (env RMK3_WORKERS)");
    add_out_opt(c_sieve);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    Machine out;
    const char* cmd = "";
    try {
        out.open(out_path);
        if (app.got_subcommand(c_count)) {
            cmd = "count";
            ojson source;
            Surface X = resolve_surface(surface_path, family, t_str, source);
            return cmd_count(X, source, p, ext, out);
        }
        if (app.got_subcommand(c_charpoly)) {
            cmd = "charpoly";
            ojson source;
            Surface X = resolve_surface(surface_path, family, t_str, source);
            return cmd_charpoly(X, source, p, out);
        }
        if (app.got_subcommand(c_detect)) {
            cmd = "detect";
            ojson source;
            Surface X = resolve_surface(surface_path, family, t_str, source);
            return cmd_detect(X, source, mode, d_str, prime_bound, out);
        }
        if (app.got_subcommand(c_prob)) {
            cmd = "prob";
            return cmd_prob(mode, d_str, prime_bound, out);
        }
        if (app.got_subcommand(c_family)) {
            cmd = "family";
            if (verify.empty()) return cmd_family_emit(family, t_str, out);
            if (verify == "congruence") return cmd_family_congruence(family, prime_bound, out);
            if (verify == "split") return cmd_family_split(p, ext, t_str, out);
            if (verify == "jacobian") return cmd_family_jacobian(p, t_str, out);
            if (verify == "fibration") return cmd_family_fibration(t_str, out);
            throw UsageError{"--verify must be congruence, split, jacobian, or fibration"};
        }
        if (app.got_subcommand(c_hodge)) {
            cmd = "hodge";
            return cmd_hodge(d_str, trials, out);
        }
        if (app.got_subcommand(c_scan)) {
            cmd = "scan";
            return cmd_scan(q1_path, q2_path, q3_path, p, resolve_workers(workers), out);
        }
        if (app.got_subcommand(c_sieve)) {
            cmd = "sieve";
            return cmd_sieve(q1_path, q2_path, q3_path, d_str, primes_str, prime_bound,
                             disc_square, class_d_str, resolve_workers(workers), out);
        }
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.msg << "\n";
        return 2;
    } catch (const Error& e) {
        ojson rec;
        rec["command"] = cmd;
        rec["error"] = e.what();
        rec["version"] = toolkit_version;
        out.emit(rec);
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
