#include "rmk3/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rmk3/errors.hpp"

namespace rmk3 {

namespace {

using nlohmann::json;

json form_to_json(const QuadForm& f) {
    return json::array({rat_str(f.a), rat_str(f.b), rat_str(f.c)});
}

Rat rat_from_json(const json& v) {
    if (v.is_string()) return parse_rat(v.get<std::string>());
    if (v.is_number_integer()) return Rat(v.get<long long>());
    throw Error("expected a rational as \"num/den\" string or integer");
}

QuadForm form_from_json(const json& v) {
    if (!v.is_array() || v.size() != 3) throw Error("form must be an array of 3 rationals");
    return {rat_from_json(v[0]), rat_from_json(v[1]), rat_from_json(v[2])};
}

}  // namespace

std::string surface_to_json(const Surface& X) {
    json j;
    j["q1"] = form_to_json(X.q1);
    j["q2"] = form_to_json(X.q2);
    j["q3"] = form_to_json(X.q3);
    return j.dump();
}

Surface surface_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(std::string("surface JSON parse: ") + e.what());
    }
    if (!j.is_object() || !j.contains("q1") || !j.contains("q2") || !j.contains("q3"))
        throw Error("surface JSON must contain q1, q2, q3");
    return make_surface(form_from_json(j["q1"]), form_from_json(j["q2"]), form_from_json(j["q3"]));
}

Surface load_surface_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return surface_from_json(ss.str());
}

void save_surface_file(const Surface& X, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << surface_to_json(X) << "\n";
}

std::vector<QuadForm> load_form_list_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::vector<QuadForm> fs;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::stringstream ss(line);
        std::string tok;
        Rat v[3];
        for (int i = 0; i < 3; i++) {
            if (!std::getline(ss, tok, ','))
                throw Error("form CSV line " + std::to_string(lineno) + ": expected a,b,c");
            size_t b = tok.find_first_not_of(" \t\r"), e = tok.find_last_not_of(" \t\r");
            v[i] = parse_rat(tok.substr(b, e - b + 1));
        }
        fs.push_back({v[0], v[1], v[2]});
    }
    return fs;
}

void save_form_list_csv(const std::vector<QuadForm>& fs, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    for (const auto& f : fs)
        out << rat_str(f.a) << "," << rat_str(f.b) << "," << rat_str(f.c) << "\n";
}

std::string hash_hex(uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; i--, h >>= 4) s[i] = digits[h & 0xf];
    return s;
}

}  // namespace rmk3
