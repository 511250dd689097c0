#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "rmk3/surface.hpp"

namespace rmk3 {

inline constexpr const char* toolkit_version = "0.1.0";

// {"q1":["a","b","c"],"q2":[...],"q3":[...]}, rationals as "num/den" strings
// (plain "num" when the denominator is 1); single canonical line
std::string surface_to_json(const Surface& X);
Surface surface_from_json(const std::string& text);

Surface load_surface_file(const std::string& path);
void save_surface_file(const Surface& X, const std::string& path);

// one form per row: a,b,c as "num/den" tokens; blank lines ignored
std::vector<QuadForm> load_form_list_csv(const std::string& path);
void save_form_list_csv(const std::vector<QuadForm>& fs, const std::string& path);

// fixed-width lowercase hex of surface_hash, for JSONL records
std::string hash_hex(uint64_t h);

}  // namespace rmk3
