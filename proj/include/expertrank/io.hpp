#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace expertrank {

std::string read_file(const std::string& path);  // throws Error on failure
std::vector<std::string> read_lines(const std::string& path);
void write_file(const std::string& path, std::string_view content);

// Minimal RFC-4180 subset: double-quoted fields, doubled quotes inside.
std::vector<std::string> split_csv_row(const std::string& line);
std::string csv_field(const std::string& value);

// 12 significant digits, the export contract for weights and scores.
std::string format_weight(double v);
std::string format_hexfloat(double v);

// FNV-1a, the run-manifest and cache key hash.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hash_hex(std::uint64_t h);

}  // namespace expertrank
