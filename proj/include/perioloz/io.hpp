#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "perioloz/asymptotics.hpp"
#include "perioloz/lattice.hpp"
#include "perioloz/weights.hpp"

namespace perioloz {

using json = nlohmann::json;

// {"k": 2, "alphas": [2, 0.5], "q": 0.3 | "r": 1.2, "d": 4}; "k" is optional and checked against alphas.
WeightSpec weight_spec_from_json(const json& j);
json to_json(const WeightSpec& s);

// {"alphas": [...], "V": 3.0 | "inf", "d_mod_k": 0}
LimitSpec limit_spec_from_json(const json& j);
json to_json(const LimitSpec& s);

// {"rows": [[3, 2], [1]]}
PlanePartition partition_from_json(const json& j);
json to_json(const PlanePartition& pp);

std::uint64_t fnv1a(const std::string& bytes);
std::string hex64(std::uint64_t v);

// {"spec_hash", "seed", "version"}; the hash covers the canonical (sorted-key) dump of spec.
json stamp(const json& spec, std::uint64_t seed);

std::string read_text(const std::string& path);
json read_json(const std::string& path);
void write_text(const std::string& path, const std::string& text);

// Shortest round-trip decimal form.
std::string fmt_double(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string str() const;
};

}  // namespace perioloz
