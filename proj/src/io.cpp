#include "perioloz/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace perioloz {

namespace {

std::vector<double> read_alphas(const json& j) {
  if (!j.contains("alphas") || !j["alphas"].is_array()) throw SpecError("spec: missing \"alphas\" array");
  auto a = j["alphas"].get<std::vector<double>>();
  if (j.contains("k") && j["k"].get<int>() != static_cast<int>(a.size()))
    throw SpecError("invariant violated: k must equal the number of alphas");
  return a;
}

}  // namespace

WeightSpec weight_spec_from_json(const json& j) {
  auto a = read_alphas(j);
  if (!j.contains("d")) throw SpecError("spec: missing \"d\"");
  const int d = j["d"].get<int>();
  if (j.contains("q") == j.contains("r")) throw SpecError("spec: give exactly one of \"q\" and \"r\"");
  if (j.contains("q")) return WeightSpec::from_q(a, j["q"].get<double>(), d);
  return WeightSpec::make(a, j["r"].get<double>(), d);
}

json to_json(const WeightSpec& s) { return json{{"k", s.k}, {"alphas", s.alphas}, {"r", s.r}, {"d", s.d}}; }

LimitSpec limit_spec_from_json(const json& j) {
  auto a = read_alphas(j);
  if (!j.contains("V")) throw SpecError("spec: missing \"V\"");
  double V;
  if (j["V"].is_string()) {
    if (j["V"].get<std::string>() != "inf") throw SpecError("spec: \"V\" must be a number or \"inf\"");
    V = std::numeric_limits<double>::infinity();
  } else {
    V = j["V"].get<double>();
  }
  return LimitSpec::make(a, V, j.value("d_mod_k", 0));
}

json to_json(const LimitSpec& s) {
  json j{{"k", s.k}, {"alphas", s.alphas}, {"d_mod_k", s.d_mod_k}};
  if (s.infinite_V())
    j["V"] = "inf";
  else
    j["V"] = s.V;
  return j;
}

PlanePartition partition_from_json(const json& j) {
  if (!j.contains("rows")) throw DomainError("partition: missing \"rows\"");
  return PlanePartition::from_rows(j["rows"].get<std::vector<std::vector<int>>>());
}

json to_json(const PlanePartition& pp) { return json{{"rows", pp.rows()}}; }

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json stamp(const json& spec, std::uint64_t seed) {
  return json{{"spec_hash", hex64(fnv1a(spec.dump()))}, {"seed", seed}, {"version", version_string()}};
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw SpecError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string CsvTable::str() const {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

}  // namespace perioloz
