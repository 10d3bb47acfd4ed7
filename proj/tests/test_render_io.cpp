#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "cli_util.hpp"
#include "doctest.h"
#include "perioloz/io.hpp"
#include "perioloz/render.hpp"

using namespace perioloz;

namespace {

std::string golden(const std::string& name) { return read_text(std::string(PERIOLOZ_GOLDEN_DIR) + "/" + name); }

// Minimal XML check: balanced element tags and a single root.
bool well_formed(const std::string& s) {
  std::vector<std::string> stack;
  int roots = 0;
  std::size_t i = 0;
  while ((i = s.find('<', i)) != std::string::npos) {
    const std::size_t j = s.find('>', i);
    if (j == std::string::npos) return false;
    const std::string tag = s.substr(i + 1, j - i - 1);
    i = j + 1;
    if (tag.empty()) return false;
    if (tag[0] == '?' || tag[0] == '!') continue;
    if (tag[0] == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
      continue;
    }
    const std::string name = tag.substr(0, tag.find_first_of(" /"));
    if (stack.empty()) ++roots;
    if (tag.back() != '/') stack.push_back(name);
  }
  return stack.empty() && roots == 1;
}

std::set<std::string> rhombus_keys(const std::vector<Rhombus>& rs) {
  std::set<std::string> out;
  for (const auto& r : rs) {
    std::ostringstream os;
    os << r.kind;
    for (const auto& p : r.pts) os << ' ' << std::lround(p[0] * 1000) << ',' << std::lround(p[1] * 1000);
    out.insert(os.str());
  }
  return out;
}

}  // namespace

TEST_CASE("rhombus count is AB + BC + CA") {
  const RenderBox box{4, 3, 5};
  CHECK(surface_rhombi(PlanePartition{}, box).size() == 47);
  auto pp = PlanePartition::from_rows({{5, 3, 1}, {2, 2}, {1}});
  CHECK(surface_rhombi(pp, box).size() == 47);
  CHECK(static_cast<long>(surface_rhombi(pp, box).size()) == box.tiles());
}

TEST_CASE("one box changes exactly three rhombi") {
  const RenderBox box{3, 3, 3};
  auto a = rhombus_keys(surface_rhombi(PlanePartition{}, box));
  auto b = rhombus_keys(surface_rhombi(PlanePartition::from_rows({{1}}), box));
  int only_b = 0;
  for (const auto& k : b) only_b += !a.count(k);
  CHECK(only_b == 3);
  CHECK(a.size() == b.size());
}

TEST_CASE("svg output matches the golden files") {
  const RenderBox box{3, 3, 3};
  CHECK(render_tiling(PlanePartition{}, box) == golden("empty_3x3x3.svg"));
  CHECK(render_tiling(PlanePartition::from_rows({{1}}), box) == golden("one_box_3x3x3.svg"));
}

TEST_CASE("svg is well formed, including overlays") {
  auto pp = PlanePartition::from_rows({{3, 2}, {1}});
  Overlays ov;
  ov.r = 0.1;
  add_turning_overlay(ov, LimitSpec::make({1.5, 2, 1.0 / 3}, 1.0, 1));
  add_k2_boundary_overlay(ov, 4, {-0.5, 0, 0.5});
  add_facet_band_overlay(ov, LimitSpec::make({1.5, 2, 1.0 / 3}, 1.0, 1), 0.1, 0.01);
  ov.points.push_back({0, 0, "a<b & \"c\""});
  const std::string svg = render_tiling(pp, RenderBox{4, 4, 4}, ov);
  CHECK(well_formed(svg));
  CHECK(svg.find("version=\"1.1\"") != std::string::npos);
  CHECK(svg.find("a&lt;b &amp; &quot;c&quot;") != std::string::npos);
  CHECK(ov.bands.size() == 2);
  CHECK(ov.curves[0].pts.size() == 2);
}

TEST_CASE("render refuses oversized or ill-fitting boxes") {
  CHECK_THROWS_AS(render_tiling(PlanePartition{}, RenderBox{1000, 1000, 1000}), DomainError);
  CHECK_THROWS_AS(render_tiling(PlanePartition::from_rows({{4}}), RenderBox{3, 3, 3}), DomainError);
  CHECK_THROWS_AS(render_tiling(PlanePartition::from_rows({{1, 1, 1, 1}}), RenderBox{3, 3, 3}), DomainError);
}

TEST_CASE("json round trips") {
  auto s = WeightSpec::make({2, 0.5}, 1.2, 4);
  auto s2 = weight_spec_from_json(to_json(s));
  CHECK(s2.alphas == s.alphas);
  CHECK(s2.r == s.r);
  CHECK(s2.d == s.d);
  auto q = weight_spec_from_json(json::parse(R"({"k": 2, "alphas": [2, 0.5], "q": 0.3, "d": 4})"));
  CHECK(q.q() == doctest::Approx(0.3).epsilon(1e-15));
  CHECK_THROWS_AS(weight_spec_from_json(json::parse(R"({"alphas": [2, 0.5], "q": 0.3, "r": 1, "d": 4})")), SpecError);
  CHECK_THROWS_AS(weight_spec_from_json(json::parse(R"({"k": 3, "alphas": [2, 0.5], "q": 0.3, "d": 4})")), SpecError);

  auto ls = LimitSpec::make({1.5, 2, 1.0 / 3}, 1.0, 1);
  auto ls2 = limit_spec_from_json(to_json(ls));
  CHECK(ls2.alphas == ls.alphas);
  CHECK(ls2.V == ls.V);
  CHECK(ls2.d_mod_k == 1);
  CHECK(limit_spec_from_json(json::parse(R"({"alphas": [1], "V": "inf"})")).infinite_V());

  auto pp = PlanePartition::from_rows({{3, 2, 2}, {1}});
  CHECK(partition_from_json(to_json(pp)) == pp);
  CHECK_THROWS_AS(partition_from_json(json::parse(R"({"rows": [[1, 2]]})")), DomainError);
}

TEST_CASE("stamps and number formatting") {
  json a = json::parse(R"({"d": 4, "alphas": [2, 0.5], "q": 0.3})");
  json b = json::parse(R"({"q": 0.3, "alphas": [2, 0.5], "d": 4})");
  CHECK(stamp(a, 1)["spec_hash"] == stamp(b, 1)["spec_hash"]);
  CHECK(stamp(a, 1)["spec_hash"] != stamp(json::parse(R"({"d": 5, "alphas": [2, 0.5], "q": 0.3})"), 1)["spec_hash"]);
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(hex64(255) == "00000000000000ff");
  CHECK(fmt_double(0.1) == "0.1");
  CHECK(std::stod(fmt_double(1.0 / 3)) == 1.0 / 3);
  CsvTable t{{"a", "b"}, {{"1", "2"}}};
  CHECK(t.str() == "a,b\n1,2\n");
}

TEST_CASE("cli: validate names the violated invariant") {
  auto dir = testcli::scratch_dir("validate");
  write_text((dir / "bad.json").string(), R"({"alphas": [2, 0.6], "q": 0.3, "d": 4})");
  write_text((dir / "good.json").string(), R"({"alphas": [2, 0.5], "q": 0.3, "d": 4})");
  auto bad = testcli::run("validate --spec " + (dir / "bad.json").string());
  CHECK(bad.code == 2);
  CHECK(bad.out.find("product of alphas") != std::string::npos);
  CHECK(testcli::run("validate --spec " + (dir / "good.json").string()).code == 0);
  CHECK(testcli::run("bogus").code != 0);
}

TEST_CASE("cli: correlate is byte-identical across runs") {
  auto dir = testcli::scratch_dir("correlate");
  write_text((dir / "spec.json").string(), R"({"alphas": [2, 0.5], "q": 0.3, "d": 4})");
  write_text((dir / "pts.json").string(), "[[0, 0.5], [1, 0], [0, -0.5]]");
  const std::string args = "correlate --spec " + (dir / "spec.json").string() + " --points " + (dir / "pts.json").string();
  auto a = testcli::run(args), b = testcli::run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("points,rho,err_est") != std::string::npos);
  write_text((dir / "odd.json").string(), "[[1, 0.5]]");
  CHECK(testcli::run("correlate --spec " + (dir / "spec.json").string() + " --points " + (dir / "odd.json").string()).code == 3);
}

TEST_CASE("cli: sample then render is deterministic") {
  auto dir = testcli::scratch_dir("render");
  write_text((dir / "spec.json").string(), R"({"alphas": [2, 0.5], "q": 0.5, "d": 4})");
  for (const char* sub : {"a", "b"}) {
    auto s = testcli::run("sample --spec " + (dir / "spec.json").string() + " --seed 9 -n 3 --out " + (dir / sub).string());
    REQUIRE(s.code == 0);
    auto r = testcli::run("render --partition " + (dir / sub / "samples.json").string() + " --seed 9 --out " +
                          (dir / sub).string());
    REQUIRE(r.code == 0);
  }
  CHECK(read_text((dir / "a" / "samples.json").string()) == read_text((dir / "b" / "samples.json").string()));
  const std::string svg = read_text((dir / "a" / "render.svg").string());
  CHECK(svg == read_text((dir / "b" / "render.svg").string()));
  CHECK(well_formed(svg));
  CHECK(svg.find("spec_hash=") != std::string::npos);
}
