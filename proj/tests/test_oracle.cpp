#include <cmath>
#include <map>

#include "doctest.h"
#include "perioloz/common.hpp"
#include "perioloz/oracle.hpp"

using namespace perioloz;

TEST_CASE("1x1x1 box, homogeneous") {
  auto s = WeightSpec::from_q({1}, 0.4, 1);
  std::map<PlanePartition, double> seen;
  enumerate(s, TruncationBox{1, 1, 1}, [&](const PlanePartition& pp, double w) { seen[pp] = w; });
  REQUIRE(seen.size() == 2);
  CHECK(seen[PlanePartition{}] == 1.0);
  CHECK(seen[PlanePartition::from_rows({{1}})] == doctest::Approx(0.4));
}

TEST_CASE("corner-modified weight of a 1x2 row") {
  auto s = WeightSpec::from_q({2, 0.5}, 0.3, 2);
  CHECK(weight_of(s, PlanePartition::from_rows({{1, 1}})) == doctest::Approx(0.3 * 0.3 * 0.5).epsilon(1e-14));
  double w = -1;
  enumerate(s, TruncationBox{1, 2, 1}, [&](const PlanePartition& pp, double v) {
    if (pp == PlanePartition::from_rows({{1, 1}})) w = v;
  });
  CHECK(w == doctest::Approx(0.045).epsilon(1e-14));
}

TEST_CASE("enumeration visits each box partition once and matches the transfer matrix") {
  auto s = WeightSpec::from_q({2, 0.5}, 0.3, 3);
  TruncationBox box{3, 3, 3};
  std::map<PlanePartition, int> count;
  double z = 0;
  enumerate(s, box, [&](const PlanePartition& pp, double w) {
    ++count[pp];
    z += w;
    CHECK(w == doctest::Approx(weight_of(s, pp)).epsilon(1e-13));
  });
  for (const auto& kv : count) CHECK(kv.second == 1);
  CHECK(partition_function(s, box).Z == doctest::Approx(z).epsilon(1e-13));
}

TEST_CASE("budget is enforced") {
  auto s = WeightSpec::from_q({1}, 0.5, 3);
  CHECK_THROWS_AS(enumerate(s, TruncationBox{4, 3, 6}, [](const PlanePartition&, double) {}, 100), BudgetError);
}

TEST_CASE("box partition function approaches the product formula within the tail bound") {
  auto s = WeightSpec::from_q({2, 0.5}, 0.3, 4);
  const double zp = partition_function_product(s);
  double prev_tail = 1e300;
  for (auto box : {TruncationBox{6, 4, 8}, TruncationBox{8, 4, 12}, TruncationBox{12, 4, 16}}) {
    auto r = partition_function(s, box);
    CHECK(r.Z <= zp);
    CHECK((zp - r.Z) / zp <= r.tail_bound);
    CHECK(r.tail_bound < prev_tail);
    prev_tail = r.tail_bound;
  }
  CHECK(tail_bound(s, TruncationBox{8, 4, 14}) < tail_bound(s, TruncationBox{8, 4, 12}));
  CHECK(tail_bound(s, TruncationBox{9, 4, 12}) < tail_bound(s, TruncationBox{8, 4, 12}));
}

TEST_CASE("exact correlations: floor, sky, permutation, monotonicity") {
  auto s = WeightSpec::from_q({2, 0.5}, 0.3, 4);
  TruncationBox box{8, 4, 12};
  const double tail = tail_bound(s, box);
  CHECK(exact_correlation(s, box, {LatticePoint::from_h(0, -12.5)}) == doctest::Approx(1.0).epsilon(tail));
  CHECK(exact_correlation(s, box, {LatticePoint::from_h(0, 12.5)}) == 0.0);
  auto a = LatticePoint::from_h(0, 0.5), b = LatticePoint::from_h(1, 0), c = LatticePoint::from_h(-1, -1);
  const double abc = exact_correlation(s, box, {a, b, c});
  CHECK(exact_correlation(s, box, {c, a, b}) == doctest::Approx(abc).epsilon(1e-13));
  CHECK(exact_correlation(s, box, {a, b}) >= abc);
  CHECK(exact_correlation(s, box, {a}) >= exact_correlation(s, box, {a, b}));
}

TEST_CASE("transfer correlations agree with filtered enumeration") {
  auto s = WeightSpec::from_q({2, 0.5}, 0.25, 3);
  TruncationBox box{3, 3, 4};
  std::vector<LatticePoint> pts{LatticePoint::from_h(0, 0.5), LatticePoint::from_h(1, -1)};
  double z = 0, hit = 0;
  enumerate(s, box, [&](const PlanePartition& pp, double w) {
    z += w;
    bool all = true;
    for (const auto& p : pts) all = all && occupied(slice(pp, p.t).parts, p.t, p.h2);
    if (all) hit += w;
  });
  CHECK(exact_correlation(s, box, pts) == doctest::Approx(hit / z).epsilon(1e-12));
}
