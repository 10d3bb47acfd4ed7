#include <algorithm>
#include <cmath>
#include <Eigen/Dense>

#include "doctest.h"
#include "perioloz/asymptotics.hpp"

using namespace perioloz;

namespace {

LimitSpec k3(double V = 1.0) { return LimitSpec::make({1.5, 2, 1.0 / 3}, V, 1); }

std::vector<cplx> companion_roots(const Poly& p) {
  const int n = static_cast<int>(p.size()) - 1;
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -p[i] / p[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c);
  std::vector<cplx> r(es.eigenvalues().data(), es.eigenvalues().data() + n);
  return r;
}

}  // namespace

TEST_CASE("validation of the limit spec") {
  CHECK_THROWS_AS(LimitSpec::make({2, 0.5}, 0.0, 0), SpecError);
  CHECK_THROWS_AS(LimitSpec::make({2, 0.6}, 1.0, 0), SpecError);
  auto ls = k3();
  CHECK(ls.bd.l == 3);
  CHECK(ls.gamma == doctest::Approx(1.0 / 3));
  CHECK(ls.bd.distinct[0] == doctest::Approx(0.5));
  CHECK(ls.bd.distinct[2] == doctest::Approx(1.5));
  CHECK_THROWS_AS(LimitSpec::middle(0.5), SpecError);
}

TEST_CASE("Sp tends to -V - chi + tau/2 at infinity") {
  auto ls = k3(1.3);
  for (double tau : {-0.4, 0.3}) {
    const cplx v = Sp(ls, tau, 0.2, cplx(1e9, 3e8));
    CHECK(std::abs(v - (-1.3 - 0.2 + tau / 2)) < 1e-7);
  }
}

TEST_CASE("action derivatives against finite differences") {
  auto ls = k3(1.0);
  const double tau = 0.4, chi = -0.3;
  const cplx z = ls.bd.distinct.back() * std::exp(ls.V) + 1.0 + cplx(0, 0.5);
  const double h = 1e-5;
  const cplx dS = (action_S(ls, tau, chi, z + h) - action_S(ls, tau, chi, z - h)) / (2 * h);
  CHECK(std::abs(dS - Sp(ls, tau, chi, z) / z) < 1e-6);
  const cplx dsp = (Sp(ls, tau, chi, z + h) * (z + h) - Sp(ls, tau, chi, z - h) * (z - h)) / (2 * h);
  // d/dz (z * zS') = zS' + z (zS')'; Spp is (zS')'
  const cplx lhs = Sp(ls, tau, chi, z) + z * Spp(ls, tau, chi, z);
  CHECK(std::abs(dsp - lhs) < 1e-6);
}

TEST_CASE("two equal periods reduce to k = 1") {
  auto a = LimitSpec::make({1, 1}, 1.5, 0);
  auto b = LimitSpec::make({1}, 1.5, 0);
  for (cplx z : {cplx(0.3, 0.4), cplx(-2, 1), cplx(5, -0.2)}) {
    CHECK(std::abs(Sp(a, 0.3, -0.1, z) - Sp(b, 0.3, -0.1, z)) < 1e-13);
    CHECK(std::abs(Spp(a, -0.2, 0, z) - Spp(b, -0.2, 0, z)) < 1e-13);
  }
  CHECK(turning_points(b)[0].chi == doctest::Approx(-0.75 - std::log(1 - std::exp(-1.5))).epsilon(1e-14));
}

TEST_CASE("critical points: large chi is frozen, liquid points carry one pair") {
  auto ls = k3();
  CHECK(critical_points(ls, 0.2, 5.0).n_complex_pairs == 0);
  CHECK(critical_points(ls, 0.2, -8.0).n_complex_pairs == 0);
  auto pp = critical_points(ls, 0.5, -0.3);
  CHECK(pp.n_complex_pairs == 1);
  CHECK(liquid_critical_point(ls, 0.5, -0.3).imag() > 0);
  CHECK_THROWS_AS(liquid_critical_point(ls, 0.2, 5.0), DomainError);
  CHECK_THROWS_AS(critical_points(ls, 1.0, 0.0), DomainError);
  for (cplx z : pp.roots) CHECK(std::abs(Sp(ls, 0.5, -0.3, z)) < 1e-8);
}

TEST_CASE("Aberth roots agree with companion-matrix eigenvalues") {
  auto ls = LimitSpec::make({2, 0.5}, 2.0, 0);
  for (double chi : {-1.0, -0.3, 0.4}) {
    Poly p = critical_polynomial(ls, 0.7, chi);
    CHECK(p.size() == 5);
    auto a = aberth_roots(p);
    auto e = companion_roots(p);
    for (cplx r : a) {
      double best = 1e300;
      for (cplx s : e) best = std::min(best, std::abs(r - s));
      CHECK(best < 1e-8 * std::max(1.0, std::abs(r)));
    }
  }
}

TEST_CASE("turning points") {
  auto ls = k3();
  auto tps = turning_points(ls);
  REQUIRE(tps.size() == 3);
  for (int j = 0; j < 3; ++j) {
    CHECK(tps[j].c < 0);
    CHECK(tps[j].z == doctest::Approx(ls.bd.distinct[j] * std::exp(1.0)));
    if (j > 0) CHECK(tps[j].chi < tps[j - 1].chi);
  }
  CHECK_THROWS_AS(turning_points(LimitSpec::make({1}, std::numeric_limits<double>::infinity(), 0)), DomainError);
}

TEST_CASE("edge double roots: midpoint converges to the turning height, error O(eps)") {
  auto ls = k3();
  auto tps = turning_points(ls);
  for (int j = 1; j <= 3; ++j) {
    const double eps = 1e-8;
    const double mid = 0.5 * (edge_double_root(ls, j, 1, eps).chi + edge_double_root(ls, j, -1, eps).chi);
    CHECK(std::abs(mid - tps[j - 1].chi) < 1e-6);
    double prev = 0;
    for (double e : {2e-3, 1e-3, 5e-4}) {
      auto ex = chi_edge_expansion(ls, j, e);
      auto up = edge_double_root(ls, j, 1, e), dn = edge_double_root(ls, j, -1, e);
      const double dev = std::max(std::abs(std::min(up.chi, dn.chi) - ex.first),
                                  std::abs(std::max(up.chi, dn.chi) - ex.second));
      CHECK(dev / e < 3.0);
      if (prev > 0) CHECK(dev < 0.75 * prev);
      prev = dev;
    }
  }
  CHECK(epsilon_cap(ls) == doctest::Approx(0.1 * std::log(1.5)));
}

TEST_CASE("k = 2 frozen boundary equals the numerical double roots") {
  const double alpha = 9;
  auto ls = LimitSpec::middle(alpha);
  for (double tau : {-1.0, -0.5, 0.25, 1.0}) {
    auto fb = frozen_boundary_k2(alpha, tau);
    CHECK(double_root(ls, tau, fb.z_plus * 1.05).chi == doctest::Approx(fb.chi_plus).epsilon(1e-10));
    CHECK(double_root(ls, tau, fb.z_minus * 1.05).chi == doctest::Approx(fb.chi_minus).epsilon(1e-10));
  }
  CHECK(std::isinf(frozen_boundary_k2(alpha, 0).chi_plus));
  CHECK_THROWS_AS(frozen_boundary_k2(1.0, 0.3), DomainError);
  // slope of chi_- at tau = 0 has magnitude (alpha - 1) / (4 (alpha + 1))
  const double h = 1e-5;
  const double slope = (frozen_boundary_k2(alpha, h).chi_minus - frozen_boundary_k2(alpha, 0).chi_minus) / h;
  CHECK(std::abs(slope) == doctest::Approx((alpha - 1) / (4 * (alpha + 1))).epsilon(1e-4));
}

TEST_CASE("infinite V matches large V") {
  auto a = LimitSpec::make({2, 0.5}, std::numeric_limits<double>::infinity(), 0);
  auto b = LimitSpec::make({2, 0.5}, 40.0, 0);
  for (cplx z : {cplx(0.5, 0.7), cplx(-1, 0.2), cplx(3, 2)}) {
    CHECK(std::abs(Sp(a, 0.4, -0.2, z) - Sp(b, 0.4, -0.2, z)) < 1e-12);
  }
  CHECK(std::abs(liquid_critical_point(a, 0.3, 0.1) - liquid_critical_point(b, 0.3, 0.1)) < 1e-6);
}

TEST_CASE("serial and parallel phase grids agree") {
  auto ls = k3();
  std::vector<double> taus{-0.5, 0.0, 0.3, 0.6, 0.9}, chis{-2, -1, -0.5, -0.2, 0.5, 1};
  auto s = phase_grid(ls, taus, chis, Exec::Serial);
  auto p = phase_grid(ls, taus, chis, Exec::Parallel);
  REQUIRE(s.size() == p.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s[i].roots == p[i].roots);
    CHECK(s[i].n_complex_pairs <= 1);
  }
}
