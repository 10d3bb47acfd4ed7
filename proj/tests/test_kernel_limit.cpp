#include <cmath>

#include "doctest.h"
#include "perioloz/kernel_limit.hpp"
#include "perioloz/quadrature.hpp"

using namespace perioloz;

namespace {

// (1 / 2 pi i) int_{conj z}^{z} w^n (1 - w a)^m dw for m >= 0, expanded term by term.
double binomial_oracle(cplx zcr, int n, int m, double a) {
  double s = 0, binom = 1;
  for (int j = 0; j <= m; ++j) {
    const int p = n + j;
    const double c = binom * std::pow(-a, j);
    if (p == -1)
      s += c * std::arg(zcr) / kPi;
    else
      s += c * std::pow(zcr, p + 1).imag() / ((p + 1) * kPi);
    binom = binom * (m - j) / (j + 1);
  }
  return s;
}

const LimitSpec& k1inf() {
  static const LimitSpec ls = LimitSpec::make({1}, std::numeric_limits<double>::infinity(), 0);
  return ls;
}

double gue_moment(double c, int level, int power) {
  auto f = [&](double h) { return std::pow(h, power) * gue_corners_kernel(c, level, level, h, h); };
  // the spectrum edge plus nine standard deviations
  const double L = (2 * std::sqrt(level) + 9) * std::sqrt(2 * std::abs(c));
  return integrate_panels(f, -L, L, 12, 16);
}

}  // namespace

TEST_CASE("bulk exponents") {
  auto ls = LimitSpec::make({1.5, 2, 1.0 / 3}, 1.0, 1);
  for (int t1 = -4; t1 <= 4; ++t1)
    for (int t2 = -4; t2 <= 4; ++t2) {
      auto e = bulk_exponents(ls, t1, t2);
      int s = 0;
      for (int v : e) s += v;
      CHECK(s == t1 - t2);
    }
}

TEST_CASE("arc geometry") {
  const cplx zcr(0.4, 0.9);
  for (double x0 : {2.0, -1.0, 0.4}) {
    Arc a = arc_through(zcr, x0);
    const cplx end = a.center + std::polar(a.radius, a.theta1);
    const cplx start = a.center + std::polar(a.radius, a.theta0);
    CHECK(std::abs(end - zcr) < 1e-9);
    CHECK(std::abs(start - std::conj(zcr)) < 1e-9);
  }
  CHECK_THROWS_AS(arc_through(cplx(1, 0), 2.0), DomainError);
  // (1 / 2 pi i) int dz / z over an arc through x0 > 0 is arg(zcr) / pi
  Arc a = arc_through(zcr, 1.5);
  CHECK(arc_integral(a, [](cplx z) { return 1.0 / z; }).real() == doctest::Approx(std::arg(zcr) / kPi).epsilon(1e-12));
}

TEST_CASE("k = 1 bulk kernel matches the binomial expansion") {
  const double tau = 0.3, chi = 0.1;
  const cplx zcr = liquid_critical_point(k1inf(), tau, chi);
  for (int dt = 0; dt <= 3; ++dt)
    for (int n = -3; n <= 2; ++n) {
      BulkQuery q{k1inf(), tau, chi, dt, 0, -n - 0.5 * dt - 1.0};
      const cplx v = bulk_kernel(q);
      CHECK(std::abs(v.imag()) < 1e-12);
      CHECK(v.real() == doctest::Approx(binomial_oracle(zcr, n, dt, std::exp(-tau))).epsilon(1e-10));
    }
  const double rho = bulk_kernel(BulkQuery{k1inf(), tau, chi, 2, 2, 0.0}).real();
  CHECK(rho == doctest::Approx(std::arg(zcr) / kPi).epsilon(1e-12));
  CHECK(rho > 0);
  CHECK(rho < 1);
  CHECK_THROWS_AS(bulk_kernel(BulkQuery{k1inf(), tau, chi, 1, 0, 0.0}), DomainError);
}

TEST_CASE("bulk densities lie in (0, 1) and pair determinants are real") {
  auto ls = LimitSpec::make({1.5, 2, 1.0 / 3}, 1.0, 1);
  for (double chi : {-0.6, -0.3, -0.1}) {
    const double rho = bulk_kernel(BulkQuery{ls, 0.5, chi, 0, 0, 0.0}).real();
    CHECK(rho > 0);
    CHECK(rho < 1);
    const cplx k12 = bulk_kernel(BulkQuery{ls, 0.5, chi, 1, 0, 0.5});
    const cplx k21 = bulk_kernel(BulkQuery{ls, 0.5, chi, 0, 1, -0.5});
    const cplx det = rho * rho - k12 * k21;
    CHECK(std::abs(det.imag()) < 1e-10);
    CHECK(det.real() >= -1e-12);
  }
  std::vector<BulkQuery> qs;
  for (int t = 0; t < 6; ++t) qs.push_back(BulkQuery{ls, 0.5, -0.3, t, 0, -0.5 * t});
  CHECK(bulk_kernel_batch(qs, Exec::Serial) == bulk_kernel_batch(qs, Exec::Parallel));
}

TEST_CASE("GUE corners: level mass, variance and symmetry") {
  const double c = -0.7;
  for (int n = 1; n <= 3; ++n) CHECK(gue_moment(c, n, 0) == doctest::Approx(n).epsilon(1e-6));
  CHECK(gue_moment(c, 1, 2) == doctest::Approx(2 * std::abs(c)).epsilon(1e-6));
  CHECK(gue_corners_kernel(c, 1, 1, 0, 0) == doctest::Approx(1 / std::sqrt(4 * kPi * std::abs(c))).epsilon(1e-9));
  for (double h : {0.3, 1.1, 2.0}) CHECK(gue_corners_kernel(c, 2, 2, h, h) == doctest::Approx(gue_corners_kernel(c, 2, 2, -h, -h)).epsilon(1e-9));
  CHECK_THROWS_AS(gue_corners_kernel(0.5, 1, 1, 0, 0), DomainError);
  CHECK_THROWS_AS(gue_corners_kernel(c, 0, 1, 0, 0), DomainError);
}

TEST_CASE("turning kernel for k = 1 is the GUE corners kernel") {
  auto ls = LimitSpec::make({1}, 1.0, 0);
  const double c = turning_points(ls)[0].c;
  for (int n = 1; n <= 3; ++n) CHECK(turning_count(ls, n, 1) == n);
  for (auto [a, b, x, y] : {std::tuple{1, 1, 0.2, 0.2}, std::tuple{2, 1, 0.5, -0.3}, std::tuple{3, 2, -0.4, 0.9}}) {
    TurningQuery q{ls, 1, a, b, x, y};
    CHECK(turning_kernel(q) == doctest::Approx(gue_corners_kernel(c, a, b, x, y)).epsilon(1e-12));
  }
  std::vector<TurningQuery> qs{{ls, 1, 1, 1, 0.1, 0.1}, {ls, 1, 2, 2, 0.3, 0.3}};
  CHECK(turning_kernel_batch(qs, Exec::Serial) == turning_kernel_batch(qs, Exec::Parallel));
  CHECK_THROWS_AS(turning_kernel(TurningQuery{ls, 2, 1, 1, 0, 0}), DomainError);
}

TEST_CASE("middle kernel") {
  CHECK(middle_y(1, 4) == 1.0);
  CHECK(middle_y(-3, 4) == 0.25);
  CHECK(middle_y(5, 4) == 1.0);
  CHECK_THROWS_AS(middle_y(2, 4), DomainError);
  CHECK(middle_A(1, 0) == 1);
  CHECK(middle_A(0, 1) == -1);
  CHECK(middle_A(2, 0) == 1);
  CHECK(middle_A(3, -1) == 3);

  // alpha = 1 reduces to the homogeneous kernel
  const double chi = 0.5;
  const cplx zcr = liquid_critical_point(LimitSpec::middle(1), 0.0, chi);
  for (int dt = 0; dt <= 2; ++dt)
    for (int n = -2; n <= 1; ++n) {
      const double v = middle_kernel(MiddleQuery{1.0, chi, dt + 1, 1, -n - 0.5 * dt - 1.0}).real();
      CHECK(v == doctest::Approx(binomial_oracle(zcr, n, dt, 1.0)).epsilon(1e-10));
    }

  // alpha > 1 is not invariant under a horizontal shift by one
  const double a = middle_kernel(MiddleQuery{4, chi, 1, 0, 0.5}).real();
  const double b = middle_kernel(MiddleQuery{4, chi, 2, 1, 0.5}).real();
  CHECK(std::abs(a - b) > 0.05);
  const double rho = middle_kernel(MiddleQuery{4, chi, 0, 0, 0}).real();
  CHECK(rho > 0);
  CHECK(rho < 1);
  CHECK_THROWS_AS(middle_kernel(MiddleQuery{4, -3.0, 0, 0, 0}), DomainError);
  CHECK_THROWS_AS(middle_kernel(MiddleQuery{0.5, chi, 0, 0, 0}), DomainError);
}
