#include "perioloz/kernel_limit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "perioloz/quadrature.hpp"

namespace perioloz {

namespace {

int integer_exponent(double dh, int dt) {
  const double e = -dh - 0.5 * dt - 1.0;
  const double n = std::round(e);
  if (std::abs(e - n) > 1e-9) throw DomainError("limit kernel: dh + dt/2 must be an integer");
  return static_cast<int>(n);
}

// Corners-type double integral. xi runs clockwise on a circle about 0, omega upward on a vertical line to its left.
double corners_engine(double c, int n1, double h1, int n2, double h2) {
  if (!(c < 0)) throw DomainError("corners kernel requires c < 0");
  if (n1 < 0 || n2 < 0) throw DomainError("corners kernel: negative level");
  const double s = 1.0 / std::sqrt(2.0 * std::abs(c));
  double rho = n1 > 0 ? 0.5 * n1 / std::max(std::abs(h1), 1e-300) : 0.5 * s;
  rho = std::clamp(rho, 0.3 * s, 3.0 * s);
  const int nxi = 192;
  std::vector<cplx> fx(nxi), xi(nxi);
  for (int a = 0; a < nxi; ++a) {
    const double th = 2 * kPi * (a + 0.5) / nxi;
    xi[a] = std::polar(rho, th);
    const cplx dxi = -cplx(0, 1) * xi[a] * (2 * kPi / nxi);
    fx[a] = std::exp(c * xi[a] * xi[a] - h1 * xi[a]) * std::pow(xi[a], -n1) * dxi;
  }
  const double dw = -rho - s;
  const double span = 14.0 * s;
  const int panels = 12;
  const GaussRule& g = gauss_legendre(48);
  cplx total = 0.0;
  for (int p = -panels; p < panels; ++p) {
    const double a = span * p / panels, b = span * (p + 1) / panels;
    for (std::size_t q = 0; q < g.x.size(); ++q) {
      const double y = 0.5 * (a + b) + 0.5 * (b - a) * g.x[q];
      const cplx om(dw, y);
      const cplx fo = std::exp(-c * om * om + h2 * om) * std::pow(om, n2) * cplx(0, 0.5 * (b - a) * g.w[q]);
      cplx inner = 0.0;
      for (int i = 0; i < nxi; ++i) inner += fx[i] / (xi[i] - om);
      total += inner * fo;
    }
  }
  double v = (total / ((2 * kPi * cplx(0, 1)) * (2 * kPi * cplx(0, 1)))).real();
  if (n1 > n2 && h1 > h2) v += std::pow(h1 - h2, n1 - n2 - 1) / std::tgamma(static_cast<double>(n1 - n2));
  return v;
}

}  // namespace

std::vector<int> bulk_exponents(const LimitSpec& ls, int t1, int t2) {
  std::vector<int> e = count_between(ls.bd, std::min(t1, t2), std::max(t1, t2));
  if (t1 < t2)
    for (int& v : e) v = -v;
  const int sum = std::accumulate(e.begin(), e.end(), 0);
  if (sum != t1 - t2) throw DomainError("bulk_exponents: class counts do not sum to t1 - t2");
  return e;
}

Arc arc_through(cplx zcr, double x0) {
  if (!(zcr.imag() > 0)) throw DomainError("arc_through: z_cr must lie in the upper half plane");
  // the circle degenerates to a line when x0 sits under z_cr
  if (std::abs(zcr.real() - x0) < 1e-9 * std::max(1.0, std::abs(x0))) x0 += 1e-6 * std::max(1.0, std::abs(x0));
  Arc a;
  a.center = (std::norm(zcr) - x0 * x0) / (2 * (zcr.real() - x0));
  a.radius = std::abs(zcr - a.center);
  const double phi = std::arg(zcr - a.center);
  if (x0 > a.center) {
    a.theta0 = -phi;
    a.theta1 = phi;
  } else {
    a.theta0 = 2 * kPi - phi;
    a.theta1 = phi;
  }
  return a;
}

cplx arc_integral(const Arc& arc, const std::function<cplx(cplx)>& f, double tol) {
  auto g = [&](double th) {
    const cplx e = std::polar(1.0, th);
    const cplx z = arc.center + arc.radius * e;
    return f(z) * cplx(0, arc.radius) * e;
  };
  AdaptiveResult r = integrate_gk(g, arc.theta0, arc.theta1, tol, tol);
  return r.value / (2 * kPi * cplx(0, 1));
}

cplx bulk_kernel(const BulkQuery& q) {
  const LimitSpec& ls = q.ls;
  const int dt = q.t1 - q.t2;
  const int n = integer_exponent(q.dh, dt);
  const std::vector<int> e = bulk_exponents(ls, q.t1, q.t2);
  const cplx zcr = liquid_critical_point(ls, q.tau, q.chi);
  double x0;
  if (dt >= 0) {
    const double lo = ls.bd.distinct.back() * ls.gamma, hi = std::exp(q.tau) * ls.bd.distinct.front();
    x0 = std::sqrt(lo * hi);
  } else {
    x0 = -std::abs(zcr);
  }
  const double et = std::exp(-q.tau);
  auto f = [&](cplx z) {
    cplx v = std::pow(z, n);
    for (int i = 0; i < ls.bd.l; ++i)
      if (e[i] != 0) v *= std::pow(1.0 - z * et / ls.bd.distinct[i], e[i]);
    return v;
  };
  return arc_integral(arc_through(zcr, x0), f);
}

std::vector<cplx> bulk_kernel_batch(const std::vector<BulkQuery>& qs, Exec exec) {
  std::vector<cplx> out(qs.size());
  const long n = static_cast<long>(qs.size());
  if (exec == Exec::Serial) {
    for (long i = 0; i < n; ++i) out[i] = bulk_kernel(qs[i]);
    return out;
  }
  std::vector<std::string> errs(n);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = bulk_kernel(qs[i]);
    } catch (const std::exception& ex) {
      errs[i] = ex.what();
    }
  }
  for (const auto& m : errs)
    if (!m.empty()) throw DomainError(m);
  return out;
}

int turning_count(const LimitSpec& ls, int that, int j) {
  if (that < 0) throw DomainError("turning_count: distance must be >= 0");
  if (j < 1 || j > ls.bd.l) throw DomainError("turning_count: j out of range");
  return count_between(ls.bd, ls.d_mod_k - that, ls.d_mod_k)[j - 1];
}

double turning_kernel(const TurningQuery& q) {
  if (q.that1 < 1 || q.that2 < 1) throw DomainError("turning_kernel: distances must be >= 1");
  auto tps = turning_points(q.ls);
  if (q.j < 1 || q.j > static_cast<int>(tps.size())) throw DomainError("turning_kernel: j out of range");
  const double c = tps[q.j - 1].c;
  return corners_engine(c, turning_count(q.ls, q.that1, q.j), q.hhat1, turning_count(q.ls, q.that2, q.j),
                        q.hhat2);
}

double gue_corners_kernel(double c, int t1, int t2, double h1, double h2) {
  if (t1 < 1 || t2 < 1) throw DomainError("gue_corners_kernel: levels must be >= 1");
  return corners_engine(c, t1, h1, t2, h2);
}

std::vector<double> turning_kernel_batch(const std::vector<TurningQuery>& qs, Exec exec) {
  std::vector<double> out(qs.size());
  const long n = static_cast<long>(qs.size());
  if (exec == Exec::Serial) {
    for (long i = 0; i < n; ++i) out[i] = turning_kernel(qs[i]);
    return out;
  }
  std::vector<std::string> errs(n);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = turning_kernel(qs[i]);
    } catch (const std::exception& ex) {
      errs[i] = ex.what();
    }
  }
  for (const auto& m : errs)
    if (!m.empty()) throw DomainError(m);
  return out;
}

double middle_y(long m2, double alpha) {
  if (m2 % 2 == 0) throw DomainError("middle_y: m must be a half-integer");
  return (std::abs(m2) % 4 == 1) ? 1.0 : 1.0 / alpha;
}

int middle_A(int t1, int t2) {
  const int lo = std::min(t1, t2), hi = std::max(t1, t2);
  int a = 0;
  for (long m2 = 2L * lo + 1; m2 < 2L * hi; m2 += 2)
    if (std::abs(m2) % 4 == 1) ++a;
  return t1 >= t2 ? a : -a;
}

cplx middle_kernel(const MiddleQuery& q) {
  if (!(q.alpha >= 1.0)) throw DomainError("middle_kernel: alpha must be >= 1");
  const LimitSpec ls = LimitSpec::middle(q.alpha);
  if (q.alpha > 1.0 && !(q.chi > frozen_boundary_k2(q.alpha, 0.0).chi_minus))
    throw DomainError("middle_kernel: point is frozen");
  const int dt = q.t1 - q.t2;
  const int n = integer_exponent(q.dh, dt);
  const int A = middle_A(q.t1, q.t2);
  const cplx zcr = liquid_critical_point(ls, 0.0, q.chi);
  const double x0 = dt >= 0 ? std::sqrt(q.alpha) : -std::abs(zcr);
  const double ia = 1.0 / q.alpha;
  auto f = [&](cplx z) {
    cplx v = std::pow(z, n);
    if (A != 0) v *= std::pow(1.0 - z, A);
    if (dt - A != 0) v *= std::pow(1.0 - z * ia, dt - A);
    return v;
  };
  return arc_integral(arc_through(zcr, x0), f);
}

}  // namespace perioloz
