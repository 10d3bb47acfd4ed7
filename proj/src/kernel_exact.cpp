#include "perioloz/kernel_exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace perioloz {

namespace {

// z^e on a circle z = R e^{i theta} for an integer exponent.
cplx ipow_polar(double R, double theta, int e) { return std::polar(std::pow(R, e), e * theta); }

int exponent_z(const LatticePoint& p) {
  // -h - |t|/2 + 1/2
  int twice = -p.h2 - std::abs(p.t) + 1;
  return twice / 2;
}

int exponent_w(const LatticePoint& p) {
  // h + |t|/2 + 1/2
  int twice = p.h2 + std::abs(p.t) + 1;
  return twice / 2;
}

// Returns the trapezoid value; *scale receives the mean absolute term for a roundoff bound.
cplx kernel_fixed_n(const WeightSpec& spec, const LatticePoint& p1, const LatticePoint& p2, const ContourPlan& plan,
                    int n, double trunc_tol, double* scale) {
  const int e1 = exponent_z(p1);
  const int e2 = exponent_w(p2);
  std::vector<cplx> fz(n), fw(n), z(n), w(n);
  for (int a = 0; a < n; ++a) {
    double th = 2.0 * kPi * (a + 0.5) / n;
    z[a] = std::polar(plan.Rz, th);
    w[a] = std::polar(plan.Rw, th);
    fz[a] = phi(spec, z[a], p1.t, trunc_tol) * ipow_polar(plan.Rz, th, e1);
    fw[a] = ipow_polar(plan.Rw, th, e2) / phi(spec, w[a], p2.t, trunc_tol);
  }
  cplx total = 0.0;
  double abs_total = 0.0;
  for (int a = 0; a < n; ++a) {
    cplx row = 0.0;
    double abs_row = 0.0;
    for (int b = 0; b < n; ++b) {
      const cplx v = fw[b] / (z[a] - w[b]);
      row += v;
      abs_row += std::abs(v);
    }
    total += fz[a] * row;
    abs_total += std::abs(fz[a]) * abs_row;
  }
  *scale = abs_total / (static_cast<double>(n) * n);
  return total / (static_cast<double>(n) * n);
}

}  // namespace

RadiusInterval admissible_interval(const WeightSpec& spec) {
  RadiusInterval iv;
  iv.lo = 0.0;
  for (int n = 0; n < spec.k; ++n) iv.lo = std::max(iv.lo, x_minus(spec, -0.5 - n));
  iv.hi = 1.0 / x_plus(spec, 0.5);
  for (int j = 1; j < spec.d; ++j) iv.hi = std::min(iv.hi, 1.0 / x_plus(spec, j + 0.5));
  return iv;
}

RadiusInterval admissible_interval(const WeightSpec& spec, int t1, int t2) {
  RadiusInterval iv;
  const int m0 = std::min(0, t2);
  iv.lo = 0.0;
  for (int n = 0; n < spec.k; ++n) iv.lo = std::max(iv.lo, x_minus(spec, m0 - 0.5 - n));
  // with no z poles left the global bound still gives a finite circle
  iv.hi = t1 >= spec.d ? admissible_interval(spec).hi : 1.0 / x_plus(spec, std::max(0, t1) + 0.5);
  for (int j = std::max(0, t1) + 1; j < spec.d; ++j) iv.hi = std::min(iv.hi, 1.0 / x_plus(spec, j + 0.5));
  return iv;
}

cplx phi(const WeightSpec& spec, cplx z, int t, double trunc_tol) {
  const double az = std::abs(z);
  if (az == 0.0) throw PoleError("phi: z = 0");
  cplx plus = 1.0;
  for (int j = std::max(0, t); j < spec.d; ++j) {
    double xp = x_plus(spec, j + 0.5);
    if (std::abs(z - 1.0 / xp) < 1e-12 * az) throw PoleError("phi: z at a pole of 1/Phi^+");
    plus *= 1.0 - z * xp;
  }
  double bmax = 0.0;
  for (double b : spec.bd.betas) bmax = std::max(bmax, b);
  const double tail_scale = bmax * spec.gamma / (-std::expm1(-spec.r)) / az;
  cplx minus = 1.0;
  for (long mp = std::min(0, t); ; --mp) {  // m = mp - 1/2
    if (std::exp(spec.r * mp) * tail_scale < trunc_tol) break;
    minus *= 1.0 - x_minus(spec, mp - 0.5) / z;
  }
  return minus / plus;
}

ContourPlan plan_contours(const WeightSpec& spec, int t1, int t2, double lo_frac, double hi_frac) {
  RadiusInterval iv = admissible_interval(spec, t1, t2);
  if (!(iv.lo < iv.hi)) {
    std::ostringstream os;
    os << "plan_contours: empty admissible interval (" << iv.lo << ", " << iv.hi << ")";
    throw DomainError(os.str());
  }
  double a = std::log(iv.lo), b = std::log(iv.hi);
  double r_lo = std::exp(a + lo_frac * (b - a));
  double r_hi = std::exp(a + hi_frac * (b - a));
  return t1 < t2 ? ContourPlan{r_lo, r_hi} : ContourPlan{r_hi, r_lo};
}

ContourPlan tuned_contours(const WeightSpec& spec, const LatticePoint& p1, const LatticePoint& p2) {
  RadiusInterval iv = admissible_interval(spec, p1.t, p2.t);
  if (!(iv.lo < iv.hi)) return plan_contours(spec, p1.t, p2.t);
  constexpr int kRadii = 24, kAngles = 32;
  const double a = std::log(iv.lo), b = std::log(iv.hi);
  const int e1 = exponent_z(p1), e2 = exponent_w(p2);
  std::vector<double> u(kRadii), az(kRadii), aw(kRadii);
  for (int i = 0; i < kRadii; ++i) {
    u[i] = a + (b - a) * (i + 0.5) / kRadii;
    const double R = std::exp(u[i]);
    double mz = 0, mw = 0;
    for (int j = 0; j < kAngles; ++j) {
      const double th = 2.0 * kPi * (j + 0.5) / kAngles;
      const cplx z = std::polar(R, th);
      mz = std::max(mz, std::abs(phi(spec, z, p1.t, 1e-6)) * std::pow(R, e1));
      mw = std::max(mw, std::pow(R, e2) / std::abs(phi(spec, z, p2.t, 1e-6)));
    }
    az[i] = std::log(mz);
    aw[i] = std::log(mw);
  }
  double best = INFINITY;
  ContourPlan plan = plan_contours(spec, p1.t, p2.t);
  for (int i = 0; i < kRadii; ++i)
    for (int j = 0; j < kRadii; ++j) {
      if (i == j || ((i < j) != (p1.t < p2.t))) continue;
      const double Rz = std::exp(u[i]), Rw = std::exp(u[j]);
      const double cost = az[i] + aw[j] - std::log(std::abs(Rz - Rw));
      if (cost < best) {
        best = cost;
        plan = ContourPlan{Rz, Rw};
      }
    }
  return plan;
}

KernelValue kernel(const WeightSpec& spec, const KernelQuery& q) {
  return kernel(spec, q, tuned_contours(spec, q.p1, q.p2));
}

KernelValue kernel(const WeightSpec& spec, const KernelQuery& q, const ContourPlan& plan) {
  if (!q.p1.parity_ok() || !q.p2.parity_ok()) throw DomainError("kernel: h parity inconsistent with t");
  if (q.quad.tol <= 0 || q.quad.nodes_init < 16) throw DomainError("kernel: bad quadrature controls");
  RadiusInterval iv = admissible_interval(spec, q.p1.t, q.p2.t);
  if (!(plan.Rz > iv.lo && plan.Rz < iv.hi && plan.Rw > iv.lo && plan.Rw < iv.hi) || plan.Rz == plan.Rw ||
      ((plan.Rz < plan.Rw) != (q.p1.t < q.p2.t)))
    throw DomainError("kernel: contour plan violates the radius rules");
  const double trunc_tol = q.quad.tol * 1e-2;
  int n = q.quad.nodes_init;
  double scale = 0.0;
  cplx prev = kernel_fixed_n(spec, q.p1, q.p2, plan, n, trunc_tol, &scale);
  cplx before = prev;
  for (int it = 0; it < q.quad.max_doublings; ++it) {
    n *= 2;
    cplx cur = kernel_fixed_n(spec, q.p1, q.p2, plan, n, trunc_tol, &scale);
    double diff = std::abs(cur - prev);
    if (diff < q.quad.tol) return KernelValue{cur, std::max(diff, 4.0 * n * std::numeric_limits<double>::epsilon() * scale), n};
    before = prev;
    prev = cur;
  }
  throw ConvergenceError("kernel: no convergence after max_doublings", prev, before);
}

std::vector<KernelValue> kernel_batch(const WeightSpec& spec, const std::vector<KernelQuery>& qs, Exec exec) {
  std::vector<KernelValue> out(qs.size());
  const long n = static_cast<long>(qs.size());
  if (exec == Exec::Serial) {
    for (long i = 0; i < n; ++i) out[i] = kernel(spec, qs[i]);
    return out;
  }
  std::vector<std::string> errors(qs.size());
  bool failed = false;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = kernel(spec, qs[i]);
    } catch (const std::exception& e) {
      errors[i] = e.what();
#pragma omp atomic write
      failed = true;
    }
  }
  if (failed) {
    for (long i = 0; i < n; ++i)
      if (!errors[i].empty()) throw std::runtime_error(errors[i]);
  }
  return out;
}

CMatrix kernel_matrix(const WeightSpec& spec, const std::vector<LatticePoint>& pts, const QuadControl& quad,
                      Exec exec, std::vector<double>* errs) {
  const int n = static_cast<int>(pts.size());
  std::vector<KernelQuery> qs;
  qs.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) qs.push_back(KernelQuery{pts[i], pts[j], quad});
  auto vals = kernel_batch(spec, qs, exec);
  CMatrix m(n);
  if (errs) errs->assign(vals.size(), 0.0);
  for (std::size_t idx = 0; idx < vals.size(); ++idx) {
    m.a[idx] = vals[idx].value;
    if (errs) (*errs)[idx] = vals[idx].err;
  }
  return m;
}

Correlation correlation_from_matrix(const CMatrix& k, const std::vector<double>& errs) {
  Correlation c;
  cplx det = determinant(k);
  c.raw = det.real();
  c.imag = det.imag();
  c.real_ok = std::abs(c.imag) < 1e-9;
  c.rho = std::clamp(c.raw, -1e-8, 1.0 + 1e-8);
  c.clamped = c.rho != c.raw;
  double kmax = 1.0, emax = 0.0;
  for (const auto& v : k.a) kmax = std::max(kmax, std::abs(v));
  for (double e : errs) emax = std::max(emax, e);
  double fact = 1.0;
  for (int i = 2; i < k.n; ++i) fact *= i;
  c.err = k.n == 0 ? 0.0 : k.n * emax * std::pow(kmax, k.n - 1) * fact;
  return c;
}

Correlation correlation(const WeightSpec& spec, const std::vector<LatticePoint>& pts, const QuadControl& quad,
                        Exec exec) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i] == pts[j]) throw DomainError("correlation: points must be distinct");
  std::vector<double> errs;
  CMatrix k = kernel_matrix(spec, pts, quad, exec, &errs);
  return correlation_from_matrix(k, errs);
}

}  // namespace perioloz
