#include "perioloz/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace perioloz {

namespace {

double tau_minus(double tau) { return std::min(tau, 0.0); }
double tau_plus(double tau) { return std::max(tau, 0.0); }

// Sp without the -chi term.
cplx sp0(const LimitSpec& ls, double tau, cplx z) {
  const double em = std::exp(tau_minus(tau)), ep = std::exp(tau_plus(tau));
  cplx a = 0.0, b = 0.0;
  for (int i = 0; i < ls.bd.l; ++i) {
    const double bt = ls.bd.distinct[i];
    const double m = ls.bd.mults[i];
    a += m * std::log((z - bt * ls.gamma * em) / z);
    if (ls.infinite_V())
      b += m * std::log(-bt / (z - bt * ep));
    else
      b += m * std::log((z - bt * std::exp(ls.V)) / (z - bt * ep));
  }
  const double cst = ls.infinite_V() ? tau / 2 : -ls.V + tau / 2;
  return (-a + b) / static_cast<double>(ls.k) + cst;
}

cplx sppp(const LimitSpec& ls, double tau, cplx z) {
  const double em = std::exp(tau_minus(tau)), ep = std::exp(tau_plus(tau));
  cplx s = 0.0;
  for (int i = 0; i < ls.bd.l; ++i) {
    const double bt = ls.bd.distinct[i];
    const double m = ls.bd.mults[i];
    cplx d1 = z - bt * ls.gamma * em, d3 = z - bt * ep;
    s += m * (1.0 / (d1 * d1) - 1.0 / (z * z));
    if (!ls.infinite_V()) {
      cplx d2 = z - bt * std::exp(ls.V);
      s -= m / (d2 * d2);
    }
    s += m / (d3 * d3);
  }
  return s / static_cast<double>(ls.k);
}

// Factored critical function A(z) - B(z) and its derivative.
void crit_fn(const LimitSpec& ls, double tau, double chi, cplx z, cplx& f, cplx& df) {
  const double k = ls.k;
  const double em = std::exp(tau_minus(tau)), ep = std::exp(tau_plus(tau));
  cplx A = std::pow(z, ls.k), dA = k / z;
  cplx B = ls.infinite_V() ? std::exp(k * (chi - tau / 2)) : std::exp(k * (ls.V + chi - tau / 2));
  cplx dB = 0.0;
  for (int i = 0; i < ls.bd.l; ++i) {
    const double bt = ls.bd.distinct[i];
    const int m = ls.bd.mults[i];
    if (ls.infinite_V()) {
      A *= std::pow(-bt, m);
    } else {
      cplx u = z - bt * std::exp(ls.V);
      A *= std::pow(u, m);
      dA += static_cast<double>(m) / u;
    }
    cplx v = z - bt * ls.gamma * em, w = z - bt * ep;
    B *= std::pow(v, m) * std::pow(w, m);
    dB += static_cast<double>(m) / v + static_cast<double>(m) / w;
  }
  f = A - B;
  df = A * dA - B * dB;
}

std::vector<double> cut_endpoints(const LimitSpec& ls, double tau) {
  std::vector<double> e{0.0};
  const double em = std::exp(tau_minus(tau)), ep = std::exp(tau_plus(tau));
  for (double bt : ls.bd.distinct) {
    e.push_back(bt * ls.gamma * em);
    e.push_back(bt * ep);
    if (!ls.infinite_V()) e.push_back(bt * std::exp(ls.V));
  }
  std::sort(e.begin(), e.end());
  return e;
}

}  // namespace

LimitSpec LimitSpec::make(std::vector<double> alphas, double V, int d_mod_k) {
  validate_alphas(alphas);
  if (!(V > 0.0)) throw SpecError("invariant violated: V > 0");
  LimitSpec ls;
  ls.k = static_cast<int>(alphas.size());
  ls.alphas = std::move(alphas);
  ls.V = V;
  ls.d_mod_k = ((d_mod_k % ls.k) + ls.k) % ls.k;
  ls.gamma = gamma_of(ls.alphas);
  ls.bd = beta_data(ls.alphas, ls.d_mod_k);
  const double lo = ls.bd.distinct.back() * ls.gamma, hi = ls.bd.distinct.front();
  if (lo > hi * (1 + 1e-12)) {
    std::ostringstream os;
    os << "invariant violated: beta~_l * gamma <= beta~_1 (" << lo << " > " << hi << ")";
    throw SpecError(os.str());
  }
  return ls;
}

LimitSpec LimitSpec::middle(double alpha) {
  if (!(alpha >= 1.0)) throw SpecError("middle slice requires alpha >= 1");
  return make({alpha, 1.0 / alpha}, std::numeric_limits<double>::infinity(), 1);
}

cplx Sp(const LimitSpec& ls, double tau, double chi, cplx z) { return sp0(ls, tau, z) - chi; }

cplx Spp(const LimitSpec& ls, double tau, double, cplx z) {
  const double em = std::exp(tau_minus(tau)), ep = std::exp(tau_plus(tau));
  cplx s = 0.0;
  for (int i = 0; i < ls.bd.l; ++i) {
    const double bt = ls.bd.distinct[i];
    const double m = ls.bd.mults[i];
    s -= m * (1.0 / (z - bt * ls.gamma * em) - 1.0 / z);
    if (!ls.infinite_V()) s += m / (z - bt * std::exp(ls.V));
    s -= m / (z - bt * ep);
  }
  return s / static_cast<double>(ls.k);
}

cplx action_S(const LimitSpec& ls, double tau, double chi, cplx z) {
  if (on_branch_cut(ls, tau, z)) throw DomainError("action_S: z on a branch segment");
  const double em = std::exp(tau_minus(tau)), ep = std::exp(tau_plus(tau));
  cplx s = 0.0;
  for (int i = 0; i < ls.bd.l; ++i) {
    const double bt = ls.bd.distinct[i];
    const double m = ls.bd.mults[i];
    s += m * (-dilog(bt * ls.gamma * em / z) + dilog(z / (bt * ep)));
    if (!ls.infinite_V()) s -= m * dilog(z * std::exp(-ls.V) / bt);
  }
  return s / static_cast<double>(ls.k) - (chi + 0.5 * std::abs(tau)) * std::log(z);
}

bool on_branch_cut(const LimitSpec& ls, double tau, cplx z, double rel_tol) {
  if (std::abs(z.imag()) > rel_tol * std::max(1.0, std::abs(z))) return false;
  const double x = z.real();
  const double em = std::exp(tau_minus(tau)), ep = std::exp(tau_plus(tau));
  const double slack = rel_tol * std::max(1.0, std::abs(x));
  for (double bt : ls.bd.distinct) {
    if (x >= -slack && x <= bt * ls.gamma * em + slack) return true;
    const double top = ls.infinite_V() ? std::numeric_limits<double>::infinity() : bt * std::exp(ls.V);
    if (x >= bt * ep - slack && x <= top + slack) return true;
  }
  return false;
}

Poly critical_polynomial(const LimitSpec& ls, double tau, double chi) {
  const double k = ls.k;
  const double em = std::exp(tau_minus(tau)), ep = std::exp(tau_plus(tau));
  Poly A(ls.k + 1, 0.0);
  A[ls.k] = 1.0;
  cplx C = ls.infinite_V() ? std::exp(k * (chi - tau / 2)) : std::exp(k * (ls.V + chi - tau / 2));
  Poly B{C};
  for (int i = 0; i < ls.bd.l; ++i) {
    const double bt = ls.bd.distinct[i];
    const int m = ls.bd.mults[i];
    if (ls.infinite_V()) {
      for (auto& c : A) c *= std::pow(-bt, m);
    } else {
      A = poly_mul(A, poly_from_roots({bt * std::exp(ls.V)}, m));
    }
    B = poly_mul(B, poly_from_roots({bt * ls.gamma * em, bt * ep}, m));
  }
  Poly P(std::max(A.size(), B.size()), 0.0);
  for (std::size_t i = 0; i < A.size(); ++i) P[i] += A[i];
  for (std::size_t i = 0; i < B.size(); ++i) P[i] -= B[i];
  return P;
}

PhasePoint critical_points(const LimitSpec& ls, double tau, double chi, double filter_tol) {
  if (!ls.infinite_V() && tau >= ls.V) throw DomainError("critical_points: tau must be < V");
  PhasePoint pp;
  pp.tau = tau;
  pp.chi = chi;
  auto raw = aberth_roots(critical_polynomial(ls, tau, chi));
  for (cplx z : raw) {
    // polish on the factored form, keeping only improving steps
    cplx f, df;
    crit_fn(ls, tau, chi, z, f, df);
    for (int it = 0; it < 8 && df != cplx(0.0); ++it) {
      cplx zn = z - f / df;
      cplx fn, dfn;
      crit_fn(ls, tau, chi, zn, fn, dfn);
      if (!(std::abs(fn) < std::abs(f))) break;
      z = zn;
      f = fn;
      df = dfn;
    }
    bool keep = !on_branch_cut(ls, tau, z) && z != cplx(0.0) && std::abs(Sp(ls, tau, chi, z)) < filter_tol;
    (keep ? pp.roots : pp.discarded).push_back(z);
  }
  for (cplx z : pp.roots)
    if (std::abs(z.imag()) > 1e-9 * std::max(1.0, std::abs(z))) ++pp.n_nonreal;
  pp.n_complex_pairs = pp.n_nonreal / 2;
  return pp;
}

cplx liquid_critical_point(const LimitSpec& ls, double tau, double chi) {
  PhasePoint pp = critical_points(ls, tau, chi);
  cplx best = 0.0;
  for (cplx z : pp.roots)
    if (z.imag() > best.imag()) best = z;
  if (pp.n_complex_pairs != 1 || !(best.imag() > 0)) {
    std::ostringstream os;
    os << "point (tau=" << tau << ", chi=" << chi << ") is not liquid";
    throw DomainError(os.str());
  }
  return best;
}

std::vector<PhasePoint> phase_grid(const LimitSpec& ls, const std::vector<double>& taus,
                                   const std::vector<double>& chis, Exec exec) {
  const long n = static_cast<long>(taus.size() * chis.size());
  std::vector<PhasePoint> out(n);
  const long nc = static_cast<long>(chis.size());
  if (exec == Exec::Serial) {
    for (long idx = 0; idx < n; ++idx) out[idx] = critical_points(ls, taus[idx / nc], chis[idx % nc]);
  } else {
#pragma omp parallel for schedule(dynamic, 8)
    for (long idx = 0; idx < n; ++idx) out[idx] = critical_points(ls, taus[idx / nc], chis[idx % nc]);
  }
  return out;
}

std::vector<TurningPoint> turning_points(const LimitSpec& ls) {
  if (ls.infinite_V()) throw DomainError("turning_points: needs finite V");
  std::vector<TurningPoint> out;
  const double eV = std::exp(ls.V);
  for (int j = 0; j < ls.bd.l; ++j) {
    TurningPoint tp;
    tp.j = j + 1;
    tp.mult = ls.bd.mults[j];
    tp.z = ls.bd.distinct[j] * eV;
    double lsum = 0.0, den = 0.0;
    for (int i = 0; i < ls.bd.l; ++i) {
      const double bg = ls.bd.distinct[i] * ls.gamma;
      lsum += ls.bd.mults[i] * std::log((tp.z - bg) / tp.z);
      den += ls.bd.mults[i] * bg / (tp.z - bg);
    }
    tp.chi = -ls.V / 2 - lsum / ls.k;
    tp.f = std::sqrt(static_cast<double>(tp.mult)) * tp.z / std::sqrt(den);
    tp.c = -den / (2.0 * ls.k);
    out.push_back(tp);
  }
  return out;
}

std::pair<double, double> chi_edge_expansion(const LimitSpec& ls, int j, double eps) {
  auto tps = turning_points(ls);
  if (j < 1 || j > static_cast<int>(tps.size())) throw DomainError("chi_edge_expansion: j out of range");
  const TurningPoint& tp = tps[j - 1];
  double A = 0.0;
  for (int i = 0; i < ls.bd.l; ++i) {
    const double bg = ls.bd.distinct[i] * ls.gamma;
    A += ls.bd.mults[i] * bg / (tp.z * (tp.z - bg));
  }
  A /= ls.k;
  const double B = tp.mult * tp.z / ls.k;
  const double shift = (A * tp.f + B / tp.f) * std::sqrt(eps);
  return {tp.chi - shift, tp.chi + shift};
}

DoubleRoot double_root(const LimitSpec& ls, double tau, double z_seed) {
  auto ends = cut_endpoints(ls, tau);
  double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
  for (double e : ends) {
    if (e < z_seed) lo = std::max(lo, e);
    if (e > z_seed) hi = std::min(hi, e);
  }
  if (on_branch_cut(ls, tau, cplx(z_seed, 0.0))) throw DomainError("double_root: seed on a branch segment");
  double z = z_seed;
  for (int it = 0; it < 200; ++it) {
    double g = Spp(ls, tau, 0.0, z).real();
    double dg = sppp(ls, tau, z).real();
    double step = g / dg;
    double zn = z - step;
    int halvings = 0;
    while ((zn <= lo || zn >= hi) && halvings < 60) {
      step *= 0.5;
      zn = z - step;
      ++halvings;
    }
    z = zn;
    if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(z))) {
      return DoubleRoot{z, sp0(ls, tau, cplx(z, 0.0)).real()};
    }
  }
  throw ConvergenceError("double_root: Newton did not converge", z, z_seed);
}

DoubleRoot edge_double_root(const LimitSpec& ls, int j, int sign, double eps) {
  auto tps = turning_points(ls);
  const TurningPoint& tp = tps.at(j - 1);
  return double_root(ls, ls.V - eps, tp.z + sign * tp.f * std::sqrt(eps));
}

double epsilon_cap(const LimitSpec& ls) {
  if (ls.bd.l < 2) return ls.infinite_V() ? 0.1 : 0.1 * ls.V;
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i + 1 < ls.bd.l; ++i) m = std::min(m, std::log(ls.bd.distinct[i + 1] / ls.bd.distinct[i]));
  return 0.1 * m;
}

FrozenBoundary frozen_boundary_k2(double alpha, double tau) {
  if (!(alpha > 1.0)) throw DomainError("frozen_boundary_k2: alpha must exceed 1");
  FrozenBoundary fb;
  const double e = std::exp(-std::abs(tau) / 2);
  fb.chi_plus = tau == 0.0 ? std::numeric_limits<double>::infinity()
                           : -std::log1p(-e) - std::log1p(-e / alpha) - std::abs(tau) / 2;
  fb.chi_minus = -std::log1p(e) - std::log1p(e / alpha) - std::abs(tau) / 2;
  fb.z_plus = std::exp(tau / 2);
  fb.z_minus = -std::exp(tau / 2);
  return fb;
}

}  // namespace perioloz
