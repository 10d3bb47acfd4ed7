#include <algorithm>
#include <cmath>

#include "perioloz/roots.hpp"

namespace perioloz {

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

Poly poly_from_roots(const std::vector<cplx>& roots, int mult) {
  Poly p{1.0};
  for (cplx r : roots)
    for (int m = 0; m < mult; ++m) p = poly_mul(p, Poly{-r, 1.0});
  return p;
}

cplx poly_eval(const Poly& p, cplx z) {
  cplx v = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * z + *it;
  return v;
}

std::vector<cplx> aberth_roots(const Poly& p_in, double tol, int max_iter) {
  Poly p = p_in;
  while (p.size() > 1 && p.back() == cplx(0.0)) p.pop_back();
  const int n = static_cast<int>(p.size()) - 1;
  if (n < 1) return {};
  // leading zeros at the origin
  int zeros = 0;
  while (zeros < n && p[zeros] == cplx(0.0)) ++zeros;
  Poly q(p.begin() + zeros, p.end());
  const int m = n - zeros;
  std::vector<cplx> z(m);
  if (m > 0) {
    double rad = 0.0;
    for (int i = 0; i < m; ++i) rad = std::max(rad, std::pow(std::abs(q[i] / q[m]), 1.0 / (m - i)));
    double rmin = std::pow(std::abs(q[0] / q[m]), 1.0 / m);
    double r0 = std::sqrt(std::max(rmin, 1e-300) * std::max(rad, 1e-300));
    for (int i = 0; i < m; ++i) z[i] = std::polar(r0, 2 * kPi * (i + 0.25) / m + 0.4);
    Poly dq(m);
    for (int i = 1; i <= m; ++i) dq[i - 1] = q[i] * static_cast<double>(i);
    bool done = false;
    double worst = 0.0;
    for (int it = 0; it < max_iter && !done; ++it) {
      done = true;
      worst = 0.0;
      for (int i = 0; i < m; ++i) {
        cplx pv = poly_eval(q, z[i]);
        if (pv == cplx(0.0)) continue;
        cplx ratio = pv / poly_eval(dq, z[i]);
        cplx s = 0.0;
        for (int j = 0; j < m; ++j)
          if (j != i) s += 1.0 / (z[i] - z[j]);
        cplx corr = ratio / (1.0 - ratio * s);
        z[i] -= corr;
        const double rel = std::abs(corr) / std::max(1.0, std::abs(z[i]));
        worst = std::max(worst, rel);
        if (rel > tol) done = false;
      }
    }
    // rounding can keep clustered roots jittering just above tol
    if (!done && worst > 1e-8) throw ConvergenceError("aberth_roots: no convergence", z[0], z[m - 1]);
  }
  for (int i = 0; i < zeros; ++i) z.push_back(0.0);
  return z;
}

}  // namespace perioloz
