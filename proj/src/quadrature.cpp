#include "perioloz/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace perioloz {

const GaussRule& gauss_legendre(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussRule g;
  g.x.resize(n);
  g.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it2 = 0; it2 < 100; ++it2) {
      double p0 = 1, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1;
      dp = n * (x * p1 - p0) / (x * x - 1);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    g.x[i] = -x;
    g.x[n - 1 - i] = x;
    g.w[i] = g.w[n - 1 - i] = 2 / ((1 - x * x) * dp * dp);
  }
  return cache.emplace(n, std::move(g)).first->second;
}

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

void gk15(const std::function<cplx(double)>& f, double a, double b, cplx& res, double& err) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  cplx fc = f(c);
  cplx rk = fc * kWgk[7];
  cplx rg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    cplx f1 = f(c - h * kXgk[j]);
    cplx f2 = f(c + h * kXgk[j]);
    rk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) rg += kWg[j / 2] * (f1 + f2);
  }
  res = rk * h;
  err = std::abs((rk - rg) * h);
}

void recurse(const std::function<cplx(double)>& f, double a, double b, cplx whole, double err, double tol,
             int depth, AdaptiveResult& out) {
  if (err <= tol || depth <= 0) {
    out.value += whole;
    out.err += err;
    return;
  }
  double m = 0.5 * (a + b);
  cplx r1, r2;
  double e1, e2;
  gk15(f, a, m, r1, e1);
  gk15(f, m, b, r2, e2);
  out.evals += 30;
  recurse(f, a, m, r1, e1, 0.5 * tol, depth - 1, out);
  recurse(f, m, b, r2, e2, 0.5 * tol, depth - 1, out);
}

}  // namespace

AdaptiveResult integrate_gk(const std::function<cplx(double)>& f, double a, double b, double abs_tol,
                            double rel_tol, int max_depth) {
  AdaptiveResult out;
  cplx whole;
  double err;
  gk15(f, a, b, whole, err);
  out.evals = 15;
  double tol = std::max(abs_tol, rel_tol * std::abs(whole));
  recurse(f, a, b, whole, err, tol, max_depth, out);
  return out;
}

double integrate_panels(const std::function<double(double)>& f, double a, double b, int panels, int n) {
  const GaussRule& g = gauss_legendre(n);
  double s = 0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + (b - a) * p / panels, hi = a + (b - a) * (p + 1) / panels;
    for (std::size_t i = 0; i < g.x.size(); ++i) s += 0.5 * (hi - lo) * g.w[i] * f(0.5 * (lo + hi) + 0.5 * (hi - lo) * g.x[i]);
  }
  return s;
}

}  // namespace perioloz
