#include "perioloz/weights.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "perioloz/common.hpp"

namespace perioloz {

namespace {

long mod(long a, long k) { return ((a % k) + k) % k; }

long half_to_int(double m, const char* what) {
  double x = m + 0.5;
  long n = std::lround(x);
  if (std::abs(x - static_cast<double>(n)) > 1e-9) throw DomainError(std::string(what) + ": m must be a half-integer");
  return n;
}

}  // namespace

double BetaData::beta(long n) const {
  long r = mod(n, k);
  return r == 0 ? 1.0 : betas[r - 1];
}

int BetaData::class_of_half(long m2) const {
  // d - m - 1/2 = d - (m2 + 1)/2
  long n = static_cast<long>(d_mod_k) - (m2 + 1) / 2;
  return residue_class[mod(n, k)];
}

void validate_alphas(const std::vector<double>& alphas) {
  if (alphas.empty()) throw SpecError("invariant violated: k >= 1 (alphas empty)");
  double logsum = 0.0;
  for (double a : alphas) {
    if (!(a > 0.0) || !std::isfinite(a)) throw SpecError("invariant violated: alphas must be positive and finite");
    logsum += std::log(a);
  }
  if (std::abs(std::expm1(logsum)) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "invariant violated: product of alphas must equal 1 (got " << std::exp(logsum) << ")";
    throw SpecError(os.str());
  }
}

double gamma_of(const std::vector<double>& alphas) {
  double g = 1.0;
  for (double a : alphas)
    if (a < 1.0) g *= a;
  return g;
}

BetaData beta_data(const std::vector<double>& alphas, int d_mod_k) {
  BetaData bd;
  bd.k = static_cast<int>(alphas.size());
  bd.d_mod_k = static_cast<int>(mod(d_mod_k, bd.k));
  double p = 1.0;
  for (int i = 1; i <= bd.k; ++i) {
    p *= alphas[mod(bd.d_mod_k - i, bd.k)];
    bd.betas.push_back(p);
  }
  bd.betas.back() = 1.0;  // exact under prod alpha = 1
  std::vector<double> sorted = bd.betas;
  std::sort(sorted.begin(), sorted.end());
  for (double b : sorted) {
    if (bd.distinct.empty() || std::abs(b - bd.distinct.back()) > 1e-12 * std::max(1.0, b)) {
      bd.distinct.push_back(b);
      bd.mults.push_back(1);
    } else {
      bd.mults.back() += 1;
    }
  }
  bd.l = static_cast<int>(bd.distinct.size());
  bd.residue_class.assign(bd.k, 0);
  for (int n = 0; n < bd.k; ++n) {
    double b = bd.beta(n);
    for (int c = 0; c < bd.l; ++c)
      if (std::abs(b - bd.distinct[c]) <= 1e-12 * std::max(1.0, b)) bd.residue_class[n] = c;
  }
  return bd;
}

double WeightSpec::q() const { return std::exp(-r); }

WeightSpec WeightSpec::make(std::vector<double> alphas, double r, int d) {
  validate_alphas(alphas);
  if (!(r > 0.0) || !std::isfinite(r)) throw SpecError("invariant violated: r > 0 (q in (0,1))");
  if (d < 1) throw SpecError("invariant violated: d >= 1");
  WeightSpec s;
  s.k = static_cast<int>(alphas.size());
  s.alphas = std::move(alphas);
  s.r = r;
  s.d = d;
  s.gamma = gamma_of(s.alphas);
  s.bd = beta_data(s.alphas, d % s.k);
  return s;
}

WeightSpec WeightSpec::from_q(std::vector<double> alphas, double q, int d) {
  if (!(q > 0.0 && q < 1.0)) throw SpecError("invariant violated: q in (0,1)");
  return make(std::move(alphas), -std::log(q), d);
}

double q_weight(const WeightSpec& spec, int t) {
  double v = spec.q() * spec.alphas[mod(t, spec.k)];
  return t == 0 ? v * spec.gamma : v;
}

double x_plus(const WeightSpec& spec, double m) {
  long mp = half_to_int(m, "x_plus");  // m + 1/2
  if (m <= 0.0 || m >= spec.d) throw DomainError("x_plus: m outside (0, d)");
  return std::exp(-spec.r * static_cast<double>(mp)) / spec.bd.beta(spec.d - mp);
}

double x_minus(const WeightSpec& spec, double m) {
  long mp = half_to_int(m, "x_minus");
  if (m >= 0.0) throw DomainError("x_minus: m must be negative");
  return std::exp(spec.r * static_cast<double>(mp)) * spec.bd.beta(spec.d - mp) * spec.gamma;
}

std::vector<int> count_between(const BetaData& bd, long a, long b) {
  std::vector<int> n(bd.l, 0);
  for (long m2 = 2 * a + 1; m2 < 2 * b; m2 += 2) n[bd.class_of_half(m2)] += 1;
  return n;
}

std::vector<int> count_N_all(const WeightSpec& spec, int t) {
  if (t < 0 || t >= spec.d) throw DomainError("count_N: t outside [0, d)");
  // only residues matter; shift so the class lookup sees d directly
  BetaData bd = spec.bd;
  std::vector<int> n(bd.l, 0);
  for (long m2 = 2L * t + 1; m2 < 2L * spec.d; m2 += 2) {
    long idx = static_cast<long>(spec.d) - (m2 + 1) / 2;
    n[bd.residue_class[mod(idx, bd.k)]] += 1;
  }
  return n;
}

int count_N(const WeightSpec& spec, int t, int i) {
  auto n = count_N_all(spec, t);
  if (i < 1 || i > static_cast<int>(n.size())) throw DomainError("count_N: class index out of range");
  return n[i - 1];
}

}  // namespace perioloz
