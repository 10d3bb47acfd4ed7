#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "perioloz/common.hpp"
#include "perioloz/roots.hpp"
#include "perioloz/weights.hpp"

namespace perioloz {

struct LimitSpec {
  int k = 1;
  std::vector<double> alphas;
  double V = 1.0;  // +infinity selects the V = infinity formulas
  int d_mod_k = 0;
  double gamma = 1.0;
  BetaData bd;

  bool infinite_V() const { return std::isinf(V); }
  static LimitSpec make(std::vector<double> alphas, double V, int d_mod_k);
  // The tau = 0 middle-slice setting: k = 2, alpha_0 = alpha, alpha_1 = 1/alpha, beta~ = (1, alpha).
  static LimitSpec middle(double alpha);
};

// z dS/dz is written Sp; d/dz (z dS/dz) is Spp.
cplx action_S(const LimitSpec& ls, double tau, double chi, cplx z);
cplx Sp(const LimitSpec& ls, double tau, double chi, cplx z);
cplx Spp(const LimitSpec& ls, double tau, double chi, cplx z);

// True if z lies on one of [0, b_i gamma e^{tau-}] or [b_i e^{tau+}, b_i e^V].
bool on_branch_cut(const LimitSpec& ls, double tau, cplx z, double rel_tol = 1e-12);

// Degree-2k polynomial from exponentiating k*Sp = 0.
Poly critical_polynomial(const LimitSpec& ls, double tau, double chi);

struct PhasePoint {
  double tau = 0, chi = 0;
  std::vector<cplx> roots;      // genuine critical points (Sp = 0 off the cuts)
  std::vector<cplx> discarded;  // polynomial roots failing the filter
  int n_complex_pairs = 0;
  int n_nonreal = 0;
};

PhasePoint critical_points(const LimitSpec& ls, double tau, double chi, double filter_tol = 1e-8);

// Non-real critical point in the upper half plane; throws DomainError at a frozen point.
cplx liquid_critical_point(const LimitSpec& ls, double tau, double chi);

std::vector<PhasePoint> phase_grid(const LimitSpec& ls, const std::vector<double>& taus,
                                   const std::vector<double>& chis, Exec exec);

struct TurningPoint {
  int j = 1;
  double z = 0;    // beta~_j e^V
  double chi = 0;
  double f = 0;
  double c = 0;    // S''(z_j) z_j^2 / 2
  int mult = 1;
};

std::vector<TurningPoint> turning_points(const LimitSpec& ls);

// chi_{j,+} < chi_{j,-}, both to O(eps).
std::pair<double, double> chi_edge_expansion(const LimitSpec& ls, int j, double eps);

struct DoubleRoot {
  double z = 0;
  double chi = 0;
};

// Real double critical point near z_seed at fixed tau: solves Spp(z) = 0, then Sp = 0 fixes chi.
DoubleRoot double_root(const LimitSpec& ls, double tau, double z_seed);

// Branch j (1-based), sign +1 for the z_j + f sqrt(eps) root; seeded from the expansion.
DoubleRoot edge_double_root(const LimitSpec& ls, int j, int sign, double eps);

// Upper bound on eps for the edge expansions (tau units).
double epsilon_cap(const LimitSpec& ls);

struct FrozenBoundary {
  double chi_plus = 0;   // +infinity at tau = 0
  double chi_minus = 0;
  double z_plus = 0;     // double-root locations +e^{tau/2}, -e^{tau/2}
  double z_minus = 0;
};

FrozenBoundary frozen_boundary_k2(double alpha, double tau);

}  // namespace perioloz
