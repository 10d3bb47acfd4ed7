#pragma once

#include <functional>
#include <vector>

#include "perioloz/common.hpp"

namespace perioloz {

struct GaussRule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

// Gauss-Legendre rule, cached per n.
const GaussRule& gauss_legendre(int n);

struct AdaptiveResult {
  cplx value;
  double err = 0;
  int evals = 0;
};

// Adaptive Gauss-Kronrod (7/15) of a complex-valued function on [a, b].
AdaptiveResult integrate_gk(const std::function<cplx(double)>& f, double a, double b, double abs_tol,
                            double rel_tol = 1e-13, int max_depth = 40);

// Composite Gauss-Legendre with a fixed number of equal panels, for integrands that are expensive or noisy.
double integrate_panels(const std::function<double(double)>& f, double a, double b, int panels, int n);

}  // namespace perioloz
