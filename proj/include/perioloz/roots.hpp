#pragma once

#include <vector>

#include "perioloz/common.hpp"

namespace perioloz {

// Coefficients are in ascending order: c[0] + c[1] z + ...
using Poly = std::vector<cplx>;

Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_from_roots(const std::vector<cplx>& roots, int mult = 1);
cplx poly_eval(const Poly& p, cplx z);

// Aberth-Ehrlich simultaneous iteration. Throws ConvergenceError if it stalls.
std::vector<cplx> aberth_roots(const Poly& p, double tol = 1e-14, int max_iter = 500);

// Complex dilogarithm, principal branch (cut [1, inf)).
cplx dilog(cplx z);

}  // namespace perioloz
