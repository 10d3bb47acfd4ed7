#pragma once

#include <functional>
#include <vector>

#include "perioloz/asymptotics.hpp"
#include "perioloz/common.hpp"

namespace perioloz {

struct BulkQuery {
  LimitSpec ls;
  double tau = 0, chi = 0;  // liquid point
  int t1 = 0, t2 = 0;
  double dh = 0;  // h1 - h2; dh + (t1 - t2)/2 must be an integer
};

// Per-class exponents E_i = N_{t2,i} - N_{t1,i}; they sum to t1 - t2.
std::vector<int> bulk_exponents(const LimitSpec& ls, int t1, int t2);

// Arc from conj(z_cr) to z_cr crossing the real axis once at x0.
struct Arc {
  double center = 0, radius = 0;
  double theta0 = 0, theta1 = 0;  // z = center + radius e^{i theta}, theta0 -> theta1
};
Arc arc_through(cplx zcr, double x0);

// Generic arc integral (1/2 pi i) int f(z) dz along the arc.
cplx arc_integral(const Arc& arc, const std::function<cplx(cplx)>& f, double tol = 1e-13);

cplx bulk_kernel(const BulkQuery& q);

struct TurningQuery {
  LimitSpec ls;
  int j = 1;                // 1-based, j <= l
  int that1 = 1, that2 = 1;  // distance from the boundary
  double hhat1 = 0, hhat2 = 0;
};

// N_{that,j}: half-integers m in (d - that, d) of class j.
int turning_count(const LimitSpec& ls, int that, int j);

// Density-normalized kernel K/sqrt(r) near the j-th turning point.
double turning_kernel(const TurningQuery& q);

// Same engine with the level exponents given directly.
double gue_corners_kernel(double c, int t1, int t2, double h1, double h2);

std::vector<double> turning_kernel_batch(const std::vector<TurningQuery>& qs, Exec exec);

struct MiddleQuery {
  double alpha = 1;  // alpha = 1 is the homogeneous case
  double chi = 0;
  int t1 = 0, t2 = 0;
  double dh = 0;
};

// y_m for the half-integer m (given as 2m): 1 for |m| = 1/2 mod 2, otherwise 1/alpha.
double middle_y(long m2, double alpha);
// Signed number of half-integers m strictly between t1 and t2 with y_m = 1.
int middle_A(int t1, int t2);

cplx middle_kernel(const MiddleQuery& q);

std::vector<cplx> bulk_kernel_batch(const std::vector<BulkQuery>& qs, Exec exec);

}  // namespace perioloz
