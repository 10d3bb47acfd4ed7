#pragma once

#include <vector>

#include "perioloz/common.hpp"
#include "perioloz/lattice.hpp"
#include "perioloz/linalg.hpp"
#include "perioloz/weights.hpp"

namespace perioloz {

struct QuadControl {
  int nodes_init = 64;
  double tol = 1e-10;
  int max_doublings = 8;
};

struct KernelQuery {
  LatticePoint p1, p2;
  QuadControl quad;
};

struct ContourPlan {
  double Rz = 0, Rw = 0;
};

// Open interval (max_m x^-_m, min_m 1/x^+_m) in which both circles must lie.
struct RadiusInterval {
  double lo = 0, hi = 0;
};

RadiusInterval admissible_interval(const WeightSpec& spec);
// Wider interval for one pair of slices: only the z poles with m > max(0,t1) and the w zeros with m < min(0,t2) bound it.
RadiusInterval admissible_interval(const WeightSpec& spec, int t1, int t2);

// Phi^-(z,t) / Phi^+(z,t); the infinite Phi^- product stops once the tail sum bound drops below trunc_tol.
cplx phi(const WeightSpec& spec, cplx z, int t, double trunc_tol);

// Radii at lo_frac / hi_frac of the log-scaled interval; Rz < Rw iff t1 < t2.
ContourPlan plan_contours(const WeightSpec& spec, int t1, int t2, double lo_frac = 0.4, double hi_frac = 0.6);

// Radii on a log grid of the per-pair interval minimizing max|f_z| max|f_w| / |Rz - Rw|; used by kernel(spec, q).
ContourPlan tuned_contours(const WeightSpec& spec, const LatticePoint& p1, const LatticePoint& p2);

struct KernelValue {
  cplx value;
  double err = 0;
  int nodes = 0;
};

// Trapezoid rule on both circles, doubling the node count until successive values agree within quad.tol.
// Throws ConvergenceError after max_doublings.
KernelValue kernel(const WeightSpec& spec, const KernelQuery& q);
KernelValue kernel(const WeightSpec& spec, const KernelQuery& q, const ContourPlan& plan);

std::vector<KernelValue> kernel_batch(const WeightSpec& spec, const std::vector<KernelQuery>& qs, Exec exec);

// K(p_i, p_j) for all pairs; errs (optional) receives the per-entry error estimates.
CMatrix kernel_matrix(const WeightSpec& spec, const std::vector<LatticePoint>& pts, const QuadControl& quad,
                      Exec exec, std::vector<double>* errs = nullptr);

struct Correlation {
  double rho = 1.0;    // real part, clamped to [-1e-8, 1 + 1e-8]
  double raw = 1.0;    // unclamped real part
  double imag = 0.0;   // imaginary part of the determinant
  double err = 0.0;    // propagated quadrature error estimate
  bool clamped = false;
  bool real_ok = true;  // |imag| < 1e-9
};

Correlation correlation(const WeightSpec& spec, const std::vector<LatticePoint>& pts, const QuadControl& quad,
                        Exec exec = Exec::Serial);
Correlation correlation_from_matrix(const CMatrix& k, const std::vector<double>& errs);

}  // namespace perioloz
