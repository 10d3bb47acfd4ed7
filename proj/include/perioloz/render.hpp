#pragma once

#include <string>
#include <vector>

#include "perioloz/asymptotics.hpp"
#include "perioloz/lattice.hpp"

namespace perioloz {

// A x B floor, walls of height C. The surface has AB + BC + CA rhombi.
struct RenderBox {
  int A = 10, B = 10, C = 10;
  long tiles() const { return static_cast<long>(A) * B + static_cast<long>(B) * C + static_cast<long>(C) * A; }
};

// Overlay geometry is macroscopic (tau, chi), mapped to the lattice by t = tau / r, h = chi / r.
struct OverlayPoint {
  double tau = 0, chi = 0;
  std::string label;
};
struct OverlayCurve {
  std::vector<std::pair<double, double>> pts;  // (tau, chi)
  std::string label;
};
struct OverlayBand {
  double tau_lo = 0, tau_hi = 0, chi_lo = 0, chi_hi = 0;
  std::string label;
};
struct Overlays {
  double r = 0;  // 0 disables overlays
  std::vector<OverlayPoint> points;
  std::vector<OverlayCurve> curves;
  std::vector<OverlayBand> bands;
};

// Turning points at (V, chi_j).
void add_turning_overlay(Overlays& ov, const LimitSpec& ls);
// Both branches chi_+ and chi_- of the k = 2 boundary, sampled at taus (tau = 0 is skipped for chi_+).
void add_k2_boundary_overlay(Overlays& ov, double alpha, const std::vector<double>& taus);
// Facet bands between consecutive turning heights (shrunk by margin) on tau in [V - depth, V].
void add_facet_band_overlay(Overlays& ov, const LimitSpec& ls, double depth, double margin);

// Lozenge orientations: 'T' for horizontal (top) lozenges, 'X' and 'Y' for the two wall types.
struct Rhombus {
  char kind = 'T';
  double pts[4][2];
};
std::vector<Rhombus> surface_rhombi(const PlanePartition& pp, const RenderBox& box);

// SVG 1.1 document; throws DomainError if the box exceeds 1e6 tiles or does not contain pp.
std::string render_tiling(const PlanePartition& pp, const RenderBox& box, const Overlays& ov = {});

}  // namespace perioloz
