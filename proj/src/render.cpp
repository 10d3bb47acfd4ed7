#include "perioloz/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace perioloz {

namespace {

constexpr double kS3 = 0.86602540378443864676;  // sqrt(3)/2
constexpr double kScale = 12.0;                 // pixels per lattice unit

void project(double x, double y, double z, double out[2]) {
  out[0] = (y - x) * kS3;
  out[1] = 0.5 * (x + y) - z;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v * kScale);
  // avoid "-0.000"
  if (std::string(buf) == "-0.000") return "0.000";
  return buf;
}

std::string escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    switch (c) {
      case '<': o += "&lt;"; break;
      case '>': o += "&gt;"; break;
      case '&': o += "&amp;"; break;
      case '"': o += "&quot;"; break;
      default: o += c;
    }
  }
  return o;
}

}  // namespace

void add_turning_overlay(Overlays& ov, const LimitSpec& ls) {
  for (const auto& tp : turning_points(ls)) ov.points.push_back({ls.V, tp.chi, "turning " + std::to_string(tp.j)});
}

void add_k2_boundary_overlay(Overlays& ov, double alpha, const std::vector<double>& taus) {
  OverlayCurve plus{{}, "chi+"}, minus{{}, "chi-"};
  for (double tau : taus) {
    FrozenBoundary fb = frozen_boundary_k2(alpha, tau);
    if (std::isfinite(fb.chi_plus)) plus.pts.emplace_back(tau, fb.chi_plus);
    minus.pts.emplace_back(tau, fb.chi_minus);
  }
  ov.curves.push_back(plus);
  ov.curves.push_back(minus);
}

void add_facet_band_overlay(Overlays& ov, const LimitSpec& ls, double depth, double margin) {
  auto tps = turning_points(ls);
  for (std::size_t j = 0; j + 1 < tps.size(); ++j) {
    const double hi = tps[j].chi - margin, lo = tps[j + 1].chi + margin;
    if (lo < hi) ov.bands.push_back({ls.V - depth, ls.V, lo, hi, "facet " + std::to_string(j + 1)});
  }
}

std::vector<Rhombus> surface_rhombi(const PlanePartition& pp, const RenderBox& box) {
  if (box.A < 0 || box.B < 0 || box.C < 0) throw DomainError("render: negative box size");
  if (box.tiles() > 1000000) throw DomainError("render: window exceeds 1e6 tiles");
  if (pp.num_rows() > box.A || (pp.num_rows() > 0 && pp.row_length(1) > box.B) || pp.at(1, 1) > box.C)
    throw DomainError("render: partition does not fit in the box");
  auto height = [&](int i, int j) { return i <= 0 ? box.C : (i > box.A || j > box.B ? 0 : pp.at(i, j)); };
  std::vector<Rhombus> out;
  out.reserve(box.tiles());
  auto push = [&](char kind, const double c[4][3]) {
    Rhombus r;
    r.kind = kind;
    for (int a = 0; a < 4; ++a) project(c[a][0], c[a][1], c[a][2], r.pts[a]);
    out.push_back(r);
  };
  for (int i = 1; i <= box.A; ++i)
    for (int j = 1; j <= box.B; ++j) {
      const double z = height(i, j);
      const double c[4][3] = {{i - 1.0, j - 1.0, z}, {i * 1.0, j - 1.0, z}, {i * 1.0, j * 1.0, z}, {i - 1.0, j * 1.0, z}};
      push('T', c);
    }
  // walls facing +x: plane x = i, visible between the heights of rows i and i+1
  for (int i = 0; i <= box.A; ++i)
    for (int j = 1; j <= box.B; ++j)
      for (int z = height(i + 1, j) + 1; z <= height(i, j); ++z) {
        const double c[4][3] = {{i * 1.0, j - 1.0, z - 1.0}, {i * 1.0, j * 1.0, z - 1.0}, {i * 1.0, j * 1.0, z * 1.0}, {i * 1.0, j - 1.0, z * 1.0}};
        push('X', c);
      }
  auto height_c = [&](int i, int j) { return j <= 0 ? box.C : (j > box.B || i > box.A ? 0 : pp.at(i, j)); };
  for (int j = 0; j <= box.B; ++j)
    for (int i = 1; i <= box.A; ++i)
      for (int z = height_c(i, j + 1) + 1; z <= height_c(i, j); ++z) {
        const double c[4][3] = {{i - 1.0, j * 1.0, z - 1.0}, {i * 1.0, j * 1.0, z - 1.0}, {i * 1.0, j * 1.0, z * 1.0}, {i - 1.0, j * 1.0, z * 1.0}};
        push('Y', c);
      }
  return out;
}

std::string render_tiling(const PlanePartition& pp, const RenderBox& box, const Overlays& ov) {
  auto rh = surface_rhombi(pp, box);
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& r : rh)
    for (const auto& p : r.pts) {
      xmin = std::min(xmin, p[0]);
      xmax = std::max(xmax, p[0]);
      ymin = std::min(ymin, p[1]);
      ymax = std::max(ymax, p[1]);
    }
  if (rh.empty()) xmin = xmax = ymin = ymax = 0;
  const double pad = 1.0;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << fmt(xmin - pad) << ' '
     << fmt(ymin - pad) << ' ' << fmt(xmax - xmin + 2 * pad) << ' ' << fmt(ymax - ymin + 2 * pad) << "\">\n"
     << "<style>.T{fill:#f4d35e}.X{fill:#ee964b}.Y{fill:#0d3b66}polygon{stroke:#222;stroke-width:0.4}"
        ".ov{fill:none;stroke:#c00;stroke-width:1.5}.band{fill:#3a3;fill-opacity:0.25}</style>\n";
  os << "<g id=\"tiles\">\n";
  for (const auto& r : rh) {
    os << "<polygon class=\"" << r.kind << "\" points=\"";
    for (int a = 0; a < 4; ++a) os << (a ? " " : "") << fmt(r.pts[a][0]) << ',' << fmt(r.pts[a][1]);
    os << "\"/>\n";
  }
  os << "</g>\n";
  if (ov.r > 0) {
    auto X = [&](double tau) { return tau / ov.r * kS3; };
    auto Y = [&](double chi) { return -chi / ov.r; };
    os << "<g id=\"overlays\">\n";
    for (const auto& b : ov.bands)
      os << "<rect class=\"band\" x=\"" << fmt(X(b.tau_lo)) << "\" y=\"" << fmt(Y(b.chi_hi)) << "\" width=\""
         << fmt(X(b.tau_hi) - X(b.tau_lo)) << "\" height=\"" << fmt(Y(b.chi_lo) - Y(b.chi_hi)) << "\"><title>"
         << escape(b.label) << "</title></rect>\n";
    for (const auto& c : ov.curves) {
      if (c.pts.empty()) continue;
      os << "<polyline class=\"ov\" points=\"";
      for (std::size_t a = 0; a < c.pts.size(); ++a)
        os << (a ? " " : "") << fmt(X(c.pts[a].first)) << ',' << fmt(Y(c.pts[a].second));
      os << "\"><title>" << escape(c.label) << "</title></polyline>\n";
    }
    for (const auto& p : ov.points)
      os << "<circle class=\"ov\" cx=\"" << fmt(X(p.tau)) << "\" cy=\"" << fmt(Y(p.chi)) << "\" r=\"4\"><title>"
         << escape(p.label) << "</title></circle>\n";
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace perioloz
