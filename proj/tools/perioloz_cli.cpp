#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "perioloz/asymptotics.hpp"
#include "perioloz/facets.hpp"
#include "perioloz/io.hpp"
#include "perioloz/kernel_exact.hpp"
#include "perioloz/kernel_limit.hpp"
#include "perioloz/oracle.hpp"
#include "perioloz/render.hpp"
#include "perioloz/sampler.hpp"

using namespace perioloz;

namespace {

enum Exit { kOk = 0, kFail = 1, kSpec = 2, kDomain = 3, kNumeric = 4 };

struct Common {
  std::string spec;
  std::string out;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  std::string format;
};

void emit(const Common& c, const std::string& name, const std::string& ext, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::filesystem::create_directories(c.out);
  write_text((std::filesystem::path(c.out) / (name + "." + ext)).string(), text);
}

std::string csv_stamp(const json& st) {
  return "# spec_hash=" + st["spec_hash"].get<std::string>() + " seed=" + std::to_string(st["seed"].get<std::uint64_t>()) +
         " version=" + st["version"].get<std::string>() + "\n";
}

std::vector<LatticePoint> read_points(const std::string& path) {
  json j;
  if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") {
    // "t,h" rows; a header line and '#' comments are skipped
    std::istringstream in(read_text(path));
    std::string line;
    j = json::array();
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#' || line[0] == 't') continue;
      const auto comma = line.find(',');
      if (comma == std::string::npos) throw SpecError("points csv: expected \"t,h\" in line: " + line);
      j.push_back({std::stoi(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    }
  } else {
    j = read_json(path);
  }
  std::vector<LatticePoint> pts;
  for (const auto& p : j) {
    LatticePoint lp = LatticePoint::from_h(p.at(0).get<int>(), p.at(1).get<double>());
    if (!lp.parity_ok()) throw DomainError("point (" + p.dump() + ") violates the lattice parity");
    pts.push_back(lp);
  }
  return pts;
}

// Default subsets: each point, then each pair, then each triple (capped at 3 points per set).
std::vector<std::vector<int>> default_sets(int n) {
  std::vector<std::vector<int>> s;
  for (int a = 0; a < n; ++a) s.push_back({a});
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) s.push_back({a, b});
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) s.push_back({a, b, c});
  return s;
}

std::string set_label(const std::vector<int>& s, const std::vector<LatticePoint>& pts) {
  std::string o;
  for (std::size_t i = 0; i < s.size(); ++i)
    o += (i ? ";" : "") + std::to_string(pts[s[i]].t) + ":" + fmt_double(pts[s[i]].h());
  return o;
}

int cmd_validate(const Common& c) {
  json j = read_json(c.spec);
  if (j.contains("V"))
    limit_spec_from_json(j);
  else
    weight_spec_from_json(j);
  std::cout << "ok\n";
  return kOk;
}

int cmd_sample(const Common& c, std::int64_t n, int row_cut) {
  json js = read_json(c.spec);
  WeightSpec spec = weight_spec_from_json(js);
  SampleRun run;
  run.n_samples = n;
  run.seed = c.seed;
  run.row_cut = row_cut;
  auto batch = sample_batch(spec, run, 0, n, Exec::Parallel);
  json out{{"stamp", stamp(js, c.seed)}, {"samples", json::array()}};
  for (const auto& pp : batch) out["samples"].push_back(to_json(pp));
  emit(c, "samples", "json", out.dump(1) + "\n");
  return kOk;
}

int cmd_oracle(const Common& c, int rows, int entry, const std::string& points) {
  json js = read_json(c.spec);
  WeightSpec spec = weight_spec_from_json(js);
  TruncationBox box{rows, spec.d, entry};
  OracleResult res = partition_function(spec, box);
  json out{{"stamp", stamp(js, c.seed)},
           {"Z_box", res.Z},
           {"Z_product", partition_function_product(spec)},
           {"tail_bound", res.tail_bound}};
  if (!points.empty()) {
    auto pts = read_points(points);
    json arr = json::array();
    for (const auto& s : default_sets(static_cast<int>(pts.size()))) {
      std::vector<LatticePoint> sub;
      for (int i : s) sub.push_back(pts[i]);
      arr.push_back({{"set", s}, {"rho", exact_correlation(spec, box, sub)}});
    }
    out["correlations"] = arr;
  }
  emit(c, "oracle", "json", out.dump(1) + "\n");
  return kOk;
}

int cmd_correlate(const Common& c, const std::string& points) {
  json js = read_json(c.spec);
  WeightSpec spec = weight_spec_from_json(js);
  auto pts = read_points(points);
  QuadControl quad;
  quad.tol = c.tol;
  std::vector<double> errs;
  CMatrix K = kernel_matrix(spec, pts, quad, Exec::Parallel, &errs);
  CsvTable t;
  t.header = {"points", "rho", "err_est", "raw", "imag", "clamped"};
  const int n = static_cast<int>(pts.size());
  for (const auto& s : default_sets(n)) {
    CMatrix sub(static_cast<int>(s.size()));
    std::vector<double> e;
    for (std::size_t a = 0; a < s.size(); ++a) {
      for (std::size_t b = 0; b < s.size(); ++b) {
        sub(a, b) = K(s[a], s[b]);
        e.push_back(errs[s[a] * n + s[b]]);
      }
    }
    Correlation cr = correlation_from_matrix(sub, e);
    t.rows.push_back({set_label(s, pts), fmt_double(cr.rho), fmt_double(cr.err), fmt_double(cr.raw),
                      fmt_double(cr.imag), cr.clamped ? "1" : "0"});
  }
  emit(c, "correlate", "csv", csv_stamp(stamp(js, c.seed)) + t.str());
  return kOk;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return v;
}

int cmd_phase(const Common& c, std::vector<double> tr, std::vector<double> cr) {
  json js = read_json(c.spec);
  LimitSpec ls = limit_spec_from_json(js);
  auto taus = linspace(tr.at(0), tr.at(1), static_cast<int>(tr.at(2)));
  auto chis = linspace(cr.at(0), cr.at(1), static_cast<int>(cr.at(2)));
  auto grid = phase_grid(ls, taus, chis, Exec::Parallel);
  CsvTable t;
  t.header = {"tau", "chi", "n_complex_pairs", "z_re", "z_im"};
  for (const auto& p : grid) {
    cplx z = 0.0;
    for (cplx r : p.roots)
      if (r.imag() > z.imag()) z = r;
    t.rows.push_back({fmt_double(p.tau), fmt_double(p.chi), std::to_string(p.n_complex_pairs), fmt_double(z.real()),
                      fmt_double(z.imag())});
  }
  emit(c, "phase", "csv", csv_stamp(stamp(js, c.seed)) + t.str());
  return kOk;
}

int cmd_turning(const Common& c) {
  json js = read_json(c.spec);
  LimitSpec ls = limit_spec_from_json(js);
  json arr = json::array();
  for (const auto& tp : turning_points(ls))
    arr.push_back({{"j", tp.j}, {"z", tp.z}, {"chi", tp.chi}, {"f", tp.f}, {"c", tp.c}, {"mult", tp.mult}});
  emit(c, "turning", "json", json{{"stamp", stamp(js, c.seed)}, {"turning_points", arr}}.dump(1) + "\n");
  return kOk;
}

int cmd_limit_kernel(const Common& c, const std::string& kind, const std::string& query) {
  json q = read_json(query);
  json spec_json = q.value("spec", json::object());
  if (!c.spec.empty()) spec_json = read_json(c.spec);
  CsvTable t;
  const auto& pairs = q.at("pairs");
  if (kind == "bulk") {
    LimitSpec ls = limit_spec_from_json(spec_json);
    t.header = {"t1", "t2", "dh", "re", "im"};
    std::vector<BulkQuery> qs;
    for (const auto& p : pairs)
      qs.push_back(BulkQuery{ls, q.at("tau").get<double>(), q.at("chi").get<double>(), p.at(0).get<int>(),
                             p.at(1).get<int>(), p.at(2).get<double>()});
    auto vals = bulk_kernel_batch(qs, Exec::Parallel);
    for (std::size_t i = 0; i < qs.size(); ++i)
      t.rows.push_back({std::to_string(qs[i].t1), std::to_string(qs[i].t2), fmt_double(qs[i].dh),
                        fmt_double(vals[i].real()), fmt_double(vals[i].imag())});
  } else if (kind == "turning") {
    LimitSpec ls = limit_spec_from_json(spec_json);
    t.header = {"that1", "hhat1", "that2", "hhat2", "value"};
    std::vector<TurningQuery> qs;
    for (const auto& p : pairs)
      qs.push_back(TurningQuery{ls, q.at("j").get<int>(), p.at(0).get<int>(), p.at(2).get<int>(),
                                p.at(1).get<double>(), p.at(3).get<double>()});
    auto vals = turning_kernel_batch(qs, Exec::Parallel);
    for (std::size_t i = 0; i < qs.size(); ++i)
      t.rows.push_back({std::to_string(qs[i].that1), fmt_double(qs[i].hhat1), std::to_string(qs[i].that2),
                        fmt_double(qs[i].hhat2), fmt_double(vals[i])});
  } else if (kind == "gue") {
    const double cc = q.at("c").get<double>();
    t.header = {"t1", "h1", "t2", "h2", "value"};
    for (const auto& p : pairs) {
      double v = gue_corners_kernel(cc, p.at(0).get<int>(), p.at(2).get<int>(), p.at(1).get<double>(),
                                    p.at(3).get<double>());
      t.rows.push_back({p.at(0).dump(), fmt_double(p.at(1).get<double>()), p.at(2).dump(),
                        fmt_double(p.at(3).get<double>()), fmt_double(v)});
    }
  } else if (kind == "middle") {
    t.header = {"t1", "t2", "dh", "A", "re", "im"};
    for (const auto& p : pairs) {
      MiddleQuery mq{q.at("alpha").get<double>(), q.at("chi").get<double>(), p.at(0).get<int>(), p.at(1).get<int>(),
                     p.at(2).get<double>()};
      cplx v = middle_kernel(mq);
      t.rows.push_back({std::to_string(mq.t1), std::to_string(mq.t2), fmt_double(mq.dh),
                        std::to_string(middle_A(mq.t1, mq.t2)), fmt_double(v.real()), fmt_double(v.imag())});
    }
  } else {
    throw SpecError("limit-kernel: unknown kind " + kind);
  }
  emit(c, "limit-kernel-" + kind, "csv", csv_stamp(stamp(q, c.seed)) + t.str());
  return kOk;
}

int cmd_facets(const Common& c) {
  json js = read_json(c.spec);
  LimitSpec ls = limit_spec_from_json(js);
  json arr = json::array();
  for (const auto& w : facet_words_degenerate(ls.bd))
    arr.push_back({{"index", w.index}, {"angle", w.angle}, {"period_word", w.period_word}, {"prefix", w.prefix}});
  if (c.format == "csv") {
    CsvTable t;
    t.header = {"index", "angle", "period_word", "prefix"};
    for (const auto& a : arr)
      t.rows.push_back({a["index"].dump(), fmt_double(a["angle"].get<double>()), a["period_word"].get<std::string>(),
                        a["prefix"].get<std::string>()});
    emit(c, "facets", "csv", csv_stamp(stamp(js, c.seed)) + t.str());
  } else {
    emit(c, "facets", "json", arr.dump(1) + "\n");
  }
  return kOk;
}

int cmd_render(const Common& c, const std::string& partition, std::vector<int> boxv, const std::string& overlay_spec,
               double overlay_r, double band_margin) {
  PlanePartition pp;
  json stamp_src;
  if (!partition.empty()) {
    json pj = read_json(partition);
    // a samples file renders its first sample
    pp = partition_from_json(pj.contains("samples") ? pj["samples"].at(0) : pj);
    stamp_src = pj.contains("samples") ? pj["stamp"] : to_json(pp);
  } else if (!c.spec.empty()) {
    json js = read_json(c.spec);
    WeightSpec spec = weight_spec_from_json(js);
    SampleRun run;
    run.seed = c.seed;
    pp = sample(spec, run, 0);
    stamp_src = js;
  }
  RenderBox box;
  if (boxv.size() == 3) {
    box = RenderBox{boxv[0], boxv[1], boxv[2]};
  } else {
    box = RenderBox{pp.num_rows(), pp.num_rows() ? pp.row_length(1) : 0, pp.at(1, 1)};
  }
  Overlays ov;
  if (!overlay_spec.empty()) {
    LimitSpec ls = limit_spec_from_json(read_json(overlay_spec));
    ov.r = overlay_r;
    if (!ls.infinite_V()) {
      add_turning_overlay(ov, ls);
      add_facet_band_overlay(ov, ls, 0.1 * ls.V, band_margin);
    }
    if (ls.k == 2 && ls.alphas[0] > 1.0) {
      std::vector<double> taus;
      for (int i = -40; i <= 40; ++i) taus.push_back(0.05 * i);
      add_k2_boundary_overlay(ov, ls.alphas[0], taus);
    }
  }
  std::string svg = render_tiling(pp, box, ov);
  json st = stamp(stamp_src, c.seed);
  svg.insert(svg.find("<svg"), "<!-- spec_hash=" + st["spec_hash"].get<std::string>() + " seed=" +
                                   std::to_string(c.seed) + " version=" + st["version"].get<std::string>() + " -->\n");
  emit(c, "render", "svg", svg);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  configure_threads_from_env();
  CLI::App app{"Periodically weighted plane partitions: sampling, kernels and limit shapes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string());
  Common c;
  auto add_common = [&](CLI::App* s, bool need_spec) {
    auto o = s->add_option("--spec", c.spec, "Spec JSON file")->check(CLI::ExistingFile);
    if (need_spec) o->required();
    s->add_option("--out", c.out, "Output directory (stdout if omitted)");
    s->add_option("--seed", c.seed, "Random seed");
    s->add_option("--tol", c.tol, "Quadrature tolerance");
    s->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv", "svg"}));
  };

  auto* validate = app.add_subcommand("validate", "Check a spec against its invariants");
  add_common(validate, true);

  auto* samp = app.add_subcommand("sample", "Exact samples");
  add_common(samp, true);
  std::int64_t n_samples = 1;
  int row_cut = 0;
  samp->add_option("-n,--n", n_samples, "Number of samples")->check(CLI::PositiveNumber);
  samp->add_option("--row-cut", row_cut, "Rows kept (0 = automatic)");

  auto* orc = app.add_subcommand("oracle", "Brute-force partition function and correlations on a box");
  add_common(orc, true);
  int rows = 8, entry = 12;
  std::string points;
  orc->add_option("--rows", rows, "Maximum number of rows");
  orc->add_option("--entry", entry, "Maximum entry");
  orc->add_option("--points", points, "Points JSON [[t, h], ...]")->check(CLI::ExistingFile);

  auto* cor = app.add_subcommand("correlate", "Determinantal correlations from the exact kernel");
  add_common(cor, true);
  cor->add_option("--points", points, "Points JSON [[t, h], ...]")->required()->check(CLI::ExistingFile);

  auto* ph = app.add_subcommand("phase", "Critical-point census on a (tau, chi) grid");
  add_common(ph, true);
  std::vector<double> tau_range{-1, 1, 21}, chi_range{-2, 2, 21};
  ph->add_option("--tau", tau_range, "lo hi count")->expected(3);
  ph->add_option("--chi", chi_range, "lo hi count")->expected(3);
  std::vector<double> grid;
  ph->add_option("--grid", grid, "tmin tmax cmin cmax n (overrides --tau/--chi)")->expected(5);

  auto* tu = app.add_subcommand("turning", "Turning points near the boundary");
  add_common(tu, true);

  auto* lk = app.add_subcommand("limit-kernel", "Limit kernels");
  add_common(lk, false);
  std::string kind, query;
  lk->add_option("kind", kind, "bulk | turning | gue | middle")->required()->check(
      CLI::IsMember({"bulk", "turning", "gue", "middle"}));
  lk->add_option("--query", query, "Query JSON")->required()->check(CLI::ExistingFile);

  auto* fa = app.add_subcommand("facets", "Frozen facet words");
  add_common(fa, true);

  auto* re = app.add_subcommand("render", "SVG of a tiling");
  add_common(re, false);
  std::string partition, overlay_spec;
  std::vector<int> boxv;
  double overlay_r = 0.02, band_margin = 0.1;
  re->add_option("--partition", partition, "Partition or samples JSON")->check(CLI::ExistingFile);
  re->add_option("--box", boxv, "A B C")->expected(3);
  re->add_option("--overlay-spec", overlay_spec, "Limit spec for overlays")->check(CLI::ExistingFile);
  re->add_option("--r", overlay_r, "Lattice scale for overlays")->check(CLI::PositiveNumber);
  re->add_option("--band-margin", band_margin, "Facet band margin in chi units");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*validate) return cmd_validate(c);
    if (*samp) return cmd_sample(c, n_samples, row_cut);
    if (*orc) return cmd_oracle(c, rows, entry, points);
    if (*cor) return cmd_correlate(c, points);
    if (*ph) {
      if (grid.size() == 5) {
        tau_range = {grid[0], grid[1], grid[4]};
        chi_range = {grid[2], grid[3], grid[4]};
      }
      return cmd_phase(c, tau_range, chi_range);
    }
    if (*tu) return cmd_turning(c);
    if (*lk) return cmd_limit_kernel(c, kind, query);
    if (*fa) return cmd_facets(c);
    if (*re) {
      if (partition.empty() && c.spec.empty()) throw SpecError("render: give --partition or --spec");
      return cmd_render(c, partition, boxv, overlay_spec, overlay_r, band_margin);
    }
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSpec;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumeric;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumeric;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return kSpec;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kFail;
}
