#include "perioloz/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "perioloz/common.hpp"

namespace perioloz {

namespace {

int max_len(const TruncationBox& box, int t) {
  return t <= 0 ? std::min(box.max_rows + t, box.d) : std::min(box.max_rows, box.d - t);
}

void check_box(const WeightSpec& spec, const TruncationBox& box) {
  if (box.max_rows < 1 || box.d < 1 || box.max_entry < 1) throw DomainError("TruncationBox: all sizes must be positive");
  if (box.d != spec.d) throw DomainError("TruncationBox: d must match the spec");
}

double cell_p(const WeightSpec& spec, int i, int j) { return x_minus(spec, 0.5 - i) * x_plus(spec, j - 0.5); }

double rows_tail(const WeightSpec& spec, int max_rows) {
  double sum = 0.0;
  for (int i = max_rows + 1;; ++i) {
    double row = 0.0;
    for (int j = 1; j <= spec.d; ++j) row += cell_p(spec, i, j);
    sum += row;
    if (row < 1e-300 || (i > max_rows + 2 * spec.k && row < 1e-17 * sum)) break;
  }
  return sum;
}

double chernoff_entry_tail(const WeightSpec& spec, int max_entry) {
  std::vector<double> ps;
  double pmax = 0.0;
  for (int i = 1;; ++i) {
    double row = 0.0;
    for (int j = 1; j <= spec.d; ++j) {
      double p = cell_p(spec, i, j);
      ps.push_back(p);
      row += p;
      pmax = std::max(pmax, p);
    }
    if (row < 1e-20) break;
  }
  auto f = [&](double u) {
    double s = std::exp(u);
    double v = -(max_entry + 1) * u;
    for (double p : ps) v += std::log1p(-p) - std::log1p(-p * s);
    return v;
  };
  double a = 0.0, b = -std::log(pmax) * (1 - 1e-9);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    }
  }
  return std::min(1.0, std::exp(std::min(f1, f2)));
}

// All partitions with at most n parts, parts <= emax, as padded vectors of length n.
void all_partitions(int n, int emax, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(n, 0);
  std::function<void(int, int)> rec = [&](int pos, int cap) {
    if (pos == n) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= cap; ++v) {
      cur[pos] = v;
      rec(pos + 1, v);
    }
    cur[pos] = 0;
  };
  rec(0, emax);
}

struct Transfer {
  int D, E, base;
  std::vector<long> stride;
  std::vector<std::vector<int>> states;  // padded length D
  std::vector<long> index;
  std::vector<int> length;
  std::vector<int> volume;

  Transfer(int d, int e) : D(d), E(e), base(e + 1) {
    stride.assign(D, 1);
    for (int i = 1; i < D; ++i) stride[i] = stride[i - 1] * base;
    all_partitions(D, E, states);
    for (const auto& s : states) {
      long idx = 0;
      int len = 0, vol = 0;
      for (int i = 0; i < D; ++i) {
        idx += s[i] * stride[i];
        if (s[i] > 0) len = i + 1;
        vol += s[i];
      }
      index.push_back(idx);
      length.push_back(len);
      volume.push_back(vol);
    }
  }

  long size() const { return stride[D - 1] * base; }

  void prefix(std::vector<double>& a) const {
    const long n = size();
    for (int dim = 0; dim < D; ++dim) {
      long st = stride[dim];
      for (long idx = 0; idx < n; ++idx) {
        if ((idx / st) % base != 0) a[idx] += a[idx - st];
      }
    }
  }

  double box_sum(const std::vector<double>& S, const std::vector<int>& lo, const std::vector<int>& hi) const {
    double total = 0.0;
    for (int mask = 0; mask < (1 << D); ++mask) {
      long idx = 0;
      int sign = 1;
      bool skip = false;
      for (int i = 0; i < D; ++i) {
        int c;
        if (mask & (1 << i)) {
          c = lo[i] - 1;
          sign = -sign;
          if (c < 0) {
            skip = true;
            break;
          }
        } else {
          c = hi[i];
        }
        idx += c * stride[i];
      }
      if (!skip) total += sign * S[idx];
    }
    return total;
  }
};

double run_transfer(const WeightSpec& spec, const TruncationBox& box, const std::vector<LatticePoint>& pts) {
  const int D = box.d, E = box.max_entry;
  Transfer tr(D, E);
  std::vector<double> F(tr.size(), 0.0), S;
  std::vector<int> lo(D), hi(D);
  const int t0 = -(box.max_rows - 1);
  for (int t = t0; t <= D - 1; ++t) {
    const double qt = q_weight(spec, t);
    const int ml = max_len(box, t);
    std::vector<const LatticePoint*> here;
    for (const auto& p : pts)
      if (p.t == t) here.push_back(&p);
    if (t > t0) {
      S = F;
      tr.prefix(S);
      std::fill(F.begin(), F.end(), 0.0);
    }
    for (std::size_t s = 0; s < tr.states.size(); ++s) {
      if (tr.length[s] > ml) continue;
      const auto& p = tr.states[s];
      bool ok = true;
      if (!here.empty()) {
        Partition lam(p.begin(), p.begin() + tr.length[s]);
        for (const auto* pt : here)
          if (!occupied(lam, t, pt->h2)) ok = false;
      }
      if (!ok) continue;
      double w = std::pow(qt, tr.volume[s]);
      if (t == t0) {
        F[tr.index[s]] = w;
        continue;
      }
      for (int i = 0; i < D; ++i) {
        if (t <= 0) {
          lo[i] = i + 1 < D ? p[i + 1] : 0;
          hi[i] = p[i];
        } else {
          lo[i] = p[i];
          hi[i] = i == 0 ? E : p[i - 1];
        }
      }
      F[tr.index[s]] = w * tr.box_sum(S, lo, hi);
    }
  }
  double z = 0.0, c = 0.0;  // Neumaier
  for (double v : F) {
    double tsum = z + v;
    c += std::abs(z) >= std::abs(v) ? (z - tsum) + v : (v - tsum) + z;
    z = tsum;
  }
  return z + c;
}

}  // namespace

double tail_bound(const WeightSpec& spec, const TruncationBox& box) {
  check_box(spec, box);
  return std::min(1.0, rows_tail(spec, box.max_rows) + chernoff_entry_tail(spec, box.max_entry));
}

double partition_function_product(const WeightSpec& spec) {
  double logz = 0.0;
  for (int i = 1;; ++i) {
    double row = 0.0;
    for (int j = 1; j <= spec.d; ++j) {
      double p = cell_p(spec, i, j);
      logz -= std::log1p(-p);
      row += p;
    }
    if (row < 1e-18) break;
  }
  return std::exp(logz);
}

double weight_of(const WeightSpec& spec, const PlanePartition& pp) {
  double logw = 0.0;
  for (int i = 1; i <= pp.num_rows(); ++i)
    for (int j = 1; j <= pp.row_length(i); ++j) logw += pp.at(i, j) * std::log(q_weight(spec, j - i));
  return std::exp(logw);
}

void enumerate(const WeightSpec& spec, const TruncationBox& box,
               const std::function<void(const PlanePartition&, double)>& visit, std::uint64_t budget) {
  check_box(spec, box);
  const int D = box.d, E = box.max_entry;
  const int t0 = -(box.max_rows - 1);
  const int nslices = D - t0;
  std::vector<DiagonalSlice> chain(nslices);
  std::vector<double> logq(nslices);
  for (int s = 0; s < nslices; ++s) {
    chain[s].t = t0 + s;
    logq[s] = std::log(q_weight(spec, t0 + s));
  }
  std::uint64_t nodes = 0;
  std::vector<std::vector<int>> curs(nslices, std::vector<int>(D, 0));  // one buffer per slice depth

  std::function<void(int, double)> slice_rec;
  std::function<void(int, int, const std::vector<int>&, double)> part_rec;

  slice_rec = [&](int s, double logw) {
    if (s == nslices) {
      visit(from_slices(chain), std::exp(logw));
      return;
    }
    std::vector<int> prev(D, 0);
    if (s > 0)
      for (std::size_t i = 0; i < chain[s - 1].parts.size(); ++i) prev[i] = chain[s - 1].parts[i];
    part_rec(s, 0, prev, logw);
  };

  part_rec = [&](int s, int i, const std::vector<int>& prev, double logw) {
    if (++nodes > budget) throw BudgetError("enumerate: search budget exceeded");
    const int t = t0 + s;
    const int ml = max_len(box, t);
    std::vector<int>& cur = curs[s];
    if (i == D) {
      chain[s].parts = normalized(std::vector<int>(cur.begin(), cur.end()));
      slice_rec(s + 1, logw);
      return;
    }
    int lo, hi;
    if (s == 0) {
      lo = 0;
      hi = i == 0 ? E : cur[i - 1];
    } else if (t <= 0) {  // cur > prev
      lo = prev[i];
      hi = i == 0 ? E : prev[i - 1];
    } else {  // prev > cur
      lo = i + 1 < D ? prev[i + 1] : 0;
      hi = prev[i];
    }
    if (i >= ml) hi = std::min(hi, 0);
    for (int v = lo; v <= hi; ++v) {
      cur[i] = v;
      part_rec(s, i + 1, prev, logw + v * logq[s]);
    }
    cur[i] = 0;
  };

  slice_rec(0, 0.0);
}

OracleResult partition_function(const WeightSpec& spec, const TruncationBox& box) {
  check_box(spec, box);
  return OracleResult{run_transfer(spec, box, {}), tail_bound(spec, box)};
}

double exact_correlation(const WeightSpec& spec, const TruncationBox& box, const std::vector<LatticePoint>& pts) {
  check_box(spec, box);
  if (pts.empty()) return 1.0;
  double z = run_transfer(spec, box, {});
  return run_transfer(spec, box, pts) / z;
}

}  // namespace perioloz
