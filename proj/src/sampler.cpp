#include "perioloz/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace perioloz {

namespace {

double cell_p(const WeightSpec& spec, int i, int j) { return x_minus(spec, 0.5 - i) * x_plus(spec, j - 0.5); }

double row_log_keep(const WeightSpec& spec, int i) {
  double s = 0.0;
  for (int j = 1; j <= spec.d; ++j) s += std::log1p(-cell_p(spec, i, j));
  return s;
}

std::mt19937_64 substream(std::uint64_t seed, std::int64_t index) {
  std::uint64_t st = seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(index + 1));
  std::uint64_t a = splitmix64(st);
  std::uint64_t b = splitmix64(st);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32), static_cast<std::uint32_t>(b),
                    static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64& g) { return (static_cast<double>(g() >> 11) + 1.0) * 0x1.0p-53; }

// Fomin's local rule: rho from lambda = G(i,j+1), nu = G(i+1,j), mu = G(i+1,j+1) and the cell value n.
void local_rule(const Partition& lam, const Partition& nu, const Partition& mu, int n, Partition& rho) {
  auto get = [](const Partition& p, std::size_t k) { return k < p.size() ? p[k] : 0; };
  std::size_t len = std::max(lam.size(), nu.size()) + 1;
  rho.assign(len, 0);
  rho[0] = std::max(get(lam, 0), get(nu, 0)) + n;
  for (std::size_t k = 1; k < len; ++k)
    rho[k] = std::max(get(lam, k), get(nu, k)) + std::min(get(lam, k - 1), get(nu, k - 1)) - get(mu, k - 1);
  while (!rho.empty() && rho.back() == 0) rho.pop_back();
}

int resolve_cut(const WeightSpec& spec, const SampleRun& run) {
  if (run.row_cut > 0) {
    if (truncation_mass(spec, run.row_cut) > run.tail_tol)
      throw DomainError("sample: tail_tol unachievable with the requested row_cut");
    return run.row_cut;
  }
  return choose_row_cut(spec, run.tail_tol);
}

// Runs the growth diagram; calls keep(t, partition) for every slice t in [1-R, d-1].
template <class Keep>
void grow(const WeightSpec& spec, int R, std::mt19937_64& gen, Keep&& keep) {
  const int d = spec.d;
  std::vector<double> xp(d + 1);
  for (int j = 1; j <= d; ++j) xp[j] = x_plus(spec, j - 0.5);
  std::vector<Partition> below(d + 2), cur(d + 2);
  for (int i = R; i >= 1; --i) {
    const double xm = x_minus(spec, 0.5 - i);
    cur[d + 1].clear();
    // draws in a fixed order (j = 1..d) for reproducibility
    std::vector<int> w(d + 1, 0);
    for (int j = 1; j <= d; ++j) w[j] = geometric_draw(xm * xp[j], uniform01(gen));
    for (int j = d; j >= 1; --j) local_rule(cur[j + 1], below[j], below[j + 1], w[j], cur[j]);
    keep(1 - i, cur[1]);
    if (i == 1)
      for (int j = 2; j <= d; ++j) keep(j - 1, cur[j]);
    std::swap(below, cur);
  }
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

int geometric_draw(double p, double u) {
  if (p <= 0.0 || u >= 1.0) return 0;
  return static_cast<int>(std::floor(std::log(u) / std::log(p)));
}

double truncation_mass(const WeightSpec& spec, int row_cut) {
  double s = 0.0;
  for (int i = row_cut + 1;; ++i) {
    double l = row_log_keep(spec, i);
    s += l;
    if (-l < 1e-300 || (i > row_cut + 2 * spec.k && -l < 1e-17 * -s)) break;
  }
  return -std::expm1(s);
}

int choose_row_cut(const WeightSpec& spec, double tail_tol, int max_rows) {
  std::vector<double> rows;
  for (int i = 1; i <= max_rows + 1; ++i) {
    double l = row_log_keep(spec, i);
    rows.push_back(l);
    if (-l < 1e-300 || (i > 2 * spec.k && -l < 1e-19)) break;
  }
  double suffix = 0.0;
  int cut = static_cast<int>(rows.size());
  for (int R = static_cast<int>(rows.size()) - 1; R >= 0; --R) {
    suffix += rows[R];  // rows[R] is row R+1
    if (-std::expm1(suffix) > tail_tol) break;
    cut = R;
  }
  cut = std::max(cut, 1);
  if (cut > max_rows) throw DomainError("choose_row_cut: tail_tol unachievable within max_rows");
  return cut;
}

std::vector<DiagonalSlice> sample_slices(const WeightSpec& spec, const SampleRun& run, std::int64_t index, int t_lo,
                                         int t_hi) {
  const int R = resolve_cut(spec, run);
  auto gen = substream(run.seed, index);
  std::vector<DiagonalSlice> out;
  for (int t = t_lo; t <= t_hi; ++t) out.push_back(DiagonalSlice{t, {}});
  grow(spec, R, gen, [&](int t, const Partition& p) {
    if (t >= t_lo && t <= t_hi) out[t - t_lo].parts = p;
  });
  return out;
}

PlanePartition sample(const WeightSpec& spec, const SampleRun& run, std::int64_t index) {
  const int R = resolve_cut(spec, run);
  auto gen = substream(run.seed, index);
  std::vector<DiagonalSlice> sl;
  grow(spec, R, gen, [&](int t, const Partition& p) {
    if (!p.empty()) sl.push_back(DiagonalSlice{t, p});
  });
  return from_slices(sl);
}

std::vector<PlanePartition> sample_batch(const WeightSpec& spec, const SampleRun& run, std::int64_t first,
                                         std::int64_t count, Exec exec) {
  std::vector<PlanePartition> out(count);
  SampleRun fixed = run;
  fixed.row_cut = resolve_cut(spec, run);
  if (exec == Exec::Serial) {
    for (std::int64_t s = 0; s < count; ++s) out[s] = sample(spec, fixed, first + s);
  } else {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t s = 0; s < count; ++s) out[s] = sample(spec, fixed, first + s);
  }
  return out;
}

Estimate empirical_correlation(const std::vector<PlanePartition>& samples, const std::vector<LatticePoint>& pts) {
  CorrelationCounter c({pts});
  for (const auto& pp : samples) c.add(pp);
  return c.estimate(0);
}

CorrelationCounter::CorrelationCounter(std::vector<std::vector<LatticePoint>> sets)
    : sets_(std::move(sets)), hits_(sets_.size(), 0) {}

void CorrelationCounter::add(const PlanePartition& pp) {
  std::map<int, Partition> cache;
  for (std::size_t s = 0; s < sets_.size(); ++s) {
    bool all = true;
    for (const auto& p : sets_[s]) {
      auto it = cache.find(p.t);
      if (it == cache.end()) it = cache.emplace(p.t, slice(pp, p.t).parts).first;
      if (!occupied(it->second, p.t, p.h2)) {
        all = false;
        break;
      }
    }
    if (all) ++hits_[s];
  }
  ++n_;
}

void CorrelationCounter::add_slices(const std::vector<DiagonalSlice>& sl) {
  std::map<int, const Partition*> by_t;
  for (const auto& s : sl) by_t[s.t] = &s.parts;
  for (std::size_t s = 0; s < sets_.size(); ++s) {
    bool all = true;
    for (const auto& p : sets_[s]) {
      auto it = by_t.find(p.t);
      if (it == by_t.end()) throw DomainError("CorrelationCounter: slice missing for a point");
      if (!occupied(*it->second, p.t, p.h2)) {
        all = false;
        break;
      }
    }
    if (all) ++hits_[s];
  }
  ++n_;
}

Estimate CorrelationCounter::estimate(std::size_t set) const {
  Estimate e;
  e.n = n_;
  if (n_ == 0) return e;
  e.mean = static_cast<double>(hits_[set]) / static_cast<double>(n_);
  e.stderr_ = n_ > 1 ? std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(n_)) : 0.0;
  return e;
}

void CorrelationCounter::merge(const CorrelationCounter& other) {
  for (std::size_t s = 0; s < hits_.size(); ++s) hits_[s] += other.hits_[s];
  n_ += other.n_;
}

}  // namespace perioloz
