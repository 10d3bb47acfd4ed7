#pragma once

#include <cstdint>
#include <vector>

#include "perioloz/common.hpp"
#include "perioloz/lattice.hpp"
#include "perioloz/weights.hpp"

namespace perioloz {

struct SampleRun {
  std::int64_t n_samples = 1;
  std::uint64_t seed = 0;
  int row_cut = 0;         // 0 = smallest cut meeting tail_tol
  double tail_tol = 1e-9;
};

// Probability that some cell below row_cut is nonzero: 1 - prod (1 - p_ij) over the discarded cells.
double truncation_mass(const WeightSpec& spec, int row_cut);

// Smallest row cut whose discarded mass is <= tail_tol; throws DomainError if none within max_rows.
int choose_row_cut(const WeightSpec& spec, double tail_tol, int max_rows = 1000000);

// Sample number `index` of the run; depends only on (spec, seed, index, row_cut).
PlanePartition sample(const WeightSpec& spec, const SampleRun& run, std::int64_t index = 0);

// Slices t_lo..t_hi of one sample, without materialising the array.
std::vector<DiagonalSlice> sample_slices(const WeightSpec& spec, const SampleRun& run, std::int64_t index, int t_lo,
                                         int t_hi);

std::vector<PlanePartition> sample_batch(const WeightSpec& spec, const SampleRun& run, std::int64_t first,
                                         std::int64_t count, Exec exec);

struct Estimate {
  double mean = 0;
  double stderr_ = 0;
  std::int64_t n = 0;
};

Estimate empirical_correlation(const std::vector<PlanePartition>& samples, const std::vector<LatticePoint>& pts);

// Streaming accumulator for several point sets at once.
class CorrelationCounter {
 public:
  explicit CorrelationCounter(std::vector<std::vector<LatticePoint>> sets);
  void add(const PlanePartition& pp);
  void add_slices(const std::vector<DiagonalSlice>& sl);  // slices must cover every t in the sets
  Estimate estimate(std::size_t set) const;
  std::size_t size() const { return sets_.size(); }
  void merge(const CorrelationCounter& other);

 private:
  std::vector<std::vector<LatticePoint>> sets_;
  std::vector<std::int64_t> hits_;
  std::int64_t n_ = 0;
};

// 53-bit uniform in (0, 1] and geometric draws used by the sampler, exposed for testing.
std::uint64_t splitmix64(std::uint64_t& state);
int geometric_draw(double p, double u);

}  // namespace perioloz
