#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "perioloz/lattice.hpp"
#include "perioloz/weights.hpp"

namespace perioloz {

// Plane partitions with at most max_rows rows, d columns and entries <= max_entry.
struct TruncationBox {
  int max_rows = 8;
  int d = 4;
  int max_entry = 12;
};

// Upper bound on the probability that a sample leaves the box.
double tail_bound(const WeightSpec& spec, const TruncationBox& box);

// Closed-form partition function of the infinite-row measure with d columns (hook product).
double partition_function_product(const WeightSpec& spec);

// Weight prod_t q_t^{|pi(t)|}.
double weight_of(const WeightSpec& spec, const PlanePartition& pp);

// DFS over interlacing slice sequences; every box partition visited once. Throws BudgetError past budget nodes.
void enumerate(const WeightSpec& spec, const TruncationBox& box,
               const std::function<void(const PlanePartition&, double)>& visit, std::uint64_t budget = 100000000ULL);

struct OracleResult {
  double Z = 0;          // box partition function
  double tail_bound = 0;
};

// Slice transfer matrix with box prefix sums (exact on the box).
OracleResult partition_function(const WeightSpec& spec, const TruncationBox& box);

// Probability under the box-restricted measure that every point is a horizontal lozenge.
double exact_correlation(const WeightSpec& spec, const TruncationBox& box, const std::vector<LatticePoint>& pts);

}  // namespace perioloz
