#pragma once

#include <cstdint>
#include <vector>

namespace perioloz {

using Partition = std::vector<int>;  // weakly decreasing, no trailing zeros

// Finite array pi_{i,j} (1-based), rows stored without trailing zeros.
class PlanePartition {
 public:
  PlanePartition() = default;
  // Throws DomainError if rows are not weakly decreasing along rows and columns.
  static PlanePartition from_rows(std::vector<std::vector<int>> rows);

  int at(int i, int j) const;
  int num_rows() const { return static_cast<int>(rows_.size()); }
  int row_length(int i) const { return static_cast<int>(rows_[i - 1].size()); }
  const std::vector<std::vector<int>>& rows() const { return rows_; }
  std::int64_t volume() const;
  bool empty() const { return rows_.empty(); }

  bool operator==(const PlanePartition& o) const { return rows_ == o.rows_; }
  bool operator<(const PlanePartition& o) const { return rows_ < o.rows_; }

 private:
  std::vector<std::vector<int>> rows_;
};

struct DiagonalSlice {
  int t = 0;
  Partition parts;
  std::int64_t size() const;
};

// Horizontal-lozenge center. h is stored doubled so half-integers stay exact.
struct LatticePoint {
  int t = 0;
  int h2 = 0;
  double h() const { return 0.5 * h2; }
  static LatticePoint from_h(int t, double h);
  bool parity_ok() const;
  bool operator==(const LatticePoint& o) const { return t == o.t && h2 == o.h2; }
  bool operator<(const LatticePoint& o) const { return t != o.t ? t < o.t : h2 < o.h2; }
};

struct Window {
  int t_lo = 0, t_hi = 0;
  double h_lo = 0, h_hi = 0;
};

DiagonalSlice slice(const PlanePartition& pp, int t);
std::vector<DiagonalSlice> slices(const PlanePartition& pp, int t_lo, int t_hi);

// Rebuilds the array from slices t_lo..t_hi (slices outside are taken as empty).
PlanePartition from_slices(const std::vector<DiagonalSlice>& sl);

// mu_1 >= nu_1 >= mu_2 >= nu_2 >= ...
bool interlaces(const Partition& mu, const Partition& nu);

// Particle positions on slice t satisfy h + |t|/2 = lambda_i - i + 1/2.
bool occupied(const Partition& lambda, int t, int h2);

// Number of particles of slice t strictly above height h2/2.
int count_above(const Partition& lambda, int t, int h2);

std::vector<LatticePoint> horizontal_lozenges(const PlanePartition& pp, const Window& w);

Partition normalized(Partition p);

}  // namespace perioloz
