#include "perioloz/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include "perioloz/common.hpp"

namespace perioloz {

PlanePartition PlanePartition::from_rows(std::vector<std::vector<int>> rows) {
  for (auto& row : rows) {
    while (!row.empty() && row.back() == 0) row.pop_back();
  }
  while (!rows.empty() && rows.back().empty()) rows.pop_back();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      if (rows[i][j] < 0) throw DomainError("negative entry");
      if (j + 1 < rows[i].size() && rows[i][j] < rows[i][j + 1])
        throw DomainError("row not weakly decreasing at row " + std::to_string(i + 1));
      if (i + 1 < rows.size()) {
        int below = j < rows[i + 1].size() ? rows[i + 1][j] : 0;
        if (rows[i][j] < below)
          throw DomainError("column not weakly decreasing at column " + std::to_string(j + 1));
      }
    }
    if (i + 1 < rows.size() && rows[i + 1].size() > rows[i].size())
      throw DomainError("column not weakly decreasing");
  }
  PlanePartition pp;
  pp.rows_ = std::move(rows);
  return pp;
}

int PlanePartition::at(int i, int j) const {
  if (i < 1 || j < 1 || i > num_rows()) return 0;
  const auto& row = rows_[i - 1];
  return j <= static_cast<int>(row.size()) ? row[j - 1] : 0;
}

std::int64_t PlanePartition::volume() const {
  std::int64_t v = 0;
  for (const auto& row : rows_)
    for (int x : row) v += x;
  return v;
}

std::int64_t DiagonalSlice::size() const {
  return std::accumulate(parts.begin(), parts.end(), std::int64_t{0});
}

LatticePoint LatticePoint::from_h(int t, double h) {
  double h2 = 2.0 * h;
  long r = std::lround(h2);
  if (std::abs(h2 - static_cast<double>(r)) > 1e-9) throw DomainError("h is not a half-integer");
  return LatticePoint{t, static_cast<int>(r)};
}

bool LatticePoint::parity_ok() const { return ((h2 + std::abs(t)) % 2 + 2) % 2 == 1; }

Partition normalized(Partition p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

DiagonalSlice slice(const PlanePartition& pp, int t) {
  DiagonalSlice s;
  s.t = t;
  for (int i = 1;; ++i) {
    int row = t >= 0 ? i : i - t;
    int col = t >= 0 ? i + t : i;
    int v = pp.at(row, col);
    if (v == 0) break;
    s.parts.push_back(v);
  }
  return s;
}

std::vector<DiagonalSlice> slices(const PlanePartition& pp, int t_lo, int t_hi) {
  std::vector<DiagonalSlice> out;
  for (int t = t_lo; t <= t_hi; ++t) out.push_back(slice(pp, t));
  return out;
}

PlanePartition from_slices(const std::vector<DiagonalSlice>& sl) {
  int nrows = 0;
  int ncols = 0;
  for (const auto& s : sl) {
    int len = static_cast<int>(s.parts.size());
    if (len == 0) continue;
    nrows = std::max(nrows, s.t >= 0 ? len : len - s.t);
    ncols = std::max(ncols, s.t >= 0 ? len + s.t : len);
  }
  std::vector<std::vector<int>> rows(nrows, std::vector<int>(ncols, 0));
  for (const auto& s : sl) {
    for (int i = 1; i <= static_cast<int>(s.parts.size()); ++i) {
      int row = s.t >= 0 ? i : i - s.t;
      int col = s.t >= 0 ? i + s.t : i;
      rows[row - 1][col - 1] = s.parts[i - 1];
    }
  }
  return PlanePartition::from_rows(std::move(rows));
}

bool interlaces(const Partition& mu, const Partition& nu) {
  std::size_t n = std::max(mu.size(), nu.size());
  auto get = [](const Partition& p, std::size_t i) { return i < p.size() ? p[i] : 0; };
  for (std::size_t i = 0; i < n; ++i) {
    if (get(nu, i) > get(mu, i)) return false;
    if (get(nu, i) < get(mu, i + 1)) return false;
  }
  return true;
}

bool occupied(const Partition& lambda, int t, int h2) {
  int twice = h2 + std::abs(t);
  if (((twice % 2) + 2) % 2 != 1) return false;
  int n = (twice - 1) / 2;  // lambda_i - i must equal n
  int len = static_cast<int>(lambda.size());
  if (n <= -(len + 1)) return true;
  for (int i = 1; i <= len; ++i) {
    int v = lambda[i - 1] - i;
    if (v == n) return true;
    if (v < n) return false;
  }
  return false;
}

int count_above(const Partition& lambda, int t, int h2) {
  // particle i sits at 2h = 2(lambda_i - i) + 1 - |t|
  int c = 0;
  int len = static_cast<int>(lambda.size());
  for (int i = 1;; ++i) {
    int lam = i <= len ? lambda[i - 1] : 0;
    int p2 = 2 * (lam - i) + 1 - std::abs(t);
    if (p2 <= h2) break;
    ++c;
  }
  return c;
}

std::vector<LatticePoint> horizontal_lozenges(const PlanePartition& pp, const Window& w) {
  std::vector<LatticePoint> out;
  int lo2 = static_cast<int>(std::ceil(2.0 * w.h_lo - 1e-9));
  int hi2 = static_cast<int>(std::floor(2.0 * w.h_hi + 1e-9));
  for (int t = w.t_lo; t <= w.t_hi; ++t) {
    Partition lam = slice(pp, t).parts;
    for (int h2 = hi2; h2 >= lo2; --h2) {
      if (occupied(lam, t, h2)) out.push_back(LatticePoint{t, h2});
    }
  }
  return out;
}

}  // namespace perioloz
