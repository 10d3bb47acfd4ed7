#pragma once

#include <vector>

#include "perioloz/common.hpp"

namespace perioloz {

// Dense row-major square matrix.
struct CMatrix {
  int n = 0;
  std::vector<cplx> a;
  explicit CMatrix(int n_ = 0) : n(n_), a(static_cast<std::size_t>(n_) * n_) {}
  cplx& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  cplx operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

// LU with partial pivoting; det of the empty matrix is 1.
cplx determinant(CMatrix m);

}  // namespace perioloz
