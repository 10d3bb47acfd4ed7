#include "perioloz/linalg.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include <omp.h>

namespace perioloz {

cplx determinant(CMatrix m) {
  const int n = m.n;
  cplx det = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(m(r, c)) > std::abs(m(piv, c))) piv = r;
    if (m(piv, c) == cplx(0.0)) return 0.0;
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(m(c, j), m(piv, j));
      det = -det;
    }
    det *= m(c, c);
    for (int r = c + 1; r < n; ++r) {
      cplx f = m(r, c) / m(c, c);
      for (int j = c + 1; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

int configure_threads_from_env() {
  static int applied = [] {
    const char* v = std::getenv("PERIOLOZ_THREADS");
    if (v == nullptr) return 0;
    int n = std::atoi(v);
    if (n > 0) omp_set_num_threads(n);
    return n;
  }();
  return applied;
}

const char* version_string() { return "perioloz 1.0.0"; }

}  // namespace perioloz
