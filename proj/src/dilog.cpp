#include <cmath>

#include "perioloz/roots.hpp"

namespace perioloz {

// Bernoulli series in u = -ln(1 - z) after mapping z into |z| <= 1, Re z <= 1/2.
cplx dilog(cplx z) {
  constexpr double pi2_6 = kPi * kPi / 6.0;
  constexpr double bf[10] = {-1.0 / 4.0,
                             1.0 / 36.0,
                             -1.0 / 3600.0,
                             1.0 / 211680.0,
                             -1.0 / 10886400.0,
                             1.0 / 526901760.0,
                             -4.064761645144225527e-11,
                             8.921691020456452555e-13,
                             -1.993929586072107569e-14,
                             4.518980029619918192e-16};
  const double rz = z.real();
  const double nz = std::norm(z);
  if (nz < 1e-30) return z * (1.0 + 0.25 * z);
  if (z == cplx(1.0)) return pi2_6;
  cplx u, rest;
  double sgn;
  if (rz <= 0.5) {
    if (nz > 1.0) {
      cplx lz = std::log(-z);
      u = -std::log(1.0 - 1.0 / z);
      rest = -0.5 * lz * lz - pi2_6;
      sgn = -1;
    } else {
      u = -std::log(1.0 - z);
      rest = 0.0;
      sgn = 1;
    }
  } else {
    if (nz <= 2 * rz) {
      u = -std::log(z);
      rest = u * std::log(1.0 - z) + pi2_6;
      sgn = -1;
    } else {
      cplx lz = std::log(-z);
      u = -std::log(1.0 - 1.0 / z);
      rest = -0.5 * lz * lz - pi2_6;
      sgn = -1;
    }
  }
  const cplx u2 = u * u;
  const cplx u4 = u2 * u2;
  const cplx sum =
      u + u2 * (bf[0] + u * (bf[1] + u2 * (bf[2] + u2 * bf[3] + u4 * (bf[4] + u2 * bf[5]) +
                                           u4 * u4 * (bf[6] + u2 * bf[7] + u4 * (bf[8] + u2 * bf[9])))));
  return sgn * sum + rest;
}

}  // namespace perioloz
