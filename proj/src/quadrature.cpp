#include "enplab/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace enplab::quad {

std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  Eigen::VectorXd x(n), w(n);
  const int m = (n + 1) / 2;
  for (int k = 0; k < m; ++k) {
    double z = std::cos(M_PI * (k + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Legendre P_n(z) and derivative by the three-term recurrence
      double p0 = 1.0, p1 = z;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[k] = -z;
    x[n - 1 - k] = z;
    const double wk = 2.0 / ((1.0 - z * z) * pp * pp);
    w[k] = wk;
    w[n - 1 - k] = wk;
  }
  return {x, w};
}

}  // namespace enplab::quad
