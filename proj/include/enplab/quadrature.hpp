#pragma once

#include <Eigen/Dense>

#include <utility>

namespace enplab::quad {

// n-point Gauss-Legendre rule on (-1,1): nodes ascending, weights > 0.
// Newton iteration on the Legendre recurrence; accurate to ~1e-15.
std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int n);

}  // namespace enplab::quad
