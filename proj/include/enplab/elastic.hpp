#pragma once

// Lame parameters and the pointwise elastostatic kernels: Kelvin matrix,
// its conormal derivative (the traction kernel used by the boundary
// operator), and the antisymmetric kernel K1.

#include <Eigen/Dense>

namespace enplab::elastic {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// (lambda, mu) with mu > 0 and 3*lambda + 2*mu > 0. The near-incompressible
// regime lambda/mu > 1e6 is rejected: k0 -> 0 there and the spectral
// clusters this library diagnoses merge.
struct LameParams {
  double lambda;
  double mu;
  LameParams(double lambda_, double mu_);
};

struct ElasticConstants {
  double alpha1;  // (1/mu + 1/(2mu+lambda)) / 2
  double alpha2;  // (1/mu - 1/(2mu+lambda)) / 2
  double k0;      // mu / (2(2mu+lambda))
};

ElasticConstants constants(const LameParams& p);

// Gamma_ij(x) = -(alpha1/4pi) delta_ij/|x| - (alpha2/4pi) x_i x_j/|x|^3.
Mat3 kelvin(const LameParams& p, const Vec3& x);

// Column b equals the traction lambda(div u)n + 2 mu eps(u)n of
// u(x) = Gamma(x-y) e_b, taken in x with normal n_x; closed form
//   [ s((d.n)I + d n^T - n d^T) ] / (4 pi r^3)
//     + 3(1-s)(d.n) d d^T / (4 pi r^5),
// d = x-y, r = |d|, s = mu/(2mu+lambda). Homogeneous of degree -2 in d.
Mat3 enp_kernel(const LameParams& p, const Vec3& x, const Vec3& y, const Vec3& n_x);

// K1(x,y) = (n_x d^T - d n_x^T) / (2 pi r^3), antisymmetric.
Mat3 k1_kernel(const Vec3& x, const Vec3& y, const Vec3& n_x);

}  // namespace enplab::elastic
