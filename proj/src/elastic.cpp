#include "enplab/elastic.hpp"

#include <cmath>
#include <stdexcept>

namespace enplab::elastic {

LameParams::LameParams(double lambda_, double mu_) : lambda(lambda_), mu(mu_) {
  if (!(mu > 0.0) || !(3.0 * lambda + 2.0 * mu > 0.0))
    throw std::invalid_argument("LameParams: strong convexity requires mu > 0 and 3*lambda + 2*mu > 0");
  if (lambda / mu > 1e6)
    throw std::invalid_argument("LameParams: lambda/mu > 1e6 rejected (near-incompressible, clusters merge)");
}

ElasticConstants constants(const LameParams& p) {
  const double a = 1.0 / p.mu, b = 1.0 / (2.0 * p.mu + p.lambda);
  return {(a + b) / 2.0, (a - b) / 2.0, p.mu / (2.0 * (2.0 * p.mu + p.lambda))};
}

Mat3 kelvin(const LameParams& p, const Vec3& x) {
  const double r2 = x.squaredNorm();
  if (r2 == 0.0) throw std::domain_error("kelvin: evaluation at the singularity x = 0");
  const double r = std::sqrt(r2);
  const ElasticConstants c = constants(p);
  const double ca = -c.alpha1 / (4.0 * M_PI * r);
  const double cb = -c.alpha2 / (4.0 * M_PI * r2 * r);
  // fill one triangle and mirror so symmetry is exact in floating point
  Mat3 g;
  for (int i = 0; i < 3; ++i) {
    g(i, i) = ca + cb * (x[i] * x[i]);
    for (int j = i + 1; j < 3; ++j) {
      const double v = cb * (x[i] * x[j]);
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

Mat3 enp_kernel(const LameParams& p, const Vec3& x, const Vec3& y, const Vec3& n_x) {
  const Vec3 d = x - y;
  const double r2 = d.squaredNorm();
  if (r2 == 0.0) throw std::domain_error("enp_kernel: evaluation at the singularity x = y");
  const double r = std::sqrt(r2);
  const double r3 = r * r2, r5 = r3 * r2;
  const double s = p.mu / (2.0 * p.mu + p.lambda);
  const double dn = d.dot(n_x);
  Mat3 k = (s * dn / (4.0 * M_PI * r3)) * Mat3::Identity();
  k.noalias() += (s / (4.0 * M_PI * r3)) * (d * n_x.transpose());
  k.noalias() -= (s / (4.0 * M_PI * r3)) * (n_x * d.transpose());
  k.noalias() += (3.0 * (1.0 - s) * dn / (4.0 * M_PI * r5)) * (d * d.transpose());
  return k;
}

Mat3 k1_kernel(const Vec3& x, const Vec3& y, const Vec3& n_x) {
  const Vec3 d = x - y;
  const double r2 = d.squaredNorm();
  if (r2 == 0.0) throw std::domain_error("k1_kernel: evaluation at the singularity x = y");
  const double c = 1.0 / (2.0 * M_PI * r2 * std::sqrt(r2));
  // fill one triangle and mirror so antisymmetry is exact in floating point
  Mat3 k = Mat3::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const double v = c * (n_x[i] * d[j] - d[i] * n_x[j]);
      k(i, j) = v;
      k(j, i) = -v;
    }
  return k;
}

}  // namespace enplab::elastic
