#pragma once

// Closed-surface quadrature grids (Gauss-Legendre x trapezoid on rotated
// ellipsoids), orthonormal real spherical harmonics with a quadrature-exact
// analysis operator, and dense Nystrom assembly of surface integral
// operators. Singular rows are integrated on a rotated-pole rule that is
// Gauss-Legendre in the polar angle itself, so the area element cancels the
// 1/r kernel singularity and the odd principal-value part cancels between
// antipodal azimuth nodes; densities at rotated nodes come from band-limited
// spherical-harmonic quasi-interpolation of nodal values.

#include "enplab/elastic.hpp"

#include <Eigen/Dense>

#include <functional>

namespace enplab::surf {

using elastic::LameParams;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

struct SurfaceQuadrature {
  int N = 0;                  // polar node count; 2N azimuthal, M = 2N^2
  double a = 1, b = 1, c = 1; // semi-axes
  Mat3 rot;                   // rigid rotation applied to the embedded surface
  Eigen::Matrix3Xd s;         // unit-sphere preimages (standard grid)
  Eigen::Matrix3Xd x;         // surface points rot * diag(a,b,c) * s
  Eigen::Matrix3Xd nrm;       // outward unit normals
  Eigen::VectorXd w;          // weights including the surface area element
  Eigen::VectorXd w0;         // unit-sphere weights of the preimage grid

  int size() const { return static_cast<int>(w.size()); }
  Vec3 point(const Vec3& su) const;
  Vec3 unit_normal(const Vec3& su) const;
  double area_scale(const Vec3& su) const;  // dsigma / dsigma_unit_sphere
};

SurfaceQuadrature ellipsoid_quadrature(double a, double b, double c, int N,
                                       const Mat3& rot = Mat3::Identity());
SurfaceQuadrature sphere_quadrature(double radius, int N,
                                    const Mat3& rot = Mat3::Identity());

// First L^2 orthonormal real spherical harmonics, one row per unit vector.
Eigen::MatrixXd sh_basis(int L, const Eigen::Matrix3Xd& pts);
// Coefficients-from-nodal-values matrix (L^2 x M); together with sh_basis it
// reproduces any function of degree < L exactly when L <= quad.N.
Eigen::MatrixXd sh_analysis(int L, const SurfaceQuadrature& quad);

using MatrixKernel = std::function<Mat3(const Vec3& x, const Vec3& n_x, const Vec3& y)>;
using ScalarKernel = std::function<double(const Vec3& x, const Vec3& n_x, const Vec3& y)>;

// 3M x 3M component-major matrix of the elastic boundary operator: row
// block a, column block b hold the (a,b) kernel component on the grid.
Eigen::MatrixXd assemble_K(const LameParams& p, const SurfaceQuadrature& quad);

// 3M x 3M matrix of the rotation kernel; zero diagonal blocks and bitwise
// block antisymmetry (blocks (2,1), (3,1), (3,2) are exact negations).
Eigen::MatrixXd assemble_T(const SurfaceQuadrature& quad);

// M x M matrix of a scalar kernel under the same singular-row treatment.
Eigen::MatrixXd assemble_scalar(const SurfaceQuadrature& quad, const ScalarKernel& k);

// Operator rows at arbitrary on-surface targets given by their unit-sphere
// preimages; returns (3 nt) x (3 M), component-major like assemble_K.
Eigen::MatrixXd block_rows_at(const SurfaceQuadrature& quad,
                              const Eigen::Matrix3Xd& su_targets, const MatrixKernel& k);

}  // namespace enplab::surf
