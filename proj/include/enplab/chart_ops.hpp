#pragma once

// Windowed chart-level operators: the X blocks combining the planar Riesz
// transforms with sampled chart coefficients, the 3x3 block-antisymmetric
// operator built from them, the pullback map, and the discrete two-sided
// realization of the surface/chart intertwining relation.
//
// All window operators are compressed to the nodes where the inner cutoff
// chi1 is positive. The compression is exact for operator algebra: every X
// carries a right chi1 factor that annihilates the complement, so products
// of compressed matrices equal compressed products of the full-grid
// operators, entry for entry.

#include "enplab/geometry.hpp"
#include "enplab/riesz.hpp"
#include "enplab/surface.hpp"

#include <Eigen/Dense>

#include <functional>

namespace enplab::chart_ops {

using geom::Chart;
using geom::CutoffPair;
using geom::MetricField;
using geom::Vec2;
using geom::Vec3;
using riesz::PlanarGrid;

// Inner-window compression of the three X operators sharing one pair of
// Riesz blocks. `w1` lists the grid indices of the window and the chi1
// samples there; the matrices act on values at exactly those nodes.
struct WindowX {
  riesz::Window w1;
  Eigen::MatrixXd x12, x13, x23;
};

WindowX assemble_window_x(const Chart& chart, const MetricField& field,
                          const CutoffPair& cut, const PlanarGrid& grid);

// Single window operator X_ij = chi2 * (m_a1 R_1 + m_a2 R_2) * chi1 with the
// coefficient row a keyed by (i,j) in {(1,2),(1,3),(2,3)}; on the window
// chi2 == 1, so rows carry the m samples and columns the chi1 samples.
// Throws std::invalid_argument for any other pair or when the outer cutoff
// support is not nested inside both the chart domain and the grid.
Eigen::MatrixXd assemble_X(const Chart& chart, const MetricField& field,
                           const CutoffPair& cut, const PlanarGrid& grid, int i, int j);

// [[0, X12, X13], [-X12, 0, X23], [-X13, -X23, 0]] on the window; the lower
// blocks are exact negations of the upper ones.
Eigen::MatrixXd assemble_BR(const Chart& chart, const MetricField& field,
                            const CutoffPair& cut, const PlanarGrid& grid);
Eigen::MatrixXd br_from_blocks(const WindowX& wx);

// |d1 Phi x d2 Phi|(u)
double area_element(const Chart& chart, const Vec2& u);

// Pullback sample f(Phi(u)) |d1 Phi x d2 Phi|(u) at every grid node. Throws
// std::domain_error if a node lies outside the chart domain.
Eigen::VectorXd pullback(const Chart& chart, const PlanarGrid& grid,
                         const std::function<double(const Vec3&)>& f);

// Discrete matrices of both sides of the intertwining relation for the
// scalar component pair (i,j): maps from nodal values of a surface density
// to values at the inner-window grid nodes. `lhs` pulls back the windowed
// surface rotation operator; `rhs` applies the chart operator X_ij to the
// band-limited pullback. `chi1_on_surface` must evaluate the inner cutoff in
// chart coordinates at a surface point (zero off the chart patch), and the
// chart must parametrize part of the quadrature surface.
struct ChartConsistency {
  Eigen::MatrixXd lhs;
  Eigen::MatrixXd rhs;
};
ChartConsistency chart_consistency(const Chart& chart, const MetricField& field,
                                   const CutoffPair& cut, const PlanarGrid& grid,
                                   const surf::SurfaceQuadrature& quad,
                                   const std::function<double(const Vec3&)>& chi1_on_surface,
                                   int i, int j);

}  // namespace enplab::chart_ops
