#include "enplab/chart_ops.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace enplab::chart_ops {

namespace {

void validate_nesting(const Chart& chart, const CutoffPair& cut, const PlanarGrid& grid) {
  const double hw = std::min(chart.domain.half1, chart.domain.half2);
  if (cut.r2_supp > hw)
    throw std::invalid_argument("assemble_X: outer cutoff support exceeds the chart domain");
  if (cut.r2_supp > grid.S)
    throw std::invalid_argument("assemble_X: outer cutoff support exceeds the grid");
}

struct WindowCore {
  riesz::Window w1;
  Eigen::MatrixXd r1, r2;  // Riesz blocks on the window
  Eigen::MatrixXd m;       // coefficient rows (m11,m12,m21,m22,m31,m32) per node
};

WindowCore build_core(const Chart& chart, const MetricField& field, const CutoffPair& cut,
                      const PlanarGrid& grid) {
  validate_nesting(chart, cut, grid);
  WindowCore core;
  core.w1 = riesz::make_window(grid, cut.chi1);
  const riesz::GridMetricCache gm(field, grid);
  core.r1 = riesz::riesz_block(gm, grid, 1, core.w1.idx, core.w1.idx);
  core.r2 = riesz::riesz_block(gm, grid, 2, core.w1.idx, core.w1.idx);
  const int k = static_cast<int>(core.w1.idx.size());
  core.m.resize(k, 6);
  for (int r = 0; r < k; ++r) {
    const geom::Jac32 mm = geom::mij_coefficients(chart, grid.node(core.w1.idx[r]));
    core.m.row(r) << mm(0, 0), mm(0, 1), mm(1, 0), mm(1, 1), mm(2, 0), mm(2, 1);
  }
  return core;
}

// row index into the coefficient table for a component pair
int pair_row(int i, int j) {
  if (i == 1 && j == 2) return 0;
  if (i == 1 && j == 3) return 1;
  if (i == 2 && j == 3) return 2;
  throw std::invalid_argument("assemble_X: pair must be (1,2), (1,3) or (2,3)");
}

Eigen::MatrixXd make_x(const WindowCore& core, int a) {
  Eigen::MatrixXd x = core.m.col(2 * a).asDiagonal() * core.r1;
  x += core.m.col(2 * a + 1).asDiagonal() * core.r2;
  x.array().rowwise() *= core.w1.chi.transpose().array();
  return x;
}

}  // namespace

WindowX assemble_window_x(const Chart& chart, const MetricField& field, const CutoffPair& cut,
                          const PlanarGrid& grid) {
  WindowCore core = build_core(chart, field, cut, grid);
  WindowX wx;
  wx.x12 = make_x(core, 0);
  wx.x13 = make_x(core, 1);
  wx.x23 = make_x(core, 2);
  wx.w1 = std::move(core.w1);
  return wx;
}

Eigen::MatrixXd assemble_X(const Chart& chart, const MetricField& field, const CutoffPair& cut,
                           const PlanarGrid& grid, int i, int j) {
  const int a = pair_row(i, j);
  const WindowCore core = build_core(chart, field, cut, grid);
  return make_x(core, a);
}

Eigen::MatrixXd br_from_blocks(const WindowX& wx) {
  const long k = wx.x12.rows();
  Eigen::MatrixXd br = Eigen::MatrixXd::Zero(3 * k, 3 * k);
  br.block(0, k, k, k) = wx.x12;
  br.block(0, 2 * k, k, k) = wx.x13;
  br.block(k, 2 * k, k, k) = wx.x23;
  br.block(k, 0, k, k) = -wx.x12;
  br.block(2 * k, 0, k, k) = -wx.x13;
  br.block(2 * k, k, k, k) = -wx.x23;
  return br;
}

Eigen::MatrixXd assemble_BR(const Chart& chart, const MetricField& field, const CutoffPair& cut,
                            const PlanarGrid& grid) {
  return br_from_blocks(assemble_window_x(chart, field, cut, grid));
}

double area_element(const Chart& chart, const Vec2& u) {
  const geom::Jac32 jac = chart.d_phi(u);
  return jac.col(0).cross(jac.col(1)).norm();
}

Eigen::VectorXd pullback(const Chart& chart, const PlanarGrid& grid,
                         const std::function<double(const Vec3&)>& f) {
  Eigen::VectorXd out(grid.size());
  for (int p = 0; p < grid.size(); ++p) {
    const Vec2 u = grid.node(p);
    if (!chart.domain.contains(u))
      throw std::domain_error("pullback: grid node outside the chart domain");
    out[p] = f(chart.phi(u)) * area_element(chart, u);
  }
  return out;
}

ChartConsistency chart_consistency(const Chart& chart, const MetricField& field,
                                   const CutoffPair& cut, const PlanarGrid& grid,
                                   const surf::SurfaceQuadrature& quad,
                                   const std::function<double(const Vec3&)>& chi1_on_surface,
                                   int i, int j) {
  const int a = pair_row(i, j);
  const WindowCore core = build_core(chart, field, cut, grid);
  const int k = static_cast<int>(core.w1.idx.size());
  const int m = quad.size();

  // unit-sphere preimages of the chart images of the window nodes, and the
  // pullback area factors there
  Eigen::Matrix3Xd su(3, k);
  Eigen::VectorXd jac(k);
  for (int r = 0; r < k; ++r) {
    const Vec2 u = grid.node(core.w1.idx[r]);
    const Vec3 y = chart.phi(u);
    Vec3 pre = quad.rot.transpose() * y;
    pre = Vec3(pre[0] / quad.a, pre[1] / quad.b, pre[2] / quad.c);
    su.col(r) = pre.normalized();
    jac[r] = area_element(chart, u);
  }

  // pulled-back rotation-operator rows: component (i,j) slice, columns
  // scaled by the inner cutoff at the source, rows by the area factor
  const Eigen::MatrixXd trows = surf::block_rows_at(
      quad, su, [](const Vec3& x, const Vec3& n_x, const Vec3& y) {
        return elastic::k1_kernel(x, y, n_x);
      });
  Eigen::VectorXd chi_surf(m);
  for (int q = 0; q < m; ++q) chi_surf[q] = chi1_on_surface(quad.x.col(q));
  ChartConsistency out;
  out.lhs = trows.block((i - 1) * k, (j - 1) * m, k, m);
  out.lhs.array().rowwise() *= chi_surf.transpose().array();
  out.lhs.array().colwise() *= jac.array();

  // chart operator applied to the band-limited pullback sampling map
  const Eigen::MatrixXd interp = surf::sh_basis(quad.N, su) * surf::sh_analysis(quad.N, quad);
  out.rhs.noalias() = make_x(core, a) * (jac.asDiagonal() * interp);
  return out;
}

}  // namespace enplab::chart_ops
