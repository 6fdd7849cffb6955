#pragma once

// Planar discretization of the surface Riesz transforms R_j^g, the
// frozen-coefficient operators R_ij realized through their symbols, the
// flat FFT-multiplier oracle, and the difference-kernel singularity study.

#include "enplab/geometry.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace enplab::riesz {

using geom::Metric2;
using geom::Vec2;

// Uniform cell-centered grid on [-S,S]^2; no node sits at the origin.
struct PlanarGrid {
  double S;  // half-width
  int n;     // nodes per side, even

  PlanarGrid(double S_, int n_);
  double h() const { return 2.0 * S / n; }
  int size() const { return n * n; }
  // row-major index idx = i*n + j
  Vec2 node(int idx) const {
    const double hh = h();
    return Vec2(-S + (idx / n + 0.5) * hh, -S + (idx % n + 0.5) * hh);
  }
};

// <w, G w>^(-3/2)
double l_form(const Metric2& g, const Vec2& w);

// w_j * l_form, j in {1,2}
double r_kernel(int j, const Metric2& g, const Vec2& w);

// -i det(G)^(-1/2) (sum_k g^{jk} xi_k) / sqrt(sum g^{kl} xi_k xi_l)
std::complex<double> symbol(const Metric2& g, const Vec2& xi, int j);

// Metric samples at every grid node.
struct GridMetricCache {
  std::vector<Metric2> g;
  GridMetricCache(const geom::MetricField& field, const PlanarGrid& grid);
};

// Grid indices where a cutoff is positive, with the cutoff samples.
struct Window {
  std::vector<int> idx;
  Eigen::VectorXd chi;
};
Window make_window(const PlanarGrid& grid,
                   const std::function<double(const Vec2&)>& cutoff);

// Dense punctured Nystrom matrix A[p,q] = (1/2pi) r_j(G(u_p), u_p-u_q) h^2,
// zero diagonal. The parallel builder is row-parallel with no shared
// accumulators and is bitwise identical to the serial reference.
Eigen::MatrixXd assemble_riesz(const geom::MetricField& field, const PlanarGrid& grid, int j);
Eigen::MatrixXd assemble_riesz_serial(const geom::MetricField& field, const PlanarGrid& grid, int j);

// Row block over `rows` (all n^2 columns) and column block over `cols`
// (all n^2 rows) of the same matrix, for windowed compositions.
Eigen::MatrixXd riesz_rows(const GridMetricCache& gm, const PlanarGrid& grid, int j,
                           const std::vector<int>& rows);
Eigen::MatrixXd riesz_cols(const GridMetricCache& gm, const PlanarGrid& grid, int j,
                           const std::vector<int>& cols);

// Sub-block over rows x cols of the same matrix, without forming the full
// row block first.
Eigen::MatrixXd riesz_block(const GridMetricCache& gm, const PlanarGrid& grid, int j,
                            const std::vector<int>& rows, const std::vector<int>& cols);

// Product of the row block of R_i over `rows` with a cached right factor
// B (n^2 x k), streamed in bounded row chunks to limit memory.
Eigen::MatrixXd riesz_rows_times(const GridMetricCache& gm, const PlanarGrid& grid, int i,
                                 const std::vector<int>& rows, const Eigen::MatrixXd& B,
                                 int chunk = 768);

// Applies the flat multiplier -i xi_j/|xi| through the DFT; the xi = 0 bin
// and the unpaired Nyquist lines are set to zero so real input stays real.
Eigen::VectorXd flat_multiplier_apply(const Eigen::VectorXd& f, const PlanarGrid& grid, int j);

// Applies the flat punctured Nystrom matrix without forming it: the rows
// are translates of one stencil, so a zero-padded FFT convolution
// reproduces the dense matvec exactly (up to roundoff).
Eigen::VectorXd flat_nystrom_apply(const Eigen::VectorXd& f, const PlanarGrid& grid, int j);

// Frozen-coefficient operator on rows x cols: for each target row p the
// matrix row realizes the inverse DFT of the product symbol
// sigma_i(G(u_p), .) sigma_j(G(u_p), .) applied cyclically on the grid.
Eigen::MatrixXd assemble_rij(const GridMetricCache& gm, const PlanarGrid& grid, int i, int j,
                             const std::vector<int>& rows, const std::vector<int>& cols);

// Difference kernel k_{d1,d2}(u,w): integral over the plane minus the two
// excluded disks of r_i(u,u-v)[r_j(v,v-w) - r_j(u,v-w)]. `value` integrates
// a disk of radius 8|u-w| around u with exact arc exclusion; `tail_bound`
// bounds the truncated far field by rim sampling of the rho^-4 decay.
struct DiffKernelResult {
  double value;
  double tail_bound;
};
DiffKernelResult difference_kernel_detailed(const geom::MetricField& field, const Vec2& u,
                                            const Vec2& w, double delta1, double delta2,
                                            int i = 1, int j = 2, int level = 1);
double difference_kernel(const geom::MetricField& field, const Vec2& u, const Vec2& w,
                         double delta1, double delta2, int i = 1, int j = 2);

}  // namespace enplab::riesz
