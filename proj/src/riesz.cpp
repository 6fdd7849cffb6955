#include "enplab/riesz.hpp"

#include "enplab/fft.hpp"
#include "enplab/quadrature.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace enplab::riesz {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

PlanarGrid::PlanarGrid(double S_, int n_) : S(S_), n(n_) {
  if (S <= 0.0) throw std::invalid_argument("PlanarGrid: S must be positive");
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("PlanarGrid: n must be even and >= 2");
}

double l_form(const Metric2& g, const Vec2& w) {
  if (w[0] == 0.0 && w[1] == 0.0) throw std::domain_error("l_form: w = 0");
  const double q = g.g11 * w[0] * w[0] + 2.0 * g.g12 * w[0] * w[1] + g.g22 * w[1] * w[1];
  return 1.0 / (q * std::sqrt(q));
}

double r_kernel(int j, const Metric2& g, const Vec2& w) {
  if (j != 1 && j != 2) throw std::invalid_argument("r_kernel: j must be 1 or 2");
  return w[j - 1] * l_form(g, w);
}

std::complex<double> symbol(const Metric2& g, const Vec2& xi, int j) {
  if (j != 1 && j != 2) throw std::invalid_argument("symbol: j must be 1 or 2");
  if (xi[0] == 0.0 && xi[1] == 0.0) throw std::domain_error("symbol: xi = 0");
  const Metric2 gi = g.inverse();
  const double a = (j == 1) ? gi.g11 * xi[0] + gi.g12 * xi[1]
                            : gi.g12 * xi[0] + gi.g22 * xi[1];
  const double q = gi.g11 * xi[0] * xi[0] + 2.0 * gi.g12 * xi[0] * xi[1] +
                   gi.g22 * xi[1] * xi[1];
  return {0.0, -a / (std::sqrt(g.det()) * std::sqrt(q))};
}

GridMetricCache::GridMetricCache(const geom::MetricField& field, const PlanarGrid& grid) {
  g.resize(grid.size());
  for (int p = 0; p < grid.size(); ++p) g[p] = field.evaluate(grid.node(p));
}

Window make_window(const PlanarGrid& grid,
                   const std::function<double(const Vec2&)>& cutoff) {
  Window w;
  std::vector<double> vals;
  for (int p = 0; p < grid.size(); ++p) {
    const double c = cutoff(grid.node(p));
    if (c > 0.0) {
      w.idx.push_back(p);
      vals.push_back(c);
    }
  }
  w.chi = Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<long>(vals.size()));
  return w;
}

namespace {

// Displacements are formed from integer index differences so that equal
// offsets give bitwise-equal kernel values (exact translate structure on
// flat metrics, exact odd-pair cancellation in symmetric sums).
inline double entry(int j, const Metric2& g_row, double h, int di, int dj, double scale) {
  if (di == 0 && dj == 0) return 0.0;
  return r_kernel(j, g_row, Vec2(di * h, dj * h)) * scale;
}

void fill_dense_row(Eigen::MatrixXd& A, const GridMetricCache& gm, const PlanarGrid& grid,
                    int j, int p) {
  const double h = grid.h(), scale = h * h / kTwoPi;
  const Metric2& g = gm.g[p];
  const int pi = p / grid.n, pj = p % grid.n;
  for (int q = 0; q < grid.size(); ++q)
    A(p, q) = entry(j, g, h, pi - q / grid.n, pj - q % grid.n, scale);
}

}  // namespace

Eigen::MatrixXd assemble_riesz(const geom::MetricField& field, const PlanarGrid& grid, int j) {
  const GridMetricCache gm(field, grid);
  Eigen::MatrixXd A(grid.size(), grid.size());
#pragma omp parallel for schedule(static)
  for (int p = 0; p < grid.size(); ++p) fill_dense_row(A, gm, grid, j, p);
  return A;
}

Eigen::MatrixXd assemble_riesz_serial(const geom::MetricField& field, const PlanarGrid& grid,
                                      int j) {
  const GridMetricCache gm(field, grid);
  Eigen::MatrixXd A(grid.size(), grid.size());
  for (int p = 0; p < grid.size(); ++p) fill_dense_row(A, gm, grid, j, p);
  return A;
}

Eigen::MatrixXd riesz_rows(const GridMetricCache& gm, const PlanarGrid& grid, int j,
                           const std::vector<int>& rows) {
  const double h = grid.h(), scale = h * h / kTwoPi;
  const int nr = static_cast<int>(rows.size());
  Eigen::MatrixXd R(nr, grid.size());
#pragma omp parallel for schedule(static)
  for (int q = 0; q < grid.size(); ++q) {
    const int qi = q / grid.n, qj = q % grid.n;
    for (int r = 0; r < nr; ++r) {
      const int p = rows[r];
      R(r, q) = entry(j, gm.g[p], h, p / grid.n - qi, p % grid.n - qj, scale);
    }
  }
  return R;
}

Eigen::MatrixXd riesz_cols(const GridMetricCache& gm, const PlanarGrid& grid, int j,
                           const std::vector<int>& cols) {
  const double h = grid.h(), scale = h * h / kTwoPi;
  const int nc = static_cast<int>(cols.size());
  Eigen::MatrixXd B(grid.size(), nc);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < nc; ++c) {
    const int q = cols[c];
    const int qi = q / grid.n, qj = q % grid.n;
    for (int p = 0; p < grid.size(); ++p)
      B(p, c) = entry(j, gm.g[p], h, p / grid.n - qi, p % grid.n - qj, scale);
  }
  return B;
}

Eigen::MatrixXd riesz_block(const GridMetricCache& gm, const PlanarGrid& grid, int j,
                            const std::vector<int>& rows, const std::vector<int>& cols) {
  const double h = grid.h(), scale = h * h / kTwoPi;
  const int nr = static_cast<int>(rows.size()), nc = static_cast<int>(cols.size());
  Eigen::MatrixXd A(nr, nc);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < nc; ++c) {
    const int q = cols[c];
    const int qi = q / grid.n, qj = q % grid.n;
    for (int r = 0; r < nr; ++r) {
      const int p = rows[r];
      A(r, c) = entry(j, gm.g[p], h, p / grid.n - qi, p % grid.n - qj, scale);
    }
  }
  return A;
}

Eigen::MatrixXd riesz_rows_times(const GridMetricCache& gm, const PlanarGrid& grid, int i,
                                 const std::vector<int>& rows, const Eigen::MatrixXd& B,
                                 int chunk) {
  if (B.rows() != grid.size())
    throw std::invalid_argument("riesz_rows_times: B must have n^2 rows");
  const int nr = static_cast<int>(rows.size());
  Eigen::MatrixXd out(nr, B.cols());
  for (int start = 0; start < nr; start += chunk) {
    const int len = std::min(chunk, nr - start);
    const std::vector<int> part(rows.begin() + start, rows.begin() + start + len);
    const Eigen::MatrixXd block = riesz_rows(gm, grid, i, part);
    out.middleRows(start, len).noalias() = block * B;
  }
  return out;
}

namespace {

// fills s with the per-bin symbol factor direction (xi as integer frequency
// pair); zeroed at xi = 0 and on the unpaired Nyquist lines
template <typename F>
void for_each_bin(int n, F&& f) {
  for (int mi = 0; mi < n; ++mi) {
    const int ki = fft::freq_index(mi, n);
    for (int mj = 0; mj < n; ++mj) {
      const int kj = fft::freq_index(mj, n);
      f(mi * n + mj, ki, kj);
    }
  }
}

inline bool zero_bin(int ki, int kj, int n) {
  return (ki == 0 && kj == 0) || ki == -n / 2 || kj == -n / 2;
}

}  // namespace

Eigen::VectorXd flat_multiplier_apply(const Eigen::VectorXd& f, const PlanarGrid& grid, int j) {
  const int n = grid.n;
  if (f.size() != grid.size())
    throw std::invalid_argument("flat_multiplier_apply: size mismatch");
  std::vector<std::complex<double>> buf(grid.size());
  for (int p = 0; p < grid.size(); ++p) buf[p] = f[p];
  fft::Fft2 dft(n);
  dft.forward(buf.data());
  for_each_bin(n, [&](int idx, int ki, int kj) {
    if (zero_bin(ki, kj, n)) {
      buf[idx] = 0.0;
      return;
    }
    const double norm = std::sqrt(double(ki) * ki + double(kj) * kj);
    const double a = (j == 1 ? ki : kj) / norm;
    buf[idx] *= std::complex<double>(0.0, -a);
  });
  dft.backward(buf.data());
  Eigen::VectorXd out(grid.size());
  for (int p = 0; p < grid.size(); ++p) out[p] = buf[p].real() / grid.size();
  return out;
}

Eigen::VectorXd flat_nystrom_apply(const Eigen::VectorXd& f, const PlanarGrid& grid, int j) {
  const int n = grid.n, m = 2 * n;
  if (f.size() != grid.size())
    throw std::invalid_argument("flat_nystrom_apply: size mismatch");
  const double h = grid.h(), scale = h * h / kTwoPi;
  const Metric2 id{};
  std::vector<std::complex<double>> st(static_cast<size_t>(m) * m, 0.0);
  std::vector<std::complex<double>> fp(static_cast<size_t>(m) * m, 0.0);
  for (int a = -(n - 1); a <= n - 1; ++a)
    for (int b = -(n - 1); b <= n - 1; ++b) {
      if (a == 0 && b == 0) continue;
      st[static_cast<size_t>((a + m) % m) * m + (b + m) % m] =
          r_kernel(j, id, Vec2(a * h, b * h)) * scale;
    }
  for (int p = 0; p < grid.size(); ++p)
    fp[static_cast<size_t>(p / n) * m + p % n] = f[p];
  fft::Fft2 dft(m);
  dft.forward(st.data());
  dft.forward(fp.data());
  for (size_t k = 0; k < st.size(); ++k) st[k] *= fp[k];
  dft.backward(st.data());
  Eigen::VectorXd out(grid.size());
  const double inv = 1.0 / (static_cast<double>(m) * m);
  for (int p = 0; p < grid.size(); ++p)
    out[p] = st[static_cast<size_t>(p / n) * m + p % n].real() * inv;
  return out;
}

Eigen::MatrixXd assemble_rij(const GridMetricCache& gm, const PlanarGrid& grid, int i, int j,
                             const std::vector<int>& rows, const std::vector<int>& cols) {
  const int n = grid.n;
  const int nr = static_cast<int>(rows.size()), nc = static_cast<int>(cols.size());
  Eigen::MatrixXd out(nr, nc);
  fft::Fft2 dft(n);
#pragma omp parallel
  {
    std::vector<std::complex<double>> buf(grid.size());
#pragma omp for schedule(static)
    for (int r = 0; r < nr; ++r) {
      const int p = rows[r];
      const Metric2& g = gm.g[p];
      const Metric2 gi = g.inverse();
      for_each_bin(n, [&](int idx, int ki, int kj) {
        if (zero_bin(ki, kj, n)) {
          buf[idx] = 0.0;
          return;
        }
        const double a1 = gi.g11 * ki + gi.g12 * kj;
        const double a2 = gi.g12 * ki + gi.g22 * kj;
        const double q = ki * a1 + kj * a2;  // xi^T G^{-1} xi
        const double ai = (i == 1 ? a1 : a2), aj = (j == 1 ? a1 : a2);
        buf[idx] = -ai * aj / (g.det() * q);  // (-i a_i)(-i a_j)/(det * q) real
      });
      dft.backward(buf.data());
      const double inv = 1.0 / grid.size();
      const int pi = p / n, pj = p % n;
      for (int c = 0; c < nc; ++c) {
        const int q = cols[c];
        const int di = ((pi - q / n) % n + n) % n;
        const int dj = ((pj - q % n) % n + n) % n;
        out(r, c) = buf[static_cast<size_t>(di) * n + dj].real() * inv;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// difference kernel

namespace {

struct DiffIntegrand {
  const geom::MetricField& field;
  Vec2 u, w;
  Metric2 gu;
  int i, j;

  double operator()(const Vec2& v) const {
    const Vec2 t2 = v - w;
    const double b =
        r_kernel(j, field.evaluate(v), t2) - r_kernel(j, gu, t2);
    if (b == 0.0) return 0.0;
    return r_kernel(i, gu, u - v) * b;
  }
};

// composite GL integration of rho |-> ring(rho) over [a,b] split into
// geometrically graded panels doubling away from `a`
template <typename Ring>
double graded_radial(double a, double b, int q, const Ring& ring) {
  static thread_local int cached_q = -1;
  static thread_local Eigen::VectorXd xq, wq;
  if (cached_q != q) {
    std::tie(xq, wq) = quad::gauss_legendre(q);
    cached_q = q;
  }
  double total = 0.0;
  double lo = a;
  while (lo < b) {
    const double hi = std::min(b, lo > 0.0 ? 2.0 * lo : b);
    const double c = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
    for (int k = 0; k < q; ++k) total += wq[k] * r * ring(c + r * xq[k]);
    lo = hi;
  }
  return total;
}

}  // namespace

DiffKernelResult difference_kernel_detailed(const geom::MetricField& field, const Vec2& u,
                                            const Vec2& w, double delta1, double delta2,
                                            int i, int j, int level) {
  const double d = (u - w).norm();
  if (d == 0.0) throw std::domain_error("difference_kernel: u = w");
  if (delta1 < 0.0 || delta2 < 0.0 || 2.0 * std::max(delta1, delta2) >= d)
    throw std::domain_error("difference_kernel: need 2 max(delta) < |u-w|");

  const DiffIntegrand F{field, u, w, field.evaluate(u), i, j};
  const double r0 = d / 4.0;
  const double r_out = 8.0 * d;
  const int q = 10 * level;
  const int npsi = 32 * level;  // even: antipodal nodes cancel the odd part

  // patch around w: rho in (delta2, r0], full circles
  const double lo_w = std::max(delta2, 1e-14 * d);
  const double total_w = graded_radial(lo_w, r0, q, [&](double rho) {
    double s = 0.0;
    for (int k = 0; k < npsi; ++k) {
      const double psi = kTwoPi * k / npsi;
      s += F(w + rho * Vec2(std::cos(psi), std::sin(psi)));
    }
    return s * rho * (kTwoPi / npsi);
  });

  // patch around u: rho in (delta1, r_out], excluding the w-patch disk
  const double psi_w = std::atan2(w[1] - u[1], w[0] - u[0]);
  const double lo_u = std::max(delta1, 1e-14 * d);
  auto ring_u = [&](double rho) {
    const double gap = std::abs(rho - d);
    if (gap >= r0) {  // full circle
      double s = 0.0;
      for (int k = 0; k < npsi; ++k) {
        const double psi = kTwoPi * k / npsi;
        s += F(u + rho * Vec2(std::cos(psi), std::sin(psi)));
      }
      return s * rho * (kTwoPi / npsi);
    }
    // circle-circle intersection: exclude |psi - psi_w| < dpsi
    double ca = (rho * rho + d * d - r0 * r0) / (2.0 * rho * d);
    ca = std::clamp(ca, -1.0, 1.0);
    const double dpsi = std::acos(ca);
    const double a = psi_w + dpsi, b = psi_w + kTwoPi - dpsi;
    const int panels = std::max(8, static_cast<int>(std::ceil((b - a) / (M_PI / 8.0))));
    static thread_local Eigen::VectorXd x8, w8;
    if (x8.size() == 0) std::tie(x8, w8) = quad::gauss_legendre(8);
    double s = 0.0;
    for (int pnl = 0; pnl < panels; ++pnl) {
      const double pa = a + (b - a) * pnl / panels;
      const double pb = a + (b - a) * (pnl + 1) / panels;
      const double c = 0.5 * (pa + pb), r = 0.5 * (pb - pa);
      for (int k = 0; k < 8; ++k) {
        const double psi = c + r * x8[k];
        s += w8[k] * r * F(u + rho * Vec2(std::cos(psi), std::sin(psi)));
      }
    }
    return s * rho;
  };

  // graded panels from delta1, a finer band around rho = d, then outward
  double total_u = graded_radial(lo_u, 0.5 * d, q, ring_u);
  {
    static thread_local Eigen::VectorXd xq2, wq2;
    static thread_local int cq2 = -1;
    if (cq2 != q) {
      std::tie(xq2, wq2) = quad::gauss_legendre(q);
      cq2 = q;
    }
    const int band_panels = 6 * level;
    for (int pnl = 0; pnl < band_panels; ++pnl) {
      const double pa = 0.5 * d + d * pnl / band_panels;
      const double pb = 0.5 * d + d * (pnl + 1) / band_panels;
      const double c = 0.5 * (pa + pb), r = 0.5 * (pb - pa);
      for (int k = 0; k < q; ++k) total_u += wq2[k] * r * ring_u(c + r * xq2[k]);
    }
  }
  total_u += graded_radial(1.5 * d, r_out, q, ring_u);

  // far-field bound: |F| <= C rho^-4 with C fitted on the rim
  double cmax = 0.0;
  for (int k = 0; k < 64; ++k) {
    const double psi = kTwoPi * (k + 0.5) / 64.0;
    const Vec2 v = u + r_out * Vec2(std::cos(psi), std::sin(psi));
    cmax = std::max(cmax, std::abs(F(v)) * r_out * r_out * r_out * r_out);
  }
  return {total_w + total_u, M_PI * cmax / (r_out * r_out)};
}

double difference_kernel(const geom::MetricField& field, const Vec2& u, const Vec2& w,
                         double delta1, double delta2, int i, int j) {
  return difference_kernel_detailed(field, u, w, delta1, delta2, i, j).value;
}

}  // namespace enplab::riesz
