#include "enplab/surface.hpp"

#include "enplab/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace enplab::surf {

namespace {

// Basis column order per degree l: m = 0 first, then (cos m, sin m) pairs,
// k(l,0) = l^2, k(l,m,cos) = l^2 + 2m - 1, k(l,m,sin) = l^2 + 2m.
struct ShTables {
  int L;
  std::vector<double> diag;  // q_mm = diag[m] * st * q_{m-1,m-1}
  std::vector<double> offd;  // q_{m+1,m} = offd[m] * ct * q_mm
  std::vector<double> ra, rb;  // q_lm = ra*ct*q_{l-1,m} - rb*q_{l-2,m}, index l*L+m
};

ShTables make_sh_tables(int L) {
  ShTables t;
  t.L = L;
  t.diag.resize(L);
  t.offd.resize(L);
  t.ra.assign(static_cast<size_t>(L) * L, 0.0);
  t.rb.assign(static_cast<size_t>(L) * L, 0.0);
  for (int m = 0; m < L; ++m) {
    t.diag[m] = m > 0 ? -std::sqrt(1.0 + 0.5 / m) : 0.0;
    t.offd[m] = std::sqrt(2.0 * m + 3.0);
    for (int l = m + 2; l < L; ++l) {
      const double lm = static_cast<double>(l - m), lp = static_cast<double>(l + m);
      t.ra[static_cast<size_t>(l) * L + m] =
          std::sqrt((2.0 * l - 1.0) * (2.0 * l + 1.0) / (lm * lp));
      t.rb[static_cast<size_t>(l) * L + m] = std::sqrt(
          (2.0 * l + 1.0) * (l - 1.0 - m) * (l - 1.0 + m) / ((2.0 * l - 3.0) * lm * lp));
    }
  }
  return t;
}

// all L^2 harmonics at one unit vector; out has stride-1 length L^2
void sh_point(const ShTables& t, double ct, double st, double phi, double* out) {
  const int L = t.L;
  const double f0 = 1.0 / std::sqrt(2.0 * M_PI), fp = 1.0 / std::sqrt(M_PI);
  double qmm = M_SQRT1_2;
  for (int m = 0; m < L; ++m) {
    double cm = f0, sm = 0.0;
    if (m > 0) {
      qmm *= t.diag[m] * st;
      cm = fp * std::cos(m * phi);
      sm = fp * std::sin(m * phi);
    }
    auto store = [&](int l, double q) {
      if (m == 0) {
        out[l * l] = q * cm;
      } else {
        out[l * l + 2 * m - 1] = q * cm;
        out[l * l + 2 * m] = q * sm;
      }
    };
    double qa = qmm;
    store(m, qa);
    if (m + 1 >= L) continue;
    double qb = t.offd[m] * ct * qmm;
    store(m + 1, qb);
    for (int l = m + 2; l < L; ++l) {
      const double qc = t.ra[static_cast<size_t>(l) * L + m] * ct * qb -
                        t.rb[static_cast<size_t>(l) * L + m] * qa;
      qa = qb;
      qb = qc;
      store(l, qc);
    }
  }
}

void sh_fill(const ShTables& t, const Eigen::Matrix3Xd& pts, Eigen::MatrixXd& B) {
  const int n = static_cast<int>(pts.cols()), K = t.L * t.L;
  B.resize(n, K);
  std::vector<double> buf;
#pragma omp parallel private(buf)
  {
    buf.resize(K);
#pragma omp for schedule(static)
    for (int p = 0; p < n; ++p) {
      const double ct = pts(2, p), st = std::hypot(pts(0, p), pts(1, p));
      const double phi = std::atan2(pts(1, p), pts(0, p));
      sh_point(t, ct, st, phi, buf.data());
      for (int k = 0; k < K; ++k) B(p, k) = buf[k];
    }
  }
}

// per-target kernel writer: nc components at (target t, source y), already
// multiplied by the quadrature factor
using FillFn = std::function<void(int t, const Vec3& y, double wfac, double* dst)>;

// rotated-pole singular rule shared by all rows: Gauss-Legendre in the polar
// angle gamma (the sin(gamma) area factor is part of the weight and cancels
// the 1/r kernel singularity), times the 2N-point trapezoid in azimuth whose
// antipodal node pairs cancel the odd principal-value kernel part
struct RotatedRule {
  Eigen::Matrix3Xd z;   // nodes on the unit sphere, polar-major k*2N+j
  Eigen::VectorXd wr;   // per-node weight w_gl * (pi/2) * sin(gamma) * (pi/N)
};

RotatedRule make_rotated_rule(int N) {
  // 2N polar points: Gauss-Legendre resolves polar frequencies up to about
  // 4n/e, and interpolated densities reach (N-1) pi/2, so n = N is marginal
  const int P = 2 * N, NG = 2 * N;
  RotatedRule r;
  r.z.resize(3, NG * P);
  r.wr.resize(NG * P);
  const auto [gx, gw] = quad::gauss_legendre(NG);
  for (int k = 0; k < NG; ++k) {
    const double gamma = 0.5 * M_PI * (gx[k] + 1.0);
    const double cg = std::cos(gamma), sg = std::sin(gamma);
    const double wk = gw[k] * 0.5 * M_PI * sg * (M_PI / N);
    for (int j = 0; j < P; ++j) {
      const double psi = M_PI * j / N;
      r.z.col(k * P + j) = Vec3(sg * std::cos(psi), sg * std::sin(psi), cg);
      r.wr[k * P + j] = wk;
    }
  }
  return r;
}

// Builds all operator rows, batched over the polar rings of the base grid:
// targets in a ring share the tilted rule-node basis evaluations, and the
// azimuth offset enters as an exact 2x2 rotation of each (cos m, sin m)
// coefficient pair. Returns (nc*M) x M with row t*nc + c for component c.
Eigen::MatrixXd assemble_rows_core(const SurfaceQuadrature& quad, int nc, const FillFn& fill) {
  const int N = quad.N, P = 2 * N, M = quad.size(), K = N * N;
  const ShTables tables = make_sh_tables(N);
  const Eigen::MatrixXd Ash = sh_analysis(N, quad);
  const RotatedRule rule = make_rotated_rule(N);
  const int Mr = static_cast<int>(rule.wr.size());

  Eigen::MatrixXd rows(static_cast<long>(nc) * M, M);
  Eigen::Matrix3Xd tilted(3, Mr);
  Eigen::MatrixXd Bt, Wk(P * nc, Mr), C(P * nc, K), D(P * nc, M);

  for (int i = 0; i < N; ++i) {
    const double ct = quad.s(2, i * P);
    const double st = std::hypot(quad.s(0, i * P), quad.s(1, i * P));
    for (int q = 0; q < Mr; ++q) {  // Ry(theta): pole -> (st, 0, ct)
      const Vec3 z = rule.z.col(q);
      tilted.col(q) = Vec3(ct * z[0] + st * z[2], z[1], -st * z[0] + ct * z[2]);
    }
    sh_fill(tables, tilted, Bt);

#pragma omp parallel for schedule(static)
    for (int j = 0; j < P; ++j) {
      const int t = i * P + j;
      const double phi = M_PI * j / N;
      const double cphi = std::cos(phi), sphi = std::sin(phi);
      for (int q = 0; q < Mr; ++q) {
        const Vec3 su(cphi * tilted(0, q) - sphi * tilted(1, q),
                      sphi * tilted(0, q) + cphi * tilted(1, q), tilted(2, q));
        fill(t, quad.point(su), rule.wr[q] * quad.area_scale(su), &Wk(j * nc, q));
      }
    }
    C.noalias() = Wk * Bt;

#pragma omp parallel for schedule(static)
    for (int j = 0; j < P; ++j) {
      const double phi = M_PI * j / N;
      for (int m = 1; m < N; ++m) {
        const double cm = std::cos(m * phi), sm = std::sin(m * phi);
        for (int l = m; l < N; ++l) {
          const int kc = l * l + 2 * m - 1, ks = kc + 1;
          for (int r = j * nc; r < (j + 1) * nc; ++r) {
            const double vc = C(r, kc), vs = C(r, ks);
            C(r, kc) = vc * cm - vs * sm;
            C(r, ks) = vc * sm + vs * cm;
          }
        }
      }
    }
    D.noalias() = C * Ash;
    for (int j = 0; j < P; ++j)
      for (int c = 0; c < nc; ++c)
        rows.row(static_cast<long>(i * P + j) * nc + c) = D.row(j * nc + c);
  }
  return rows;
}

void validate_quad(const SurfaceQuadrature& quad) {
  if (quad.N < 8) throw std::invalid_argument("surface quadrature: N must be >= 8");
}

}  // namespace

Vec3 SurfaceQuadrature::point(const Vec3& su) const {
  return rot * Vec3(a * su[0], b * su[1], c * su[2]);
}

Vec3 SurfaceQuadrature::unit_normal(const Vec3& su) const {
  return rot * Vec3(su[0] / a, su[1] / b, su[2] / c).normalized();
}

double SurfaceQuadrature::area_scale(const Vec3& su) const {
  return a * b * c * Vec3(su[0] / a, su[1] / b, su[2] / c).norm();
}

SurfaceQuadrature ellipsoid_quadrature(double a, double b, double c, int N, const Mat3& rot) {
  if (N < 8) throw std::invalid_argument("ellipsoid_quadrature: N must be >= 8");
  if (a <= 0.0 || b <= 0.0 || c <= 0.0)
    throw std::invalid_argument("ellipsoid_quadrature: semi-axes must be positive");
  SurfaceQuadrature quad;
  quad.N = N;
  quad.a = a;
  quad.b = b;
  quad.c = c;
  quad.rot = rot;
  const int P = 2 * N, M = N * P;
  quad.s.resize(3, M);
  quad.x.resize(3, M);
  quad.nrm.resize(3, M);
  quad.w.resize(M);
  quad.w0.resize(M);
  const auto [gx, gw] = quad::gauss_legendre(N);
  for (int i = 0; i < N; ++i) {
    const double ct = gx[i], st = std::sqrt(1.0 - ct * ct);
    for (int j = 0; j < P; ++j) {
      const double phi = M_PI * j / N;
      const int q = i * P + j;
      const Vec3 su(st * std::cos(phi), st * std::sin(phi), ct);
      quad.s.col(q) = su;
      quad.x.col(q) = quad.point(su);
      quad.nrm.col(q) = quad.unit_normal(su);
      quad.w0[q] = gw[i] * (M_PI / N);
      quad.w[q] = quad.w0[q] * quad.area_scale(su);
    }
  }
  return quad;
}

SurfaceQuadrature sphere_quadrature(double radius, int N, const Mat3& rot) {
  return ellipsoid_quadrature(radius, radius, radius, N, rot);
}

Eigen::MatrixXd sh_basis(int L, const Eigen::Matrix3Xd& pts) {
  if (L < 1) throw std::invalid_argument("sh_basis: L must be >= 1");
  const ShTables tables = make_sh_tables(L);
  Eigen::MatrixXd B;
  sh_fill(tables, pts, B);
  return B;
}

Eigen::MatrixXd sh_analysis(int L, const SurfaceQuadrature& quad) {
  if (L > quad.N) throw std::invalid_argument("sh_analysis: need L <= quad.N for exactness");
  const Eigen::MatrixXd B = sh_basis(L, quad.s);
  return B.transpose() * quad.w0.asDiagonal();
}

Eigen::MatrixXd assemble_K(const LameParams& p, const SurfaceQuadrature& quad) {
  validate_quad(quad);
  const int M = quad.size();
  const Eigen::MatrixXd rows =
      assemble_rows_core(quad, 9, [&](int t, const Vec3& y, double wf, double* dst) {
        const Mat3 k = elastic::enp_kernel(p, quad.x.col(t), y, quad.nrm.col(t));
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) dst[3 * a + b] = k(a, b) * wf;
      });
  Eigen::MatrixXd out(3 * M, 3 * M);
  for (int t = 0; t < M; ++t)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        out.row(a * M + t).segment(b * M, M) = rows.row(static_cast<long>(t) * 9 + 3 * a + b);
  return out;
}

Eigen::MatrixXd assemble_T(const SurfaceQuadrature& quad) {
  validate_quad(quad);
  const int M = quad.size();
  const Eigen::MatrixXd rows =
      assemble_rows_core(quad, 3, [&](int t, const Vec3& y, double wf, double* dst) {
        const Mat3 k = elastic::k1_kernel(quad.x.col(t), y, quad.nrm.col(t));
        dst[0] = k(0, 1) * wf;
        dst[1] = k(0, 2) * wf;
        dst[2] = k(1, 2) * wf;
      });
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(3 * M, 3 * M);
  for (int t = 0; t < M; ++t) {
    out.row(0 * M + t).segment(1 * M, M) = rows.row(static_cast<long>(t) * 3 + 0);
    out.row(0 * M + t).segment(2 * M, M) = rows.row(static_cast<long>(t) * 3 + 1);
    out.row(1 * M + t).segment(2 * M, M) = rows.row(static_cast<long>(t) * 3 + 2);
  }
  out.block(M, 0, M, M) = -out.block(0, M, M, M);
  out.block(2 * M, 0, M, M) = -out.block(0, 2 * M, M, M);
  out.block(2 * M, M, M, M) = -out.block(M, 2 * M, M, M);
  return out;
}

Eigen::MatrixXd assemble_scalar(const SurfaceQuadrature& quad, const ScalarKernel& k) {
  validate_quad(quad);
  return assemble_rows_core(quad, 1, [&](int t, const Vec3& y, double wf, double* dst) {
    dst[0] = k(quad.x.col(t), quad.nrm.col(t), y) * wf;
  });
}

Eigen::MatrixXd block_rows_at(const SurfaceQuadrature& quad,
                              const Eigen::Matrix3Xd& su_targets, const MatrixKernel& k) {
  validate_quad(quad);
  const int N = quad.N, M = quad.size(), K = N * N;
  const int nt = static_cast<int>(su_targets.cols());
  const ShTables tables = make_sh_tables(N);
  const Eigen::MatrixXd Ash = sh_analysis(N, quad);
  const RotatedRule rule = make_rotated_rule(N);
  const int Mr = static_cast<int>(rule.wr.size());

  Eigen::MatrixXd out(3 * nt, 3 * M);
  Eigen::Matrix3Xd pts(3, Mr);
  Eigen::MatrixXd Bt, Wk(9, Mr), C(9, K), D(9, M);
  for (int t = 0; t < nt; ++t) {
    const Vec3 su = su_targets.col(t).normalized();
    const double ct = su[2], st = std::hypot(su[0], su[1]);
    const double phi = std::atan2(su[1], su[0]);
    const double cphi = std::cos(phi), sphi = std::sin(phi);
    for (int q = 0; q < Mr; ++q) {  // Rz(phi) Ry(theta): pole -> su
      const Vec3 z = rule.z.col(q);
      const Vec3 ty(ct * z[0] + st * z[2], z[1], -st * z[0] + ct * z[2]);
      pts.col(q) = Vec3(cphi * ty[0] - sphi * ty[1], sphi * ty[0] + cphi * ty[1], ty[2]);
    }
    sh_fill(tables, pts, Bt);
    const Vec3 xt = quad.point(su), nt_vec = quad.unit_normal(su);
#pragma omp parallel for schedule(static)
    for (int q = 0; q < Mr; ++q) {
      const Mat3 kk = k(xt, nt_vec, quad.point(pts.col(q)));
      const double wf = rule.wr[q] * quad.area_scale(pts.col(q));
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) Wk(3 * a + b, q) = kk(a, b) * wf;
    }
    // pts are fully rotated, so no coefficient-pair azimuth fixup is needed
    C.noalias() = Wk * Bt;
    D.noalias() = C * Ash;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) out.row(a * nt + t).segment(b * M, M) = D.row(3 * a + b);
  }
  return out;
}

}  // namespace enplab::surf
