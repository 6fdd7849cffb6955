#include "enplab/spectra.hpp"

#include "enplab/la.hpp"
#include "enplab/surface.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

namespace enplab::spectra {

namespace {

double tail_from(const Eigen::VectorXd& sv, double q) {
  const int K = static_cast<int>(sv.size());
  if (K == 0 || sv[0] <= 0.0) return 0.0;
  const int k = std::clamp(static_cast<int>(std::ceil(q * K)), 1, K);
  return sv[k - 1] / sv[0];
}

Eigen::MatrixXd weight_symmetrize(const Eigen::MatrixXd& A, const Eigen::VectorXd& w) {
  if (w.size() != A.rows() || A.rows() != A.cols())
    throw std::invalid_argument("weight vector size must match the square matrix");
  if ((w.array() <= 0.0).any()) throw std::invalid_argument("weights must be positive");
  const Eigen::VectorXd ws = w.array().sqrt();
  return ws.asDiagonal() * A * ws.cwiseInverse().asDiagonal();
}

}  // namespace

double DecayReport::tail_index(double q) const { return tail_from(sv, q); }
double DecayReport::ref_tail_index(double q) const { return tail_from(ref_sv, q); }

std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXd& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("eigenvalues: matrix must be square");
  if (!A.allFinite()) throw std::invalid_argument("eigenvalues: non-finite entries");
  std::vector<std::complex<double>> e = la::eigenvalues(A);
  std::sort(e.begin(), e.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return e;
}

std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXd& A, const Eigen::VectorXd& w) {
  return eigenvalues(weight_symmetrize(A, w));
}

Eigen::MatrixXd p3_apply(const Eigen::MatrixXd& K, double k0) {
  if (K.rows() != K.cols()) throw std::invalid_argument("p3_apply: matrix must be square");
  Eigen::MatrixXd K2 = K * K;
  K2.diagonal().array() -= k0 * k0;
  return K * K2;
}

SpectrumReport cluster_report(const std::vector<std::complex<double>>& eigs, double k0,
                              double radius) {
  if (!(radius < 0.5 * k0))
    throw std::invalid_argument("cluster_report: radius must be < k0/2 to keep clusters apart");
  SpectrumReport rep;
  rep.eigs = eigs;
  std::sort(rep.eigs.begin(), rep.eigs.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  rep.targets = {0.0, k0, -k0};
  rep.radius = radius;
  for (const auto& z : rep.eigs) {
    rep.max_imag = std::max(rep.max_imag, std::abs(z.imag()));
    int best = 0;
    double dist = std::abs(z - std::complex<double>(rep.targets[0], 0.0));
    for (int t = 1; t < 3; ++t) {
      const double d = std::abs(z - std::complex<double>(rep.targets[t], 0.0));
      if (d < dist) { dist = d; best = t; }
    }
    if (dist <= radius)
      ++rep.counts[best];
    else
      ++rep.unassigned;
  }
  return rep;
}

// --- suite case table -------------------------------------------------------

namespace {

struct CaseInfo {
  SuiteCase c;
  std::string_view name;
  std::string_view summary;
  bool planar;
  int reports;  // reports emitted per ladder level
};

constexpr CaseInfo kCases[] = {
    {SuiteCase::kRieszCommutator, "RIESZ_COMMUTATOR",
     "window-compressed commutator R1 R2 - R2 R1 of the metric Riesz transforms", true, 1},
    {SuiteCase::kRieszSquaresum, "RIESZ_SQUARESUM",
     "window-compressed det(G)(g11 R1R1 + 2 g12 R1R2 + g22 R2R2) + I", true, 1},
    {SuiteCase::kFrozenDiff, "FROZEN_DIFF",
     "window-compressed difference R1 R2 - R_12 against the frozen-coefficient operator", true, 1},
    {SuiteCase::kMultCommutator, "MULT_COMMUTATOR",
     "commutator [M_f, R1] of a Holder multiplier with a Riesz transform", true, 1},
    {SuiteCase::kXijCommutators, "XIJ_COMMUTATORS",
     "commutator X12 X13 - X13 X12 of the chart operators", true, 1},
    {SuiteCase::kXsqSum, "XSQ_SUM",
     "X12^2 + X13^2 + X23^2 plus the squared window multiplier (literal variant included)", true,
     2},
    {SuiteCase::kBrCube, "BR_CUBE",
     "block-matrix cube R^3 minus the squared-window multiple of R (literal variant included)",
     true, 2},
    {SuiteCase::kKMinusK0T, "K_MINUS_K0T",
     "cancellation of the singular parts between the boundary operator K and k0 T", false, 2},
    {SuiteCase::kP3K, "P3K", "cubic K(K^2 - k0^2 I) of the sphere boundary operator", false, 1},
    {SuiteCase::kNoncompactFactors, "NONCOMPACT_FACTORS",
     "the three partial factors K(K - k0 I), K(K + k0 I), K^2 - k0^2 I", false, 3},
};

const CaseInfo& info(SuiteCase c) {
  for (const auto& ci : kCases)
    if (ci.c == c) return ci;
  throw std::invalid_argument("unknown suite case");
}

}  // namespace

const std::vector<SuiteCase>& all_cases() {
  static const std::vector<SuiteCase> cases = [] {
    std::vector<SuiteCase> v;
    for (const auto& ci : kCases) v.push_back(ci.c);
    return v;
  }();
  return cases;
}

std::string_view case_name(SuiteCase c) { return info(c).name; }
std::string_view case_summary(SuiteCase c) { return info(c).summary; }
bool is_planar(SuiteCase c) { return info(c).planar; }
int report_count(SuiteCase c) { return info(c).reports; }

SuiteCase parse_case(std::string_view name) {
  for (const auto& ci : kCases)
    if (ci.name == name) return ci.c;
  throw std::invalid_argument("unknown suite case: " + std::string(name));
}

PlanarSetup planar_setup(const SuiteConfig& cfg) {
  if (cfg.metric == "flat") return {geom::flat_chart(cfg.S), geom::flat_field()};
  if (cfg.metric == "bump_smooth") {
    geom::Chart chart = geom::graph_bump_smooth();
    geom::MetricField field = geom::extend_metric(chart, 2.0);
    return {std::move(chart), std::move(field)};
  }
  if (cfg.metric == "bump_holder") {
    geom::Chart chart = geom::graph_bump_holder(cfg.alpha);
    geom::MetricField field = geom::extend_metric(chart, 2.0, cfg.alpha);
    return {std::move(chart), std::move(field)};
  }
  throw std::invalid_argument("unknown planar metric: " + cfg.metric);
}

// --- shared per-level assembly packs ----------------------------------------

namespace {

using riesz::GridMetricCache;
using riesz::PlanarGrid;
using riesz::Window;

Eigen::VectorXd sv_of(const Eigen::MatrixXd& A) { return la::singular_values(A); }

struct PlanarPack {
  PlanarGrid grid;
  GridMetricCache gm;
  geom::CutoffPair cut;
  Window w;

  Eigen::MatrixXd P11, P12, P21, P22;  // window rows x window cols, full-grid middle
  bool have_12 = false, have_21 = false, have_11 = false, have_22 = false;
  Eigen::VectorXd ref_sv_p12;  // chi P12 chi, shared reference of the composition cases

  std::optional<chart_ops::WindowX> wx;

  PlanarPack(const geom::MetricField& field, const geom::CutoffPair& cut_, int n, double S)
      : grid(S, n), gm(field, grid), cut(cut_), w(riesz::make_window(grid, cut_.chi1)) {}

  Eigen::MatrixXd sandwich(const Eigen::MatrixXd& A) const {
    return w.chi.asDiagonal() * A * w.chi.asDiagonal();
  }

  // Builds the requested compositions R_i R_j over the window with two
  // column-block passes so only one n^2 x K factor is alive at a time.
  void build_products(bool need12, bool need21, bool need11, bool need22) {
    need12 = need12 && !have_12;
    need21 = need21 && !have_21;
    need11 = need11 && !have_11;
    need22 = need22 && !have_22;
    if (need12 || need22) {
      const Eigen::MatrixXd cols2 = riesz::riesz_cols(gm, grid, 2, w.idx);
      if (need12) { P12 = riesz::riesz_rows_times(gm, grid, 1, w.idx, cols2); have_12 = true; }
      if (need22) { P22 = riesz::riesz_rows_times(gm, grid, 2, w.idx, cols2); have_22 = true; }
    }
    if (need21 || need11) {
      const Eigen::MatrixXd cols1 = riesz::riesz_cols(gm, grid, 1, w.idx);
      if (need21) { P21 = riesz::riesz_rows_times(gm, grid, 2, w.idx, cols1); have_21 = true; }
      if (need11) { P11 = riesz::riesz_rows_times(gm, grid, 1, w.idx, cols1); have_11 = true; }
    }
  }

  const Eigen::VectorXd& reference_sv() {
    if (ref_sv_p12.size() == 0) {
      build_products(true, false, false, false);
      ref_sv_p12 = sv_of(sandwich(P12));
    }
    return ref_sv_p12;
  }

  const chart_ops::WindowX& window_x(const geom::Chart& chart, const geom::MetricField& field) {
    if (!wx) wx = chart_ops::assemble_window_x(chart, field, cut, grid);
    return *wx;
  }
};

struct SpherePack {
  surf::SurfaceQuadrature quad;
  Eigen::VectorXd w3;
  Eigen::MatrixXd K;
  Eigen::MatrixXd K2;  // lazily K*K
  Eigen::VectorXd ref_sv_k;
  Eigen::VectorXd ref_sv_kfac;  // lazily sv of K (K - k0 I)
  double k0 = 0.0;

  SpherePack(const elastic::LameParams& p, double radius, int N)
      : quad(surf::sphere_quadrature(radius, N)) {
    const int M = quad.size();
    w3.resize(3 * M);
    for (int a = 0; a < 3; ++a) w3.segment(a * M, M) = quad.w;
    K = surf::assemble_K(p, quad);
    k0 = elastic::constants(p).k0;
  }

  Eigen::VectorXd weighted_sv(const Eigen::MatrixXd& A) const {
    return sv_of(weight_symmetrize(A, w3));
  }

  const Eigen::MatrixXd& ksq() {
    if (K2.size() == 0) K2 = K * K;
    return K2;
  }

  const Eigen::VectorXd& reference_sv() {
    if (ref_sv_k.size() == 0) ref_sv_k = weighted_sv(K);
    return ref_sv_k;
  }

  // K (K - k0 I) = K^2 - k0 K, shared by the cubic's reference and the
  // first non-compact control; one factorization for both.
  const Eigen::VectorXd& factor_sv() {
    if (ref_sv_kfac.size() == 0) ref_sv_kfac = weighted_sv(ksq() - k0 * K);
    return ref_sv_kfac;
  }
};

std::vector<DecayReport> planar_reports(SuiteCase c, PlanarPack& pack, const PlanarSetup& setup,
                                        int level) {
  std::vector<DecayReport> out;
  const auto window_report = [&](std::string name, const Eigen::MatrixXd& op) {
    DecayReport r;
    r.name = std::move(name);
    r.level = level;
    r.sv = sv_of(op);
    r.reference = "chi R1 R2 chi";
    r.ref_sv = pack.reference_sv();
    return r;
  };

  switch (c) {
    case SuiteCase::kRieszCommutator: {
      pack.build_products(true, true, false, false);
      out.push_back(window_report("chi (R1 R2 - R2 R1) chi", pack.sandwich(pack.P12 - pack.P21)));
      break;
    }
    case SuiteCase::kRieszSquaresum: {
      pack.build_products(true, false, true, true);
      const int K = static_cast<int>(pack.w.idx.size());
      Eigen::MatrixXd E(K, K);
      E.setIdentity();
      for (int r = 0; r < K; ++r) {
        const geom::Metric2& g = pack.gm.g[pack.w.idx[r]];
        const double det = g.det();
        E.row(r) += det * (g.g11 * pack.P11.row(r) + 2.0 * g.g12 * pack.P12.row(r) +
                           g.g22 * pack.P22.row(r));
      }
      out.push_back(
          window_report("chi (det G (g11 R1R1 + 2 g12 R1R2 + g22 R2R2) + I) chi", pack.sandwich(E)));
      break;
    }
    case SuiteCase::kFrozenDiff: {
      pack.build_products(true, false, false, false);
      const Eigen::MatrixXd rij =
          riesz::assemble_rij(pack.gm, pack.grid, 1, 2, pack.w.idx, pack.w.idx);
      out.push_back(window_report("chi (R1 R2 - R_12) chi", pack.sandwich(pack.P12 - rij)));
      break;
    }
    case SuiteCase::kMultCommutator: {
      const int K = static_cast<int>(pack.w.idx.size());
      Eigen::VectorXd f(K);
      for (int r = 0; r < K; ++r) {
        const geom::Vec2 u = pack.grid.node(pack.w.idx[r]);
        f[r] = pack.cut.chi1(u) * geom::mij_coefficients(setup.chart, u)(1, 0);
      }
      const Eigen::MatrixXd R1 = riesz::riesz_block(pack.gm, pack.grid, 1, pack.w.idx, pack.w.idx);
      Eigen::MatrixXd C = f.asDiagonal() * R1;
      const Eigen::MatrixXd ref = C;
      C -= R1 * f.asDiagonal();
      DecayReport r;
      r.name = "[M_f, R1] on the window, f = chi m13_1";
      r.level = level;
      r.sv = sv_of(C);
      r.reference = "M_f R1 on the window";
      r.ref_sv = sv_of(ref);
      out.push_back(std::move(r));
      break;
    }
    case SuiteCase::kXijCommutators: {
      const auto& wx = pack.window_x(setup.chart, setup.field);
      const Eigen::MatrixXd ref = wx.x12 * wx.x13;
      DecayReport r;
      r.name = "X12 X13 - X13 X12";
      r.level = level;
      r.sv = sv_of(ref - wx.x13 * wx.x12);
      r.reference = "X12 X13";
      r.ref_sv = sv_of(ref);
      out.push_back(std::move(r));
      break;
    }
    case SuiteCase::kXsqSum: {
      const auto& wx = pack.window_x(setup.chart, setup.field);
      const Eigen::MatrixXd x13sq = wx.x13 * wx.x13;
      Eigen::MatrixXd sum = wx.x12 * wx.x12 + x13sq + wx.x23 * wx.x23;
      const Eigen::VectorXd chi = wx.w1.chi;
      const Eigen::VectorXd ref_sv = sv_of(x13sq);
      Eigen::MatrixXd with_sq = sum;
      with_sq.diagonal() += chi.cwiseProduct(chi);
      DecayReport r;
      r.name = "X12^2 + X13^2 + X23^2 + M_chi^2";
      r.level = level;
      r.sv = sv_of(with_sq);
      r.reference = "X13^2";
      r.ref_sv = ref_sv;
      out.push_back(r);
      sum.diagonal() += chi;
      r.name = "X12^2 + X13^2 + X23^2 + M_chi";
      r.sv = sv_of(sum);
      out.push_back(std::move(r));
      break;
    }
    case SuiteCase::kBrCube: {
      const auto& wx = pack.window_x(setup.chart, setup.field);
      const Eigen::MatrixXd BR = chart_ops::br_from_blocks(wx);
      const Eigen::MatrixXd BR3 = BR * BR * BR;
      const int K = static_cast<int>(wx.w1.idx.size());
      Eigen::VectorXd chi3(3 * K);
      for (int a = 0; a < 3; ++a) chi3.segment(a * K, K) = wx.w1.chi;
      const Eigen::VectorXd ref_sv = sv_of(BR3);
      DecayReport r;
      r.name = "R^3 - M_chi^2 R";
      r.level = level;
      r.sv = sv_of(BR3 - Eigen::MatrixXd(chi3.cwiseProduct(chi3).asDiagonal() * BR));
      r.reference = "R^3";
      r.ref_sv = ref_sv;
      out.push_back(r);
      r.name = "R^3 - M_chi R";
      r.sv = sv_of(BR3 - Eigen::MatrixXd(chi3.asDiagonal() * BR));
      out.push_back(std::move(r));
      break;
    }
    default:
      throw std::invalid_argument("planar_reports: not a planar case");
  }
  return out;
}

std::vector<DecayReport> sphere_reports(SuiteCase c, SpherePack& pack, int level) {
  std::vector<DecayReport> out;
  const auto report = [&](std::string name, const Eigen::MatrixXd& op, std::string ref,
                          const Eigen::VectorXd& ref_sv) {
    DecayReport r;
    r.name = std::move(name);
    r.level = level;
    r.sv = pack.weighted_sv(op);
    r.reference = std::move(ref);
    r.ref_sv = ref_sv;
    return r;
  };

  switch (c) {
    case SuiteCase::kKMinusK0T: {
      const Eigen::MatrixXd T = surf::assemble_T(pack.quad);
      // The antisymmetric part of the traction kernel equals -k0 times the
      // rotation kernel (finite-difference verified on the Kelvin matrix),
      // so the degree -2 singular parts cancel in K + k0 T; the literal
      // difference keeps them and stays non-compact.
      out.push_back(report("K + k0 T", pack.K + pack.k0 * T, "K", pack.reference_sv()));
      out.push_back(report("K - k0 T", pack.K - pack.k0 * T, "K", pack.reference_sv()));
      break;
    }
    case SuiteCase::kP3K: {
      // K (K^2 - k0^2 I) = K K^2 - k0^2 K: one product beyond the cached square
      Eigen::MatrixXd cubic = pack.K * pack.ksq();
      cubic -= (pack.k0 * pack.k0) * pack.K;
      out.push_back(report("K (K^2 - k0^2 I)", cubic, "K (K - k0 I)", pack.factor_sv()));
      break;
    }
    case SuiteCase::kNoncompactFactors: {
      Eigen::MatrixXd shifted = pack.ksq();
      shifted.diagonal().array() -= pack.k0 * pack.k0;
      DecayReport fac;
      fac.name = "K (K - k0 I)";
      fac.level = level;
      fac.sv = pack.factor_sv();
      fac.reference = "K";
      fac.ref_sv = pack.reference_sv();
      out.push_back(std::move(fac));
      out.push_back(report("K (K + k0 I)", pack.ksq() + pack.k0 * pack.K, "K",
                           pack.reference_sv()));
      out.push_back(report("K^2 - k0^2 I", shifted, "K", pack.reference_sv()));
      break;
    }
    default:
      throw std::invalid_argument("sphere_reports: not a sphere case");
  }
  return out;
}

}  // namespace

std::vector<DecayReport> run_cases(const std::vector<SuiteCase>& requested, const SuiteConfig& cfg) {
  if (cfg.ladder.empty()) throw std::invalid_argument("run_cases: empty refinement ladder");
  for (std::size_t i = 1; i < cfg.ladder.size(); ++i)
    if (cfg.ladder[i] <= cfg.ladder[i - 1])
      throw std::invalid_argument("run_cases: ladder must be strictly increasing");

  std::vector<SuiteCase> cases;
  for (SuiteCase c : requested)
    if (std::find(cases.begin(), cases.end(), c) == cases.end()) cases.push_back(c);

  const bool any_planar = std::any_of(cases.begin(), cases.end(), [](SuiteCase c) {
    return is_planar(c);
  });
  const bool any_sphere = std::any_of(cases.begin(), cases.end(), [](SuiteCase c) {
    return !is_planar(c);
  });

  std::map<SuiteCase, std::vector<DecayReport>> grouped;
  std::optional<PlanarSetup> setup;
  if (any_planar) setup = planar_setup(cfg);
  const elastic::LameParams lame(cfg.lambda, cfg.mu);
  const geom::CutoffPair cut = geom::make_cutoff_pair(cfg.S);

  for (int level : cfg.ladder) {
    std::optional<PlanarPack> ppack;
    std::optional<SpherePack> spack;
    if (any_planar) ppack.emplace(setup->field, cut, level, cfg.S);
    if (any_sphere) spack.emplace(lame, cfg.radius, level);
    for (SuiteCase c : cases) {
      std::vector<DecayReport> reps = is_planar(c) ? planar_reports(c, *ppack, *setup, level)
                                                   : sphere_reports(c, *spack, level);
      auto& dst = grouped[c];
      dst.insert(dst.end(), std::make_move_iterator(reps.begin()),
                 std::make_move_iterator(reps.end()));
    }
  }

  std::vector<DecayReport> out;
  for (SuiteCase c : cases) {
    auto& src = grouped[c];
    out.insert(out.end(), std::make_move_iterator(src.begin()), std::make_move_iterator(src.end()));
  }
  return out;
}

std::vector<DecayReport> run_case(SuiteCase c, const SuiteConfig& cfg) {
  return run_cases({c}, cfg);
}

}  // namespace enplab::spectra
