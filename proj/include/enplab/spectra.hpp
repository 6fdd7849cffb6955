#pragma once

// Spectral diagnostics: weight-symmetrized eigenvalue and singular-value
// extraction, the cubic t(t^2 - k0^2), cluster reports against {0, +-k0},
// and the named suite of operator-cancellation cases on planar metrics and
// spheres. Compactness of a remainder is never decided from one matrix;
// every report carries the full singular-value profile at one refinement
// level plus the same-build non-compact reference, and trends are judged
// across a ladder of levels.

#include "enplab/chart_ops.hpp"
#include "enplab/elastic.hpp"
#include "enplab/riesz.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace enplab::spectra {

// Quantiles reported alongside every decay profile.
inline constexpr std::array<double, 3> kTailQuantiles{0.05, 0.1, 0.25};

struct DecayReport {
  std::string name;        // operator expression that was assembled
  int level = 0;           // planar nodes-per-side or sphere polar count
  Eigen::VectorXd sv;      // singular values, descending
  std::string reference;   // same-build non-compact comparator
  Eigen::VectorXd ref_sv;  // its singular values, descending

  // sigma_ceil(qK)/sigma_1 (1-based); 0 when sigma_1 == 0.
  double tail_index(double q) const;
  double ref_tail_index(double q) const;
};

struct SpectrumReport {
  std::vector<std::complex<double>> eigs;  // sorted by (Re, Im)
  std::array<double, 3> targets{};         // {0, +k0, -k0}
  double radius = 0.0;
  std::array<int, 3> counts{};             // aligned with targets
  int unassigned = 0;
  double max_imag = 0.0;

  bool all_clusters_nonempty() const {
    return counts[0] > 0 && counts[1] > 0 && counts[2] > 0;
  }
  double unassigned_fraction() const {
    return eigs.empty() ? 0.0 : static_cast<double>(unassigned) / static_cast<double>(eigs.size());
  }
};

// Full spectrum sorted by (Re, Im). The weighted overload conjugates by the
// square root of the (positive) quadrature weights first, so the result is
// the spectrum of the operator on the weighted L^2 inner product; the
// similarity leaves eigenvalues intact but symmetrizes symmetrizable
// operators, which keeps spurious imaginary parts at roundoff level.
std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXd& A);
std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXd& A, const Eigen::VectorXd& w);

// K (K^2 - k0^2 I), exact matrix polynomial.
Eigen::MatrixXd p3_apply(const Eigen::MatrixXd& K, double k0);

// Assigns each eigenvalue to the nearest of {0, +k0, -k0} when within
// `radius`, else counts it unassigned. Requires radius < k0/2 so the
// clusters cannot overlap; throws std::invalid_argument otherwise.
SpectrumReport cluster_report(const std::vector<std::complex<double>>& eigs, double k0,
                              double radius);

// Suite cases. The first seven act on the planar window diagnostics, the
// last three on the sphere boundary operator.
enum class SuiteCase {
  kRieszCommutator,    // chi (R1 R2 - R2 R1) chi
  kRieszSquaresum,     // chi (det G (g11 R1R1 + 2 g12 R1R2 + g22 R2R2) + I) chi
  kFrozenDiff,         // chi (R1 R2 - R_12) chi
  kMultCommutator,     // [M_f, R1] on the window, f = chi * m13_1
  kXijCommutators,     // X12 X13 - X13 X12
  kXsqSum,             // X12^2 + X13^2 + X23^2 + M_chi^2 (and literal + M_chi)
  kBrCube,             // R^3 - M_chi^2 R for the block matrix R (and literal)
  kKMinusK0T,          // singular-part cancellation between K and k0 T
  kP3K,                // K (K^2 - k0^2 I)
  kNoncompactFactors,  // K(K - k0 I), K(K + k0 I), K^2 - k0^2 I
};

const std::vector<SuiteCase>& all_cases();
std::string_view case_name(SuiteCase c);
std::string_view case_summary(SuiteCase c);  // one-line operator description
SuiteCase parse_case(std::string_view name);  // throws std::invalid_argument
bool is_planar(SuiteCase c);
int report_count(SuiteCase c);  // reports emitted per ladder level

struct SuiteConfig {
  std::string metric = "bump_smooth";  // planar cases: flat | bump_smooth | bump_holder
  double alpha = 0.5;                  // Holder exponent for bump_holder
  double S = 4.0;                      // planar grid half-width
  std::vector<int> ladder{32, 48, 64}; // planar n or sphere polar N, strictly increasing
  double lambda = 1.0;                 // Lame pair for sphere cases
  double mu = 1.0;
  double radius = 1.0;                 // sphere radius
};

// Chart + compactly supported metric for a planar metric name; throws
// std::invalid_argument for unknown names.
struct PlanarSetup {
  geom::Chart chart;
  geom::MetricField field;
};
PlanarSetup planar_setup(const SuiteConfig& cfg);

// One report per ladder level, grouped per case in input order; the
// NONCOMPACT_FACTORS case emits three reports per level. Cases that share
// assembled compositions (the three planar composition cases, the sphere
// cases) are built from one shared pack per (metric, level).
std::vector<DecayReport> run_cases(const std::vector<SuiteCase>& cases, const SuiteConfig& cfg);
std::vector<DecayReport> run_case(SuiteCase c, const SuiteConfig& cfg);

}  // namespace enplab::spectra
