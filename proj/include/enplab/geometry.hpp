#pragma once

// Charts, induced metrics, compactly supported metric extensions, cutoff
// pairs, and the m_ij coefficient fields used by the chart-level operators.

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>

namespace enplab::geom {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Jac32 = Eigen::Matrix<double, 3, 2>;

// Symmetric 2x2 tensor; inverse via the cofactor formulas
// g^11 = g22/det, g^22 = g11/det, g^12 = -g12/det.
struct Metric2 {
  double g11 = 1.0, g12 = 0.0, g22 = 1.0;

  double det() const { return g11 * g22 - g12 * g12; }
  bool spd() const { return g11 > 0.0 && det() > 0.0; }
  Metric2 inverse() const {
    const double d = det();
    return {g22 / d, -g12 / d, g11 / d};
  }
  Eigen::Matrix2d mat() const {
    Eigen::Matrix2d m;
    m << g11, g12, g12, g22;
    return m;
  }
};

struct Box2 {
  double half1 = 1.0, half2 = 1.0;  // centered rectangle [-half1,half1]x[-half2,half2]
  bool contains(const Vec2& u) const {
    return std::abs(u[0]) <= half1 && std::abs(u[1]) <= half2;
  }
};

// Parametrization Phi: D -> R^3 with analytic Jacobian.
struct Chart {
  std::function<Vec3(const Vec2&)> phi;
  std::function<Jac32(const Vec2&)> d_phi;
  Box2 domain;
};

// First fundamental form D(Phi)^T D(Phi) at u. Throws std::domain_error
// if u lies outside the chart domain.
Metric2 metric_from_chart(const Chart& chart, const Vec2& u);

// SPD tensor field on R^2, identity outside a compact set.
class MetricField {
 public:
  MetricField(std::function<Metric2(const Vec2&)> eval, double support_radius,
              double holder_exponent)
      : eval_(std::move(eval)),
        support_radius_(support_radius),
        holder_exponent_(holder_exponent) {}

  Metric2 evaluate(const Vec2& u) const { return eval_(u); }
  double support_radius() const { return support_radius_; }
  double holder_exponent() const { return holder_exponent_; }

 private:
  std::function<Metric2(const Vec2&)> eval_;
  double support_radius_;
  double holder_exponent_;
};

// G == I everywhere.
MetricField flat_field();

// Chart metric inside (1-blend_frac)*cutoff_radius, identity outside
// cutoff_radius, joined by a C^1 radial quintic ramp. Validates positive
// definiteness on a sample grid and throws std::runtime_error naming the
// offending point if the blend degenerates.
MetricField extend_metric(const Chart& chart, double cutoff_radius,
                          double holder_exponent = 1.0, double blend_frac = 0.25);

// Quintic smoothstep 6t^5 - 15t^4 + 10t^3, clamped to [0,1].
double smoothstep5(double t);

// 1 for r <= r_flat, 0 for r >= r_supp, quintic ramp in between.
double radial_ramp(double r, double r_flat, double r_supp);

// chi1 == 1 on r <= r1_flat and vanishes past r1_supp; chi2 == 1 on the
// support of chi1, so chi1*chi2 == chi1 holds exactly pointwise.
struct CutoffPair {
  std::function<double(const Vec2&)> chi1, chi2;
  double r1_flat, r1_supp, r2_flat, r2_supp;
};

// Radii (S/4, 9S/32, 3S/8, 7S/16) tied to a grid of half-width S.
CutoffPair make_cutoff_pair(double S);

// Coefficient fields m_11..m_32 built from the metric entries and the
// Jacobian of the chart; rows ordered (m_11,m_12),(m_21,m_22),(m_31,m_32).
Jac32 mij_coefficients(const Chart& chart, const Vec2& u);

// Built-in charts -----------------------------------------------------------

Chart flat_chart(double half_width);

// Graph of a C^inf radial bump of the given height supported in |u| < radius.
Chart graph_bump_smooth(double height = 0.5, double radius = 1.0,
                        double domain_half_width = 4.0);

// Graph of h(u) = height * w(|u|) * |u|^(1+alpha/2) with w a plateau cutoff
// (w == 1 for |u| <= radius/2). The chart is C^1 but not C^2 at the origin
// and its metric has sharp Holder exponent alpha there.
Chart graph_bump_holder(double alpha, double height = 0.5, double radius = 1.0,
                        double domain_half_width = 4.0);

// Upper-hemisphere graph chart Phi(u) = (u1, u2, sqrt(1-|u|^2)), |u| < 1.
Chart sphere_cap_chart(double domain_half_width = 0.7);

// Polar chart Phi(theta,phi) = (sin t cos p, sin t sin p, cos t) on
// (0,pi) x [0,2pi].
Chart sphere_polar_chart();

// Least-squares slope of log max_entries|g(u)-g(0)| against log|u| over a
// dyadic radius sweep r in [2^-10, 2^-3], sampling n_dirs directions per
// radius and taking the max discrepancy at each radius.
double fitted_holder_exponent(const MetricField& field, int n_dirs = 16);

}  // namespace enplab::geom
