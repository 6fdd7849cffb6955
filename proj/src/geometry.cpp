#include "enplab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace enplab::geom {

Metric2 metric_from_chart(const Chart& chart, const Vec2& u) {
  if (!chart.domain.contains(u))
    throw std::domain_error("metric_from_chart: point outside chart domain");
  const Jac32 J = chart.d_phi(u);
  const Vec3 t1 = J.col(0), t2 = J.col(1);
  return {t1.squaredNorm(), t1.dot(t2), t2.squaredNorm()};
}

double smoothstep5(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (t * (6.0 * t - 15.0) + 10.0);
}

double radial_ramp(double r, double r_flat, double r_supp) {
  if (r <= r_flat) return 1.0;
  if (r >= r_supp) return 0.0;
  return 1.0 - smoothstep5((r - r_flat) / (r_supp - r_flat));
}

MetricField flat_field() {
  return MetricField([](const Vec2&) { return Metric2{}; }, 0.0, 1.0);
}

MetricField extend_metric(const Chart& chart, double cutoff_radius,
                          double holder_exponent, double blend_frac) {
  if (cutoff_radius <= 0.0)
    throw std::invalid_argument("extend_metric: cutoff_radius must be positive");
  if (!chart.domain.contains(Vec2(cutoff_radius, 0.0)) ||
      !chart.domain.contains(Vec2(0.0, cutoff_radius)))
    throw std::invalid_argument("extend_metric: cutoff_radius exceeds chart domain");

  const double r_in = (1.0 - blend_frac) * cutoff_radius;
  auto eval = [chart, cutoff_radius, r_in](const Vec2& u) -> Metric2 {
    const double r = u.norm();
    if (r >= cutoff_radius) return Metric2{};
    const Metric2 g = metric_from_chart(chart, u);
    if (r <= r_in) return g;
    // convex blend toward the identity keeps the field SPD
    const double w = radial_ramp(r, r_in, cutoff_radius);
    return {w * g.g11 + (1.0 - w), w * g.g12, w * g.g22 + (1.0 - w)};
  };

  // construction-time positive definiteness sweep
  const int ns = 101;
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < ns; ++j) {
      const Vec2 u(-cutoff_radius + 2.0 * cutoff_radius * i / (ns - 1),
                   -cutoff_radius + 2.0 * cutoff_radius * j / (ns - 1));
      if (u.norm() >= cutoff_radius) continue;
      if (!eval(u).spd())
        throw std::runtime_error("extend_metric: blend loses positive definiteness at (" +
                                 std::to_string(u[0]) + ", " + std::to_string(u[1]) + ")");
    }

  return MetricField(eval, cutoff_radius, holder_exponent);
}

CutoffPair make_cutoff_pair(double S) {
  if (S <= 0.0) throw std::invalid_argument("make_cutoff_pair: S must be positive");
  CutoffPair c;
  c.r1_flat = S / 4.0;
  c.r1_supp = 9.0 * S / 32.0;
  c.r2_flat = 3.0 * S / 8.0;
  c.r2_supp = 7.0 * S / 16.0;
  c.chi1 = [r0 = c.r1_flat, r1 = c.r1_supp](const Vec2& u) {
    return radial_ramp(u.norm(), r0, r1);
  };
  c.chi2 = [r0 = c.r2_flat, r1 = c.r2_supp](const Vec2& u) {
    return radial_ramp(u.norm(), r0, r1);
  };
  return c;
}

Jac32 mij_coefficients(const Chart& chart, const Vec2& u) {
  const Metric2 g = metric_from_chart(chart, u);
  const Jac32 J = chart.d_phi(u);
  // d1 phi_k = J(k,0), d2 phi_k = J(k,1)
  Jac32 m;
  m(0, 0) = g.g11 * J(2, 1) - g.g12 * J(2, 0);
  m(0, 1) = g.g12 * J(2, 1) - g.g22 * J(2, 0);
  m(1, 0) = -(g.g11 * J(1, 1) - g.g12 * J(1, 0));
  m(1, 1) = -(g.g12 * J(1, 1) - g.g22 * J(1, 0));
  m(2, 0) = g.g11 * J(0, 1) - g.g12 * J(0, 0);
  m(2, 1) = g.g12 * J(0, 1) - g.g22 * J(0, 0);
  return m;
}

Chart flat_chart(double half_width) {
  Chart c;
  c.domain = {half_width, half_width};
  c.phi = [](const Vec2& u) { return Vec3(u[0], u[1], 0.0); };
  c.d_phi = [](const Vec2&) {
    Jac32 J;
    J << 1, 0, 0, 1, 0, 0;
    return J;
  };
  return c;
}

namespace {

// Graph chart of a radial height h(u) = f(|u|); fp must be f' with fp(0)=0.
Chart radial_graph_chart(std::function<double(double)> f,
                         std::function<double(double)> fp,
                         double domain_half_width) {
  Chart c;
  c.domain = {domain_half_width, domain_half_width};
  c.phi = [f](const Vec2& u) { return Vec3(u[0], u[1], f(u.norm())); };
  c.d_phi = [fp](const Vec2& u) {
    const double r = u.norm();
    Jac32 J;
    J << 1, 0, 0, 1, 0, 0;
    if (r > 0.0) {
      const double s = fp(r) / r;
      J(2, 0) = s * u[0];
      J(2, 1) = s * u[1];
    }
    return J;
  };
  return c;
}

}  // namespace

Chart graph_bump_smooth(double height, double radius, double domain_half_width) {
  // f(r) = height * exp(1 - 1/(1 - (r/radius)^2)) inside, 0 outside
  auto f = [height, radius](double r) {
    const double s = (r / radius) * (r / radius);
    if (s >= 1.0) return 0.0;
    return height * std::exp(1.0 - 1.0 / (1.0 - s));
  };
  auto fp = [height, radius, f](double r) {
    const double s = (r / radius) * (r / radius);
    if (s >= 1.0) return 0.0;
    const double t = 1.0 - s;
    return f(r) * (-2.0 * r / (radius * radius)) / (t * t);
  };
  return radial_graph_chart(f, fp, domain_half_width);
}

Chart graph_bump_holder(double alpha, double height, double radius,
                        double domain_half_width) {
  if (alpha <= 0.0 || alpha > 1.0)
    throw std::invalid_argument("graph_bump_holder: alpha must lie in (0,1]");
  const double p = 1.0 + alpha / 2.0;
  const double r_flat = radius / 2.0;
  auto f = [height, p, r_flat, radius](double r) {
    return height * radial_ramp(r, r_flat, radius) * std::pow(r, p);
  };
  auto fp = [height, p, r_flat, radius](double r) {
    if (r <= 0.0) return 0.0;
    const double w = radial_ramp(r, r_flat, radius);
    double dw = 0.0;
    if (r > r_flat && r < radius) {
      const double t = (r - r_flat) / (radius - r_flat);
      dw = -30.0 * t * t * (t - 1.0) * (t - 1.0) / (radius - r_flat);
    }
    return height * (dw * std::pow(r, p) + w * p * std::pow(r, p - 1.0));
  };
  return radial_graph_chart(f, fp, domain_half_width);
}

Chart sphere_cap_chart(double domain_half_width) {
  Chart c;
  c.domain = {domain_half_width, domain_half_width};
  c.phi = [](const Vec2& u) {
    const double z2 = 1.0 - u.squaredNorm();
    if (z2 <= 0.0) throw std::domain_error("sphere_cap_chart: |u| >= 1");
    return Vec3(u[0], u[1], std::sqrt(z2));
  };
  c.d_phi = [](const Vec2& u) {
    const double z2 = 1.0 - u.squaredNorm();
    if (z2 <= 0.0) throw std::domain_error("sphere_cap_chart: |u| >= 1");
    const double z = std::sqrt(z2);
    Jac32 J;
    J << 1, 0, 0, 1, -u[0] / z, -u[1] / z;
    return J;
  };
  return c;
}

Chart sphere_polar_chart() {
  Chart c;
  c.domain = {4.0, 7.0};  // generously covers (0,pi) x [0,2pi]
  c.phi = [](const Vec2& u) {
    const double t = u[0], p = u[1];
    return Vec3(std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t));
  };
  c.d_phi = [](const Vec2& u) {
    const double t = u[0], p = u[1];
    Jac32 J;
    J << std::cos(t) * std::cos(p), -std::sin(t) * std::sin(p),
         std::cos(t) * std::sin(p),  std::sin(t) * std::cos(p),
        -std::sin(t), 0.0;
    return J;
  };
  return c;
}

double fitted_holder_exponent(const MetricField& field, int n_dirs) {
  const Metric2 g0 = field.evaluate(Vec2::Zero());
  std::vector<double> lx, ly;
  for (int k = 3; k <= 10; ++k) {
    const double r = std::pow(2.0, -k);
    double dmax = 0.0;
    for (int d = 0; d < n_dirs; ++d) {
      const double a = 2.0 * M_PI * d / n_dirs;
      const Metric2 g = field.evaluate(Vec2(r * std::cos(a), r * std::sin(a)));
      dmax = std::max({dmax, std::abs(g.g11 - g0.g11), std::abs(g.g12 - g0.g12),
                       std::abs(g.g22 - g0.g22)});
    }
    if (dmax <= 0.0) continue;
    lx.push_back(std::log(r));
    ly.push_back(std::log(dmax));
  }
  if (lx.size() < 2)
    throw std::runtime_error("fitted_holder_exponent: field is constant near 0");
  // least-squares slope
  const auto n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace enplab::geom
