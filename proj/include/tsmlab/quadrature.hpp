#pragma once

// Deterministic quadrature rules: circles, the 3-sphere, radial half-lines
// with the r^{2n-1} Jacobian, and tensor polar rules over C^n.

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsmlab/core.hpp"

namespace tsmlab {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// m-point Gauss-Legendre rule on [a, b]; Newton iteration on P_m.
inline GaussRule gauss_legendre(int m, double a, double b) {
  if (m < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(m));
  rule.weights.resize(static_cast<std::size_t>(m));
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const auto legendre = [m](double x, double& deriv) {
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= m; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    deriv = m * (x * p1 - p0) / (x * x - 1.0);
    return p1;
  };
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      const double dx = legendre(x, dp) / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(x, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(m - 1 - i);
    rule.nodes[lo] = mid - half * x;
    rule.nodes[hi] = mid + half * x;
    rule.weights[lo] = half * w;
    rule.weights[hi] = half * w;
  }
  return rule;
}

// Spheres ---------------------------------------------------------------------

/// Normalized surface measure on S_r subset C^n: weights sum to one.
struct SphereRule {
  int sphere_dim = 1;  // 2n-1
  double radius = 0.0;
  std::vector<Point> nodes;
  std::vector<double> weights;

  int complex_dim() const { return (sphere_dim + 1) / 2; }
  std::size_t size() const { return nodes.size(); }
};

/// m equally spaced nodes on |w| = r starting at angle `phase`.
inline SphereRule circle_rule(double r, int m, double phase = 0.0) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("circle_rule: radius must be positive");
  if (m < 4) throw std::invalid_argument("circle_rule: need at least 4 nodes");
  SphereRule rule;
  rule.sphere_dim = 1;
  rule.radius = r;
  rule.nodes.reserve(static_cast<std::size_t>(m));
  rule.weights.assign(static_cast<std::size_t>(m), 1.0 / m);
  for (int j = 0; j < m; ++j) rule.nodes.push_back(Point{std::polar(r, phase + 2.0 * kPi * j / m)});
  return rule;
}

struct Sphere3Orders {
  int theta = 16;
  int phi1 = 32;
  int phi2 = 32;
};

/// S^3_r = {(r cos(t) e^{i p1}, r sin(t) e^{i p2})}. The normalized measure is
/// 2 sin(t) cos(t) dt dp1 dp2 / (2pi)^2; with s = sin^2(t) it is uniform ds on
/// [0, 1], so Gauss-Legendre runs in s and the trapezoid rule in p1, p2.
inline SphereRule sphere3_rule(double r, Sphere3Orders orders = {}) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("sphere3_rule: radius must be positive");
  if (orders.theta < 1 || orders.phi1 < 4 || orders.phi2 < 4)
    throw std::invalid_argument("sphere3_rule: orders too small");
  const auto gl = gauss_legendre(orders.theta, 0.0, 1.0);
  SphereRule rule;
  rule.sphere_dim = 3;
  rule.radius = r;
  const std::size_t total = gl.nodes.size() * static_cast<std::size_t>(orders.phi1 * orders.phi2);
  rule.nodes.reserve(total);
  rule.weights.reserve(total);
  const double ang = 1.0 / (static_cast<double>(orders.phi1) * orders.phi2);
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double s = gl.nodes[i];
    const double r1 = r * std::sqrt(1.0 - s);
    const double r2 = r * std::sqrt(s);
    for (int a = 0; a < orders.phi1; ++a) {
      const cplx w1 = std::polar(r1, 2.0 * kPi * a / orders.phi1);
      for (int b = 0; b < orders.phi2; ++b) {
        rule.nodes.push_back(Point{w1, std::polar(r2, 2.0 * kPi * b / orders.phi2)});
        rule.weights.push_back(gl.weights[i] * ang);
      }
    }
  }
  return rule;
}

/// Sum of w_i f(node_i) in node order with compensated summation.
template <class F>
auto integrate(const SphereRule& rule, F&& f) {
  using T = decltype(f(rule.nodes.front()));
  CompensatedSum<std::conditional_t<std::is_same_v<T, double>, double, cplx>> acc;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc.add(rule.weights[i] * f(rule.nodes[i]));
  return static_cast<T>(acc.value());
}

// Radial rule -------------------------------------------------------------------

/// Gauss-Legendre on [0, r_max] with the polar Jacobian r^{2n-1} folded into
/// the weights: sum w_i g(r_i) ~ int_0^{r_max} g(r) r^{2n-1} dr.
struct RadialRule {
  int jacobian_power = 1;
  double r_max = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline RadialRule radial_rule(int n, double r_max, int count) {
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("radial_rule: n must be 1..3");
  if (!(r_max > 0.0)) throw std::invalid_argument("radial_rule: r_max must be positive");
  const auto gl = gauss_legendre(count, 0.0, r_max);
  RadialRule rule;
  rule.jacobian_power = 2 * n - 1;
  rule.r_max = r_max;
  rule.nodes = gl.nodes;
  rule.weights.resize(gl.weights.size());
  for (std::size_t i = 0; i < gl.nodes.size(); ++i)
    rule.weights[i] = gl.weights[i] * std::pow(gl.nodes[i], rule.jacobian_power);
  return rule;
}

// Plane rules ---------------------------------------------------------------------

struct PlaneOrders {
  double extent = 12.0;  // R_max per complex coordinate
  int radial = 64;
  int angular = 128;
};

/// Polar product rule on the disc |w| <= extent in C: radial Gauss-Legendre x
/// uniform angles. Node index = radial_index * angular + angle_index.
struct DiskFactor {
  double extent = 0.0;
  int angular = 0;
  std::vector<double> radii;
  std::vector<double> radial_weights;  // includes the Jacobian r and 2pi/angular
  std::vector<cplx> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

inline DiskFactor disk_factor(PlaneOrders orders) {
  if (!(orders.extent > 0.0)) throw std::invalid_argument("plane rule: extent must be positive");
  if (orders.radial < 2 || orders.angular < 4) throw std::invalid_argument("plane rule: orders too small");
  const auto gl = gauss_legendre(orders.radial, 0.0, orders.extent);
  DiskFactor f;
  f.extent = orders.extent;
  f.angular = orders.angular;
  f.radii = gl.nodes;
  const double dtheta = 2.0 * kPi / orders.angular;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double rw = gl.weights[i] * gl.nodes[i] * dtheta;
    f.radial_weights.push_back(rw);
    for (int j = 0; j < orders.angular; ++j) {
      f.nodes.push_back(std::polar(gl.nodes[i], dtheta * j));
      f.weights.push_back(rw);
    }
  }
  return f;
}

/// Tensor product of `dim` copies of a disc rule; node index is slot-1 major.
class PlaneRule {
 public:
  PlaneRule() = default;
  PlaneRule(int dim, PlaneOrders orders) : dim_(dim), orders_(orders), factor_(disk_factor(orders)) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("PlaneRule: dimension must be 1..3");
    size_ = 1;
    for (int j = 0; j < dim_; ++j) size_ *= factor_.size();
  }

  int dim() const { return dim_; }
  const PlaneOrders& orders() const { return orders_; }
  const DiskFactor& factor() const { return factor_; }
  std::size_t size() const { return size_; }
  std::size_t factor_size() const { return factor_.size(); }

  /// Splits a flat index into per-slot factor indices.
  std::array<std::size_t, kMaxDim> split(std::size_t i) const {
    std::array<std::size_t, kMaxDim> idx{};
    for (int j = dim_ - 1; j >= 0; --j) {
      idx[static_cast<std::size_t>(j)] = i % factor_.size();
      i /= factor_.size();
    }
    return idx;
  }

  Point node(std::size_t i) const {
    const auto idx = split(i);
    Point p(dim_);
    for (int j = 0; j < dim_; ++j) p[j] = factor_.nodes[idx[static_cast<std::size_t>(j)]];
    return p;
  }

  double weight(std::size_t i) const {
    const auto idx = split(i);
    double w = 1.0;
    for (int j = 0; j < dim_; ++j) w *= factor_.weights[idx[static_cast<std::size_t>(j)]];
    return w;
  }

  bool same_layout(const PlaneRule& other) const {
    return dim_ == other.dim_ && orders_.extent == other.orders_.extent &&
           orders_.radial == other.orders_.radial && orders_.angular == other.orders_.angular;
  }

  // Filled by plane_rule(): relative errors of the Gaussian moments
  // int e^{-|z|^2/2} = (2pi)^n and int |z|^2 e^{-|z|^2/2} = 2n (2pi)^n.
  double tolerance = 0.0;
  double gaussian_moment_error = 0.0;
  double second_moment_error = 0.0;

 private:
  int dim_ = 1;
  PlaneOrders orders_{};
  DiskFactor factor_{};
  std::size_t size_ = 0;
};

/// Integration rule over C^n (n = 1, 2). Rejects truncation radii whose
/// Gaussian tail e^{-R^2/8} is not below `tolerance`, and rules that fail to
/// reproduce the Gaussian moments to `tolerance`.
inline PlaneRule plane_rule(int n, PlaneOrders orders = {}, double tolerance = 1e-7) {
  if (n != 1 && n != 2) throw std::invalid_argument("plane_rule: n must be 1 or 2");
  if (std::exp(-orders.extent * orders.extent / 8.0) >= tolerance)
    throw QuadratureFailure("plane_rule: extent " + std::to_string(orders.extent) +
                            " too small for tolerance " + std::to_string(tolerance));
  PlaneRule rule(n, orders);
  CompensatedSum<double> m0, m2;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double r2 = rule.node(i).norm2();
    const double g = rule.weight(i) * std::exp(-0.5 * r2);
    m0.add(g);
    m2.add(g * r2);
  }
  const double exact0 = std::pow(2.0 * kPi, n);
  rule.tolerance = tolerance;
  rule.gaussian_moment_error = std::abs(m0.value() - exact0) / exact0;
  rule.second_moment_error = std::abs(m2.value() - 2.0 * n * exact0) / (2.0 * n * exact0);
  if (rule.gaussian_moment_error > tolerance || rule.second_moment_error > tolerance)
    throw QuadratureFailure("plane_rule: Gaussian moment test failed (errors " +
                            std::to_string(rule.gaussian_moment_error) + ", " +
                            std::to_string(rule.second_moment_error) + ")");
  return rule;
}

/// Same layout as plane_rule() without the integration checks; used for
/// output/evaluation grids.
inline PlaneRule polar_grid(int n, PlaneOrders orders) { return PlaneRule(n, orders); }

template <class F>
auto integrate(const PlaneRule& rule, F&& f) {
  CompensatedSum<cplx> acc;
  for (std::size_t i = 0; i < rule.size(); ++i) acc.add(rule.weight(i) * cplx(f(rule.node(i))));
  return acc.value();
}

// Configuration -------------------------------------------------------------------

struct QuadratureConfig {
  int circle_nodes = 256;
  Sphere3Orders sphere3{};
};

/// Normalized sphere rule of radius r in C^n (n = 1: circle, n = 2: S^3).
inline SphereRule sphere_rule(int n, double r, const QuadratureConfig& cfg = {}, double phase = 0.0) {
  if (n == 1) return circle_rule(r, cfg.circle_nodes, phase);
  if (n == 2) return sphere3_rule(r, cfg.sphere3);
  throw std::invalid_argument("sphere_rule: spheres are available for n = 1, 2 only");
}

/// Geometric grid of `count` radii from r_min to r_max inclusive.
inline std::vector<double> geometric_radii(double r_min, double r_max, int count) {
  if (!(r_min > 0.0) || !(r_max > r_min) || count < 2)
    throw std::invalid_argument("geometric_radii: need 0 < r_min < r_max and count >= 2");
  std::vector<double> r(static_cast<std::size_t>(count));
  const double ratio = std::log(r_max / r_min) / (count - 1);
  for (int i = 0; i < count; ++i) r[static_cast<std::size_t>(i)] = r_min * std::exp(ratio * i);
  r.back() = r_max;
  return r;
}

}  // namespace tsmlab
