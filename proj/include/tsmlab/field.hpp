#pragma once

// Sampled complex fields on C^n and mean profiles.
//
// A SampledField holds values at the nodes of a polar tensor grid. Off-grid
// evaluation uses the field's exact evaluator when one is attached (analytic
// test fields, lazily evaluated transforms) and otherwise falls back to local
// Lagrange interpolation: 6 radial x 6 angular nodes per complex coordinate.
// Interpolation error is roughly h^6 |f^(6)| / 720 with h the local node
// spacing; operators report their tolerances assuming exact evaluators.

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tsmlab/core.hpp"
#include "tsmlab/quadrature.hpp"

namespace tsmlab {

enum class DecayClass { schwartz_like, gaussian_quarter_weighted };

inline std::string to_string(DecayClass d) {
  return d == DecayClass::schwartz_like ? "schwartz_like" : "gaussian_quarter_weighted";
}

inline DecayClass decay_class_from_string(const std::string& s) {
  if (s == "schwartz_like") return DecayClass::schwartz_like;
  if (s == "gaussian_quarter_weighted") return DecayClass::gaussian_quarter_weighted;
  throw std::invalid_argument("unknown decay class: " + s);
}

/// Bound on max|f| e^{|z|^2/4} / max|f| accepted for gaussian_quarter_weighted.
inline constexpr double kQuarterWeightBound = 1e6;

using FieldFunction = std::function<cplx(const Point&)>;

namespace detail {

/// Lagrange weights for x over `count` consecutive nodes starting at `first`.
inline void lagrange_weights(std::span<const double> nodes, std::size_t first, std::size_t count, double x,
                             std::span<double> out) {
  for (std::size_t a = 0; a < count; ++a) {
    double w = 1.0;
    for (std::size_t b = 0; b < count; ++b)
      if (a != b) w *= (x - nodes[first + b]) / (nodes[first + a] - nodes[first + b]);
    out[a] = w;
  }
}

inline constexpr std::size_t kStencil = 6;

struct SlotStencil {
  std::array<std::size_t, kStencil * kStencil> index{};
  std::array<double, kStencil * kStencil> weight{};
};

inline SlotStencil disk_stencil(const DiskFactor& disk, cplx z) {
  const double rho = std::abs(z);
  const std::size_t nr = disk.radii.size();
  const std::size_t na = static_cast<std::size_t>(disk.angular);
  const std::size_t sr = std::min(kStencil, nr);
  // radial: centre the window on rho
  std::size_t lo = 0;
  while (lo + 1 < nr && disk.radii[lo + 1] < rho) ++lo;
  std::size_t first = lo >= sr / 2 ? lo - (sr / 2 - 1) : 0;
  if (first + sr > nr) first = nr - sr;
  std::array<double, kStencil> wr{};
  lagrange_weights(disk.radii, first, sr, rho, wr);
  // angular: periodic equispaced nodes
  const double dtheta = 2.0 * kPi / static_cast<double>(na);
  double theta = std::arg(z);
  if (theta < 0) theta += 2.0 * kPi;
  const double pos = theta / dtheta;
  const auto base = static_cast<long>(std::floor(pos)) - static_cast<long>(kStencil / 2 - 1);
  std::array<double, kStencil> wa{};
  for (std::size_t a = 0; a < kStencil; ++a) {
    double w = 1.0;
    const double xa = static_cast<double>(base + static_cast<long>(a));
    for (std::size_t b = 0; b < kStencil; ++b) {
      if (a == b) continue;
      const double xb = static_cast<double>(base + static_cast<long>(b));
      w *= (pos - xb) / (xa - xb);
    }
    wa[a] = w;
  }
  SlotStencil st;
  std::size_t t = 0;
  for (std::size_t i = 0; i < sr; ++i) {
    for (std::size_t a = 0; a < kStencil; ++a) {
      const long ang = ((base + static_cast<long>(a)) % static_cast<long>(na) + static_cast<long>(na)) %
                       static_cast<long>(na);
      st.index[t] = (first + i) * na + static_cast<std::size_t>(ang);
      st.weight[t] = wr[i] * wa[a];
      ++t;
    }
  }
  for (; t < st.index.size(); ++t) st.weight[t] = 0.0;
  return st;
}

}  // namespace detail

class SampledField {
 public:
  SampledField() = default;

  SampledField(std::shared_ptr<const PlaneRule> grid, std::vector<cplx> values,
               DecayClass decay = DecayClass::schwartz_like, FieldFunction evaluator = {})
      : grid_(std::move(grid)),
        values_(std::make_shared<const std::vector<cplx>>(std::move(values))),
        decay_(decay),
        evaluator_(std::move(evaluator)) {
    if (!grid_) throw std::invalid_argument("SampledField: null grid");
    if (values_->size() != grid_->size())
      throw GridMismatch("SampledField: " + std::to_string(values_->size()) + " values for " +
                         std::to_string(grid_->size()) + " grid nodes");
    for (const auto& v : *values_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::invalid_argument("SampledField: non-finite sample");
    if (decay_ == DecayClass::gaussian_quarter_weighted && quarter_weight_ratio() > kQuarterWeightBound)
      throw std::invalid_argument("SampledField: |f| e^{|z|^2/4} is not bounded on the grid");
  }

  /// Samples f at every grid node; keeps f as the exact evaluator.
  static SampledField sample(std::shared_ptr<const PlaneRule> grid, FieldFunction f,
                             DecayClass decay = DecayClass::schwartz_like) {
    std::vector<cplx> values(grid->size());
    parallel_for(values.size(), [&](std::size_t i) { values[i] = f(grid->node(i)); });
    return SampledField(std::move(grid), std::move(values), decay, std::move(f));
  }

  int dim() const { return grid_->dim(); }
  const PlaneRule& grid() const { return *grid_; }
  const std::shared_ptr<const PlaneRule>& grid_ptr() const { return grid_; }
  std::span<const cplx> values() const { return *values_; }
  DecayClass decay_class() const { return decay_; }
  bool has_evaluator() const { return static_cast<bool>(evaluator_); }
  const FieldFunction& evaluator() const { return evaluator_; }

  /// True if z can be evaluated (evaluator attached, or z inside the grid's discs).
  bool covers(const Point& z) const {
    if (evaluator_) return true;
    for (int j = 0; j < dim(); ++j)
      if (std::abs(z[j]) > grid_->orders().extent) return false;
    return true;
  }

  cplx operator()(const Point& z) const {
    if (evaluator_) return evaluator_(z);
    return interpolate(z);
  }

  cplx interpolate(const Point& z) const {
    if (z.dim != dim()) throw GridMismatch("SampledField: point dimension does not match field");
    for (int j = 0; j < dim(); ++j)
      if (std::abs(z[j]) > grid_->orders().extent)
        throw OutOfDomain("interpolation outside the sampled grid", z);
    const auto& disk = grid_->factor();
    std::array<detail::SlotStencil, kMaxDim> st;
    for (int j = 0; j < dim(); ++j) st[static_cast<std::size_t>(j)] = detail::disk_stencil(disk, z[j]);
    const std::size_t m = detail::kStencil * detail::kStencil;
    const std::size_t fs = disk.size();
    cplx sum = 0.0;
    if (dim() == 1) {
      for (std::size_t a = 0; a < m; ++a) sum += st[0].weight[a] * (*values_)[st[0].index[a]];
    } else if (dim() == 2) {
      for (std::size_t a = 0; a < m; ++a) {
        if (st[0].weight[a] == 0.0) continue;
        cplx inner = 0.0;
        for (std::size_t b = 0; b < m; ++b) inner += st[1].weight[b] * (*values_)[st[0].index[a] * fs + st[1].index[b]];
        sum += st[0].weight[a] * inner;
      }
    } else {
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
          for (std::size_t c = 0; c < m; ++c)
            sum += st[0].weight[a] * st[1].weight[b] * st[2].weight[c] *
                   (*values_)[(st[0].index[a] * fs + st[1].index[b]) * fs + st[2].index[c]];
    }
    return sum;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : *values_) m = std::max(m, std::abs(v));
    return m;
  }

  /// max |f(z)| e^{|z|^2/4} over the grid divided by max |f|; 0 for the zero field.
  double quarter_weight_ratio() const {
    const double m = max_abs();
    if (m == 0.0) return 0.0;
    double w = 0.0;
    for (std::size_t i = 0; i < values_->size(); ++i)
      w = std::max(w, std::abs((*values_)[i]) * std::exp(0.25 * grid_->node(i).norm2()));
    return w / m;
  }

  /// Plain l2 norm of the samples (the "grid-l2" norm).
  double grid_l2() const {
    CompensatedSum<double> s;
    for (const auto& v : *values_) s.add(std::norm(v));
    return std::sqrt(s.value());
  }

 private:
  std::shared_ptr<const PlaneRule> grid_;
  std::shared_ptr<const std::vector<cplx>> values_;
  DecayClass decay_ = DecayClass::schwartz_like;
  FieldFunction evaluator_;
};

inline std::shared_ptr<const PlaneRule> shared_plane_rule(int n, PlaneOrders orders = {}, double tolerance = 1e-7) {
  return std::make_shared<const PlaneRule>(plane_rule(n, orders, tolerance));
}

inline std::shared_ptr<const PlaneRule> shared_polar_grid(int n, PlaneOrders orders) {
  return std::make_shared<const PlaneRule>(polar_grid(n, orders));
}

/// Grid-l2 distance between two fields on the same grid, divided by ||b||.
inline double relative_grid_l2(const SampledField& a, const SampledField& b) {
  if (a.grid().size() != b.grid().size()) throw GridMismatch("relative_grid_l2: grid sizes differ");
  CompensatedSum<double> num, den;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    num.add(std::norm(a.values()[i] - b.values()[i]));
    den.add(std::norm(b.values()[i]));
  }
  return den.value() == 0.0 ? std::sqrt(num.value()) : std::sqrt(num.value() / den.value());
}

/// Values f x mu_{r_i}(z) for one centre over a radius grid. When the radii
/// are the nodes of a RadialRule, `weights` carries that rule's weights.
struct MeanProfile {
  Point center;
  std::vector<double> radii;
  std::vector<cplx> values;
  std::vector<double> weights;

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
  }
};

}  // namespace tsmlab
