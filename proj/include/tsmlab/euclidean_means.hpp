#pragma once

// Euclidean circular means on R^2 (identified with C) and the odd-function
// counterexamples on Coxeter line systems.

#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "tsmlab/core.hpp"

namespace tsmlab {

using PlaneFunction = std::function<double(cplx)>;

/// Rigid motion x -> e^{i angle} x + shift of R^2.
struct Isometry {
  double angle = 0.0;
  cplx shift = 0.0;

  cplx apply(cplx x) const { return std::polar(1.0, angle) * x + shift; }
  cplx inverse(cplx x) const { return std::polar(1.0, -angle) * (x - shift); }
};

/// Real samples on the square [-h, h]^2 with `cells`+1 nodes per axis.
/// Off-grid values come from the exact evaluator if attached, otherwise from
/// bicubic Lagrange interpolation. Points outside the support radius are 0.
class EuclideanField {
 public:
  static constexpr double kNoSupport = std::numeric_limits<double>::infinity();

  EuclideanField(double half_width, int cells, std::vector<double> values, double support_radius = kNoSupport,
                 PlaneFunction evaluator = {})
      : h_(half_width), cells_(cells), support_(support_radius), evaluator_(std::move(evaluator)),
        values_(std::make_shared<const std::vector<double>>(std::move(values))) {
    if (!(h_ > 0.0) || cells_ < 4) throw std::invalid_argument("EuclideanField: bad grid");
    const auto n = static_cast<std::size_t>(cells_ + 1);
    if (values_->size() != n * n) throw GridMismatch("EuclideanField: value count does not match grid");
    for (double v : *values_)
      if (!std::isfinite(v)) throw std::invalid_argument("EuclideanField: non-finite sample");
    if (support_ != kNoSupport && support_ > h_ * std::sqrt(2.0))
      throw std::invalid_argument("EuclideanField: support radius exceeds grid");
    // compact numerical support: samples beyond the support radius must vanish
    const double m = max_abs();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (std::abs(node(i, j)) >= support_ && std::abs((*values_)[i * n + j]) > 1e-12 * m)
          throw std::invalid_argument("EuclideanField: samples do not vanish outside the support radius");
  }

  static EuclideanField sample(PlaneFunction f, double half_width, int cells, double support_radius = kNoSupport) {
    const auto n = static_cast<std::size_t>(cells + 1);
    std::vector<double> v(n * n);
    const double step = 2.0 * half_width / cells;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        v[i * n + j] = f(cplx(-half_width + step * static_cast<double>(i), -half_width + step * static_cast<double>(j)));
    return EuclideanField(half_width, cells, std::move(v), support_radius, std::move(f));
  }

  double half_width() const { return h_; }
  int cells() const { return cells_; }
  double support_radius() const { return support_; }
  bool has_evaluator() const { return static_cast<bool>(evaluator_); }
  const std::vector<double>& values() const { return *values_; }

  cplx node(std::size_t i, std::size_t j) const {
    const double step = 2.0 * h_ / cells_;
    return {-h_ + step * static_cast<double>(i), -h_ + step * static_cast<double>(j)};
  }

  double operator()(cplx x) const {
    if (std::abs(x) >= support_) return 0.0;
    if (evaluator_) return evaluator_(x);
    return interpolate(x);
  }

  double interpolate(cplx x) const {
    if (std::abs(x.real()) > h_ || std::abs(x.imag()) > h_) {
      if (std::abs(x) >= support_) return 0.0;
      throw OutOfDomain("EuclideanField: point outside the sampled square", Point{x});
    }
    const double step = 2.0 * h_ / cells_;
    const double u = (x.real() + h_) / step, v = (x.imag() + h_) / step;
    const auto base = [this](double t) {
      return std::clamp(static_cast<int>(std::floor(t)) - 1, 0, cells_ - 3);
    };
    const int bi = base(u), bj = base(v);
    const auto weights = [](double t, int b, std::array<double, 4>& w) {
      for (int a = 0; a < 4; ++a) {
        double p = 1.0;
        for (int c = 0; c < 4; ++c)
          if (c != a) p *= (t - (b + c)) / static_cast<double>(a - c);
        w[static_cast<std::size_t>(a)] = p;
      }
    };
    std::array<double, 4> wu{}, wv{};
    weights(u, bi, wu);
    weights(v, bj, wv);
    const auto n = static_cast<std::size_t>(cells_ + 1);
    double s = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int c = 0; c < 4; ++c)
        s += wu[static_cast<std::size_t>(a)] * wv[static_cast<std::size_t>(c)] *
             (*values_)[static_cast<std::size_t>(bi + a) * n + static_cast<std::size_t>(bj + c)];
    return s;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : *values_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  double h_;
  int cells_;
  double support_;
  PlaneFunction evaluator_;
  std::shared_ptr<const std::vector<double>> values_;
};

/// (1/2pi) int f(x + r e^{i t}) dt with m equispaced nodes. The first node
/// points along `phase`, by default arg(x), so the node set is mirror
/// symmetric about the line through 0 and x.
inline double circular_mean(const EuclideanField& f, cplx x, double r, int m = 256,
                            double phase = std::numeric_limits<double>::quiet_NaN()) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("circular_mean: radius must be positive");
  if (m < 4) throw std::invalid_argument("circular_mean: need at least 4 nodes");
  if (std::isnan(phase)) phase = x == cplx(0.0) ? 0.0 : std::arg(x);
  CompensatedSum<double> s;
  for (int j = 0; j < m; ++j) s.add(f(x + std::polar(r, phase + 2.0 * kPi * j / m)));
  return s.value() / m;
}

struct MeanTableRow {
  cplx center;
  double radius;
  double value;
};

/// Circular means over all (center, radius) pairs, centre-major order.
inline std::vector<MeanTableRow> mean_table(const EuclideanField& f, const std::vector<cplx>& centers,
                                            const std::vector<double>& radii, int m = 256) {
  std::vector<MeanTableRow> rows(centers.size() * radii.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    const auto& c = centers[i / radii.size()];
    const double r = radii[i % radii.size()];
    rows[i] = {c, r, circular_mean(f, c, r, m)};
  });
  return rows;
}

/// Radial profiles g(rho): "bump" exp(-1/(1-(rho/s)^2)) on rho < s, or
/// "gaussian" exp(-rho^2 / (2 s^2)).
struct RadialProfile {
  std::string name = "bump";
  double scale = 1.0;

  double operator()(double rho) const {
    if (name == "bump") {
      const double t = rho / scale;
      return t < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0;
    }
    if (name == "gaussian") return std::exp(-rho * rho / (2.0 * scale * scale));
    throw std::invalid_argument("RadialProfile: unknown profile " + name);
  }

  double support() const { return name == "bump" ? scale : EuclideanField::kNoSupport; }

  void validate() const {
    if (name != "bump" && name != "gaussian") throw std::invalid_argument("RadialProfile: unknown profile " + name);
    if (!(scale > 0.0)) throw std::invalid_argument("RadialProfile: scale must be positive");
  }
};

/// Unit vectors e^{i pi l / N}, l = 0..N-1, spanning the lines of Sigma_N.
inline std::vector<cplx> coxeter_directions(int lines) {
  if (lines < 1) throw std::invalid_argument("coxeter_directions: need at least one line");
  std::vector<cplx> d;
  for (int l = 0; l < lines; ++l) d.push_back(std::polar(1.0, kPi * l / lines));
  return d;
}

/// f(x) = g(|x|) Im((x1 + i x2)^N): odd with respect to every line of Sigma_N.
inline EuclideanField coxeter_odd_counterexample(int lines, RadialProfile g = {}, int cells = 128) {
  if (lines < 1) throw std::invalid_argument("coxeter_odd_counterexample: N must be >= 1");
  g.validate();
  const double half = std::isfinite(g.support()) ? g.support() : 8.0 * g.scale;
  PlaneFunction f = [lines, g](cplx x) { return g(std::abs(x)) * std::pow(x, lines).imag(); };
  return EuclideanField::sample(std::move(f), half, cells, g.support());
}

/// The field x -> f(w^{-1} x), carried to the moved set w(S).
inline EuclideanField transported(const EuclideanField& f, const Isometry& w) {
  PlaneFunction g = [f, w](cplx x) { return f(w.inverse(x)); };
  return EuclideanField::sample(std::move(g), f.half_width() + std::abs(w.shift), f.cells());
}

// Euclidean basis ---------------------------------------------------------------------

/// Columns (width j, mode m, parity): (rho/s_j)^m e^{-rho^2/(2 s_j^2)} {cos, sin}(m theta),
/// normalized in L^2(R^2). Mode 0 has only the cosine column.
struct EuclideanBasis {
  std::vector<double> widths;
  int max_mode = 0;

  struct Column {
    std::size_t width;
    int mode;
    bool odd;  // sine column
  };

  std::vector<Column> columns() const {
    std::vector<Column> c;
    for (std::size_t j = 0; j < widths.size(); ++j)
      for (int m = 0; m <= max_mode; ++m) {
        c.push_back({j, m, false});
        if (m > 0) c.push_back({j, m, true});
      }
    return c;
  }

  static double value(const Column& c, double width, cplx x) {
    const double rho = std::abs(x) / width;
    const cplx zm = std::pow(x / width, c.mode);
    const double ang = c.odd ? zm.imag() : zm.real();  // rho^m {cos, sin}(m theta)
    double norm2 = kPi * width * width * std::tgamma(c.mode + 1.0);
    if (c.mode > 0) norm2 /= 2.0;
    return ang * std::exp(-0.5 * rho * rho) / std::sqrt(norm2);
  }

  double operator()(const Column& c, cplx x) const { return value(c, widths[c.width], x); }

  /// Sine columns whose mode is a multiple of N: odd about every line of Sigma_N.
  static bool in_odd_sector(const Column& c, int lines) { return c.odd && c.mode % lines == 0; }
};

}  // namespace tsmlab
