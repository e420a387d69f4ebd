#pragma once

// Candidate sets, sampling operators and their singular-value probes,
// Hecke-Bochner type-function counterexamples, and the Q_k expansion fit.

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tsmlab/constants.hpp"
#include "tsmlab/core.hpp"
#include "tsmlab/euclidean_means.hpp"
#include "tsmlab/field.hpp"
#include "tsmlab/quadrature.hpp"
#include "tsmlab/special_functions.hpp"
#include "tsmlab/twisted_transforms.hpp"

namespace tsmlab {

// Sampling sets ---------------------------------------------------------------------

enum class SetKind { coxeter_lines, plane_cross_coxeter, sphere, sphere_cross_plane, curve, custom };

inline std::string to_string(SetKind k) {
  switch (k) {
    case SetKind::coxeter_lines: return "coxeter_lines";
    case SetKind::plane_cross_coxeter: return "plane_cross_coxeter";
    case SetKind::sphere: return "sphere";
    case SetKind::sphere_cross_plane: return "sphere_cross_plane";
    case SetKind::curve: return "curve";
    case SetKind::custom: return "custom";
  }
  return "?";
}

inline SetKind set_kind_from_string(const std::string& s) {
  for (auto k : {SetKind::coxeter_lines, SetKind::plane_cross_coxeter, SetKind::sphere, SetKind::sphere_cross_plane,
                 SetKind::curve, SetKind::custom})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown set kind: " + s);
}

inline std::vector<double> default_radii() { return geometric_radii(0.2, 6.0, 24); }

struct SetParams {
  int dim = 1;
  int lines = 2;           // Sigma_L: L lines through 0 (2L rays)
  double extent = 3.0;     // ray length
  int per_ray = 7;         // points per ray, origin included
  double sphere_radius = 1.0;
  int sphere_nodes = 16;   // nodes on S^1 factors
  Sphere3Orders sphere3{4, 8, 8};
  double plane_extent = 2.0;  // C factor: square lattice on [-e, e]^2
  int plane_count = 3;        // lattice points per real axis
  Isometry isometry{};        // rigid motion of coxeter_lines sets
  std::vector<double> radii = default_radii();
  std::function<double(double)> curve_radius;  // r(t) for curve sets
  double t_start = 0.0;
  double t_end = 4.0 * kPi;
  int curve_samples = 64;
  std::vector<Point> custom_centers;
};

struct SamplingSet {
  SetKind kind = SetKind::custom;
  int dim = 1;
  std::vector<Point> centers;
  std::vector<double> radii;
  SetParams params;

  std::size_t rows() const { return centers.size() * radii.size(); }
  std::string describe() const {
    std::string s = to_string(kind) + " n=" + std::to_string(dim) + " centers=" + std::to_string(centers.size()) +
                    " radii=" + std::to_string(radii.size());
    if (kind == SetKind::coxeter_lines || kind == SetKind::plane_cross_coxeter) s += " lines=" + std::to_string(params.lines);
    return s;
  }
};

namespace detail {

inline void validate_radii(const std::vector<double>& radii) {
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) throw std::invalid_argument("sampling set: radii must be positive");
    if (i && !(radii[i] > radii[i - 1])) throw std::invalid_argument("sampling set: radii must be strictly increasing");
  }
}

inline bool lex_less(const Point& a, const Point& b) {
  for (int j = 0; j < a.dim; ++j) {
    if (a[j].real() != b[j].real()) return a[j].real() < b[j].real();
    if (a[j].imag() != b[j].imag()) return a[j].imag() < b[j].imag();
  }
  return false;
}

/// Points t * d on the 2L rays of Sigma_L, t = extent * j / (per_ray - 1), origin once.
inline std::vector<cplx> coxeter_points(int lines, double extent, int per_ray) {
  std::vector<cplx> pts{0.0};
  for (const auto& d : coxeter_directions(lines))
    for (double sign : {1.0, -1.0})
      for (int j = 1; j < per_ray; ++j) pts.push_back(sign * extent * j / (per_ray - 1) * d);
  return pts;
}

inline std::vector<cplx> square_lattice(double extent, int count) {
  std::vector<cplx> pts;
  for (int a = 0; a < count; ++a)
    for (int b = 0; b < count; ++b)
      pts.emplace_back(-extent + 2.0 * extent * a / (count - 1), -extent + 2.0 * extent * b / (count - 1));
  return pts;
}

inline bool on_lines(cplx u, int lines, double tol) {
  if (std::abs(u) <= tol) return true;
  for (const auto& d : coxeter_directions(lines))
    if (std::abs((u * std::conj(d)).imag()) <= tol * (1.0 + std::abs(u))) return true;
  return false;
}

}  // namespace detail

inline SamplingSet make_set(SetKind kind, SetParams p) {
  detail::validate_radii(p.radii);
  SamplingSet s;
  s.kind = kind;
  s.radii = p.radii;
  switch (kind) {
    case SetKind::coxeter_lines: {
      if (p.lines < 1 || !(p.extent > 0.0) || p.per_ray < 2) throw std::invalid_argument("coxeter_lines: invalid parameters");
      p.dim = 1;
      for (const auto& c : detail::coxeter_points(p.lines, p.extent, p.per_ray)) s.centers.push_back(Point{p.isometry.apply(c)});
      std::sort(s.centers.begin(), s.centers.end(), detail::lex_less);
      break;
    }
    case SetKind::plane_cross_coxeter: {
      if (p.dim != 2) throw std::invalid_argument("plane_cross_coxeter: only n = 2 is supported");
      if (p.lines < 1 || !(p.extent > 0.0) || p.per_ray < 2 || !(p.plane_extent > 0.0) || p.plane_count < 2)
        throw std::invalid_argument("plane_cross_coxeter: invalid parameters");
      for (const auto& z1 : detail::square_lattice(p.plane_extent, p.plane_count))
        for (const auto& z2 : detail::coxeter_points(p.lines, p.extent, p.per_ray)) s.centers.push_back(Point{z1, z2});
      std::sort(s.centers.begin(), s.centers.end(), detail::lex_less);
      break;
    }
    case SetKind::sphere: {
      if (!(p.sphere_radius > 0.0)) throw std::invalid_argument("sphere: radius must be positive");
      if (p.dim == 1) {
        if (p.sphere_nodes < 2) throw std::invalid_argument("sphere: need at least 2 nodes");
        for (int j = 0; j < p.sphere_nodes; ++j) s.centers.push_back(Point{std::polar(p.sphere_radius, 2.0 * kPi * j / p.sphere_nodes)});
      } else if (p.dim == 2) {
        s.centers = sphere3_rule(p.sphere_radius, p.sphere3).nodes;
      } else {
        throw std::invalid_argument("sphere: n must be 1 or 2");
      }
      break;
    }
    case SetKind::sphere_cross_plane: {
      if (p.dim != 2) throw std::invalid_argument("sphere_cross_plane: only S^1_R x C (n = 2) is supported");
      if (!(p.sphere_radius > 0.0) || p.sphere_nodes < 2 || !(p.plane_extent > 0.0) || p.plane_count < 2)
        throw std::invalid_argument("sphere_cross_plane: invalid parameters");
      for (int j = 0; j < p.sphere_nodes; ++j)
        for (const auto& z2 : detail::square_lattice(p.plane_extent, p.plane_count))
          s.centers.push_back(Point{std::polar(p.sphere_radius, 2.0 * kPi * j / p.sphere_nodes), z2});
      break;
    }
    case SetKind::curve: {
      if (!p.curve_radius) throw std::invalid_argument("curve: radius function missing");
      if (p.curve_samples < 2 || !(p.t_end > p.t_start)) throw std::invalid_argument("curve: invalid sampling");
      p.dim = 1;
      for (int i = 0; i < p.curve_samples; ++i) {
        const double t = p.t_start + (p.t_end - p.t_start) * i / p.curve_samples;
        const double r = p.curve_radius(t);
        if (!(r > 0.0)) throw std::invalid_argument("curve: r(t) must be positive");
        s.centers.push_back(Point{std::polar(r, t)});
      }
      break;
    }
    case SetKind::custom: {
      s.centers = p.custom_centers;
      for (const auto& c : s.centers)
        if (c.dim != p.dim) throw std::invalid_argument("custom: center dimension mismatch");
      break;
    }
  }
  s.dim = p.dim;
  s.params = std::move(p);
  return s;
}

/// gamma(t) = r(t) e^{it}, t in [t0, t1), `samples` points.
inline SamplingSet curve_set(std::function<double(double)> r, double t0, double t1, int samples,
                             std::vector<double> radii = default_radii()) {
  SetParams p;
  p.curve_radius = std::move(r);
  p.t_start = t0;
  p.t_end = t1;
  p.curve_samples = samples;
  p.radii = std::move(radii);
  return make_set(SetKind::curve, std::move(p));
}

/// Membership of z in the continuous set the sampling set discretizes.
inline bool lies_on_set(const SamplingSet& s, const Point& z, double tol = 1e-12) {
  if (z.dim != s.dim) return false;
  const auto& p = s.params;
  switch (s.kind) {
    case SetKind::coxeter_lines: return detail::on_lines(p.isometry.inverse(z[0]), p.lines, tol);
    case SetKind::plane_cross_coxeter: return detail::on_lines(z[1], p.lines, tol);
    case SetKind::sphere: return std::abs(z.norm() - p.sphere_radius) <= tol * p.sphere_radius;
    case SetKind::sphere_cross_plane: return std::abs(std::abs(z[0]) - p.sphere_radius) <= tol * p.sphere_radius;
    case SetKind::curve:
    case SetKind::custom:
      return std::any_of(s.centers.begin(), s.centers.end(), [&](const Point& c) { return (c - z).norm() <= tol * (1.0 + z.norm()); });
  }
  return false;
}

// Sampling operators -------------------------------------------------------------------

enum class Engine { twisted, euclidean };

inline std::string to_string(Engine e) { return e == Engine::twisted ? "twisted" : "euclidean"; }
inline Engine engine_from_string(const std::string& s) {
  if (s == "twisted") return Engine::twisted;
  if (s == "euclidean") return Engine::euclidean;
  throw std::invalid_argument("unknown engine: " + s);
}

struct BasisColumn {
  int degree = 0;                 // spectral degree (twisted) or angular mode (euclidean)
  std::array<int, 2> alpha{};     // twisted: phi_{alpha_j beta_j} in slot j
  std::array<int, 2> beta{};
  EuclideanBasis::Column euclid{};
  std::string label;
};

struct OperatorConfig {
  QuadratureConfig quad{};
  std::vector<double> euclid_widths{0.5, 0.8, 1.3, 2.0};
  std::size_t max_entries = 8'000'000;
};

struct SamplingOperator {
  Engine engine = Engine::twisted;
  int max_degree = 0;
  SamplingSet set;
  OperatorConfig config;
  std::vector<BasisColumn> columns;
  std::vector<std::pair<std::size_t, std::size_t>> row_index;  // (center, radius)
  Eigen::MatrixXcd matrix;
  Eigen::VectorXd sigma;       // descending; zero-padded to the column count
  Eigen::MatrixXcd right;      // right singular vectors, column i <-> sigma(i)
  bool degenerate = false;     // no rows

  double sigma_min() const { return sigma.size() ? sigma(sigma.size() - 1) : 0.0; }
  double sigma_max() const { return sigma.size() ? sigma(0) : 0.0; }
};

namespace detail {

/// (a1, a2) with a1 + a2 <= K, ordered by total degree, then a1 descending.
inline std::vector<std::array<int, 2>> bi_indices(int K) {
  std::vector<std::array<int, 2>> out;
  for (int d = 0; d <= K; ++d)
    for (int a1 = d; a1 >= 0; --a1) out.push_back({a1, d - a1});
  return out;
}

inline std::vector<BasisColumn> twisted_columns(int dim, int K) {
  std::vector<BasisColumn> cols;
  if (dim == 1) {
    for (int a = 0; a <= K; ++a)
      for (int b = 0; b <= K; ++b) {
        BasisColumn c;
        c.degree = a;
        c.alpha = {a, 0};
        c.beta = {b, 0};
        c.label = "phi_" + std::to_string(a) + "_" + std::to_string(b);
        cols.push_back(c);
      }
  } else if (dim == 2) {
    const auto idx = bi_indices(K);
    for (const auto& A : idx)
      for (const auto& B : idx) {
        BasisColumn c;
        c.degree = A[0] + A[1];
        c.alpha = A;
        c.beta = B;
        c.label = "phi_" + std::to_string(A[0]) + "_" + std::to_string(B[0]) + "(z1)*phi_" + std::to_string(A[1]) + "_" +
                  std::to_string(B[1]) + "(z2)";
        cols.push_back(c);
      }
  } else {
    throw std::invalid_argument("sampling operator: twisted engine supports n = 1, 2");
  }
  return cols;
}

inline std::vector<BasisColumn> euclidean_columns(const EuclideanBasis& basis) {
  std::vector<BasisColumn> cols;
  for (const auto& e : basis.columns()) {
    BasisColumn c;
    c.degree = e.mode;
    c.euclid = e;
    c.label = std::string(e.odd ? "sin" : "cos") + std::to_string(e.mode) + "_w" + std::to_string(e.width);
    cols.push_back(c);
  }
  return cols;
}

/// One operator row on C: (phi_ab x mu_r)(z) for all a, b <= K.
inline void twisted_row_c1(cplx z, double r, int K, int nodes, std::span<cplx> out) {
  const std::size_t m = static_cast<std::size_t>((K + 1) * (K + 1));
  std::vector<CompensatedSum<cplx>> acc(m);
  SpecialHermiteTable t(K);
  const double phase0 = z == cplx(0.0) ? 0.0 : std::arg(z);
  for (int j = 0; j < nodes; ++j) {
    const cplx w = std::polar(r, phase0 + 2.0 * kPi * j / nodes);
    t.evaluate(z - w);
    const cplx tw = std::polar(1.0 / nodes, 0.5 * (z.imag() * w.real() - z.real() * w.imag()));
    for (std::size_t c = 0; c < m; ++c) acc[c].add(tw * t.values()[c]);
  }
  for (std::size_t c = 0; c < m; ++c) out[c] = acc[c].value();
}

/// Circle averages of phi_ab(z - w) e^{(i/2)Im(z conj w)} over |w| = rho with `nodes` points.
inline void circle_table_average(cplx z, double rho, int nodes, SpecialHermiteTable& t, std::vector<cplx>& out) {
  std::fill(out.begin(), out.end(), cplx(0.0));
  for (int j = 0; j < nodes; ++j) {
    const cplx w = std::polar(rho, 2.0 * kPi * j / nodes);
    t.evaluate(z - w);
    const cplx tw = std::polar(1.0 / nodes, 0.5 * (z.imag() * w.real() - z.real() * w.imag()));
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += tw * t.values()[c];
  }
}

/// One operator row on C^2. The S^3 rule is a product over (s, p1, p2) and
/// both the basis and the twist factor split over the coordinates, so each s
/// node needs one circle average per coordinate.
inline void twisted_row_c2(const Point& z, double r, int K, const Sphere3Orders& orders,
                           const std::vector<BasisColumn>& cols, std::span<cplx> out) {
  const auto gl = gauss_legendre(orders.theta, 0.0, 1.0);
  const std::size_t m = static_cast<std::size_t>((K + 1) * (K + 1));
  SpecialHermiteTable t(K);
  std::vector<cplx> a(m), b(m);
  std::vector<CompensatedSum<cplx>> acc(cols.size());
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double s = gl.nodes[i];
    circle_table_average(z[0], r * std::sqrt(1.0 - s), orders.phi1, t, a);
    circle_table_average(z[1], r * std::sqrt(s), orders.phi2, t, b);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const auto& col = cols[c];
      acc[c].add(gl.weights[i] * a[static_cast<std::size_t>(col.alpha[0] * (K + 1) + col.beta[0])] *
                 b[static_cast<std::size_t>(col.alpha[1] * (K + 1) + col.beta[1])]);
    }
  }
  for (std::size_t c = 0; c < cols.size(); ++c) out[c] = acc[c].value();
}

inline void euclidean_row(cplx x, double r, const EuclideanBasis& basis, const std::vector<BasisColumn>& cols,
                          int nodes, std::span<cplx> out) {
  const double phase0 = x == cplx(0.0) ? 0.0 : std::arg(x);
  std::vector<CompensatedSum<double>> acc(cols.size());
  for (int j = 0; j < nodes; ++j) {
    const cplx y = x + std::polar(r, phase0 + 2.0 * kPi * j / nodes);
    for (std::size_t c = 0; c < cols.size(); ++c) acc[c].add(basis(cols[c].euclid, y));
  }
  for (std::size_t c = 0; c < cols.size(); ++c) out[c] = acc[c].value() / nodes;
}

inline void compute_svd(SamplingOperator& op) {
  const auto cols = static_cast<Eigen::Index>(op.columns.size());
  op.sigma = Eigen::VectorXd::Zero(cols);
  op.right = Eigen::MatrixXcd::Identity(cols, cols);
  if (op.matrix.rows() == 0 || cols == 0) {
    op.degenerate = op.matrix.rows() == 0;
    return;
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(op.matrix, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  op.sigma.head(sv.size()) = sv;
  op.right = svd.matrixV();
}

}  // namespace detail

/// M[(j, i), b] = (basis_b x mu_{r_i})(z_j), twisted or Euclidean, with its SVD.
inline SamplingOperator assemble_operator(const SamplingSet& set, int K, Engine engine, const OperatorConfig& cfg = {}) {
  if (K < 0) throw std::invalid_argument("assemble_operator: negative truncation");
  SamplingOperator op;
  op.engine = engine;
  op.max_degree = K;
  op.set = set;
  op.config = cfg;
  EuclideanBasis ebasis{cfg.euclid_widths, K};
  if (engine == Engine::twisted) {
    op.columns = detail::twisted_columns(set.dim, K);
  } else {
    if (set.dim != 1) throw std::invalid_argument("assemble_operator: the Euclidean engine works on R^2 = C");
    op.columns = detail::euclidean_columns(ebasis);
  }
  const std::size_t rows = set.rows(), cols = op.columns.size();
  if (rows * cols > cfg.max_entries)
    throw std::invalid_argument("assemble_operator: " + std::to_string(rows) + " x " + std::to_string(cols) +
                                " exceeds the configured entry limit");
  for (std::size_t j = 0; j < set.centers.size(); ++j)
    for (std::size_t i = 0; i < set.radii.size(); ++i) op.row_index.emplace_back(j, i);
  op.matrix = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::vector<cplx> buffer(rows * cols);
  parallel_for(rows, [&](std::size_t row) {
    const auto [j, i] = op.row_index[row];
    const Point& z = set.centers[j];
    const double r = set.radii[i];
    std::span<cplx> out(buffer.data() + row * cols, cols);
    try {
      if (engine == Engine::euclidean)
        detail::euclidean_row(z[0], r, ebasis, op.columns, cfg.quad.circle_nodes, out);
      else if (set.dim == 1)
        detail::twisted_row_c1(z[0], r, K, cfg.quad.circle_nodes, out);
      else
        detail::twisted_row_c2(z, r, K, cfg.quad.sphere3, op.columns, out);
    } catch (const std::exception& e) {
      throw QuadratureFailure("assemble_operator: row (center " + std::to_string(j) + ", radius " + std::to_string(i) +
                              "): " + e.what());
    }
  });
  for (std::size_t row = 0; row < rows; ++row)
    for (std::size_t c = 0; c < cols; ++c)
      op.matrix(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(c)) = buffer[row * cols + c];
  detail::compute_svd(op);
  return op;
}

/// Value of sum_b v_b basis_b at z.
inline cplx evaluate_combination(const SamplingOperator& op, const Eigen::VectorXcd& v, const Point& z) {
  if (op.engine == Engine::euclidean) {
    EuclideanBasis basis{op.config.euclid_widths, op.max_degree};
    cplx s = 0.0;
    for (std::size_t c = 0; c < op.columns.size(); ++c) s += v(static_cast<Eigen::Index>(c)) * basis(op.columns[c].euclid, z[0]);
    return s;
  }
  const int K = op.max_degree;
  SpecialHermiteTable t1(K), t2(K);
  t1.evaluate(z[0]);
  if (z.dim == 2) t2.evaluate(z[1]);
  cplx s = 0.0;
  for (std::size_t c = 0; c < op.columns.size(); ++c) {
    const auto& col = op.columns[c];
    cplx b = t1(col.alpha[0], col.beta[0]);
    if (z.dim == 2) b *= t2(col.alpha[1], col.beta[1]);
    s += v(static_cast<Eigen::Index>(c)) * b;
  }
  return s;
}

/// Largest |mean| over the set's rows of the field sum_b v_b basis_b, computed
/// through the transform modules (not the operator matrix).
inline double measured_mean_profile_max(const SamplingOperator& op, const Eigen::VectorXcd& v) {
  const auto& set = op.set;
  std::vector<double> worst(set.centers.size(), 0.0);
  if (op.engine == Engine::euclidean) {
    const double half = 8.0 * *std::max_element(op.config.euclid_widths.begin(), op.config.euclid_widths.end());
    const auto f = EuclideanField::sample([&op, v](cplx x) { return evaluate_combination(op, v, Point{x}).real(); }, half, 8);
    const auto g = EuclideanField::sample([&op, v](cplx x) { return evaluate_combination(op, v, Point{x}).imag(); }, half, 8);
    parallel_for(set.centers.size(), [&](std::size_t j) {
      for (double r : set.radii) {
        const cplx m(circular_mean(f, set.centers[j][0], r, op.config.quad.circle_nodes),
                     circular_mean(g, set.centers[j][0], r, op.config.quad.circle_nodes));
        worst[j] = std::max(worst[j], std::abs(m));
      }
    });
  } else {
    const auto grid = shared_polar_grid(set.dim, {12.0, 2, 4});
    const auto f = SampledField::sample(grid, [&op, v](const Point& z) { return evaluate_combination(op, v, z); });
    const auto unit = sphere_rule(set.dim, 1.0, op.config.quad);
    parallel_for(set.centers.size(), [&](std::size_t j) {
      for (double r : set.radii) worst[j] = std::max(worst[j], std::abs(twisted_spherical_mean(f, set.centers[j], r, unit)));
    });
  }
  return worst.empty() ? 0.0 : *std::max_element(worst.begin(), worst.end());
}

// Probes ---------------------------------------------------------------------------------

inline constexpr const char* kProbeCaveat =
    "Finite truncation: a positive sigma_min at degree K is numerical evidence only and does not prove that the set "
    "is a set of injectivity. Only non-injectivity is certified, by exhibiting a near-null vector whose field has "
    "vanishing means on the set.";

struct ProbeThresholds {
  double near_null_ratio = 1e-8;  // sigma <= ratio * sigma_max counts as near-null
  int max_near_null = 3;
  std::vector<int> degree_steps{0, 2, 4};
  bool round_trip = true;
};

struct NearNullVector {
  double sigma = 0.0;
  double residual = 0.0;    // ||M v|| / ||v||
  double round_trip = 0.0;  // max |mean| of the reconstructed field over the set
  Eigen::VectorXcd coefficients;
};

struct ProbeReport {
  std::string set;
  Engine engine = Engine::twisted;
  int max_degree = 0;
  std::vector<int> curve_degrees;
  std::vector<double> curve_sigma_min;
  std::vector<double> curve_sigma_max;
  std::vector<double> sigma;  // at max_degree
  std::vector<NearNullVector> near_null;
  bool degenerate = false;
  bool non_injective_certified = false;
  std::string caveat = kProbeCaveat;
};

inline std::vector<NearNullVector> near_null_vectors(const SamplingOperator& op, const ProbeThresholds& th) {
  std::vector<NearNullVector> out;
  const auto n = op.sigma.size();
  const double cut = th.near_null_ratio * op.sigma_max();
  for (Eigen::Index i = n - 1; i >= 0 && static_cast<int>(out.size()) < th.max_near_null; --i) {
    if (op.sigma(i) > cut) break;
    NearNullVector v;
    v.sigma = op.sigma(i);
    v.coefficients = op.right.col(i);
    v.residual = op.matrix.rows() ? (op.matrix * v.coefficients).norm() / v.coefficients.norm() : 0.0;
    if (th.round_trip && op.matrix.rows()) v.round_trip = measured_mean_profile_max(op, v.coefficients);
    out.push_back(std::move(v));
  }
  return out;
}

inline ProbeReport injectivity_probe(const SamplingOperator& op, const ProbeThresholds& th = {}) {
  ProbeReport rep;
  rep.set = op.set.describe();
  rep.engine = op.engine;
  rep.max_degree = op.max_degree;
  rep.degenerate = op.degenerate;
  rep.sigma.assign(op.sigma.data(), op.sigma.data() + op.sigma.size());
  for (int step : th.degree_steps) {
    const int K = op.max_degree + step;
    if (step == 0) {
      rep.curve_degrees.push_back(K);
      rep.curve_sigma_min.push_back(op.sigma_min());
      rep.curve_sigma_max.push_back(op.sigma_max());
      continue;
    }
    const auto bigger = assemble_operator(op.set, K, op.engine, op.config);
    rep.curve_degrees.push_back(K);
    rep.curve_sigma_min.push_back(bigger.sigma_min());
    rep.curve_sigma_max.push_back(bigger.sigma_max());
  }
  rep.near_null = near_null_vectors(op, th);
  rep.non_injective_certified = op.degenerate || !rep.near_null.empty();
  return rep;
}

/// sigma_min of the operator restricted to the given columns.
inline double restricted_sigma_min(const SamplingOperator& op, const std::function<bool(const BasisColumn&)>& keep) {
  std::vector<Eigen::Index> idx;
  for (std::size_t c = 0; c < op.columns.size(); ++c)
    if (keep(op.columns[c])) idx.push_back(static_cast<Eigen::Index>(c));
  if (idx.empty() || op.matrix.rows() == 0) return 0.0;
  Eigen::MatrixXcd sub(op.matrix.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) sub.col(static_cast<Eigen::Index>(c)) = op.matrix.col(idx[c]);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(sub);
  if (sub.rows() < sub.cols()) return 0.0;
  return svd.singularValues()(svd.singularValues().size() - 1);
}

/// Spectral block structure on C^2: the radius rows at each centre, combined
/// by the polar-decomposition formula with radial-rule weights, give
/// Q_k(basis_b)(z_j), which vanishes unless the column's degree is k. Returns
/// the off-block Frobenius mass relative to the total and the largest
/// deviation of the diagonal blocks from (2pi)^n basis_b(z_j).
struct BlockCheck {
  double off_block_ratio = 0.0;
  double diagonal_error = 0.0;
};

inline BlockCheck spectral_block_check(const SamplingOperator& op, const RadialRule& rule) {
  const auto& set = op.set;
  const int n = set.dim;
  if (op.engine != Engine::twisted) throw std::invalid_argument("spectral_block_check: twisted engine only");
  if (set.radii != rule.nodes || rule.jacobian_power != 2 * n - 1)
    throw std::invalid_argument("spectral_block_check: operator radii must be the radial rule's nodes");
  const int K = op.max_degree;
  const double area = sphere_area(n);
  double off = 0.0, total = 0.0, diag_err = 0.0;
  const Eigen::Index R = static_cast<Eigen::Index>(set.radii.size());
  for (std::size_t j = 0; j < set.centers.size(); ++j) {
    for (int k = 0; k <= K; ++k) {
      for (std::size_t c = 0; c < op.columns.size(); ++c) {
        cplx s = 0.0;
        for (Eigen::Index i = 0; i < R; ++i)
          s += rule.weights[static_cast<std::size_t>(i)] * laguerre_function({k, n - 1}, rule.nodes[static_cast<std::size_t>(i)]) *
               op.matrix(static_cast<Eigen::Index>(j) * R + i, static_cast<Eigen::Index>(c));
        s *= area;
        total += std::norm(s);
        if (op.columns[c].degree != k) {
          off += std::norm(s);
        } else {
          Eigen::VectorXcd e = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(op.columns.size()));
          e(static_cast<Eigen::Index>(c)) = 1.0;
          const cplx expect = std::pow(2.0 * kPi, n) * evaluate_combination(op, e, set.centers[j]);
          diag_err = std::max(diag_err, std::abs(s - expect));
        }
      }
    }
  }
  return {total > 0.0 ? std::sqrt(off / total) : 0.0, diag_err};
}

// Hecke-Bochner type functions --------------------------------------------------------------

/// f(z) = a(|z|) P(z) with a(rho) = exp(-decay * rho^2).
struct TypeFunctionSpec {
  SolidHarmonic harmonic;
  double decay = 0.25;

  double radial(double rho) const { return std::exp(-decay * rho * rho); }
  cplx operator()(const Point& z) const { return radial(z.norm()) * harmonic(z); }
};

struct ScanPoint {
  Point center;
  bool on_variety = false;      // P(center) = 0
  double max_mean = 0.0;        // max_r |f x mu_r(center)|
  bool detected_zero = false;   // max_mean <= tol * max|f|
};

struct VanishingSetReport {
  std::vector<double> radii;
  double field_max = 0.0;
  double tolerance = 0.0;
  std::vector<ScanPoint> points;
  std::vector<double> candidate_sphere_radii;  // |z| of detected zeros off P^{-1}(0)
  bool variety_contract_holds = true;          // every scanned variety point detected as zero
  double max_on_variety = 0.0;                 // relative to field_max
  double min_off_variety = 0.0;                // relative to field_max
};

struct ScanConfig {
  std::vector<Point> centers;  // empty: generated (see hecke_bochner_centers)
  std::vector<double> radii = default_radii();
  QuadratureConfig quad{};
  double tolerance = 1e-8;
};

/// max |f| = max_rho a(rho) rho^d * max_{|w|=1} |P(w)|, the sphere maximum
/// taken over a dense sphere rule.
inline double type_function_max(const TypeFunctionSpec& spec) {
  const int d = spec.harmonic.p() + spec.harmonic.q();
  const int n = spec.harmonic.dimension();
  const double rho = d == 0 ? 0.0 : std::sqrt(d / (2.0 * spec.decay));
  const double radial = spec.radial(rho) * std::pow(rho, d);
  double pmax = 0.0;
  if (n == 1) {
    for (int j = 0; j < 4096; ++j) pmax = std::max(pmax, std::abs(spec.harmonic(Point{std::polar(1.0, 2.0 * kPi * j / 4096)})));
  } else if (n == 2) {
    for (const auto& w : sphere3_rule(1.0, {64, 64, 64}).nodes) pmax = std::max(pmax, std::abs(spec.harmonic(w)));
  } else {
    throw std::invalid_argument("type_function_max: n must be 1 or 2");
  }
  return radial * pmax;
}

/// Default scan: points with one coordinate zero (kept if P vanishes there),
/// plus generic points with all coordinates nonzero.
inline std::vector<Point> hecke_bochner_centers(const SolidHarmonic& P, int per_coordinate, int generic) {
  const int n = P.dimension();
  std::vector<Point> out;
  if (n == 1) {
    if (std::abs(P(Point{cplx(0.0)})) == 0.0) out.push_back(Point{cplx(0.0)});
  } else {
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < per_coordinate; ++m) {
        Point z(n);
        for (int c = 0; c < n; ++c)
          z[c] = c == j ? cplx(0.0) : std::polar(0.3 + 0.2 * m, 0.9 * m + 0.4 * c);
        if (std::abs(P(z)) <= 1e-14) out.push_back(z);
      }
  }
  for (int g = 0; g < generic; ++g) {
    Point z(n);
    for (int c = 0; c < n; ++c) z[c] = std::polar(0.7 + 0.17 * g + 0.11 * c, 0.5 + 1.3 * g + 0.7 * c);
    out.push_back(z);
  }
  return out;
}

inline std::pair<SampledField, VanishingSetReport> hecke_bochner_counterexample(const TypeFunctionSpec& spec,
                                                                                 const ScanConfig& cfg) {
  if (!(spec.decay > 0.0)) throw std::invalid_argument("hecke_bochner_counterexample: radial profile must decay");
  if (!spec.harmonic.is_harmonic()) throw std::invalid_argument("hecke_bochner_counterexample: P is not harmonic");
  const int n = spec.harmonic.dimension();
  const DecayClass decay = spec.decay > 0.25 ? DecayClass::gaussian_quarter_weighted : DecayClass::schwartz_like;
  const auto grid = shared_polar_grid(n, {12.0, 8, 16});
  auto field = SampledField::sample(grid, [spec](const Point& z) { return spec(z); }, decay);

  VanishingSetReport rep;
  rep.radii = cfg.radii;
  rep.field_max = type_function_max(spec);
  rep.tolerance = cfg.tolerance;
  const auto centers = cfg.centers.empty() ? hecke_bochner_centers(spec.harmonic, 15, 10) : cfg.centers;
  rep.points.resize(centers.size());
  const auto unit = sphere_rule(n, 1.0, cfg.quad);
  parallel_for(centers.size(), [&](std::size_t i) {
    ScanPoint p;
    p.center = centers[i];
    const double scale = std::pow(std::max(1.0, p.center.norm()), spec.harmonic.p() + spec.harmonic.q());
    p.on_variety = std::abs(spec.harmonic(p.center)) <= 1e-12 * scale;
    for (double r : cfg.radii) p.max_mean = std::max(p.max_mean, std::abs(twisted_spherical_mean(field, p.center, r, unit)));
    p.detected_zero = p.max_mean <= cfg.tolerance * rep.field_max;
    rep.points[i] = p;
  });
  rep.min_off_variety = std::numeric_limits<double>::infinity();
  for (const auto& p : rep.points) {
    const double rel = p.max_mean / rep.field_max;
    if (p.on_variety) {
      rep.max_on_variety = std::max(rep.max_on_variety, rel);
      if (!p.detected_zero) rep.variety_contract_holds = false;
    } else {
      rep.min_off_variety = std::min(rep.min_off_variety, rel);
      if (p.detected_zero) {
        const double rad = std::round(p.center.norm() * 1e6) / 1e6;
        if (std::find(rep.candidate_sphere_radii.begin(), rep.candidate_sphere_radii.end(), rad) ==
            rep.candidate_sphere_radii.end())
          rep.candidate_sphere_radii.push_back(rad);
      }
    }
  }
  if (!std::isfinite(rep.min_off_variety)) rep.min_off_variety = 0.0;
  std::sort(rep.candidate_sphere_radii.begin(), rep.candidate_sphere_radii.end());
  return {std::move(field), std::move(rep)};
}

// Q_k expansion fit -------------------------------------------------------------------------

/// Q_k(z) = sum_{p=0..k} C_p z^p phi_{k-p}^p(z) + sum_{q=1..q_max} D_q conj(z)^q phi_k^q(z),
/// where phi_m^a(z) = L_m^a(|z|^2/2) e^{-|z|^2/4}. The q = 0 term coincides
/// with p = 0 and is carried by C_0.
struct ProjectionExpansion {
  int degree = 0;
  int q_max = 0;
  std::vector<cplx> holomorphic;      // C_p, p = 0..k
  std::vector<cplx> antiholomorphic;  // D_q, q = 1..q_max
  double residual = 0.0;              // relative, training samples
  double heldout_error = 0.0;         // relative, held-out samples
  double condition = 0.0;
  std::size_t train_count = 0, heldout_count = 0;

  cplx operator()(cplx z) const {
    cplx s = 0.0;
    const double rho = std::abs(z);
    for (int p = 0; p <= degree; ++p)
      s += holomorphic[static_cast<std::size_t>(p)] * std::pow(z, p) * laguerre_function({degree - p, p}, rho);
    for (int q = 1; q <= q_max; ++q)
      s += antiholomorphic[static_cast<std::size_t>(q - 1)] * std::pow(std::conj(z), q) * laguerre_function({degree, q}, rho);
    return s;
  }

  /// Sector label of the dominant coefficient: "p<k>" or "q<k>".
  std::string dominant_sector() const {
    double best = -1.0;
    std::string label;
    for (std::size_t p = 0; p < holomorphic.size(); ++p)
      if (std::abs(holomorphic[p]) > best) {
        best = std::abs(holomorphic[p]);
        label = "p" + std::to_string(p);
      }
    for (std::size_t q = 0; q < antiholomorphic.size(); ++q)
      if (std::abs(antiholomorphic[q]) > best) {
        best = std::abs(antiholomorphic[q]);
        label = "q" + std::to_string(q + 1);
      }
    return label;
  }
};

struct FitConfig {
  double radius_limit = 6.0;       // samples with |z| <= limit enter the fit
  double max_condition = 1e10;
};

inline ProjectionExpansion fit_projection_expansion(const SampledField& Qk, int k, int q_max, const FitConfig& cfg = {}) {
  if (Qk.dim() != 1) throw std::invalid_argument("fit_projection_expansion: Q_k must live on C");
  if (k < 0 || q_max < 0) throw std::invalid_argument("fit_projection_expansion: negative degree");
  const int ncols = k + 1 + q_max;
  std::vector<cplx> z_train, z_hold;
  std::vector<cplx> y_train, y_hold;
  const auto& grid = Qk.grid();
  std::size_t used = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const cplx z = grid.node(i)[0];
    if (std::abs(z) > cfg.radius_limit) continue;
    // alternate nodes between the fit and the held-out check
    const bool train = used++ % 2 == 0;
    (train ? z_train : z_hold).push_back(z);
    (train ? y_train : y_hold).push_back(Qk.values()[i]);
  }
  auto design = [&](const std::vector<cplx>& zs) {
    Eigen::MatrixXcd A(static_cast<Eigen::Index>(zs.size()), ncols);
    for (std::size_t r = 0; r < zs.size(); ++r) {
      const double rho = std::abs(zs[r]);
      for (int p = 0; p <= k; ++p)
        A(static_cast<Eigen::Index>(r), p) = std::pow(zs[r], p) * laguerre_function({k - p, p}, rho);
      for (int q = 1; q <= q_max; ++q)
        A(static_cast<Eigen::Index>(r), k + q) = std::pow(std::conj(zs[r]), q) * laguerre_function({k, q}, rho);
    }
    return A;
  };
  Eigen::MatrixXcd A = design(z_train);
  if (A.rows() < ncols) throw std::invalid_argument("fit_projection_expansion: too few samples inside the fit radius");
  Eigen::VectorXd scale(ncols);
  for (int c = 0; c < ncols; ++c) {
    scale(c) = A.col(c).norm();
    if (scale(c) == 0.0) scale(c) = 1.0;
    A.col(c) /= scale(c);
  }
  Eigen::VectorXcd y = Eigen::Map<const Eigen::VectorXcd>(y_train.data(), static_cast<Eigen::Index>(y_train.size()));
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  ProjectionExpansion out;
  out.degree = k;
  out.q_max = q_max;
  out.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
  if (!(out.condition <= cfg.max_condition))
    throw IllConditioned("fit_projection_expansion: design condition number " + std::to_string(out.condition) +
                             " exceeds " + std::to_string(cfg.max_condition),
                         out.condition);
  Eigen::VectorXcd c = svd.solve(y);
  for (int j = 0; j < ncols; ++j) c(j) /= scale(j);
  out.holomorphic.assign(c.data(), c.data() + k + 1);
  out.antiholomorphic.assign(c.data() + k + 1, c.data() + ncols);
  const Eigen::MatrixXcd A0 = design(z_train);
  const double ynorm = y.norm();
  out.residual = ynorm > 0.0 ? (A0 * c - y).norm() / ynorm : (A0 * c).norm();
  const Eigen::MatrixXcd H = design(z_hold);
  Eigen::VectorXcd yh = Eigen::Map<const Eigen::VectorXcd>(y_hold.data(), static_cast<Eigen::Index>(y_hold.size()));
  const double hnorm = yh.norm();
  out.heldout_error = hnorm > 0.0 ? (H * c - yh).norm() / hnorm : (H * c).norm();
  out.train_count = z_train.size();
  out.heldout_count = z_hold.size();
  return out;
}

}  // namespace tsmlab
