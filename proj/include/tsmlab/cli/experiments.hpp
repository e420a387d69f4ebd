#pragma once

// Experiments behind the tsmlab command line. Each one builds its inputs
// from a Config (input errors surface as ConfigError before anything is
// written), runs, and returns payload files plus named checks.

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

#include "tsmlab/cli/config.hpp"
#include "tsmlab/constants.hpp"
#include "tsmlab/euclidean_means.hpp"
#include "tsmlab/injectivity_lab.hpp"
#include "tsmlab/io.hpp"
#include "tsmlab/twisted_transforms.hpp"

namespace tsmlab::cli {

using io::Json;

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  std::string relation = "<=";  // value relation threshold
  bool pass = false;
};

inline Check make_check(std::string name, double value, double threshold, std::string relation = "<=") {
  Check c{std::move(name), value, threshold, std::move(relation), false};
  c.pass = c.relation == "<=" ? value <= threshold : value >= threshold;
  return c;
}

struct Artifact {
  std::string path;  // relative to the output directory
  std::string content;
};

struct Outcome {
  std::vector<Artifact> files;
  std::vector<Check> checks;
  std::vector<std::string> warnings;
};

struct CheckInfo {
  std::string experiment, name, threshold_key, description;
};

inline const std::vector<CheckInfo>& check_catalog() {
  static const std::vector<CheckInfo> c = {
      {"verify-identities", "eigenfunction_n1", "checks.eigen_tol", "(-Delta + |z|^2/4) phi_k = (2k+1) phi_k on C, k <= eigen_kmax"},
      {"verify-identities", "eigenfunction_n2", "checks.eigen_tol", "(-Delta + |z|^2/4) phi_k^1 = (2k+2) phi_k^1 on C^2"},
      {"verify-identities", "product_relation_n1", "checks.product_tol", "phi_k x mu_r(z) = B(1,k) phi_k(r) phi_k(z), 5 radii x 5 centres"},
      {"verify-identities", "product_relation_n2", "checks.product_tol", "same on C^2 with B(2,k)"},
      {"verify-identities", "expansion_reconstruction", "checks.expansion_tol", "sum_{k<=40} Q_k / 2pi reproduces exp(-|z|^2/3)"},
      {"verify-identities", "orthogonality", "checks.orthogonality_tol", "phi_k x phi_m = 2pi delta_km phi_k, k, m <= 4"},
      {"verify-identities", "polar_bridge_agreement", "checks.bridge_tol", "polar formula = Q_k(f)(z), 5 centres, k <= 6"},
      {"verify-identities", "zero_profile_vanishing", "", "zero profile gives zero projections (odd field at 0), <= 1e-12"},
      {"verify-identities", "nonzero_profile_detected", "", "nonzero profile and projection at a generic centre, >= 1e-3"},
      {"verify-identities", "tensor_diagonal_identity", "checks.tensor_tol", "diagonal sum of tensor pieces = Q_k on C^2, k <= 4"},
      {"tsm-eval", "finite_means", "", "all means finite"},
      {"project", "expansion_reconstruction", "checks.expansion_tol", "sum_k Q_k / (2pi)^n against f (if enabled)"},
      {"expand-qk", "fit_heldout", "checks.fit_tol", "held-out relative error of the Q_k fit"},
      {"expand-qk", "fit_sector", "checks.sector_tol", "off-sector coefficients / leading one (type functions)"},
      {"counterexample", "odd_means_vanish", "checks.odd_mean_tol", "euclidean_odd: max |mean| / max|f| on Sigma_N"},
      {"counterexample", "null_vector_residual", "checks.null_residual_tol", "euclidean_odd: ||M v|| / ||v|| of the coefficient vector"},
      {"counterexample", "variety_vanishing", "checks.hecke_zero_tol", "hecke_bochner: max_r |f x mu_r| / max|f| on P^{-1}(0)"},
      {"counterexample", "generic_nonvanishing", "checks.hecke_generic_min", "hecke_bochner: same at generic centres"},
      {"probe", "near_null_round_trip", "probe.round_trip_factor", "measured means of near-null fields <= c * residual + 1e-10"},
      {"probe", "sigma_regression", "checks.regression_tol", "frozen sigma_min (Sigma_2, K = 10, default set)"},
      {"probe", "twisted_contrast", "checks.contrast_ratio", "twisted sigma_min / Euclidean odd-sector sigma_min on the same Sigma_N"},
  };
  return c;
}

// Input builders ----------------------------------------------------------------------

/// Runs `f`, turning input validation failures into configuration errors.
template <class F>
auto as_config(const std::string& what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

inline std::vector<double> radii_from(const Config& c, const std::string& prefix) {
  const double lo = c.real(prefix + "radii_min"), hi = c.real(prefix + "radii_max");
  const int count = c.integer(prefix + "radii_count");
  if (count == 1) return {lo};
  if (!(hi > lo)) throw ConfigError(prefix + "radii_max must exceed " + prefix + "radii_min");
  return geometric_radii(lo, hi, count);
}

inline QuadratureConfig quadrature_from(const Config& c) {
  return {c.integer("quadrature.circle_nodes"),
          {c.integer("quadrature.sphere_theta"), c.integer("quadrature.sphere_phi1"), c.integer("quadrature.sphere_phi2")}};
}

inline std::shared_ptr<const PlaneRule> source_grid(const Config& c, int n) {
  return as_config("quadrature", [&] {
    const double ext = c.real("quadrature.plane_extent");
    return n == 1 ? shared_plane_rule(1, {ext, c.integer("quadrature.plane_radial"), c.integer("quadrature.plane_angular")})
                  : shared_plane_rule(2, {ext, c.integer("quadrature.c2_radial"), c.integer("quadrature.c2_angular")});
  });
}

inline SolidHarmonic harmonic_from(int p, int q, int n, int index, const std::string& where) {
  const auto basis = as_config(where, [&] { return solid_harmonic_basis(p, q, n); });
  if (index < 0 || index >= static_cast<int>(basis.size()))
    throw ConfigError(where + ": harmonic index " + std::to_string(index) + " outside H_{" + std::to_string(p) + "," +
                      std::to_string(q) + "} of dimension " + std::to_string(basis.size()));
  return basis[static_cast<std::size_t>(index)];
}

struct FieldInput {
  SampledField field;
  std::string description;
  std::optional<SolidHarmonic> harmonic;
};

inline FieldInput field_from(const Config& c) {
  const int n = c.integer("field.dim");
  const auto grid = source_grid(c, n);
  const std::string kind = c.str("field.kind");
  const double a = c.real("field.decay");
  if (kind == "gaussian") {
    Point shift(n);
    const auto pts = c.points("field.shift", n);
    if (pts.size() > 1) throw ConfigError("field.shift: one point expected");
    if (!pts.empty()) shift = pts.front();
    auto f = SampledField::sample(grid, [a, shift](const Point& z) { return cplx(std::exp(-a * (z - shift).norm2())); });
    return {std::move(f), "gaussian exp(-" + io::num(a) + " |z - shift|^2)", std::nullopt};
  }
  if (kind == "laguerre") return {laguerre_field(c.integer("field.k"), grid), "laguerre phi_" + c.str("field.k"), std::nullopt};
  if (kind == "special_hermite") {
    if (n != 1) throw ConfigError("field.kind = special_hermite needs field.dim = 1");
    return {special_hermite_field({c.integer("field.alpha"), c.integer("field.beta")}, grid),
            "special_hermite phi_" + c.str("field.alpha") + "_" + c.str("field.beta"), std::nullopt};
  }
  const auto P = harmonic_from(c.integer("field.p"), c.integer("field.q"), n, c.integer("field.harmonic"), "field");
  auto f = SampledField::sample(grid, [a, P](const Point& z) { return std::exp(-a * z.norm2()) * P(z); },
                                a > 0.25 ? DecayClass::gaussian_quarter_weighted : DecayClass::schwartz_like);
  return {std::move(f), "type_function exp(-" + io::num(a) + " |z|^2) * " + P.to_string(), P};
}

inline SamplingSet set_from(const Config& c) {
  SetParams p;
  p.dim = c.integer("set.dim");
  p.lines = c.integer("set.lines");
  p.extent = c.real("set.extent");
  p.per_ray = c.integer("set.per_ray");
  p.sphere_radius = c.real("set.radius");
  p.sphere_nodes = c.integer("set.nodes");
  p.sphere3 = {c.integer("set.sphere_theta"), c.integer("set.sphere_phi1"), c.integer("set.sphere_phi2")};
  p.plane_extent = c.real("set.plane_extent");
  p.plane_count = c.integer("set.plane_count");
  p.isometry.angle = c.real("set.rotation");
  const auto shift = c.points("set.shift", 1);
  if (shift.size() > 1) throw ConfigError("set.shift: one point expected");
  if (!shift.empty()) p.isometry.shift = shift.front()[0];
  p.radii = radii_from(c, "set.");
  const double scale = c.real("set.curve_scale"), rate = c.real("set.curve_rate");
  if (c.str("set.curve") == "spiral")
    p.curve_radius = [scale, rate](double t) { return scale * std::exp(-rate * t); };
  else
    p.curve_radius = [scale](double) { return scale; };
  p.t_start = c.real("set.t_start");
  p.t_end = c.real("set.t_end");
  p.curve_samples = c.integer("set.samples");
  p.custom_centers = c.points("set.points", p.dim);
  const auto kind = set_kind_from_string(c.str("set.kind"));
  return as_config("set", [&] { return make_set(kind, p); });
}

// verify-identities ----------------------------------------------------------------------

inline Outcome verify_identities(const Config& c) {
  Outcome out;
  const auto quad = quadrature_from(c);
  const auto plane1 = source_grid(c, 1);
  const double h = c.real("checks.fd_step");
  Json report;
  report["schema"] = io::kSchema;
  report["experiment"] = "verify-identities";

  // eigenfunctions of -Delta + |z|^2/4 (radial, so the rotation term is absent)
  const int kmax = c.integer("checks.eigen_kmax");
  for (int n = 1; n <= 2; ++n) {
    std::vector<Point> pts;
    if (n == 1) {
      for (int a = -10; a <= 10; ++a)
        for (int b = -10; b <= 10; ++b)
          if (std::hypot(a, b) * 0.5 <= 5.0) pts.push_back(Point{cplx(0.5 * a, 0.5 * b)});
    } else {
      for (int i = 0; i < 60; ++i)
        pts.push_back(Point{std::polar(0.1 + 0.06 * i, 0.9 * i), std::polar(0.2 + 0.05 * i, 1.7 * i + 0.3)});
    }
    double worst = 0.0;
    Json per_k = Json::array();
    for (int k = 0; k <= kmax; ++k) {
      FieldFunction u = [k, n](const Point& z) { return cplx(laguerre_function({k, n - 1}, z.norm())); };
      double num = 0.0, den = 0.0;
      for (const auto& z : pts) {
        const cplx r = special_hermite_operator(u, z, h, false) - (2.0 * k + n) * u(z);
        num += std::norm(r);
        den += std::norm(u(z));
      }
      const double rel = std::sqrt(num / den);
      per_k.push_back(rel);
      worst = std::max(worst, rel);
    }
    report["eigenfunction_n" + std::to_string(n)] = per_k;
    out.checks.push_back(make_check("eigenfunction_n" + std::to_string(n), worst, c.real("checks.eigen_tol")));
  }

  // product relation
  const int pk = c.integer("checks.product_kmax");
  const std::vector<double> radii{0.3, 1.0, 2.0, 3.5, 5.0};
  const std::vector<Point> probes1 = {Point{cplx(0, 0)}, Point{cplx(0.7, 0.2)}, Point{cplx(-1.1, 0.9)},
                                      Point{cplx(0.3, -2.0)}, Point{cplx(2.4, 1.3)}};
  const std::vector<Point> probes2 = {Point{cplx(0, 0), cplx(0, 0)}, Point{cplx(0.5, 0.2), cplx(-0.3, 0.8)},
                                      Point{cplx(1.5, 0), cplx(0, 1.0)}, Point{cplx(-0.9, -0.4), cplx(0.6, 0.0)},
                                      Point{cplx(0.2, 1.8), cplx(-1.2, 0.7)}};
  for (int n = 1; n <= 2; ++n) {
    const auto grid = n == 1 ? plane1 : shared_polar_grid(2, {c.real("quadrature.plane_extent"), 2, 4});
    const auto unit = sphere_rule(n, 1.0, quad);
    double worst = 0.0;
    for (int k = 0; k <= pk; ++k) {
      const auto f = laguerre_field(k, grid);
      for (double r : radii)
        for (const auto& z : n == 1 ? probes1 : probes2) {
          const double pr = laguerre_function({k, n - 1}, r) * laguerre_function({k, n - 1}, z.norm());
          const cplx got = twisted_spherical_mean(f, z, r, unit);
          worst = std::max(worst, std::abs(got - product_relation_constant(n, k) * pr) / (1.0 + std::abs(pr)));
        }
    }
    out.checks.push_back(make_check("product_relation_n" + std::to_string(n), worst, c.real("checks.product_tol")));
  }

  // special Hermite expansion and orthogonality on C
  {
    const auto f = SampledField::sample(plane1, [](const Point& z) { return cplx(std::exp(-z.norm2() / 3)); });
    const auto og = shared_polar_grid(1, {6.0, 16, 32});
    Diagnostics diag;
    const auto q = spectral_projections(f, 40, og, &diag);
    const auto rec = special_hermite_reconstruction(q);
    const double err = relative_grid_l2(rec, SampledField::sample(og, f.evaluator()));
    out.checks.push_back(make_check("expansion_reconstruction", err, c.real("checks.expansion_tol")));
    for (auto& w : diag.warnings) out.warnings.push_back(w);

    const auto small = shared_polar_grid(1, {3.0, 4, 8});
    double worst = 0.0;
    for (int k = 0; k <= 4; ++k)
      for (int m = 0; m <= 4; ++m) {
        const auto conv = twisted_convolution(laguerre_field(k, plane1), laguerre_field(m, plane1), small);
        for (std::size_t i = 0; i < small->size(); ++i) {
          const cplx expect = k == m ? 2.0 * kPi * laguerre_function({k, 0}, small->node(i).norm()) : cplx(0.0);
          worst = std::max(worst, std::abs(conv.values()[i] - expect));
        }
      }
    out.checks.push_back(make_check("orthogonality", worst, c.real("checks.orthogonality_tol")));
  }

  // polar formula against the projection
  {
    const auto rule = radial_rule(1, c.real("quadrature.radial_extent"), c.integer("quadrature.radial_nodes"));
    const auto f = SampledField::sample(plane1, [](const Point& z) {
      return cplx(std::exp(-std::norm(z[0] - cplx(0.6, -0.4)) / 3));
    });
    const auto q = spectral_projections(f, 6, shared_polar_grid(1, {1.0, 2, 4}));
    double worst = 0.0;
    for (const auto& z : probes1) {
      const auto prof = mean_profile(f, z, rule, quad);
      for (int k = 0; k <= 6; ++k)
        worst = std::max(worst, std::abs(polar_bridge(prof, k, 1) - q[static_cast<std::size_t>(k)](z)));
    }
    out.checks.push_back(make_check("polar_bridge_agreement", worst, c.real("checks.bridge_tol")));

    const auto odd = SampledField::sample(plane1, [](const Point& z) { return z[0] * std::exp(-z.norm2() / 3); });
    const Point origin{cplx(0.0)};
    const auto p0 = mean_profile(odd, origin, rule, quad);
    const auto q0 = spectral_projections(odd, 10, shared_polar_grid(1, {1.0, 2, 4}));
    double vanish = p0.max_abs();
    for (int k = 0; k <= 10; ++k) {
      vanish = std::max(vanish, std::abs(polar_bridge(p0, k, 1)));
      vanish = std::max(vanish, std::abs(q0[static_cast<std::size_t>(k)](origin)));
    }
    out.checks.push_back(make_check("zero_profile_vanishing", vanish, 1e-12));
    const auto p1 = mean_profile(f, probes1[1], rule, quad);
    double qmax = 0.0;
    for (int k = 0; k <= 6; ++k) qmax = std::max(qmax, std::abs(q[static_cast<std::size_t>(k)](probes1[1])));
    out.checks.push_back(make_check("nonzero_profile_detected", std::min(p1.max_abs(), qmax), 1e-3, ">="));
  }

  // tensor diagonal identity on C^2
  {
    const auto grid = source_grid(c, 2);
    const auto og = shared_polar_grid(2, {3.0, 3, 6});
    const auto f = SampledField::sample(grid, [](const Point& z) {
      return std::exp(-std::norm(z[0] - cplx(0.4, 0.2)) / 3 - std::norm(z[1]) / 2) * (1.0 + z[0] * std::conj(z[1]));
    });
    const auto q = spectral_projections(f, 4, og);
    double worst = 0.0;
    Json per_k = Json::array();
    for (int k = 0; k <= 4; ++k) {
      const auto pieces = tensor_decompose_projection(f, k, og);
      std::vector<cplx> sum(og->size(), 0.0);
      for (const auto& p : pieces)
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += p.values()[i];
      const double e = relative_grid_l2(SampledField(og, sum), q[static_cast<std::size_t>(k)]);
      per_k.push_back(e);
      worst = std::max(worst, e);
    }
    report["tensor_diagonal_identity"] = per_k;
    out.checks.push_back(make_check("tensor_diagonal_identity", worst, c.real("checks.tensor_tol")));
  }

  out.files.push_back({"identities.json", report.dump(2) + "\n"});
  return out;
}

// tsm-eval -------------------------------------------------------------------------------

inline Outcome tsm_eval(const Config& c) {
  Outcome out;
  const auto in = field_from(c);
  const int n = in.field.dim();
  const auto centers = c.points("eval.centers", n);
  if (centers.empty()) throw ConfigError("eval.centers: at least one centre is needed");
  const auto radii = radii_from(c, "eval.");
  const auto quad = quadrature_from(c);
  Json report;
  report["schema"] = io::kSchema;
  report["experiment"] = "tsm-eval";
  report["field"] = in.description;
  Json rows = Json::array();
  bool finite = true;
  for (std::size_t j = 0; j < centers.size(); ++j) {
    const auto prof = mean_profile(in.field, centers[j], radii, quad);
    for (const auto& v : prof.values) finite = finite && std::isfinite(v.real()) && std::isfinite(v.imag());
    const std::string name = "profile_" + std::to_string(j) + ".csv";
    out.files.push_back({name, io::profile_csv(prof)});
    rows.push_back({{"center", io::to_json(centers[j])}, {"file", name}, {"max_abs", prof.max_abs()}});
  }
  report["profiles"] = rows;
  out.files.push_back({"means.json", report.dump(2) + "\n"});
  out.checks.push_back(make_check("finite_means", finite ? 1.0 : 0.0, 1.0, ">="));
  return out;
}

// project ---------------------------------------------------------------------------------

inline Outcome project(const Config& c) {
  Outcome out;
  const auto in = field_from(c);
  const int n = in.field.dim();
  const auto og = as_config("project", [&] {
    return shared_polar_grid(n, {c.real("project.out_extent"), c.integer("project.out_radial"), c.integer("project.out_angular")});
  });
  const int K = c.integer("project.max_degree");
  Diagnostics diag;
  const auto q = spectral_projections(in.field, K, og, &diag);
  std::string norms = "k,grid_l2\n";
  for (int k = 0; k <= K; ++k) {
    const auto& qk = q[static_cast<std::size_t>(k)];
    norms += std::to_string(k) + "," + io::num(qk.grid_l2()) + "\n";
    out.files.push_back({"q_" + std::to_string(k) + ".csv", io::field_csv(qk)});
    out.files.push_back({"q_" + std::to_string(k) + ".json", io::field_header(qk).dump(2) + "\n"});
  }
  out.files.push_back({"projection_norms.csv", norms});
  Json report;
  report["schema"] = io::kSchema;
  report["experiment"] = "project";
  report["field"] = in.description;
  report["max_degree"] = K;
  report["grid_degree_heuristic"] = max_supported_degree(in.field.grid());
  if (c.boolean("project.check_reconstruction")) {
    const auto rec = special_hermite_reconstruction(q);
    const double err = relative_grid_l2(rec, SampledField::sample(og, in.field.evaluator()));
    report["reconstruction_error"] = err;
    out.checks.push_back(make_check("expansion_reconstruction", err, c.real("checks.expansion_tol")));
  }
  report["warnings"] = diag.warnings;
  out.warnings = diag.warnings;
  out.files.push_back({"projection.json", report.dump(2) + "\n"});
  return out;
}

// expand-qk -------------------------------------------------------------------------------

inline Outcome expand_qk(const Config& c) {
  Outcome out;
  const auto in = field_from(c);
  if (in.field.dim() != 1) throw ConfigError("expand-qk works on C: set field.dim = 1");
  const int k = c.integer("expand.k"), qmax = c.integer("expand.q_max");
  const auto og = as_config("project", [&] {
    return shared_polar_grid(1, {c.real("project.out_extent"), c.integer("project.out_radial"), c.integer("project.out_angular")});
  });
  const auto Q = spectral_projection(in.field, k, og);
  FitConfig fc;
  fc.radius_limit = c.real("expand.radius_limit");
  fc.max_condition = c.real("expand.max_condition");
  const auto fit = fit_projection_expansion(Q, k, qmax, fc);
  Json report = io::to_json(fit);
  report["field"] = in.description;
  out.checks.push_back(make_check("fit_heldout", fit.heldout_error, c.real("checks.fit_tol")));
  // a type function z^p g or conj(z)^q g has one expected sector
  if (in.harmonic && in.field.dim() == 1) {
    const int p = in.harmonic->p(), q = in.harmonic->q();
    const bool holo = q == 0 && p <= k, anti = p == 0 && q >= 1 && q <= qmax;
    if (holo || anti) {
      const cplx lead = holo ? fit.holomorphic[static_cast<std::size_t>(p)] : fit.antiholomorphic[static_cast<std::size_t>(q - 1)];
      double off = 0.0;
      for (std::size_t i = 0; i < fit.holomorphic.size(); ++i)
        if (!(holo && static_cast<int>(i) == p)) off = std::max(off, std::abs(fit.holomorphic[i]));
      for (std::size_t i = 0; i < fit.antiholomorphic.size(); ++i)
        if (!(anti && static_cast<int>(i) + 1 == q)) off = std::max(off, std::abs(fit.antiholomorphic[i]));
      const double ratio = std::abs(lead) > 0.0 ? off / std::abs(lead) : INFINITY;
      report["expected_sector"] = holo ? "p" + std::to_string(p) : "q" + std::to_string(q);
      report["off_sector_ratio"] = ratio;
      out.checks.push_back(make_check("fit_sector", ratio, c.real("checks.sector_tol")));
    }
  }
  out.files.push_back({"expansion.json", report.dump(2) + "\n"});
  std::string csv = "re_z,im_z,re_q,im_q,re_fit,im_fit\n";
  for (std::size_t i = 0; i < og->size(); ++i) {
    const cplx z = og->node(i)[0], v = Q.values()[i], m = fit(z);
    csv += io::num(z.real()) + "," + io::num(z.imag()) + "," + io::num(v.real()) + "," + io::num(v.imag()) + "," +
           io::num(m.real()) + "," + io::num(m.imag()) + "\n";
  }
  out.files.push_back({"expansion_samples.csv", csv});
  return out;
}

// counterexample ----------------------------------------------------------------------------

/// Coefficients of f in the Euclidean basis by L^2 projection (Gram solve) on a polar grid.
inline Eigen::VectorXcd euclidean_coefficients(const EuclideanField& f, const EuclideanBasis& basis, double extent) {
  const auto cols = basis.columns();
  const auto grid = polar_grid(1, {extent, 96, 4 * basis.max_mode + 64});
  const auto m = static_cast<Eigen::Index>(cols.size());
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
  std::vector<double> v(cols.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const cplx x = grid.node(i)[0];
    const double w = grid.weight(i), fx = f(x);
    for (std::size_t a = 0; a < cols.size(); ++a) v[a] = basis(cols[a], x);
    for (Eigen::Index a = 0; a < m; ++a) {
      b(a) += w * v[static_cast<std::size_t>(a)] * fx;
      for (Eigen::Index d = 0; d < m; ++d) G(a, d) += w * v[static_cast<std::size_t>(a)] * v[static_cast<std::size_t>(d)];
    }
  }
  return G.ldlt().solve(b).cast<cplx>();
}

inline Outcome counterexample(const Config& c) {
  Outcome out;
  Json report;
  report["schema"] = io::kSchema;
  report["experiment"] = "counterexample";
  report["kind"] = c.str("counterexample.kind");
  if (c.str("counterexample.kind") == "euclidean_odd") {
    const int N = c.integer("counterexample.lines");
    const int K = c.integer("counterexample.K");
    if (K < N) throw ConfigError("counterexample.K must be >= counterexample.lines");
    const RadialProfile g{c.str("counterexample.profile"), c.real("counterexample.scale")};
    const auto f = as_config("counterexample", [&] { return coxeter_odd_counterexample(N, g, c.integer("counterexample.cells")); });
    const int count = c.integer("counterexample.centers");
    const double extent = c.real("counterexample.extent");
    const auto radii = radii_from(c, "counterexample.");
    // centres cycle over the 2N rays at increasing distance
    const int rays = 2 * N, per = (count + rays - 1) / rays;
    std::vector<cplx> centers;
    for (int i = 0; i < count; ++i)
      centers.push_back(std::polar(extent * (1 + i / rays) / per, kPi * (i % rays) / N));
    const auto table = mean_table(f, centers, radii, c.integer("quadrature.circle_nodes"));
    double worst = 0.0;
    for (const auto& r : table) worst = std::max(worst, std::abs(r.value));
    const double fmax = f.max_abs();
    out.files.push_back({"means.csv", io::mean_table_csv(table)});
    out.checks.push_back(make_check("odd_means_vanish", worst / fmax, c.real("checks.odd_mean_tol")));

    const EuclideanBasis basis{c.reals("probe.widths"), K};
    const double half = std::isfinite(g.support()) ? g.support() : 8.0 * g.scale;
    const double wmax = *std::max_element(basis.widths.begin(), basis.widths.end());
    const auto v = euclidean_coefficients(f, basis, std::max(half, 8.0 * wmax));
    SetParams sp;
    sp.radii = radii;
    for (const auto& x : centers) sp.custom_centers.push_back(Point{x});
    OperatorConfig oc;
    oc.quad = quadrature_from(c);
    oc.euclid_widths = basis.widths;
    const auto op = assemble_operator(make_set(SetKind::custom, sp), K, Engine::euclidean, oc);
    const double residual = (op.matrix * v).norm() / v.norm();
    double odd_mass = 0.0;
    for (std::size_t i = 0; i < op.columns.size(); ++i)
      if (EuclideanBasis::in_odd_sector(op.columns[i].euclid, N)) odd_mass += std::norm(v(static_cast<Eigen::Index>(i)));
    Json coef = Json::array();
    for (std::size_t i = 0; i < op.columns.size(); ++i)
      coef.push_back({{"column", op.columns[i].label}, {"value", v(static_cast<Eigen::Index>(i)).real()}});
    report["lines"] = N;
    report["profile"] = g.name;
    report["scale"] = g.scale;
    report["max_abs_f"] = fmax;
    report["max_abs_mean"] = worst;
    report["certificate"] = {{"residual", residual}, {"odd_sector_fraction", odd_mass / v.squaredNorm()}, {"coefficients", coef}};
    out.checks.push_back(make_check("null_vector_residual", residual, c.real("checks.null_residual_tol")));
  } else {
    const int n = c.integer("counterexample.dim");
    const auto P = harmonic_from(c.integer("counterexample.p"), c.integer("counterexample.q"), n,
                                 c.integer("counterexample.harmonic"), "counterexample");
    ScanConfig sc;
    sc.radii = radii_from(c, "counterexample.");
    sc.quad = quadrature_from(c);
    sc.tolerance = c.real("checks.hecke_zero_tol");
    sc.centers = hecke_bochner_centers(P, c.integer("counterexample.per_coordinate"), c.integer("counterexample.generic"));
    const TypeFunctionSpec spec{P, c.real("counterexample.decay")};
    const auto [field, rep] = hecke_bochner_counterexample(spec, sc);
    report["harmonic"] = P.to_string();
    report["decay"] = spec.decay;
    report["decay_class"] = to_string(field.decay_class());
    report["vanishing"] = io::to_json(rep);
    int on = 0, off = 0;
    for (const auto& p : rep.points) (p.on_variety ? on : off)++;
    report["variety_points"] = on;
    report["generic_points"] = off;
    if (on) out.checks.push_back(make_check("variety_vanishing", rep.max_on_variety, c.real("checks.hecke_zero_tol")));
    if (off) out.checks.push_back(make_check("generic_nonvanishing", rep.min_off_variety, c.real("checks.hecke_generic_min"), ">="));
  }
  out.files.push_back({"counterexample.json", report.dump(2) + "\n"});
  return out;
}

// probe -------------------------------------------------------------------------------------

/// True when the configuration is the one the frozen sigma_min was recorded with.
inline bool regression_configuration(const Config& c) {
  const Config d;
  for (const auto& [key, value] : c.values()) {
    const bool relevant = key.rfind("set.", 0) == 0 || key == "probe.engine" || key == "probe.K" ||
                          key == "quadrature.circle_nodes";
    if (relevant && value != d.str(key)) return false;
  }
  return true;
}

inline Outcome probe(const Config& c) {
  Outcome out;
  const auto set = set_from(c);
  OperatorConfig oc;
  oc.quad = quadrature_from(c);
  oc.euclid_widths = c.reals("probe.widths");
  oc.max_entries = static_cast<std::size_t>(c.integer64("probe.max_entries"));
  const auto engine = engine_from_string(c.str("probe.engine"));
  if (engine == Engine::euclidean && set.dim != 1) throw ConfigError("probe.engine = euclidean needs set.dim = 1");
  if (oc.euclid_widths.empty()) throw ConfigError("probe.widths: at least one width is needed");
  const int K = c.integer("probe.K");
  {
    const std::size_t cols = engine == Engine::euclidean ? oc.euclid_widths.size() * static_cast<std::size_t>(2 * K + 1)
                             : set.dim == 1              ? static_cast<std::size_t>((K + 1) * (K + 1))
                                                         : static_cast<std::size_t>(((K + 1) * (K + 2) / 2) * ((K + 1) * (K + 2) / 2));
    if (set.rows() * cols > oc.max_entries)
      throw ConfigError("operator of " + std::to_string(set.rows()) + " x " + std::to_string(cols) +
                        " entries exceeds probe.max_entries");
  }
  ProbeThresholds th;
  th.near_null_ratio = c.real("probe.near_null_ratio");
  th.max_near_null = c.integer("probe.max_near_null");
  th.degree_steps = c.integers("probe.steps");
  if (th.degree_steps.empty()) th.degree_steps = {0};
  const auto op = assemble_operator(set, K, engine, oc);
  const auto rep = injectivity_probe(op, th);
  out.files.push_back({"report.json", io::to_json(rep).dump(2) + "\n"});
  out.files.push_back({"sigma_curve.csv", io::sigma_curve_csv(rep)});
  std::string sig = "index,sigma\n";
  for (std::size_t i = 0; i < rep.sigma.size(); ++i) sig += std::to_string(i) + "," + io::num(rep.sigma[i]) + "\n";
  out.files.push_back({"sigma.csv", sig});
  if (c.boolean("probe.export_matrix")) {
    out.files.push_back({"operator.csv", io::operator_csv(op)});
    out.files.push_back({"operator.json", io::operator_sidecar(op).dump(2) + "\n"});
  }
  double rt = 0.0, res = 0.0;
  for (const auto& v : rep.near_null) {
    rt = std::max(rt, v.round_trip);
    res = std::max(res, v.residual);
  }
  out.checks.push_back(make_check("near_null_round_trip", rt, c.real("probe.round_trip_factor") * res + 1e-10));
  // the same set seen by the Euclidean transform, restricted to the odd sector of Sigma_N
  if (engine == Engine::twisted && set.kind == SetKind::coxeter_lines && set.dim == 1) {
    const auto eu = assemble_operator(set, K, Engine::euclidean, oc);
    const int N = set.params.lines;
    const double odd = restricted_sigma_min(eu, [N](const BasisColumn& b) { return EuclideanBasis::in_odd_sector(b.euclid, N); });
    const double ratio = odd > 0.0 ? op.sigma_min() / odd : INFINITY;
    out.checks.push_back(make_check("twisted_contrast", ratio, c.real("checks.contrast_ratio"), ">="));
  }
  if (regression_configuration(c))
    out.checks.push_back(make_check("sigma_regression", std::abs(op.sigma_min() - kTwistedSigma2SigmaMin) / kTwistedSigma2SigmaMin,
                                    c.real("checks.regression_tol")));
  return out;
}

inline Outcome run_experiment(const Config& c) {
  const std::string e = c.str("run.experiment");
  if (e == "verify-identities") return verify_identities(c);
  if (e == "tsm-eval") return tsm_eval(c);
  if (e == "project") return project(c);
  if (e == "expand-qk") return expand_qk(c);
  if (e == "counterexample") return counterexample(c);
  return probe(c);
}

}  // namespace tsmlab::cli
