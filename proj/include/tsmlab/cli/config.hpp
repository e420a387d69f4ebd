#pragma once

// Flat `section.key = value` configuration with a typed schema. Every key has
// a default, a type and a range; unknown keys and out-of-range values are
// configuration errors.

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsmlab/core.hpp"

namespace tsmlab::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OptType { integer, real, text, choice, boolean, reals, integers, points };

struct Option {
  std::string key;
  std::string fallback;
  OptType type;
  double lo = -INFINITY, hi = INFINITY;
  bool lo_open = false;  // lo excluded
  std::vector<std::string> choices{};
  std::string help{};
};

inline const std::vector<Option>& schema() {
  using T = OptType;
  static const std::vector<Option> s = {
      {"run.experiment", "verify-identities", T::choice, 0, 0, false,
       {"verify-identities", "tsm-eval", "project", "expand-qk", "counterexample", "probe"}, "experiment to run"},

      {"quadrature.circle_nodes", "256", T::integer, 8, 65536, false, {}, "equispaced nodes on circles"},
      {"quadrature.sphere_theta", "16", T::integer, 2, 512, false, {}, "S^3 rule: Gauss-Legendre nodes in |w1|^2"},
      {"quadrature.sphere_phi1", "32", T::integer, 4, 4096, false, {}, "S^3 rule: nodes in arg w1"},
      {"quadrature.sphere_phi2", "32", T::integer, 4, 4096, false, {}, "S^3 rule: nodes in arg w2"},
      {"quadrature.plane_extent", "12", T::real, 0, 100, true, {}, "R_max of the plane rule per coordinate"},
      {"quadrature.plane_radial", "64", T::integer, 4, 1024, false, {}, "plane rule on C: radial nodes"},
      {"quadrature.plane_angular", "128", T::integer, 4, 4096, false, {}, "plane rule on C: angular nodes"},
      {"quadrature.c2_radial", "24", T::integer, 2, 256, false, {}, "plane rule on C^2: radial nodes per coordinate"},
      {"quadrature.c2_angular", "32", T::integer, 4, 512, false, {}, "plane rule on C^2: angular nodes per coordinate"},
      {"quadrature.radial_extent", "12", T::real, 0, 100, true, {}, "radial rule for the polar formula: upper limit"},
      {"quadrature.radial_nodes", "64", T::integer, 4, 1024, false, {}, "radial rule for the polar formula: nodes"},

      {"field.dim", "1", T::integer, 1, 2, false, {}, "complex dimension n of the input field"},
      {"field.kind", "gaussian", T::choice, 0, 0, false, {"gaussian", "laguerre", "special_hermite", "type_function"},
       "gaussian exp(-a|z-shift|^2), laguerre phi_k, special_hermite phi_ab (n=1), type_function exp(-a|z|^2) P(z)"},
      {"field.decay", "0.33333333333333331", T::real, 0, 10, true, {}, "a in exp(-a |z|^2)"},
      {"field.shift", "", T::points, 0, 0, false, {}, "gaussian centre (one point; empty = origin)"},
      {"field.k", "2", T::integer, 0, 60, false, {}, "Laguerre degree"},
      {"field.alpha", "1", T::integer, 0, 60, false, {}, "special Hermite alpha (spectral degree)"},
      {"field.beta", "0", T::integer, 0, 60, false, {}, "special Hermite beta"},
      {"field.p", "1", T::integer, 0, 8, false, {}, "solid harmonic degree in z"},
      {"field.q", "0", T::integer, 0, 8, false, {}, "solid harmonic degree in conj(z)"},
      {"field.harmonic", "0", T::integer, 0, 1000, false, {}, "index into the H_{p,q} basis"},

      {"eval.centers", "0,0;0.7,0.2;-1.1,0.9", T::points, 0, 0, false, {}, "centres, 'x,y;x,y' (n=1) or 'x1,y1,x2,y2;...' (n=2)"},
      {"eval.radii_min", "0.2", T::real, 0, 100, true, {}, "smallest radius"},
      {"eval.radii_max", "6", T::real, 0, 100, true, {}, "largest radius"},
      {"eval.radii_count", "24", T::integer, 1, 10000, false, {}, "geometric radius grid size"},

      {"project.max_degree", "40", T::integer, 0, 200, false, {}, "largest k of Q_k"},
      {"project.out_extent", "6", T::real, 0, 100, true, {}, "output grid extent"},
      {"project.out_radial", "16", T::integer, 2, 512, false, {}, "output grid radial nodes"},
      {"project.out_angular", "32", T::integer, 4, 1024, false, {}, "output grid angular nodes"},
      {"project.check_reconstruction", "true", T::boolean, 0, 0, false, {}, "check sum_k Q_k / (2pi)^n against f"},

      {"expand.k", "4", T::integer, 0, 40, false, {}, "degree of Q_k to fit"},
      {"expand.q_max", "3", T::integer, 0, 20, false, {}, "antiholomorphic columns q = 1..q_max"},
      {"expand.radius_limit", "6", T::real, 0, 100, true, {}, "samples with |z| <= limit enter the fit"},
      {"expand.max_condition", "1e10", T::real, 1, INFINITY, false, {}, "largest accepted design condition number"},

      {"set.kind", "coxeter_lines", T::choice, 0, 0, false,
       {"coxeter_lines", "plane_cross_coxeter", "sphere", "sphere_cross_plane", "curve", "custom"}, "candidate set"},
      {"set.dim", "1", T::integer, 1, 2, false, {}, "complex dimension of the set"},
      {"set.lines", "2", T::integer, 1, 64, false, {}, "N for Sigma_N"},
      {"set.extent", "3", T::real, 0, 100, true, {}, "ray length"},
      {"set.per_ray", "7", T::integer, 2, 1000, false, {}, "points per ray, origin included"},
      {"set.rotation", "0", T::real, -1000, 1000, false, {}, "rotation angle applied to coxeter_lines"},
      {"set.shift", "", T::points, 0, 0, false, {}, "translation applied to coxeter_lines (one point)"},
      {"set.radius", "1", T::real, 0, 100, true, {}, "sphere radius"},
      {"set.nodes", "16", T::integer, 2, 100000, false, {}, "points on S^1 factors"},
      {"set.sphere_theta", "4", T::integer, 1, 256, false, {}, "S^3 set: nodes in |w1|^2"},
      {"set.sphere_phi1", "8", T::integer, 4, 1024, false, {}, "S^3 set: nodes in arg w1"},
      {"set.sphere_phi2", "8", T::integer, 4, 1024, false, {}, "S^3 set: nodes in arg w2"},
      {"set.plane_extent", "2", T::real, 0, 100, true, {}, "C factor: lattice half width"},
      {"set.plane_count", "3", T::integer, 2, 1000, false, {}, "C factor: lattice points per real axis"},
      {"set.curve", "spiral", T::choice, 0, 0, false, {"spiral", "constant"}, "r(t) = scale e^{-rate t} or r(t) = scale"},
      {"set.curve_scale", "3", T::real, 0, 100, true, {}, "curve scale"},
      {"set.curve_rate", "0.1", T::real, 0, 100, false, {}, "spiral decay rate"},
      {"set.t_start", "0", T::real, -1e6, 1e6, false, {}, "curve parameter start"},
      {"set.t_end", "12.566370614359172", T::real, -1e6, 1e6, false, {}, "curve parameter end (excluded)"},
      {"set.samples", "64", T::integer, 2, 100000, false, {}, "curve samples"},
      {"set.points", "", T::points, 0, 0, false, {}, "custom centres"},
      {"set.radii_min", "0.2", T::real, 0, 100, true, {}, "smallest radius"},
      {"set.radii_max", "6", T::real, 0, 100, true, {}, "largest radius"},
      {"set.radii_count", "24", T::integer, 1, 10000, false, {}, "geometric radius grid size"},

      {"probe.engine", "twisted", T::choice, 0, 0, false, {"twisted", "euclidean"}, "mean transform"},
      {"probe.K", "10", T::integer, 0, 60, false, {}, "basis truncation degree"},
      {"probe.steps", "0,2,4", T::integers, 0, 60, false, {}, "sigma_min curve at K + step"},
      {"probe.near_null_ratio", "1e-8", T::real, 0, 1, true, {}, "sigma <= ratio * sigma_max counts as near-null"},
      {"probe.max_near_null", "3", T::integer, 0, 1000, false, {}, "near-null vectors reported"},
      {"probe.widths", "0.5,0.8,1.3,2", T::reals, 0, 100, true, {}, "Euclidean basis Gaussian widths"},
      {"probe.max_entries", "8000000", T::integer, 1, 1e9, false, {}, "largest operator (rows x columns)"},
      {"probe.round_trip_factor", "1", T::real, 0, 1e6, true, {}, "c in: round-trip mean <= c * residual + tolerance"},
      {"probe.export_matrix", "false", T::boolean, 0, 0, false, {}, "write the operator matrix CSV and sidecar"},

      {"counterexample.kind", "euclidean_odd", T::choice, 0, 0, false, {"euclidean_odd", "hecke_bochner"}, "which counterexample"},
      {"counterexample.lines", "2", T::integer, 1, 16, false, {}, "N of Sigma_N"},
      {"counterexample.profile", "gaussian", T::choice, 0, 0, false, {"bump", "gaussian"}, "radial profile g"},
      {"counterexample.scale", "1", T::real, 0, 100, true, {}, "profile scale"},
      {"counterexample.cells", "128", T::integer, 8, 4096, false, {}, "sample grid cells per axis"},
      {"counterexample.centers", "40", T::integer, 1, 100000, false, {}, "centres spread over the rays of Sigma_N"},
      {"counterexample.extent", "3", T::real, 0, 100, true, {}, "largest centre modulus"},
      {"counterexample.radii_min", "0.2", T::real, 0, 100, true, {}, "smallest radius"},
      {"counterexample.radii_max", "6", T::real, 0, 100, true, {}, "largest radius"},
      {"counterexample.radii_count", "20", T::integer, 1, 10000, false, {}, "geometric radius grid size"},
      {"counterexample.K", "6", T::integer, 1, 60, false, {}, "Euclidean basis modes for the certificate (>= lines)"},
      {"counterexample.dim", "2", T::integer, 1, 2, false, {}, "Hecke-Bochner: complex dimension"},
      {"counterexample.p", "1", T::integer, 0, 6, false, {}, "Hecke-Bochner: P in H_{p,q}"},
      {"counterexample.q", "1", T::integer, 0, 6, false, {}, "Hecke-Bochner: P in H_{p,q}"},
      {"counterexample.harmonic", "1", T::integer, 0, 1000, false, {}, "Hecke-Bochner: basis index (1 is z1 conj(z2))"},
      {"counterexample.decay", "0.25", T::real, 0, 10, true, {}, "Hecke-Bochner: a in exp(-a rho^2)"},
      {"counterexample.per_coordinate", "15", T::integer, 0, 1000, false, {}, "Hecke-Bochner: centres per zero coordinate"},
      {"counterexample.generic", "10", T::integer, 0, 1000, false, {}, "Hecke-Bochner: generic centres"},

      {"checks.eigen_tol", "1e-6", T::real, 0, 1, true, {}, "eigenfunction residual"},
      {"checks.eigen_kmax", "10", T::integer, 0, 40, false, {}, "largest k in the eigenfunction check"},
      {"checks.fd_step", "0.01", T::real, 0, 1, true, {}, "finite-difference step"},
      {"checks.product_tol", "1e-8", T::real, 0, 1, true, {}, "product relation"},
      {"checks.product_kmax", "8", T::integer, 0, 40, false, {}, "largest k in the product relation"},
      {"checks.expansion_tol", "1e-6", T::real, 0, 1, true, {}, "special Hermite reconstruction"},
      {"checks.orthogonality_tol", "1e-8", T::real, 0, 1, true, {}, "phi_k x phi_m = (2pi)^n delta phi_k"},
      {"checks.bridge_tol", "1e-6", T::real, 0, 1, true, {}, "polar formula vs spectral projection"},
      {"checks.tensor_tol", "1e-6", T::real, 0, 1, true, {}, "diagonal sum of tensor pieces vs Q_k"},
      {"checks.odd_mean_tol", "1e-10", T::real, 0, 1, true, {}, "odd counterexample means / max|f|"},
      {"checks.null_residual_tol", "1e-8", T::real, 0, 1, true, {}, "||M v|| / ||v|| of a certificate"},
      {"checks.hecke_zero_tol", "1e-8", T::real, 0, 1, true, {}, "means on P^{-1}(0) / max|f|"},
      {"checks.hecke_generic_min", "1e-3", T::real, 0, 1, true, {}, "means at generic centres / max|f|"},
      {"checks.fit_tol", "1e-6", T::real, 0, 1, true, {}, "Q_k fit held-out error"},
      {"checks.sector_tol", "1e-6", T::real, 0, 1, true, {}, "off-sector coefficients / leading coefficient"},
      {"checks.regression_tol", "1e-10", T::real, 0, 1, true, {}, "frozen sigma_min, relative"},
      {"checks.contrast_ratio", "1e6", T::real, 1, INFINITY, false, {}, "twisted / Euclidean odd-sector sigma_min"},
  };
  return s;
}

inline const Option* find_option(const std::string& key) {
  for (const auto& o : schema())
    if (o.key == key) return &o;
  return nullptr;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::string cell;
  std::istringstream in(s);
  while (std::getline(in, cell, sep)) out.push_back(trim(cell));
  return out;
}

inline double parse_real(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": not a number: '" + v + "'");
  }
  if (used != v.size() || !std::isfinite(x)) throw ConfigError(key + ": not a finite number: '" + v + "'");
  return x;
}

inline long long parse_integer(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long x;
  try {
    x = std::stoll(v, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": not an integer: '" + v + "'");
  }
  if (used != v.size()) throw ConfigError(key + ": not an integer: '" + v + "'");
  return x;
}

inline void check_range(const Option& o, double x) {
  const bool low_bad = o.lo_open ? !(x > o.lo) : !(x >= o.lo);
  if (low_bad || !(x <= o.hi)) {
    std::ostringstream s;
    s << o.key << ": value " << x << " outside " << (o.lo_open ? "(" : "[") << o.lo << ", " << o.hi << "]";
    throw ConfigError(s.str());
  }
}

inline void validate_value(const Option& o, const std::string& v) {
  switch (o.type) {
    case OptType::integer: check_range(o, static_cast<double>(parse_integer(o.key, v))); break;
    case OptType::real: check_range(o, parse_real(o.key, v)); break;
    case OptType::text: break;
    case OptType::choice:
      if (std::find(o.choices.begin(), o.choices.end(), v) == o.choices.end())
        throw ConfigError(o.key + ": unknown value '" + v + "'");
      break;
    case OptType::boolean:
      if (v != "true" && v != "false") throw ConfigError(o.key + ": expected true or false");
      break;
    case OptType::reals:
      for (const auto& c : split(v, ',')) check_range(o, parse_real(o.key, c));
      break;
    case OptType::integers:
      for (const auto& c : split(v, ',')) check_range(o, static_cast<double>(parse_integer(o.key, c)));
      break;
    case OptType::points:
      for (const auto& p : split(v, ';')) {
        const auto c = split(p, ',');
        if (c.size() != 2 && c.size() != 4) throw ConfigError(o.key + ": a point needs 2 (n=1) or 4 (n=2) coordinates");
        for (const auto& x : c) parse_real(o.key, x);
      }
      break;
  }
}

class Config {
 public:
  Config() {
    for (const auto& o : schema()) values_[o.key] = o.fallback;
  }

  /// `key = value` lines; '#' starts a comment.
  void load_text(const std::string& text, const std::string& origin = "config") {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::map<std::string, int> seen;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'section.key = value'");
      const std::string key = trim(line.substr(0, eq));
      if (seen.count(key))
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key " + key + " (first on line " +
                          std::to_string(seen[key]) + ")");
      seen[key] = lineno;
      set(key, trim(line.substr(eq + 1)));
    }
  }

  void set(const std::string& key, const std::string& value) {
    const Option* o = find_option(key);
    if (!o) throw ConfigError("unknown key: " + key);
    validate_value(*o, value);
    values_[key] = value;
  }

  /// "key=value"
  void apply_override(const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("override must be key=value: " + kv);
    set(trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
  }

  const std::string& str(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw std::logic_error("config key not in schema: " + key);
    return it->second;
  }
  int integer(const std::string& key) const { return static_cast<int>(parse_integer(key, str(key))); }
  long long integer64(const std::string& key) const { return parse_integer(key, str(key)); }
  double real(const std::string& key) const { return parse_real(key, str(key)); }
  bool boolean(const std::string& key) const { return str(key) == "true"; }
  std::vector<double> reals(const std::string& key) const {
    std::vector<double> out;
    for (const auto& c : split(str(key), ',')) out.push_back(parse_real(key, c));
    return out;
  }
  std::vector<int> integers(const std::string& key) const {
    std::vector<int> out;
    for (const auto& c : split(str(key), ',')) out.push_back(static_cast<int>(parse_integer(key, c)));
    return out;
  }
  std::vector<Point> points(const std::string& key, int dim) const {
    std::vector<Point> out;
    for (const auto& p : split(str(key), ';')) {
      const auto c = split(p, ',');
      if (static_cast<int>(c.size()) != 2 * dim)
        throw ConfigError(key + ": point '" + p + "' does not have " + std::to_string(2 * dim) + " coordinates");
      Point z(dim);
      for (int j = 0; j < dim; ++j) z[j] = cplx(parse_real(key, c[2 * j]), parse_real(key, c[2 * j + 1]));
      out.push_back(z);
    }
    return out;
  }

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// The reference file: every key with its default, range and meaning.
inline std::string reference_text() {
  std::ostringstream s;
  s << "# tsmlab configuration reference\n"
       "# Format: one 'section.key = value' per line, '#' starts a comment.\n"
       "# Unknown keys, duplicates and out-of-range values are errors (exit 2).\n"
       "# Points: 'x,y;x,y' on C, 'x1,y1,x2,y2;...' on C^2. Lists are comma-separated.\n";
  std::string section;
  for (const auto& o : schema()) {
    const std::string sec = o.key.substr(0, o.key.find('.'));
    if (sec != section) {
      s << "\n";
      section = sec;
    }
    s << "# " << o.help;
    if (o.type == OptType::choice) {
      s << " {";
      for (std::size_t i = 0; i < o.choices.size(); ++i) s << (i ? ", " : "") << o.choices[i];
      s << "}";
    } else if (o.type == OptType::integer || o.type == OptType::real || o.type == OptType::reals ||
               o.type == OptType::integers) {
      s << " " << (o.lo_open ? "(" : "[") << o.lo << ", " << o.hi << "]";
    }
    s << "\n" << o.key << " = " << o.fallback << "\n";
  }
  return s.str();
}

}  // namespace tsmlab::cli
