#pragma once

// CSV and JSON export (and field import). CSV numbers carry 17 significant
// digits; JSON objects keep insertion order so reruns are byte-identical.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "tsmlab/euclidean_means.hpp"
#include "tsmlab/field.hpp"
#include "tsmlab/injectivity_lab.hpp"

namespace tsmlab::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "tsmlab/1";

inline std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline Json to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

inline Json to_json(const Point& p) {
  Json a = Json::array();
  for (int j = 0; j < p.dim; ++j) a.push_back(to_json(p[j]));
  return a;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

inline void write_json(const std::filesystem::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Sampled fields ---------------------------------------------------------------------

inline std::string field_csv(const SampledField& f) {
  std::string out;
  for (int j = 1; j <= f.dim(); ++j) out += "re_z" + std::to_string(j) + ",im_z" + std::to_string(j) + ",";
  out += "re_f,im_f\n";
  const auto& g = f.grid();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point z = g.node(i);
    for (int j = 0; j < z.dim; ++j) out += num(z[j].real()) + "," + num(z[j].imag()) + ",";
    out += num(f.values()[i].real()) + "," + num(f.values()[i].imag()) + "\n";
  }
  return out;
}

inline Json field_header(const SampledField& f) {
  const auto& o = f.grid().orders();
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "sampled_field";
  j["dim"] = f.dim();
  j["grid"] = {{"layout", "polar_product"}, {"extent", o.extent}, {"radial", o.radial}, {"angular", o.angular}};
  j["nodes"] = f.grid().size();
  j["decay_class"] = to_string(f.decay_class());
  return j;
}

/// Writes <base>.csv and <base>.json.
inline void write_field(const std::filesystem::path& base, const SampledField& f) {
  write_text(base.string() + ".csv", field_csv(f));
  write_json(base.string() + ".json", field_header(f));
}

/// Rebuilds a field from its CSV and JSON header. The grid is regenerated from
/// the header and every CSV coordinate must match it.
inline SampledField read_field(const std::filesystem::path& base) {
  const Json h = Json::parse(read_text(base.string() + ".json"));
  if (h.value("kind", "") != "sampled_field") throw std::invalid_argument("read_field: not a sampled_field header");
  const int n = h.at("dim").get<int>();
  const PlaneOrders o{h.at("grid").at("extent").get<double>(), h.at("grid").at("radial").get<int>(),
                      h.at("grid").at("angular").get<int>()};
  auto grid = shared_polar_grid(n, o);
  std::istringstream csv(read_text(base.string() + ".csv"));
  std::string line;
  std::getline(csv, line);  // header
  std::vector<cplx> values;
  values.reserve(grid->size());
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    std::vector<double> cols;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cols.push_back(std::stod(cell));
    if (cols.size() != static_cast<std::size_t>(2 * n + 2)) throw GridMismatch("read_field: wrong column count");
    if (values.size() >= grid->size()) throw GridMismatch("read_field: more rows than grid nodes");
    const Point z = grid->node(values.size());
    for (int j = 0; j < n; ++j)
      if (std::abs(z[j] - cplx(cols[2 * j], cols[2 * j + 1])) > 1e-12 * (1.0 + std::abs(z[j])))
        throw GridMismatch("read_field: coordinates do not match the header grid");
    values.emplace_back(cols[2 * n], cols[2 * n + 1]);
  }
  if (values.size() != grid->size()) throw GridMismatch("read_field: fewer rows than grid nodes");
  return SampledField(std::move(grid), std::move(values), decay_class_from_string(h.at("decay_class").get<std::string>()));
}

// Profiles and tables ----------------------------------------------------------------

inline std::string profile_csv(const MeanProfile& p) {
  std::string out = "r,re,im\n";
  for (std::size_t i = 0; i < p.radii.size(); ++i)
    out += num(p.radii[i]) + "," + num(p.values[i].real()) + "," + num(p.values[i].imag()) + "\n";
  return out;
}

inline std::string mean_table_csv(const std::vector<MeanTableRow>& rows) {
  std::string out = "center_re,center_im,r,value\n";
  for (const auto& r : rows)
    out += num(r.center.real()) + "," + num(r.center.imag()) + "," + num(r.radius) + "," + num(r.value) + "\n";
  return out;
}

// Operators and reports ----------------------------------------------------------------

/// One CSV row per operator row; each column b contributes re_b, im_b.
inline std::string operator_csv(const SamplingOperator& op) {
  std::string out = "row";
  for (std::size_t c = 0; c < op.columns.size(); ++c) out += ",re_" + std::to_string(c) + ",im_" + std::to_string(c);
  out += "\n";
  for (Eigen::Index r = 0; r < op.matrix.rows(); ++r) {
    out += std::to_string(r);
    for (Eigen::Index c = 0; c < op.matrix.cols(); ++c) out += "," + num(op.matrix(r, c).real()) + "," + num(op.matrix(r, c).imag());
    out += "\n";
  }
  return out;
}

inline Json operator_sidecar(const SamplingOperator& op) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "sampling_operator";
  j["set"] = op.set.describe();
  j["engine"] = to_string(op.engine);
  j["K"] = op.max_degree;
  Json cols = Json::array();
  for (std::size_t c = 0; c < op.columns.size(); ++c)
    cols.push_back({{"index", c}, {"label", op.columns[c].label}, {"degree", op.columns[c].degree}});
  j["columns"] = cols;
  Json rows = Json::array();
  for (std::size_t r = 0; r < op.row_index.size(); ++r) {
    const auto [cj, ri] = op.row_index[r];
    rows.push_back({{"row", r}, {"center_index", cj}, {"center", to_json(op.set.centers[cj])}, {"radius", op.set.radii[ri]}});
  }
  j["rows"] = rows;
  j["sigma"] = std::vector<double>(op.sigma.data(), op.sigma.data() + op.sigma.size());
  j["degenerate"] = op.degenerate;
  return j;
}

inline void write_operator(const std::filesystem::path& base, const SamplingOperator& op) {
  write_text(base.string() + ".csv", operator_csv(op));
  write_json(base.string() + ".json", operator_sidecar(op));
}

inline Json to_json(const ProbeReport& r) {
  Json j;
  j["schema"] = kSchema;
  j["set"] = r.set;
  j["engine"] = to_string(r.engine);
  j["K"] = r.max_degree;
  j["sigma"] = r.sigma;
  Json curve = Json::array();
  for (std::size_t i = 0; i < r.curve_degrees.size(); ++i)
    curve.push_back({{"K", r.curve_degrees[i]}, {"sigma_min", r.curve_sigma_min[i]}, {"sigma_max", r.curve_sigma_max[i]}});
  j["sigma_curve"] = curve;
  Json nn = Json::array();
  for (const auto& v : r.near_null) {
    Json c = Json::array();
    for (Eigen::Index i = 0; i < v.coefficients.size(); ++i) c.push_back(to_json(v.coefficients(i)));
    nn.push_back({{"sigma", v.sigma}, {"residual", v.residual}, {"round_trip", v.round_trip}, {"coefficients", c}});
  }
  j["near_null"] = nn;
  j["degenerate"] = r.degenerate;
  j["non_injective_certified"] = r.non_injective_certified;
  j["caveat"] = r.caveat;
  return j;
}

inline std::string sigma_curve_csv(const ProbeReport& r) {
  std::string out = "K,sigma_min,sigma_max\n";
  for (std::size_t i = 0; i < r.curve_degrees.size(); ++i)
    out += std::to_string(r.curve_degrees[i]) + "," + num(r.curve_sigma_min[i]) + "," + num(r.curve_sigma_max[i]) + "\n";
  return out;
}

inline Json to_json(const VanishingSetReport& r) {
  Json j;
  j["schema"] = kSchema;
  j["radii"] = r.radii;
  j["field_max"] = r.field_max;
  j["tolerance"] = r.tolerance;
  j["variety_contract_holds"] = r.variety_contract_holds;
  j["max_on_variety"] = r.max_on_variety;
  j["min_off_variety"] = r.min_off_variety;
  j["candidate_sphere_radii"] = r.candidate_sphere_radii;
  Json pts = Json::array();
  for (const auto& p : r.points)
    pts.push_back({{"center", to_json(p.center)}, {"on_variety", p.on_variety}, {"max_mean", p.max_mean},
                   {"detected_zero", p.detected_zero}});
  j["points"] = pts;
  return j;
}

inline Json to_json(const ProjectionExpansion& e) {
  Json j;
  j["schema"] = kSchema;
  j["degree"] = e.degree;
  j["q_max"] = e.q_max;
  Json c = Json::array(), d = Json::array();
  for (const auto& v : e.holomorphic) c.push_back(to_json(v));
  for (const auto& v : e.antiholomorphic) d.push_back(to_json(v));
  j["holomorphic"] = c;
  j["antiholomorphic"] = d;
  j["dominant_sector"] = e.dominant_sector();
  j["residual"] = e.residual;
  j["heldout_error"] = e.heldout_error;
  j["condition"] = e.condition;
  j["train_count"] = e.train_count;
  j["heldout_count"] = e.heldout_count;
  return j;
}

inline Json to_json(const BlockCheck& b) { return {{"off_block_ratio", b.off_block_ratio}, {"diagonal_error", b.diagonal_error}}; }

}  // namespace tsmlab::io
