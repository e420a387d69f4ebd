// tsmlab: batch front-end for the twisted spherical mean experiments.

#include <boost/version.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tsmlab/cli/experiments.hpp"

namespace fs = std::filesystem;
using namespace tsmlab;
using tsmlab::cli::Config;
using tsmlab::cli::ConfigError;
using tsmlab::io::Json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

Json constants_json() {
  Json c;
  c["expansion_constant_n1"] = expansion_constant(1);
  c["expansion_constant_n2"] = expansion_constant(2);
  c["sphere_area_n1"] = sphere_area(1);
  c["sphere_area_n2"] = sphere_area(2);
  Json b = Json::object();
  for (int n = 1; n <= 2; ++n)
    for (int k = 0; k <= 4; ++k) b["n" + std::to_string(n) + "_k" + std::to_string(k)] = product_relation_constant(n, k);
  c["product_relation"] = b;
  c["polar_bridge_origin_value"] = 2.0 * kPi;
  c["twisted_sigma2_sigma_min"] = kTwistedSigma2SigmaMin;
  return c;
}

Json summary_json(const std::string& experiment, const cli::Outcome& out, const std::string& error) {
  Json s;
  s["schema"] = io::kSchema;
  s["experiment"] = experiment;
  bool passed = error.empty();
  Json checks = Json::array();
  for (const auto& c : out.checks) {
    passed = passed && c.pass;
    checks.push_back({{"name", c.name}, {"value", c.value}, {"relation", c.relation}, {"threshold", c.threshold},
                      {"pass", c.pass}});
  }
  s["passed"] = passed;
  s["checks"] = checks;
  Json failing = Json::array();
  for (const auto& c : out.checks)
    if (!c.pass) failing.push_back(c.name);
  s["failing"] = failing;
  if (!error.empty()) s["error"] = error;
  s["warnings"] = out.warnings;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tsmlab: twisted spherical means on C^n"};
  std::string config_path, experiment, out_dir = "results";
  std::vector<std::string> overrides;
  bool list_checks = false, dump_defaults = false;
  app.add_option("--config", config_path, "configuration file (section.key = value)");
  app.add_option("--experiment", experiment, "verify-identities | tsm-eval | project | expand-qk | counterexample | probe");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--override", overrides, "key=value, applied after the config file (repeatable)");
  app.add_flag("--list-checks", list_checks, "list the checks of every experiment and exit");
  app.add_flag("--dump-defaults", dump_defaults, "print the configuration reference and exit");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (dump_defaults) {
    std::cout << cli::reference_text();
    return 0;
  }

  Config cfg;
  try {
    if (!config_path.empty()) {
      if (!fs::exists(config_path)) throw ConfigError("config file not found: " + config_path);
      cfg.load_text(io::read_text(config_path), config_path);
    }
    if (!experiment.empty()) cfg.set("run.experiment", experiment);
    for (const auto& kv : overrides) cfg.apply_override(kv);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  if (list_checks) {
    for (const auto& c : cli::check_catalog()) {
      std::cout << std::left << std::setw(18) << c.experiment << std::setw(26) << c.name;
      std::cout << (c.threshold_key.empty() ? std::string("fixed") : c.threshold_key + " = " + cfg.str(c.threshold_key));
      std::cout << "  " << c.description << "\n";
    }
    return 0;
  }

  const std::string exp_name = cfg.str("run.experiment");
  const std::string started = utc_now();
  const auto t0 = std::chrono::steady_clock::now();
  cli::Outcome outcome;
  std::string error;
  try {
    outcome = cli::run_experiment(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    error = e.what();
    std::cerr << "error: " << error << "\n";
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  try {
    const fs::path dir(out_dir);
    for (const auto& a : outcome.files) io::write_text(dir / a.path, a.content);
    const Json summary = summary_json(exp_name, outcome, error);
    io::write_json(dir / "summary.json", summary);

    Json m;
    m["schema"] = io::kSchema;
    m["tool"] = {{"name", "tsmlab"}, {"version", kVersion}};
    m["experiment"] = exp_name;
    m["started_utc"] = started;
    m["finished_utc"] = utc_now();
    m["elapsed_seconds"] = elapsed;
    m["threads"] = max_threads();
    m["versions"] = {{"compiler", __VERSION__},
                     {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                   std::to_string(EIGEN_MINOR_VERSION)},
                     {"boost", BOOST_LIB_VERSION},
                     {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                           std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                           std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
    m["config"] = cfg.values();
    m["constants"] = constants_json();
    Json files = Json::array();
    for (const auto& a : outcome.files) files.push_back(a.path);
    files.push_back("summary.json");
    m["payloads"] = files;
    io::write_json(dir / "manifest.json", m);

    for (const auto& c : outcome.checks)
      std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  " << std::setprecision(3) << c.value << " "
                << c.relation << " " << c.threshold << "\n";
    for (const auto& w : outcome.warnings) std::cout << "warning: " << w << "\n";
    std::cout << (summary["passed"].get<bool>() ? "all checks passed" : "checks failed") << " (" << exp_name << ", "
              << std::fixed << std::setprecision(1) << elapsed << " s) -> " << dir.string() << "\n";
    return summary["passed"].get<bool>() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error writing results: " << e.what() << "\n";
    return 1;
  }
}
