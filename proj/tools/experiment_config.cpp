#include "experiment_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace anisoflow::cli {

namespace {
using nlohmann::json;

double json_r(const json& v) {
  if (v.is_string()) {
    if (v == "inf") return kInf;
    throw std::invalid_argument("config: r must be a number or \"inf\"");
  }
  return v.get<double>();
}

json r_json(double r) {
  if (std::isinf(r)) return "inf";
  return r;
}
}  // namespace

SolverConfig ExperimentConfig::solver_config() const {
  SolverConfig cfg;
  cfg.nu = nu;
  cfg.horizon = horizon;
  cfg.steps = steps;
  cfg.max_picard = max_picard;
  cfg.tol = tol;
  cfg.params = space;
  cfg.K_estimate = K_estimate > 0.0 ? K_estimate : 1.0;
  return cfg;
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("config: invalid JSON: ") + e.what());
  }
  ExperimentConfig cfg;
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    cfg.dim = g.value("d", cfg.dim);
    cfg.n = g.value("n", cfg.n);
    cfg.length = g.value("length", cfg.length);
  }
  if (j.contains("space")) {
    const auto& s = j.at("space");
    if (s.contains("q")) cfg.space.q = s.at("q").get<std::vector<double>>();
    if (s.contains("lambda")) cfg.space.lambda = s.at("lambda").get<std::vector<double>>();
    if (s.contains("r")) cfg.space.r = json_r(s.at("r"));
    if (s.contains("flavor")) {
      const std::string f = s.at("flavor");
      if (f == "physical-besov")
        cfg.space.flavor = SpaceFlavor::physical_besov;
      else if (f == "fourier-besov")
        cfg.space.flavor = SpaceFlavor::fourier_besov;
      else
        throw std::invalid_argument("config: unknown space flavor " + f);
    }
    if (s.contains("regularity"))
      cfg.space.regularity = s.at("regularity").get<double>();
    else
      cfg.space.regularity = cfg.space.critical_regularity();
  }
  if (j.contains("solver")) {
    const auto& s = j.at("solver");
    cfg.nu = s.value("nu", cfg.nu);
    cfg.horizon = s.value("T", cfg.horizon);
    cfg.steps = s.value("steps", cfg.steps);
    cfg.max_picard = s.value("max_picard", cfg.max_picard);
    cfg.tol = s.value("tol", cfg.tol);
    cfg.K_estimate = s.value("K_estimate", cfg.K_estimate);
  }
  if (j.contains("norm")) cfg.field_path = j.at("norm").value("field", cfg.field_path);
  if (j.contains("solve")) {
    const auto& s = j.at("solve");
    cfg.initial_data = s.value("initial_data", cfg.initial_data);
    cfg.epsilon = s.value("epsilon", cfg.epsilon);
    cfg.scale_to_fraction = s.value("scale_to_fraction", cfg.scale_to_fraction);
  }
  if (j.contains("verify")) {
    const auto& s = j.at("verify");
    if (s.contains("checks")) cfg.checks = s.at("checks").get<std::vector<std::string>>();
    cfg.samples = s.value("samples", cfg.samples);
    cfg.controls = s.value("controls", cfg.controls);
    if (s.contains("nu_list")) cfg.nu_list = s.at("nu_list").get<std::vector<double>>();
  }
  cfg.seed = j.value("seed", cfg.seed);
  cfg.out_dir = j.value("out", cfg.out_dir);
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("config: cannot open " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return from_json_text(buf.str());
}

std::string ExperimentConfig::to_json_text() const {
  json j;
  j["grid"] = {{"d", dim}, {"n", n}, {"length", length}};
  j["space"] = {{"q", space.q},
                {"lambda", space.lambda},
                {"r", r_json(space.r)},
                {"regularity", space.regularity},
                {"flavor", space.flavor == SpaceFlavor::physical_besov ? "physical-besov"
                                                                       : "fourier-besov"}};
  j["solver"] = {{"nu", nu},         {"T", horizon},          {"steps", steps},
                 {"max_picard", max_picard}, {"tol", tol},    {"K_estimate", K_estimate}};
  j["norm"] = {{"field", field_path}};
  j["solve"] = {{"initial_data", initial_data},
                {"epsilon", epsilon},
                {"scale_to_fraction", scale_to_fraction}};
  j["verify"] = {{"checks", checks},
                 {"samples", samples},
                 {"controls", controls},
                 {"nu_list", nu_list}};
  j["seed"] = seed;
  j["out"] = out_dir;
  return j.dump(2);
}

}  // namespace anisoflow::cli
