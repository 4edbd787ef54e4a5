#include "anisoflow/serialize.hpp"

#include <cmath>

#include <json.hpp>

namespace anisoflow {

namespace {
using nlohmann::json;

json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

json scale_map(const std::map<int, double>& per_scale) {
  json j = json::object();
  for (const auto& [l, v] : per_scale) j[std::to_string(l)] = v;
  return j;
}
}  // namespace

std::string to_json(const NormReport& report) {
  json j;
  j["value"] = report.value;
  j["per_scale"] = scale_map(report.per_scale);
  j["ball_argmax"] = {{"center", report.ball_argmax.center},
                      {"radius", report.ball_argmax.radius}};
  return j.dump();
}

std::string to_json(const ConstantReport& report) {
  json j;
  j["id"] = report.id;
  j["params"] = report.params;
  j["samples"] = report.samples;
  j["per_scale_ratios"] = scale_map(report.per_scale_ratios);
  j["fitted_C"] = report.fitted_C;
  j["spread"] = report.spread;
  if (report.slope) j["slope"] = *report.slope;
  j["verdict"] = report.pass ? "pass" : "fail";
  j["seed"] = report.seed;
  if (!report.pass) j["worst_case"] = report.worst_case;
  return j.dump();
}

std::string to_json(const SpaceParams& params) {
  json j;
  j["q"] = params.q;
  j["lambda"] = params.lambda;
  j["r"] = finite_or_string(params.r);
  j["regularity"] = params.regularity;
  j["flavor"] =
      params.flavor == SpaceFlavor::physical_besov ? "physical-besov" : "fourier-besov";
  return j.dump();
}

std::string to_json(const ConvergenceReport& report, const SolverConfig& cfg) {
  json j;
  j["residuals"] = report.residuals;
  j["z0_norm"] = report.z0_norm;
  j["final_norm"] = finite_or_string(report.final_norm);
  j["admissible"] = report.admissible;
  j["converged"] = report.converged;
  j["diverged"] = report.diverged;
  j["contraction_estimate"] = report.contraction_estimate;
  j["iterations"] = report.iterations;
  j["bound_satisfied"] = report.bound_satisfied;
  j["config"] = {{"nu", cfg.nu},
                 {"T", cfg.horizon},
                 {"steps", cfg.steps},
                 {"max_picard", cfg.max_picard},
                 {"tol", cfg.tol},
                 {"K_estimate", cfg.K_estimate},
                 {"space", nlohmann::json::parse(to_json(cfg.params))}};
  return j.dump();
}

std::string to_json(const ContinuityReport& report) {
  json j;
  j["z0_delta"] = report.z0_delta;
  j["solution_delta"] = report.solution_delta;
  j["ratio"] = report.ratio;
  j["ceiling"] = finite_or_string(report.ceiling);
  j["both_converged"] = report.both_converged;
  return j.dump();
}

std::string to_json(const Admissibility& adm) {
  json j;
  j["z0_norm"] = adm.z0_norm;
  j["epsilon_required"] = adm.epsilon_required;
  j["ok"] = adm.ok;
  return j.dump();
}

}  // namespace anisoflow
