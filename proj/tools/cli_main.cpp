#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "anisoflow/field_io.hpp"
#include "anisoflow/norms.hpp"
#include "anisoflow/serialize.hpp"
#include "anisoflow/solver.hpp"
#include "experiment_config.hpp"
#include "verify_suite.hpp"

namespace {

using namespace anisoflow;
using anisoflow::cli::ExperimentConfig;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;    // malformed input file
constexpr int kExitBadParams = 3;   // parameter validation failure
constexpr int kExitDiverged = 4;    // solver did not converge
constexpr int kExitCheckFailed = 5; // verify found a failing check

struct GlobalFlags {
  std::string config_path;
  std::string out_dir;
  std::string field_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int jobs = 1;
  bool require_admissible = false;
};

ExperimentConfig load_config(const GlobalFlags& flags) {
  ExperimentConfig cfg = flags.config_path.empty()
                             ? ExperimentConfig{}
                             : ExperimentConfig::from_file(flags.config_path);
  if (flags.seed_set) cfg.seed = flags.seed;
  if (!flags.out_dir.empty()) cfg.out_dir = flags.out_dir;
  if (!flags.field_path.empty()) cfg.field_path = flags.field_path;
  return cfg;
}

std::filesystem::path ensure_out_dir(const ExperimentConfig& cfg) {
  std::filesystem::path dir(cfg.out_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

int cmd_config(const GlobalFlags& flags) {
  ExperimentConfig cfg = load_config(flags);
  std::cout << cfg.to_json_text() << "\n";
  return kExitOk;
}

int cmd_norm(const GlobalFlags& flags) {
  ExperimentConfig cfg = load_config(flags);
  if (cfg.field_path.empty())
    throw std::invalid_argument("norm: no field file given (--field or config norm.field)");
  Field f = read_field(cfg.field_path);
  cfg.space.validate(f.grid().dim);
  DyadicPartition part = DyadicPartition::build(f.grid());
  NormReport report = cfg.space.flavor == SpaceFlavor::physical_besov
                          ? besov_mixed_morrey_norm(to_physical(f), cfg.space, part)
                          : fourier_besov_mixed_morrey_norm(to_physical(f), cfg.space, part);
  std::cout << to_json(report) << "\n";
  return kExitOk;
}

int cmd_decompose(const GlobalFlags& flags) {
  ExperimentConfig cfg = load_config(flags);
  if (cfg.field_path.empty())
    throw std::invalid_argument("decompose: no field file given");
  Field f = to_physical(read_field(cfg.field_path));
  cfg.space.validate(f.grid().dim);
  DyadicPartition part = DyadicPartition::build(f.grid());
  nlohmann::json j;
  j["l_min"] = part.l_min();
  j["l_max"] = part.l_max();
  nlohmann::json scales = nlohmann::json::object();
  for (int l = part.l_min(); l <= part.l_max(); ++l) {
    Field blk = dyadic_block(f, l, part);
    scales[std::to_string(l)] = mixed_morrey_norm(blk, cfg.space.q, cfg.space.lambda);
  }
  j["per_scale"] = scales;
  Field lump = low_pass(f, part.l_min(), part);
  j["psi_part"] = mixed_morrey_norm(lump, cfg.space.q, cfg.space.lambda);
  std::cout << j.dump() << "\n";
  return kExitOk;
}

VectorField build_initial_data(const ExperimentConfig& cfg, const Grid& grid) {
  if (cfg.initial_data == "taylor-green") return taylor_green(grid);
  if (cfg.initial_data == "anisotropic-product")
    return anisotropic_initial_data(grid, cfg.space.q, cfg.space.lambda, cfg.epsilon,
                                    DataVariant::product);
  if (cfg.initial_data == "anisotropic-single-axis")
    return anisotropic_initial_data(grid, cfg.space.q, cfg.space.lambda, cfg.epsilon,
                                    DataVariant::single_axis);
  if (cfg.initial_data.rfind("file:", 0) == 0) {
    Field g = to_spectral(read_field(cfg.initial_data.substr(5)));
    if (!(g.grid() == grid))
      throw std::invalid_argument("solve: field file grid does not match config grid");
    std::vector<Field> comps;
    for (int j = 0; j < grid.dim - 1; ++j) comps.push_back(Field::zeros(grid, Rep::spectral));
    comps.push_back(cfg.epsilon * g);
    return leray_project(VectorField(std::move(comps)));
  }
  throw std::invalid_argument("solve: unknown initial_data " + cfg.initial_data);
}

void write_decay_csv(const std::filesystem::path& path, const Trajectory& traj,
                     const SpaceParams& params, const DyadicPartition& part) {
  BlockNormTable table = block_norm_table(traj, params, part);
  std::ofstream os(path);
  os << "t";
  for (int l = part.l_min(); l <= part.l_max(); ++l) os << ",l=" << l;
  os << "\n";
  os.precision(17);
  for (int m = 0; m <= traj.steps(); ++m) {
    os << traj.time(m);
    for (std::size_t li = 0; li < table.norms.size(); ++li)
      os << "," << table.norms[li][static_cast<std::size_t>(m)];
    os << "\n";
  }
}

int cmd_solve(const GlobalFlags& flags) {
  ExperimentConfig cfg = load_config(flags);
  Grid grid = cfg.grid();
  cfg.space.validate(grid.dim);
  DyadicPartition part = DyadicPartition::build(grid);

  SolverConfig scfg = cfg.solver_config();
  if (cfg.K_estimate <= 0.0) {
    CheckOptions opts;
    opts.samples = 4;
    opts.seed = cfg.seed;
    scfg.K_estimate =
        estimate_bilinear_constant(scfg.params, part, scfg.nu, opts).fitted_C;
  }

  VectorField u0 = build_initial_data(cfg, grid);
  if (cfg.scale_to_fraction > 0.0 && max_abs(u0) > 0.0) {
    const double K = scfg.K_estimate * std::max(1.0, 1.0 / scfg.nu);
    const double z0 = admissibility(u0, scfg, part).z0_norm;
    u0 = (cfg.scale_to_fraction / (4.0 * K) / z0) * u0;
  }

  Admissibility adm = admissibility(u0, scfg, part);
  if (flags.require_admissible && !adm.ok) {
    std::cerr << "solve: data not admissible: " << to_json(adm) << "\n";
    return kExitBadParams;
  }

  auto [traj, report] = picard_solve(u0, scfg, part);

  const auto dir = ensure_out_dir(cfg);
  write_trajectory((dir / "trajectory.ant").string(), traj);
  {
    nlohmann::json sidecar{{"nu", scfg.nu}, {"T", scfg.horizon}, {"steps", scfg.steps}};
    std::ofstream os(dir / "trajectory.json");
    os << sidecar.dump() << "\n";
  }
  {
    std::ofstream os(dir / "report.json");
    os << to_json(report, scfg) << "\n";
  }
  write_decay_csv(dir / "decay.csv", traj, scfg.params, part);
  std::cout << to_json(report, scfg) << "\n";
  return report.converged ? kExitOk : kExitDiverged;
}

int cmd_verify(const GlobalFlags& flags) {
  ExperimentConfig cfg = load_config(flags);
  cfg.space.validate(cfg.dim);
  auto outcome = anisoflow::cli::run_verify(cfg, flags.jobs);

  const auto dir = ensure_out_dir(cfg);
  std::ofstream os(dir / "report.jsonl");
  for (const auto& entry : outcome.entries) {
    const std::string line = to_json(entry.report);
    os << line << "\n";
    std::cout << (entry.ok ? "[ ok ] " : "[FAIL] ") << line << "\n";
  }
  if (!outcome.all_ok) {
    std::cerr << "verify: check failed: " << outcome.first_failure << "\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"anisotropic function-space toolkit and spectral Navier-Stokes solver"};
  app.require_subcommand(1);

  GlobalFlags flags;
  app.add_option("--config", flags.config_path, "experiment config (JSON)");
  app.add_option("--seed", flags.seed, "override the config seed")
      ->each([&](const std::string&) { flags.seed_set = true; });
  app.add_option("--jobs", flags.jobs, "worker threads for verify");
  app.add_option("--out", flags.out_dir, "output directory");
  app.add_option("--field", flags.field_path, "input field file for norm/decompose");
  app.add_flag("--require-admissible", flags.require_admissible,
               "fail instead of solving with inadmissible data");

  auto* c_config = app.add_subcommand("config", "echo the canonical config JSON");
  auto* c_norm = app.add_subcommand("norm", "norm report of a field file");
  auto* c_dec = app.add_subcommand("decompose", "per-scale block norms of a field file");
  auto* c_solve = app.add_subcommand("solve", "Picard solve of the mild formulation");
  auto* c_verify = app.add_subcommand("verify", "run the inequality verification suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_config->parsed()) return cmd_config(flags);
    if (c_norm->parsed()) return cmd_norm(flags);
    if (c_dec->parsed()) return cmd_decompose(flags);
    if (c_solve->parsed()) return cmd_solve(flags);
    if (c_verify->parsed()) return cmd_verify(flags);
  } catch (const std::invalid_argument& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kExitBadParams;
  } catch (const std::out_of_range& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kExitBadParams;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitOk;
}
