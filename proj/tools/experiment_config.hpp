#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "anisoflow/solver.hpp"
#include "anisoflow/space.hpp"

namespace anisoflow::cli {

/// One experiment record: grid, space, solver knobs and per-subcommand
/// parameters, round-trippable through JSON.
struct ExperimentConfig {
  int dim = 2;
  int n = 32;
  double length = 2.0 * kPi;

  SpaceParams space = SpaceParams::critical(SpaceFlavor::physical_besov, {2.0, 2.0},
                                            {0.5, 0.5}, 2.0);

  double nu = 1.0;
  double horizon = 1.0;
  int steps = 32;
  int max_picard = 25;
  double tol = 1e-9;
  double K_estimate = 0.0;  // 0 = fit with the lab before solving

  std::string field_path;  // input for norm/decompose

  // solve inputs
  std::string initial_data = "taylor-green";  // or anisotropic-product,
                                              // anisotropic-single-axis, file:<path>
  double epsilon = 0.1;
  double scale_to_fraction = 0.0;  // >0: rescale data so z0 = frac/(4K)

  // verify inputs
  std::vector<std::string> checks;  // empty = default suite
  int samples = 30;
  bool controls = true;
  std::vector<double> nu_list = {0.25, 0.5, 1.0, 2.0, 4.0};

  std::uint64_t seed = 1;
  std::string out_dir = "out";

  Grid grid() const { return make_grid(dim, n, length); }
  SolverConfig solver_config() const;

  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig from_file(const std::string& path);
  std::string to_json_text() const;  // canonical form; lossless round trip
};

}  // namespace anisoflow::cli
