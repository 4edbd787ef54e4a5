#pragma once

#include <string>
#include <vector>

#include "anisoflow/lab.hpp"
#include "experiment_config.hpp"

namespace anisoflow::cli {

struct VerifyEntry {
  ConstantReport report;
  bool is_control = false;
  /// A regular check is ok when it passes; a control is ok when it fails the
  /// inequality as designed.
  bool ok = false;
};

struct VerifyOutcome {
  std::vector<VerifyEntry> entries;
  bool all_ok = true;
  std::string first_failure;
};

/// Names of the default verification suite (controls excluded).
std::vector<std::string> default_checks();

/// Runs the selected checks (empty selection = default suite, plus the
/// negative controls of every spread-type check when cfg.controls is set).
/// Check names suffixed ":control" select individual controls. Jobs > 1 runs
/// checks on a thread pool; output order and content are deterministic.
VerifyOutcome run_verify(const ExperimentConfig& cfg, int jobs);

}  // namespace anisoflow::cli
