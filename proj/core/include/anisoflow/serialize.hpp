#pragma once

#include <string>

#include "anisoflow/lab.hpp"
#include "anisoflow/norms.hpp"
#include "anisoflow/solver.hpp"

namespace anisoflow {

/// JSON encodings of the report types. Output is deterministic for identical
/// inputs (no timestamps, shortest-round-trip doubles).
std::string to_json(const NormReport& report);
std::string to_json(const ConstantReport& report);
std::string to_json(const ConvergenceReport& report, const SolverConfig& cfg);
std::string to_json(const ContinuityReport& report);
std::string to_json(const Admissibility& adm);
std::string to_json(const SpaceParams& params);

}  // namespace anisoflow
