#include "anisoflow/trajectory.hpp"

#include <cmath>
#include <stdexcept>

namespace anisoflow {

Trajectory::Trajectory(double horizon, std::vector<VectorField> states)
    : horizon_(horizon) {
  if (states.size() < 2) throw std::invalid_argument("Trajectory: need at least 2 states");
  if (!(horizon > 0.0)) throw std::invalid_argument("Trajectory: horizon must be positive");
  states_.reserve(states.size());
  const Grid& g = states.front().grid();
  for (auto& s : states) {
    if (!(s.grid() == g)) throw std::invalid_argument("Trajectory: states on mismatched grids");
    states_.push_back(to_spectral(s));
  }
}

Trajectory Trajectory::zeros(const Grid& grid, double horizon, int steps) {
  std::vector<VectorField> states(static_cast<std::size_t>(steps) + 1,
                                  VectorField::zeros(grid, Rep::spectral));
  return Trajectory(horizon, std::move(states));
}

namespace {
void require_matching(const Trajectory& a, const Trajectory& b) {
  if (a.steps() != b.steps() || a.horizon() != b.horizon() || !(a.grid() == b.grid()))
    throw std::invalid_argument("trajectory arithmetic: mismatched discretizations");
}
}  // namespace

Trajectory operator+(const Trajectory& a, const Trajectory& b) {
  require_matching(a, b);
  std::vector<VectorField> states;
  states.reserve(a.states().size());
  for (int m = 0; m <= a.steps(); ++m) states.push_back(a.state(m) + b.state(m));
  return Trajectory(a.horizon(), std::move(states));
}

Trajectory operator-(const Trajectory& a, const Trajectory& b) {
  require_matching(a, b);
  std::vector<VectorField> states;
  states.reserve(a.states().size());
  for (int m = 0; m <= a.steps(); ++m) states.push_back(a.state(m) - b.state(m));
  return Trajectory(a.horizon(), std::move(states));
}

Trajectory operator*(double s, const Trajectory& t) {
  std::vector<VectorField> states;
  states.reserve(t.states().size());
  for (int m = 0; m <= t.steps(); ++m) states.push_back(s * t.state(m));
  return Trajectory(t.horizon(), std::move(states));
}

bool all_finite(const Trajectory& t) {
  for (const auto& st : t.states())
    for (const auto& c : st.components())
      for (const auto& z : c.samples())
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

double max_abs(const Trajectory& t) {
  double m = 0.0;
  for (const auto& st : t.states()) m = std::max(m, max_abs(st));
  return m;
}

}  // namespace anisoflow
