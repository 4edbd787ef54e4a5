#pragma once

#include <vector>

#include "anisoflow/grid.hpp"

namespace anisoflow {

/// A time-indexed sequence of (spectral) vector fields on a uniform time grid
/// 0 = t_0 < ... < t_M = T. States passed in physical representation are
/// converted on construction.
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(double horizon, std::vector<VectorField> states);

  static Trajectory zeros(const Grid& grid, double horizon, int steps);

  const Grid& grid() const { return states_.front().grid(); }
  double horizon() const { return horizon_; }
  /// Number of time intervals M; the trajectory holds M + 1 states.
  int steps() const { return static_cast<int>(states_.size()) - 1; }
  double dt() const { return horizon_ / steps(); }
  double time(int m) const { return dt() * m; }

  const VectorField& state(int m) const { return states_[static_cast<std::size_t>(m)]; }
  const std::vector<VectorField>& states() const { return states_; }

 private:
  double horizon_ = 0.0;
  std::vector<VectorField> states_;
};

Trajectory operator+(const Trajectory& a, const Trajectory& b);
Trajectory operator-(const Trajectory& a, const Trajectory& b);
Trajectory operator*(double s, const Trajectory& t);

/// True when every sample of every state is finite.
bool all_finite(const Trajectory& t);
double max_abs(const Trajectory& t);

}  // namespace anisoflow
