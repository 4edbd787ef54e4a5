#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace anisoflow {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class SpaceFlavor { physical_besov, fourier_besov };

/// The anisotropic index bundle naming a Besov or Fourier-Besov mixed-Morrey
/// space: per-axis integrability q_i in [1, inf), per-axis Morrey exponents
/// lambda_i in [0, 1), scale aggregation exponent r in [1, inf], and the
/// regularity (sigma for the physical flavor, s for the Fourier flavor).
struct SpaceParams {
  std::vector<double> q;
  std::vector<double> lambda;
  double r = 2.0;
  double regularity = 0.0;
  SpaceFlavor flavor = SpaceFlavor::physical_besov;

  /// sum_i lambda_i / q_i, the Morrey radius weight.
  double morrey_weight() const;
  /// m(q, lambda) = sum_i (1 - lambda_i) / q_i.
  double smoothing_gap() const;
  /// sum_i (1 - (1 - lambda_i)/q_i), the Fourier-side gap.
  double fourier_gap() const;
  /// The scaling-critical regularity of this flavor:
  /// -1 + smoothing_gap() (physical) or -1 + fourier_gap() (Fourier).
  double critical_regularity() const;

  /// True when the bundle is usable by the fixed-point solver: regularity
  /// equals the critical one and the corresponding gap is positive.
  bool solver_admissible(double tol = 1e-12) const;

  /// Throws std::invalid_argument when any index is outside its range or the
  /// component counts do not match `dim`.
  void validate(int dim) const;

  static SpaceParams physical(std::vector<double> q, std::vector<double> lambda,
                              double r, double sigma);
  static SpaceParams fourier(std::vector<double> q, std::vector<double> lambda,
                             double r, double s);
  /// The solver-critical bundle of the given flavor (regularity filled in).
  static SpaceParams critical(SpaceFlavor flavor, std::vector<double> q,
                              std::vector<double> lambda, double r);

  /// Copy with the regularity shifted by `delta` (used for the sigma + 2
  /// component of the Z norm and for negative-control experiments).
  SpaceParams shifted(double delta) const;

  std::string describe() const;
};

double sum_inverse(std::span<const double> q);                  // sum 1/q_i
double morrey_weight(std::span<const double> q, std::span<const double> lambda);
double smoothing_gap(std::span<const double> q, std::span<const double> lambda);
double fourier_gap(std::span<const double> q, std::span<const double> lambda);

}  // namespace anisoflow
