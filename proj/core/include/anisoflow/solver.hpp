#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "anisoflow/grid.hpp"
#include "anisoflow/lpdecomp.hpp"
#include "anisoflow/norms.hpp"
#include "anisoflow/operators.hpp"
#include "anisoflow/space.hpp"
#include "anisoflow/trajectory.hpp"

namespace anisoflow {

struct SolverConfig {
  double nu = 1.0;
  double horizon = 1.0;
  int steps = 64;
  int max_picard = 25;
  double tol = 1e-9;
  SpaceParams params;
  /// Bilinear constant K0 of ||B(v,w)||_Z <= K0 max(1, 1/nu) ||v|| ||w||,
  /// fitted by the lab or supplied explicitly.
  double K_estimate = 1.0;

  void validate(int dim) const;
};

enum class DataVariant { product, single_axis };

/// Anisotropic initial data built from periodized power-law singularities:
/// `product` uses f(x) = prod_j w(x_j)^{-(1-lambda_j)/q_j} (requires every
/// lambda_j > 0), `single_axis` puts the whole exponent on axis 1,
/// f(x) = w(x_1)^{-sum_i (1-lambda_i)/q_i}. Here w is the periodic distance
/// to 0 clamped at h/2. The generator then applies (-Delta)^{sigma/2} with
/// sigma = -1 + sum_i (1-lambda_i)/q_i (computed internally, never passed),
/// places the result in the last component scaled by eps, Leray-projects and
/// zeroes the mean, so div u0 = 0.
VectorField anisotropic_initial_data(const Grid& grid, std::span<const double> q,
                                     std::span<const double> lambda, double eps,
                                     DataVariant variant);

/// Classic 2-d Taylor-Green vortex (sin ax cos ay, -cos ax sin ay) with
/// a = 2 pi / L; its exact Navier-Stokes evolution is e^{-2 nu a^2 t} u0.
VectorField taylor_green(const Grid& grid);

/// Free evolution t_m -> S_nu(t_m) u0 on the config's time grid.
Trajectory free_evolution(const VectorField& u0, const SolverConfig& cfg);

struct Admissibility {
  double z0_norm = 0.0;
  /// The smallness level the fixed-point lemma requires: 1 / (4 K) with
  /// K = K_estimate * max(1, 1/nu).
  double epsilon_required = 0.0;
  bool ok = false;
};

/// Checks the fixed-point smallness condition z0 < 1/(4K) for the free
/// evolution of u0.
Admissibility admissibility(const VectorField& u0, const SolverConfig& cfg,
                            const DyadicPartition& part);

struct ConvergenceReport {
  std::vector<double> residuals;  // Z-norm of u^{n+1} - u^n per iteration
  double z0_norm = 0.0;
  double final_norm = 0.0;
  bool admissible = false;
  bool converged = false;
  bool diverged = false;  // non-finite values encountered
  /// Fitted geometric ratio of the residual sequence (1.0 when undetermined).
  double contraction_estimate = 1.0;
  int iterations = 0;
  /// Lemma: a converged solution satisfies final_norm <= 2 z0_norm + tol.
  bool bound_satisfied = false;
};

/// Picard iteration for u = S_nu(t) u0 + B(u, u): u^0 is the free evolution,
/// u^{n+1} = u^0 + B(u^n, u^n), stopping when the Z-norm of the difference
/// falls below tol or max_picard is reached. Divergence (non-finite values)
/// is recorded in the report, never thrown. The initial data is dealiased on
/// entry (the quadratic term is alias-exact only on the 2/3 band);
/// admissibility and continuity_experiment use the same representative.
std::pair<Trajectory, ConvergenceReport> picard_solve(const VectorField& u0,
                                                      const SolverConfig& cfg,
                                                      const DyadicPartition& part);

struct ContinuityReport {
  double z0_delta = 0.0;        // || z0 - z0~ ||_Z
  double solution_delta = 0.0;  // || u - u~ ||_Z
  double ratio = 0.0;           // solution_delta / z0_delta (0 when 0/0)
  double ceiling = 0.0;         // (1 - 4 K eps)^{-1}, inf when not contractive
  bool both_converged = false;
};

/// Solves for u0 and u0 + du0 and reports the observed continuity ratio
/// against the fixed-point lemma's ceiling.
ContinuityReport continuity_experiment(const VectorField& u0, const VectorField& du0,
                                       const SolverConfig& cfg, const DyadicPartition& part);

}  // namespace anisoflow
