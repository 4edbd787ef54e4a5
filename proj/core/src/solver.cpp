#include "anisoflow/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace anisoflow {

void SolverConfig::validate(int dim) const {
  if (!(nu > 0.0)) throw std::invalid_argument("SolverConfig: nu must be positive");
  if (!(horizon > 0.0)) throw std::invalid_argument("SolverConfig: T must be positive");
  if (steps < 1) throw std::invalid_argument("SolverConfig: need at least one time step");
  if (max_picard < 1) throw std::invalid_argument("SolverConfig: max_picard must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("SolverConfig: tol must be positive");
  if (!(K_estimate > 0.0)) throw std::invalid_argument("SolverConfig: K_estimate must be positive");
  params.validate(dim);
  if (!params.solver_admissible())
    throw std::invalid_argument("SolverConfig: params are not solver-admissible");
}

VectorField anisotropic_initial_data(const Grid& grid, std::span<const double> q,
                                     std::span<const double> lambda, double eps,
                                     DataVariant variant) {
  const int d = grid.dim;
  if (static_cast<int>(q.size()) != d || static_cast<int>(lambda.size()) != d)
    throw std::invalid_argument("anisotropic_initial_data: index counts must equal dimension");
  for (double v : q)
    if (!(v >= 1.0) || std::isinf(v))
      throw std::invalid_argument("anisotropic_initial_data: q_i must lie in [1, inf)");
  for (double v : lambda)
    if (!(v >= 0.0) || !(v < 1.0))
      throw std::invalid_argument("anisotropic_initial_data: lambda_i must lie in [0, 1)");
  const double m = smoothing_gap(q, lambda);
  if (!(m > 0.0))
    throw std::invalid_argument("anisotropic_initial_data: sum (1-lambda_i)/q_i must be positive");
  if (variant == DataVariant::product) {
    for (double v : lambda)
      if (!(v > 0.0))
        throw std::invalid_argument(
            "anisotropic_initial_data: product variant requires lambda_i > 0");
  }

  const double h = grid.spacing();
  const double clamp = h / 2.0;
  auto torus_dist = [&](double x) { return std::min(x, grid.length - x); };
  auto power = [&](double dist, double alpha) {
    return std::pow(std::max(dist, clamp), -alpha);
  };

  std::vector<Complex> samples(grid.total());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto x = coordinates(grid, i);
    double v = 1.0;
    if (variant == DataVariant::product) {
      for (int ax = 0; ax < d; ++ax)
        v *= power(torus_dist(x[static_cast<std::size_t>(ax)]),
                   (1.0 - lambda[static_cast<std::size_t>(ax)]) / q[static_cast<std::size_t>(ax)]);
    } else {
      v = power(torus_dist(x[0]), m);
    }
    samples[i] = Complex(v, 0.0);
  }
  Field f(grid, Rep::physical, std::move(samples));

  const double sigma = -1.0 + m;
  Field g = fractional_laplacian(to_spectral(f), sigma);

  std::vector<Field> comps;
  comps.reserve(static_cast<std::size_t>(d));
  for (int ax = 0; ax < d - 1; ++ax) comps.push_back(Field::zeros(grid, Rep::spectral));
  comps.push_back(eps * g);
  return leray_project(VectorField(std::move(comps)));
}

VectorField taylor_green(const Grid& grid) {
  if (grid.dim != 2) throw std::invalid_argument("taylor_green: built for d = 2");
  const double a = grid.xi_unit();
  std::vector<Complex> u1(grid.total()), u2(grid.total());
  for (std::size_t i = 0; i < grid.total(); ++i) {
    const auto x = coordinates(grid, i);
    u1[i] = Complex(std::sin(a * x[0]) * std::cos(a * x[1]), 0.0);
    u2[i] = Complex(-std::cos(a * x[0]) * std::sin(a * x[1]), 0.0);
  }
  return to_spectral(VectorField({Field(grid, Rep::physical, std::move(u1)),
                                  Field(grid, Rep::physical, std::move(u2))}));
}

Trajectory free_evolution(const VectorField& u0, const SolverConfig& cfg) {
  cfg.validate(u0.grid().dim);
  return heat_trajectory(u0, cfg.nu, cfg.horizon, cfg.steps);
}

Admissibility admissibility(const VectorField& u0, const SolverConfig& cfg,
                            const DyadicPartition& part) {
  cfg.validate(u0.grid().dim);
  Admissibility a;
  a.z0_norm = z_norm(free_evolution(dealias(u0), cfg), cfg.params, part, cfg.nu);
  const double K = cfg.K_estimate * std::max(1.0, 1.0 / cfg.nu);
  a.epsilon_required = 1.0 / (4.0 * K);
  a.ok = a.z0_norm < a.epsilon_required;
  return a;
}

namespace {

double fit_contraction(const std::vector<double>& residuals, double floor) {
  // Geometric ratio from a least-squares fit of log residuals, using the
  // leading part of the sequence that stays above the noise floor.
  std::vector<double> usable;
  for (double r : residuals) {
    if (!(r > floor)) break;
    usable.push_back(std::log(r));
  }
  const auto n = usable.size();
  if (n < 2) return residuals.size() >= 2 && residuals[0] > 0.0
                        ? std::min(1.0, residuals[1] / residuals[0])
                        : 1.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i);
    sx += x;
    sy += usable[i];
    sxx += x * x;
    sxy += x * usable[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return 1.0;
  return std::exp((n * sxy - sx * sy) / denom);
}

}  // namespace

std::pair<Trajectory, ConvergenceReport> picard_solve(const VectorField& u0,
                                                      const SolverConfig& cfg,
                                                      const DyadicPartition& part) {
  cfg.validate(u0.grid().dim);
  ConvergenceReport rep;

  // The quadratic term is alias-exact only on the 2/3 band, so the solver
  // works on the dealiased representative of the data.
  Trajectory z0 = free_evolution(dealias(u0), cfg);
  rep.z0_norm = z_norm(z0, cfg.params, part, cfg.nu);
  const double K = cfg.K_estimate * std::max(1.0, 1.0 / cfg.nu);
  rep.admissible = rep.z0_norm < 1.0 / (4.0 * K);

  Trajectory u = z0;
  for (int iter = 1; iter <= cfg.max_picard; ++iter) {
    rep.iterations = iter;
    Trajectory bu = bilinear_B(u, u, cfg.nu);
    if (!all_finite(bu)) {
      rep.diverged = true;
      break;
    }
    Trajectory next = z0 + bu;
    const double res = z_norm(next - u, cfg.params, part, cfg.nu);
    rep.residuals.push_back(res);
    u = std::move(next);
    if (!std::isfinite(res) || res > 1e12 * std::max(rep.z0_norm, 1.0)) {
      rep.diverged = true;
      break;
    }
    if (res <= cfg.tol) {
      rep.converged = true;
      break;
    }
  }

  if (!rep.diverged) {
    rep.final_norm = z_norm(u, cfg.params, part, cfg.nu);
    rep.bound_satisfied = rep.final_norm <= 2.0 * rep.z0_norm + cfg.tol;
  } else {
    rep.final_norm = std::numeric_limits<double>::infinity();
  }
  rep.contraction_estimate =
      fit_contraction(rep.residuals, std::max(cfg.tol, 1e-13 * std::max(rep.z0_norm, 1.0)));
  return {std::move(u), rep};
}

ContinuityReport continuity_experiment(const VectorField& u0, const VectorField& du0,
                                       const SolverConfig& cfg, const DyadicPartition& part) {
  ContinuityReport rep;
  auto [u, r1] = picard_solve(u0, cfg, part);
  auto [ut, r2] = picard_solve(u0 + du0, cfg, part);
  rep.both_converged = r1.converged && r2.converged;
  if (r1.diverged || r2.diverged)
    throw std::runtime_error("continuity_experiment: one of the solves diverged");

  Trajectory dz0 = free_evolution(dealias(u0 + du0), cfg) - free_evolution(dealias(u0), cfg);
  rep.z0_delta = z_norm(dz0, cfg.params, part, cfg.nu);
  rep.solution_delta = z_norm(ut - u, cfg.params, part, cfg.nu);
  rep.ratio = rep.z0_delta > 0.0 ? rep.solution_delta / rep.z0_delta : 0.0;

  const double K = cfg.K_estimate * std::max(1.0, 1.0 / cfg.nu);
  const double eps = std::max(r1.z0_norm, r2.z0_norm);
  rep.ceiling = 4.0 * K * eps < 1.0 ? 1.0 / (1.0 - 4.0 * K * eps)
                                    : std::numeric_limits<double>::infinity();
  return rep;
}

}  // namespace anisoflow
