#pragma once

#include <array>
#include <functional>

#include "anisoflow/grid.hpp"
#include "anisoflow/trajectory.hpp"

namespace anisoflow {

/// A Fourier multiplier P(xi), scalar-valued, with its homogeneity degree
/// (diagnostic only). The evaluator is called at nonzero grid frequencies;
/// the k = 0 mode is always zeroed (homogeneous quotient).
struct MultiplierSymbol {
  std::function<Complex(const std::array<double, 3>& xi)> eval;
  double degree = 0.0;
};

/// Pointwise spectral multiplication by P(xi); returns the same
/// representation as the input.
Field apply_multiplier(const Field& f, const MultiplierSymbol& symbol);

/// Stokes/heat semigroup: spectral multiplication by exp(-nu t |xi|^2).
/// Throws on negative t.
Field heat_semigroup(const Field& f, double nu, double t);
VectorField heat_semigroup(const VectorField& u, double nu, double t);

/// Leray projector: mode-wise application of delta_{ij} - xi_i xi_j / |xi|^2,
/// k = 0 zeroed. Idempotent; annihilates gradients; output divergence-free.
VectorField leray_project(const VectorField& u);

/// Riesz transform along `axis` (0-based): multiplier i xi_axis / |xi|.
Field riesz_transform(const Field& f, int axis);

/// Fractional Laplacian (-Delta)^{s/2}: multiplier |xi|^s, k = 0 zeroed.
Field fractional_laplacian(const Field& f, double s);

/// Spectral divergence sum_j i xi_j u_j (returned spectral).
Field divergence(const VectorField& u);
/// Spectral gradient (i xi_j f)_j.
VectorField gradient(const Field& f);
/// Max |div u| over physical samples.
double max_divergence(const VectorField& u);

/// P div(v (x) w): dealiased physical-space tensor products v_i w_j, spectral
/// divergence of each row, then Leray projection. Result is spectral,
/// divergence-free and mean-zero. Inputs must be band-limited within the
/// dealiasing radius.
VectorField nonlinear_term(const VectorField& v, const VectorField& w);

/// Periodic discrete convolution with quadrature weight:
/// (f * g)(x_i) = h^d sum_j f(x_j) g(x_{i-j}), computed spectrally (exact).
Field periodic_convolution(const Field& f, const Field& g);

/// Trajectory of the free heat evolution t_m -> S_nu(t_m) u0.
Trajectory heat_trajectory(const VectorField& u0, double nu, double horizon, int steps);

/// The auxiliary Duhamel operator A(g)(t) = int_0^t S_nu(t-t') P g(t') dt',
/// computed with the exponential integrator: on each step the integrand's
/// time factor is taken linear between its endpoint values and integrated
/// against exp(-nu (t-t')|xi|^2) exactly per mode, accumulated by the
/// semigroup recursion A(t_{m+1}) = S_nu(dt) A(t_m) + local step.
Trajectory duhamel_integral(const Trajectory& g, double nu);

/// Duhamel bilinear operator of the mild Navier-Stokes formulation
///   B(v, w)(t) = -int_0^t S_nu(t-t') P div(v (x) w)(t') dt',
/// so that u = S_nu(t) u0 + B(u, u) is the mild equation with the physical
/// sign of the advection term. Starts at 0; divergence-free states.
Trajectory bilinear_B(const Trajectory& v, const Trajectory& w, double nu);

}  // namespace anisoflow
