#pragma once

#include <array>
#include <map>
#include <span>
#include <vector>

#include "anisoflow/grid.hpp"
#include "anisoflow/lpdecomp.hpp"
#include "anisoflow/space.hpp"
#include "anisoflow/trajectory.hpp"

namespace anisoflow {

/// Iterated discrete mixed-Lebesgue norm: axis 0 (x_1) innermost, axis d-1
/// outermost. Each finite exponent contributes (h * sum |.|^p)^{1/p}; p = inf
/// takes the axis maximum without the quadrature weight. Rejects p_i < 1.
double mixed_lebesgue_norm(const Field& f, std::span<const double> p);

struct BallArgmax {
  std::array<double, 3> center{0.0, 0.0, 0.0};
  double radius = 0.0;
};

struct MorreySup {
  double value = 0.0;
  BallArgmax argmax;
};

/// Discrete mixed-Morrey norm
///   sup_{x, R} R^{-sum lambda_i/q_i} || f . chi_B(x,R) ||_{L^q}
/// with periodic (torus-metric) balls. Centers range over a coarsened
/// sub-lattice with at most `kMorreyMaxCenters` points (all grid points for
/// n <= 64 in 2-d); radii over the dyadic set {h, 2h, 4h, ..., L/2} plus the
/// torus diameter sqrt(d) L/2 (whose ball is the whole torus, so the
/// lambda = 0 norm reduces to the plain mixed-Lebesgue norm).
MorreySup mixed_morrey_sup(const Field& f, std::span<const double> q,
                           std::span<const double> lambda);
double mixed_morrey_norm(const Field& f, std::span<const double> q,
                         std::span<const double> lambda);

inline constexpr std::size_t kMorreyMaxCenters = 4096;

/// The radius set used by the Morrey supremum on a given grid.
std::vector<double> morrey_radii(const Grid& g);
/// The center stride used by the Morrey supremum (1 when n^d fits the budget).
int morrey_center_stride(const Grid& g);

/// Norm value with its per-scale decomposition: per_scale[l] is the weighted
/// block norm 2^{l sigma} ||Delta_l f|| (or the Fourier-side analogue) and
/// `value` its l^r aggregation; ball_argmax records the ball attaining the
/// Morrey sup of the dominant scale.
struct NormReport {
  double value = 0.0;
  std::map<int, double> per_scale;
  BallArgmax ball_argmax;
};

/// l^r aggregation of a per-scale map (max for r = inf).
double aggregate_lr(const std::map<int, double>& per_scale, double r);

/// Besov mixed-Morrey norm: per_scale[l] = 2^{l sigma} * mixed-Morrey norm of
/// Delta_l f, aggregated in l^r over the supported scales. The k = 0 mode is
/// invisible (phi_l(0) = 0), realizing the homogeneous quotient.
NormReport besov_mixed_morrey_norm(const Field& f, const SpaceParams& params,
                                   const DyadicPartition& p);

/// Fourier-Besov mixed-Morrey norm: per_scale[l] = 2^{l s} * mixed-Morrey norm
/// of phi_l * fhat, viewed as a function on the frequency grid (spacing
/// 2 pi / L, periodically wrapped in the FFT layout).
NormReport fourier_besov_mixed_morrey_norm(const Field& f, const SpaceParams& params,
                                           const DyadicPartition& p);

/// The frequency lattice of `g` re-interpreted as a physical grid of spacing
/// 2 pi / L, carrying the given spectral samples. Used for all Fourier-side
/// Morrey norms.
Field frequency_side_field(const Field& spectral);

/// Mixed-Lebesgue Besov norms (the lambda = 0 / p = inf specializations used
/// as embedding targets): l^r over l of 2^{l sigma} ||Delta_l f||_{L^p}.
double besov_mixed_lebesgue_norm(const Field& f, std::span<const double> p,
                                 double sigma, double r, const DyadicPartition& part);
/// Fourier side: l^r over l of 2^{l s} || phi_l fhat ||_{L^p(frequency grid)}.
double fourier_besov_mixed_lebesgue_norm(const Field& f, std::span<const double> p,
                                         double s, double r, const DyadicPartition& part);

/// Per-(scale, time) block norms of a trajectory, the building block of the
/// Chemin-Lerner time-space norms. norms[l - l_min][m] is the mixed-Morrey
/// norm of the block of state m (physical or Fourier side per the flavor),
/// combined over vector components in Euclidean fashion.
struct BlockNormTable {
  int l_min = 0;
  double horizon = 0.0;
  std::vector<std::vector<double>> norms;
};
BlockNormTable block_norm_table(const Trajectory& traj, const SpaceParams& params,
                                const DyadicPartition& p);

/// Time-space norm L^a(I; X): inner time norm (trapezoidal integral for a = 1,
/// maximum for a = inf) of the per-time block norm, then the 2^{l reg} weight,
/// then l^r over scales -- time inside the scale sum. Only a in {1, inf} is
/// supported.
double timespace_norm(const Trajectory& traj, double a, const SpaceParams& params,
                      const DyadicPartition& p);
double timespace_norm(const BlockNormTable& table, double a, const SpaceParams& params);

/// Z-norm of the solution space Z = L^inf(I; X^sigma) \cap L^1(I; X^{sigma+2}):
/// the max of the two components. `params` must be solver-admissible; `nu` is
/// validated positive (the norm itself does not depend on it).
double z_norm(const Trajectory& traj, const SpaceParams& params,
              const DyadicPartition& p, double nu);

/// Static Besov / Fourier-Besov mixed-Morrey norm of a vector field, with the
/// per-scale block norms combined over components in Euclidean fashion (the
/// same combination the trajectory tables use).
double vector_space_norm(const VectorField& u, const SpaceParams& params,
                         const DyadicPartition& p);

}  // namespace anisoflow
