#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "anisoflow/grid.hpp"
#include "anisoflow/lpdecomp.hpp"
#include "anisoflow/norms.hpp"
#include "anisoflow/rng.hpp"
#include "anisoflow/space.hpp"

namespace anisoflow {

/// Empirical surrogate for "there exists a constant C independent of l":
/// per_scale_ratios holds the max observed LHS/RHS per scale (or per grid
/// size / sample index for checks without a scale axis), fitted_C their
/// overall max, spread the max/min of the per-scale maxima. `pass` compares
/// spread against the configured ceiling, or fitted_C against 1 + 1e-9 for
/// hard (constant-free) inequalities.
struct ConstantReport {
  std::string id;
  std::string params;
  int samples = 0;
  std::map<int, double> per_scale_ratios;
  double fitted_C = 0.0;
  double spread = 1.0;
  std::optional<double> slope;
  double spread_ceiling = 10.0;
  bool hard = false;  // pass criterion is fitted_C <= 1 + 1e-9
  bool pass = false;
  std::uint64_t seed = 0;
  std::string worst_case;  // "(l=..., sample=...)" of the extremal ratio
};

struct CheckOptions {
  int samples = 30;
  std::uint64_t seed = 1;
  double spread_ceiling = 10.0;
  /// Negative-control knob: shifts the inequality's scale exponent, turning a
  /// uniform-in-l constant into a geometric trend 2^{shift * l}. 0 = off.
  double exponent_shift = 0.0;
};

/// Negative-control verdict: a control run "fails the check" when its spread
/// exceeds the ceiling or its per-scale maxima follow a sustained geometric
/// trend (|least-squares slope of log2 ratio| >= 0.25 with monotone movement
/// across at least 3 consecutive scales).
bool control_failed(const ConstantReport& report);

/// Random real field with spectrum supported on the annulus of scale l
/// (complex Gaussian coefficients, Hermitian-symmetrized).
Field random_block_field(const DyadicPartition& part, int l, SplitMix64& rng);
/// Random real mean-zero field with content on every supported scale, limited
/// to the covered band |xi| <= (4/3) 2^{l_max} (where reconstruction and the
/// Bony identity are exact).
Field random_band_limited_field(const DyadicPartition& part, SplitMix64& rng);
/// Divergence-free vector field with spectrum on the annulus of scale l.
VectorField random_divergence_free_block(const DyadicPartition& part, int l, SplitMix64& rng);
/// Divergence-free vector field with content on every supported scale.
VectorField random_divergence_free_field(const DyadicPartition& part, SplitMix64& rng);

// --- Bernstein-type inequalities -------------------------------------------

/// ||Delta_l f||_inf <= C 2^{l m(q,lambda)} ||Delta_l f||_M.
ConstantReport check_bernstein_physical(const DyadicPartition& part,
                                        std::span<const double> q,
                                        std::span<const double> lambda,
                                        const CheckOptions& opts);

/// ||phi_l fhat||_L1 <= C 2^{l sum(1 - (1-lambda_i)/q_i)} ||phi_l fhat||_M.
ConstantReport check_bernstein_fourier_l1(const DyadicPartition& part,
                                          std::span<const double> q,
                                          std::span<const double> lambda,
                                          const CheckOptions& opts);

/// ||phi_l fhat||_{M_{q,lambda}} <= C 2^{l sum((1-lambda_i)/q_i - (1-mu_i)/r_i)}
///   ||phi_l fhat||_{M_{r,mu}}, for an admissible (q, lambda, r, mu) quadruple.
ConstantReport check_bernstein_fourier_morrey(const DyadicPartition& part,
                                              std::span<const double> q,
                                              std::span<const double> lambda,
                                              std::span<const double> r,
                                              std::span<const double> mu,
                                              const CheckOptions& opts);

// --- Embeddings -------------------------------------------------------------

enum class EmbeddingFamily {
  besov_parameter,      // N^s_{r,mu,a} -> N^s_{q,lambda,a}
  besov_r_mono,         // N^s_{q,lambda,a} -> N^s_{q,lambda,b}, a <= b (hard)
  besov_to_lebesgue,    // N^s_{q,lambda,r} -> B^{s-m}_{inf,r}
  besov_theta,          // N^s_{q,lambda,r} -> N^{s-m(1-theta)}_{q/theta,lambda,r}
  fourier_parameter,    // FN^s_{r,mu,a} -> FN^s_{q,lambda,a}
  fourier_r_mono,       // FN^s_{q,lambda,a} -> FN^s_{q,lambda,b} (hard)
  fourier_shift,        // FN^{s1}_{r,mu,a} -> FN^{s2}_{q,lambda,a}
  fourier_to_fb1,       // FN^s_{q,lambda,r} -> FB^{s-g}_{1,r}
  fb1_to_besov_inf,     // FB^s_{1,r} -> B^s_{inf,r}
  fourier_theta,        // FN^s -> FN^{s-m(1-theta)}_{q/theta,lambda,r}
};

/// Parameter bundle for one embedding check. `q`/`lambda` name the target
/// space, `r_vec`/`mu` the source space where a second tuple is involved,
/// `a` the scale aggregation (and `b` the coarser one for the r-monotonicity
/// items), `reg` the source regularity, `theta` the interpolation knob.
struct EmbeddingSpec {
  EmbeddingFamily family;
  std::vector<double> q;
  std::vector<double> lambda;
  std::vector<double> r_vec;
  std::vector<double> mu;
  double a = 2.0;
  double b = kInf;
  double reg = 0.0;
  double theta = 0.5;
};

/// Validates the family's hypotheses (rejecting violations by name) and fits
/// the embedding constant on per-scale block samples.
ConstantReport check_embeddings(const EmbeddingSpec& spec, const DyadicPartition& part,
                                const CheckOptions& opts);

/// Prop "sandwich": N^0_{q,lambda,1} -> M_{q,lambda} -> N^0_{q,lambda,inf},
/// fitted across grid sizes; returns the two one-sided reports
/// (ids "sandwich-left", "sandwich-right"), per_scale keyed by grid size.
std::vector<ConstantReport> check_sandwich(std::span<const double> q,
                                           std::span<const double> lambda,
                                           std::span<const int> grid_sizes, double length,
                                           const CheckOptions& opts);

// --- Hard inequalities ------------------------------------------------------

ConstantReport check_holder_mixed_lebesgue(const Grid& grid, std::span<const double> p1,
                                           std::span<const double> p2,
                                           const CheckOptions& opts);
ConstantReport check_holder_mixed_morrey(const Grid& grid, std::span<const double> p,
                                         std::span<const double> lam1,
                                         std::span<const double> q,
                                         std::span<const double> lam2,
                                         const CheckOptions& opts);
ConstantReport check_young_mixed_morrey(const Grid& grid, std::span<const double> q,
                                        std::span<const double> lambda,
                                        const CheckOptions& opts);
/// l^r monotonicity of the Besov / Fourier-Besov families (exact).
ConstantReport check_r_monotonicity(SpaceFlavor flavor, const DyadicPartition& part,
                                    std::span<const double> q, std::span<const double> lambda,
                                    double sigma, double a, double b, const CheckOptions& opts);

// --- Linear and bilinear estimates ------------------------------------------

enum class LinearEstimate {
  semigroup_sup,  // ||S u0||_{L^inf(I;X^s)}   <= C   ||u0||_{X^s}
  semigroup_int,  // ||S u0||_{L^1(I;X^{s+2})} <= C/nu ||u0||_{X^s}
  duhamel_sup,    // ||A g||_{L^inf(I;X^s)}    <= C'  ||g||_{L^1(I;X^s)}
  duhamel_int,    // ||A g||_{L^1(I;X^{s+2})}  <= C'/nu ||g||_{L^1(I;X^s)}
};

/// Fits the estimate's constant per nu (horizons adapted to nu 4^l so the
/// truncation and quadrature resolution are scale-invariant) and regresses
/// log C against log nu; `slope` carries the fitted exponent. Passes when the
/// slope lies in the lemma's window ([-1.2,-0.8] for the 1/nu bounds,
/// [-0.2,0.2] for the uniform ones) and the per-scale spread at the reference
/// nu stays under the ceiling.
ConstantReport check_linear_estimate(LinearEstimate which, SpaceFlavor flavor,
                                     const DyadicPartition& part,
                                     std::span<const double> q, std::span<const double> lambda,
                                     double r, std::span<const double> nu_list,
                                     const CheckOptions& opts);

/// Fits K0 = max ||B(v,w)||_Z / (max(1,1/nu) ||v||_Z ||w||_Z) over pairs of
/// heat-evolved divergence-free samples; per_scale keyed by sample index.
/// horizon <= 0 picks one adapted to the slowest block's decay rate.
ConstantReport estimate_bilinear_constant(const SpaceParams& params, const DyadicPartition& part,
                                          double nu, const CheckOptions& opts,
                                          double horizon = 0.0, int steps = 64);

}  // namespace anisoflow
