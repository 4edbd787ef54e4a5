#pragma once

#include <span>
#include <vector>

#include "anisoflow/grid.hpp"

namespace anisoflow {

/// Smooth radial cutoff used to build the dyadic partition of unity:
/// chi(rho) = 1 for rho <= 3/4, 0 for rho >= 4/3, monotone C^inf step in
/// between (built from theta(x) = e^{-1/x} / (e^{-1/x} + e^{-1/(1-x)})).
/// The bump phi(xi) = chi(|xi|/2) - chi(|xi|) is then valued in [0,1] and
/// supported in the annulus 3/4 <= |xi| <= 8/3, and
/// chi(xi) + sum_{l>=0} phi(2^{-l} xi) telescopes to 1.
double radial_cutoff(double rho);

/// Tabulated dyadic partition of unity on a grid's frequency lattice.
///
/// phi_table(l)[i] = phi(2^{-l} xi_i) for l in [l_min, l_max];
/// psi_table()[i]  = chi(2^{-l_min} xi_i), the low-frequency lump attached at
/// the lowest supported scale. l_max is the largest l whose annulus fits
/// below the dealiasing radius (2/3 of Nyquist); l_min is the smallest l
/// whose annulus still carries a nonzero grid frequency. On the covered band
/// psi + sum_l phi_l telescopes to 1 exactly.
class DyadicPartition {
 public:
  static DyadicPartition build(const Grid& grid);

  const Grid& grid() const { return grid_; }
  int l_min() const { return l_min_; }
  int l_max() const { return l_max_; }
  int num_scales() const { return l_max_ - l_min_ + 1; }

  std::span<const double> phi_table(int l) const;
  std::span<const double> psi_table() const { return psi_; }

  /// Multiplier of the low-pass operator at level l: psi + sum_{l' < l} phi_l',
  /// defined for l in [l_min - 1, l_max + 1] (at l_min - 1 and l_min it is psi
  /// alone; at l_max + 1 it reconstructs the full covered band).
  std::vector<double> lowpass_table(int l) const;

 private:
  Grid grid_{};
  int l_min_ = 0;
  int l_max_ = -1;
  std::vector<std::vector<double>> phi_;
  std::vector<double> psi_;
};

/// Frequency-localized block: multiplies the spectrum by phi_l and returns a
/// field in the same representation as the input. Throws std::out_of_range
/// for l outside [l_min, l_max].
Field dyadic_block(const Field& f, int l, const DyadicPartition& p);

/// Low-pass operator: multiplies the spectrum by psi + sum_{l' < l} phi_l'.
/// Valid for l in [l_min, l_max + 1].
Field low_pass(const Field& f, int l, const DyadicPartition& p);

/// The three pieces of the Bony decomposition of a product v*w:
/// low_high = T_v w, high_low = T_w v, resonant = R(v, w). For mean-zero
/// band-limited inputs their sum reproduces the dealiased product.
struct ParaproductParts {
  Field low_high;
  Field high_low;
  Field resonant;
};

/// Bony paraproduct over the supported scales,
///   T_v w = sum_l S_{l-1} v . Delta_l w,
///   R(v,w) = sum_l Delta_l v . (Delta_{l-1} + Delta_l + Delta_{l+1}) w,
/// with every product dealiased by the 2/3 rule. Inputs must be band-limited
/// within the dealiasing radius (throws std::invalid_argument otherwise).
ParaproductParts paraproduct(const Field& v, const Field& w, const DyadicPartition& p);

}  // namespace anisoflow
