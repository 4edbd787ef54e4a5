#include "anisoflow/lpdecomp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace anisoflow {

namespace {

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

constexpr double kInner = 0.75;       // chi == 1 on [0, 3/4]
constexpr double kOuter = 4.0 / 3.0;  // chi == 0 on [4/3, inf)

Field multiply_dealias(const Field& a_phys, const Field& b_phys) {
  std::vector<Complex> prod(a_phys.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = a_phys[i] * b_phys[i];
  return dealias(Field(a_phys.grid(), Rep::physical, std::move(prod)));
}

Field apply_table(const Field& f, std::span<const double> table) {
  Field s = to_spectral(f);
  std::vector<Complex> out(s.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = table[i] * s[i];
  Field r(s.grid(), Rep::spectral, std::move(out));
  return f.is_physical() ? to_physical(r) : r;
}

}  // namespace

double radial_cutoff(double rho) {
  if (rho <= kInner) return 1.0;
  if (rho >= kOuter) return 0.0;
  return 1.0 - smooth_step((rho - kInner) / (kOuter - kInner));
}

DyadicPartition DyadicPartition::build(const Grid& grid) {
  DyadicPartition p;
  p.grid_ = grid;

  // Largest l with (8/3) 2^l <= dealias radius (2/3 of Nyquist in xi units),
  // i.e. 2^l <= xi_unit * n / 8.
  int l_max = static_cast<int>(
      std::floor(std::log2(grid.xi_unit() * grid.n / 8.0) + 1e-9));

  const std::size_t total = grid.total();
  auto annulus_table = [&](int l) {
    std::vector<double> t(total);
    const double scale = std::ldexp(1.0, -l);  // 2^{-l}
    for (std::size_t i = 0; i < total; ++i) {
      const double rho = scale * std::sqrt(frequency_sq(grid, i));
      t[i] = radial_cutoff(rho / 2.0) - radial_cutoff(rho);
    }
    return t;
  };
  auto has_content = [](const std::vector<double>& t) {
    for (double v : t)
      if (v > 1e-14) return true;
    return false;
  };

  std::vector<std::vector<double>> tables;  // l_max downward
  for (int l = l_max; l > l_max - 64; --l) {
    auto t = annulus_table(l);
    if (!has_content(t)) break;
    tables.push_back(std::move(t));
  }
  if (tables.size() < 2)
    throw std::invalid_argument("DyadicPartition: grid too coarse to host at least 2 annuli");

  const int l_min = l_max - static_cast<int>(tables.size()) + 1;
  p.l_min_ = l_min;
  p.l_max_ = l_max;
  p.phi_.assign(tables.rbegin(), tables.rend());  // stored l_min..l_max

  p.psi_.resize(total);
  const double scale = std::ldexp(1.0, -l_min);
  for (std::size_t i = 0; i < total; ++i)
    p.psi_[i] = radial_cutoff(scale * std::sqrt(frequency_sq(grid, i)));

  return p;
}

std::span<const double> DyadicPartition::phi_table(int l) const {
  if (l < l_min_ || l > l_max_)
    throw std::out_of_range("DyadicPartition: scale " + std::to_string(l) +
                            " outside [" + std::to_string(l_min_) + ", " +
                            std::to_string(l_max_) + "]");
  return phi_[static_cast<std::size_t>(l - l_min_)];
}

std::vector<double> DyadicPartition::lowpass_table(int l) const {
  if (l < l_min_ - 1 || l > l_max_ + 1)
    throw std::out_of_range("DyadicPartition: low-pass level " + std::to_string(l) +
                            " outside [" + std::to_string(l_min_ - 1) + ", " +
                            std::to_string(l_max_ + 1) + "]");
  std::vector<double> t(psi_);
  for (int lp = l_min_; lp < l; ++lp) {
    const auto& phi = phi_[static_cast<std::size_t>(lp - l_min_)];
    for (std::size_t i = 0; i < t.size(); ++i) t[i] += phi[i];
  }
  return t;
}

Field dyadic_block(const Field& f, int l, const DyadicPartition& p) {
  return apply_table(f, p.phi_table(l));
}

Field low_pass(const Field& f, int l, const DyadicPartition& p) {
  if (l < p.l_min() || l > p.l_max() + 1)
    throw std::out_of_range("low_pass: level outside [l_min, l_max + 1]");
  return apply_table(f, p.lowpass_table(l));
}

ParaproductParts paraproduct(const Field& v, const Field& w, const DyadicPartition& p) {
  if (!within_dealias_band(v) || !within_dealias_band(w))
    throw std::invalid_argument("paraproduct: inputs exceed the dealiasing band");

  const Grid& grid = p.grid();
  const int l_min = p.l_min();
  const int l_max = p.l_max();
  const int scales = p.num_scales();

  std::vector<Field> v_blk, w_blk;
  v_blk.reserve(static_cast<std::size_t>(scales));
  w_blk.reserve(static_cast<std::size_t>(scales));
  const Field vp = to_physical(v);
  const Field wp = to_physical(w);
  for (int l = l_min; l <= l_max; ++l) {
    v_blk.push_back(dyadic_block(vp, l, p));
    w_blk.push_back(dyadic_block(wp, l, p));
  }

  Field t_vw = Field::zeros(grid, Rep::spectral);
  Field t_wv = Field::zeros(grid, Rep::spectral);
  Field res = Field::zeros(grid, Rep::spectral);

  for (int l = l_min; l <= l_max; ++l) {
    const auto idx = static_cast<std::size_t>(l - l_min);
    const Field v_low = to_physical(apply_table(v, p.lowpass_table(l - 1)));
    const Field w_low = to_physical(apply_table(w, p.lowpass_table(l - 1)));
    t_vw = t_vw + multiply_dealias(v_low, w_blk[idx]);
    t_wv = t_wv + multiply_dealias(w_low, v_blk[idx]);

    Field w_tilde = w_blk[idx];
    if (l > l_min) w_tilde = w_tilde + w_blk[idx - 1];
    if (l < l_max) w_tilde = w_tilde + w_blk[idx + 1];
    res = res + multiply_dealias(v_blk[idx], w_tilde);
  }

  return ParaproductParts{to_physical(t_vw), to_physical(t_wv), to_physical(res)};
}

}  // namespace anisoflow
