#include "anisoflow/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace anisoflow {

namespace {

// pow with fast paths for the exponents the index bundles actually use.
inline double pow_fast(double x, double e) {
  if (e == 1.0) return x;
  if (e == 2.0) return x * x;
  if (e == 0.5) return std::sqrt(x);
  if (e == 3.0) return x * x * x;
  if (e == 4.0) {
    const double x2 = x * x;
    return x2 * x2;
  }
  return std::pow(x, e);
}

inline int torus_offset(int i, int c, int n) {
  int d = std::abs(i - c);
  return std::min(d, n - d);
}

// Wrapped-interval sum of a per-row prefix table: indices within torus
// distance m of center c (the whole row when the interval covers it).
inline double interval_sum(const double* prefix, int n, int c, int m) {
  if (2 * m + 1 >= n) return prefix[n];
  int lo = c - m, hi = c + m;  // inclusive
  if (lo >= 0 && hi < n) return prefix[hi + 1] - prefix[lo];
  // exactly one wraparound
  lo = (lo % n + n) % n;
  hi = (hi % n + n) % n;
  return (prefix[n] - prefix[lo]) + prefix[hi + 1];
}

void require_physical(const Field& f, const char* op) {
  if (!f.is_physical())
    throw std::invalid_argument(std::string(op) + ": field must be in physical representation");
}

}  // namespace

double mixed_lebesgue_norm(const Field& f, std::span<const double> p) {
  require_physical(f, "mixed_lebesgue_norm");
  const Grid& g = f.grid();
  if (static_cast<int>(p.size()) != g.dim)
    throw std::invalid_argument("mixed_lebesgue_norm: exponent count must equal dimension");
  for (double e : p)
    if (!(e >= 1.0)) throw std::invalid_argument("mixed_lebesgue_norm: p_i must be >= 1");

  const double h = g.spacing();
  std::vector<double> cur(f.size());
  for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = std::abs(f[i]);

  const auto n = static_cast<std::size_t>(g.n);
  for (int ax = 0; ax < g.dim; ++ax) {
    const double e = p[static_cast<std::size_t>(ax)];
    const std::size_t rows = cur.size() / n;
    std::vector<double> next(rows);
    if (std::isinf(e)) {
      for (std::size_t r = 0; r < rows; ++r) {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) m = std::max(m, cur[r * n + i]);
        next[r] = m;
      }
    } else {
      for (std::size_t r = 0; r < rows; ++r) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += pow_fast(cur[r * n + i], e);
        next[r] = pow_fast(h * s, 1.0 / e);
      }
    }
    cur = std::move(next);
  }
  return cur[0];
}

std::vector<double> morrey_radii(const Grid& g) {
  std::vector<double> radii;
  const double h = g.spacing();
  const double cap = 0.5 * g.length * (1.0 + 1e-12);
  for (double r = h; r <= cap; r *= 2.0) radii.push_back(r);
  // Whole-torus ball: with this radius B(x, R) covers everything, so the
  // lambda = 0 norm coincides with the plain mixed-Lebesgue norm.
  radii.push_back(0.5 * g.length * std::sqrt(static_cast<double>(g.dim)) * (1.0 + 1e-12));
  return radii;
}

int morrey_center_stride(const Grid& g) {
  int stride = 1;
  while (true) {
    std::size_t centers = 1;
    for (int ax = 0; ax < g.dim; ++ax) centers *= static_cast<std::size_t>(g.n / stride);
    if (centers <= kMorreyMaxCenters) return stride;
    stride *= 2;
  }
}

MorreySup mixed_morrey_sup(const Field& f, std::span<const double> q,
                           std::span<const double> lambda) {
  require_physical(f, "mixed_morrey_norm");
  const Grid& g = f.grid();
  const int d = g.dim;
  if (static_cast<int>(q.size()) != d || static_cast<int>(lambda.size()) != d)
    throw std::invalid_argument("mixed_morrey_norm: index counts must equal dimension");
  for (double e : q)
    if (!(e >= 1.0) || std::isinf(e))
      throw std::invalid_argument("mixed_morrey_norm: q_i must lie in [1, inf)");
  for (double e : lambda)
    if (!(e >= 0.0) || !(e < 1.0))
      throw std::invalid_argument("mixed_morrey_norm: lambda_i must lie in [0, 1)");

  const int n = g.n;
  const auto un = static_cast<std::size_t>(n);
  const double h = g.spacing();
  const double weight = morrey_weight(q, lambda);

  // Per-row prefix sums of |f|^{q_0} along axis 0.
  const std::size_t rows = g.total() / un;
  std::vector<double> prefix(rows * (un + 1));
  {
    const double q0 = q[0];
    for (std::size_t r = 0; r < rows; ++r) {
      double* pr = prefix.data() + r * (un + 1);
      pr[0] = 0.0;
      for (std::size_t i = 0; i < un; ++i)
        pr[i + 1] = pr[i] + pow_fast(std::abs(f[r * un + i]), q0);
    }
  }

  const double e10 = d >= 2 ? q[1] / q[0] : 0.0;
  const double e21 = d >= 3 ? q[2] / q[1] : 0.0;

  const int stride = morrey_center_stride(g);
  const auto radii = morrey_radii(g);

  MorreySup best;
  for (double R : radii) {
    const double r2 = R * R;
    const double rw = std::pow(R, -weight);
    const int mr = static_cast<int>(std::floor(R / h + 1e-9));

    auto axis0_value = [&](std::size_t row, int c0, double rem2) -> double {
      const int m = static_cast<int>(std::floor(std::sqrt(rem2) / h + 1e-9));
      return interval_sum(prefix.data() + row * (un + 1), n, c0, m);
    };

    for (int c2 = 0; c2 < (d >= 3 ? n : 1); c2 += stride) {
      for (int c1 = 0; c1 < (d >= 2 ? n : 1); c1 += stride) {
        for (int c0 = 0; c0 < n; c0 += stride) {
          double value;
          if (d == 1) {
            value = pow_fast(h * axis0_value(0, c0, r2), 1.0 / q[0]);
          } else if (d == 2) {
            double acc1 = 0.0;
            for (int off = -std::min(mr, n / 2); off <= std::min(mr, n - n / 2 - 1); ++off) {
              const int i1 = ((c1 + off) % n + n) % n;
              const double d1 = torus_offset(i1, c1, n) * h;
              const double rem2 = r2 - d1 * d1;
              if (rem2 < 0.0) continue;
              const double s0 = axis0_value(static_cast<std::size_t>(i1), c0, rem2);
              acc1 += pow_fast(h * s0, e10);
            }
            value = pow_fast(h * acc1, 1.0 / q[1]);
          } else {
            double acc2 = 0.0;
            for (int o2 = -std::min(mr, n / 2); o2 <= std::min(mr, n - n / 2 - 1); ++o2) {
              const int i2 = ((c2 + o2) % n + n) % n;
              const double d2 = torus_offset(i2, c2, n) * h;
              const double rem2a = r2 - d2 * d2;
              if (rem2a < 0.0) continue;
              const int m1 = static_cast<int>(std::floor(std::sqrt(rem2a) / h + 1e-9));
              double acc1 = 0.0;
              for (int o1 = -std::min(m1, n / 2); o1 <= std::min(m1, n - n / 2 - 1); ++o1) {
                const int i1 = ((c1 + o1) % n + n) % n;
                const double d1 = torus_offset(i1, c1, n) * h;
                const double rem2 = rem2a - d1 * d1;
                if (rem2 < 0.0) continue;
                const std::size_t row = static_cast<std::size_t>(i1) + un * static_cast<std::size_t>(i2);
                const double s0 = axis0_value(row, c0, rem2);
                acc1 += pow_fast(h * s0, e10);
              }
              acc2 += pow_fast(h * acc1, e21);
            }
            value = pow_fast(h * acc2, 1.0 / q[2]);
          }

          const double weighted = rw * value;
          if (weighted > best.value) {
            best.value = weighted;
            best.argmax.center = {c0 * h, d >= 2 ? c1 * h : 0.0, d >= 3 ? c2 * h : 0.0};
            best.argmax.radius = R;
          }
        }
      }
    }
  }
  return best;
}

double mixed_morrey_norm(const Field& f, std::span<const double> q,
                         std::span<const double> lambda) {
  return mixed_morrey_sup(f, q, lambda).value;
}

double aggregate_lr(const std::map<int, double>& per_scale, double r) {
  if (std::isinf(r)) {
    double m = 0.0;
    for (const auto& [l, v] : per_scale) m = std::max(m, v);
    return m;
  }
  double s = 0.0;
  for (const auto& [l, v] : per_scale) s += std::pow(v, r);
  return std::pow(s, 1.0 / r);
}

Field frequency_side_field(const Field& spectral) {
  if (!spectral.is_spectral())
    throw std::invalid_argument("frequency_side_field: expected a spectral field");
  const Grid& g = spectral.grid();
  Grid gf{g.dim, g.n, g.n * g.xi_unit()};
  std::vector<Complex> samples(spectral.samples().begin(), spectral.samples().end());
  return Field(gf, Rep::physical, std::move(samples));
}

namespace {

bool spectrally_zero(const Field& s) {
  for (const auto& c : s.samples())
    if (c != Complex(0.0, 0.0)) return false;
  return true;
}

Field spectral_block(const Field& fs, int l, const DyadicPartition& p) {
  auto table = p.phi_table(l);
  std::vector<Complex> out(fs.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = table[i] * fs[i];
  return Field(fs.grid(), Rep::spectral, std::move(out));
}

NormReport block_norm_report(const Field& f, const SpaceParams& params,
                             const DyadicPartition& p, bool fourier_side) {
  params.validate(f.grid().dim);
  NormReport report;
  const Field fs = to_spectral(f);
  double best_weighted = -1.0;
  for (int l = p.l_min(); l <= p.l_max(); ++l) {
    Field blk = spectral_block(fs, l, p);
    double norm = 0.0;
    MorreySup sup;
    if (!spectrally_zero(blk)) {
      if (fourier_side) {
        sup = mixed_morrey_sup(frequency_side_field(blk), params.q, params.lambda);
      } else {
        sup = mixed_morrey_sup(to_physical(blk), params.q, params.lambda);
      }
      norm = sup.value;
    }
    const double weighted = std::exp2(l * params.regularity) * norm;
    report.per_scale[l] = weighted;
    if (weighted > best_weighted) {
      best_weighted = weighted;
      report.ball_argmax = sup.argmax;
    }
  }
  report.value = aggregate_lr(report.per_scale, params.r);
  return report;
}

}  // namespace

NormReport besov_mixed_morrey_norm(const Field& f, const SpaceParams& params,
                                   const DyadicPartition& p) {
  if (params.flavor != SpaceFlavor::physical_besov)
    throw std::invalid_argument("besov_mixed_morrey_norm: flavor mismatch");
  return block_norm_report(f, params, p, /*fourier_side=*/false);
}

NormReport fourier_besov_mixed_morrey_norm(const Field& f, const SpaceParams& params,
                                           const DyadicPartition& p) {
  if (params.flavor != SpaceFlavor::fourier_besov)
    throw std::invalid_argument("fourier_besov_mixed_morrey_norm: flavor mismatch");
  return block_norm_report(f, params, p, /*fourier_side=*/true);
}

double besov_mixed_lebesgue_norm(const Field& f, std::span<const double> p,
                                 double sigma, double r, const DyadicPartition& part) {
  const Field fs = to_spectral(f);
  std::map<int, double> per_scale;
  for (int l = part.l_min(); l <= part.l_max(); ++l) {
    Field blk = spectral_block(fs, l, part);
    const double norm =
        spectrally_zero(blk) ? 0.0 : mixed_lebesgue_norm(to_physical(blk), p);
    per_scale[l] = std::exp2(l * sigma) * norm;
  }
  return aggregate_lr(per_scale, r);
}

double fourier_besov_mixed_lebesgue_norm(const Field& f, std::span<const double> p,
                                         double s, double r, const DyadicPartition& part) {
  const Field fs = to_spectral(f);
  std::map<int, double> per_scale;
  for (int l = part.l_min(); l <= part.l_max(); ++l) {
    Field blk = spectral_block(fs, l, part);
    const double norm =
        spectrally_zero(blk) ? 0.0 : mixed_lebesgue_norm(frequency_side_field(blk), p);
    per_scale[l] = std::exp2(l * s) * norm;
  }
  return aggregate_lr(per_scale, r);
}

BlockNormTable block_norm_table(const Trajectory& traj, const SpaceParams& params,
                                const DyadicPartition& p) {
  params.validate(traj.grid().dim);
  const bool fourier_side = params.flavor == SpaceFlavor::fourier_besov;
  BlockNormTable table;
  table.l_min = p.l_min();
  table.horizon = traj.horizon();
  table.norms.assign(static_cast<std::size_t>(p.num_scales()),
                     std::vector<double>(static_cast<std::size_t>(traj.steps()) + 1, 0.0));
  for (int m = 0; m <= traj.steps(); ++m) {
    const VectorField& u = traj.state(m);
    for (int l = p.l_min(); l <= p.l_max(); ++l) {
      double sq = 0.0;
      for (const auto& comp : u.components()) {
        Field blk = spectral_block(comp, l, p);
        if (spectrally_zero(blk)) continue;
        const double norm =
            fourier_side ? mixed_morrey_norm(frequency_side_field(blk), params.q, params.lambda)
                         : mixed_morrey_norm(to_physical(blk), params.q, params.lambda);
        sq += norm * norm;
      }
      table.norms[static_cast<std::size_t>(l - p.l_min())][static_cast<std::size_t>(m)] =
          std::sqrt(sq);
    }
  }
  return table;
}

double timespace_norm(const BlockNormTable& table, double a, const SpaceParams& params) {
  if (!(a == 1.0 || std::isinf(a)))
    throw std::invalid_argument("timespace_norm: only a = 1 and a = inf are supported");
  const int steps = static_cast<int>(table.norms.front().size()) - 1;
  const double dt = table.horizon / steps;
  std::map<int, double> per_scale;
  for (std::size_t li = 0; li < table.norms.size(); ++li) {
    const auto& series = table.norms[li];
    double inner;
    if (std::isinf(a)) {
      inner = *std::max_element(series.begin(), series.end());
    } else {
      inner = 0.5 * (series.front() + series.back());
      for (int m = 1; m < steps; ++m) inner += series[static_cast<std::size_t>(m)];
      inner *= dt;
    }
    const int l = table.l_min + static_cast<int>(li);
    per_scale[l] = std::exp2(l * params.regularity) * inner;
  }
  return aggregate_lr(per_scale, params.r);
}

double timespace_norm(const Trajectory& traj, double a, const SpaceParams& params,
                      const DyadicPartition& p) {
  return timespace_norm(block_norm_table(traj, params, p), a, params);
}

double vector_space_norm(const VectorField& u, const SpaceParams& params,
                         const DyadicPartition& p) {
  params.validate(u.grid().dim);
  const bool fourier_side = params.flavor == SpaceFlavor::fourier_besov;
  std::map<int, double> per_scale;
  const VectorField us = to_spectral(u);
  for (int l = p.l_min(); l <= p.l_max(); ++l) {
    double sq = 0.0;
    for (const auto& comp : us.components()) {
      Field blk = spectral_block(comp, l, p);
      if (spectrally_zero(blk)) continue;
      const double norm =
          fourier_side ? mixed_morrey_norm(frequency_side_field(blk), params.q, params.lambda)
                       : mixed_morrey_norm(to_physical(blk), params.q, params.lambda);
      sq += norm * norm;
    }
    per_scale[l] = std::exp2(l * params.regularity) * std::sqrt(sq);
  }
  return aggregate_lr(per_scale, params.r);
}

double z_norm(const Trajectory& traj, const SpaceParams& params,
              const DyadicPartition& p, double nu) {
  if (!(nu > 0.0)) throw std::invalid_argument("z_norm: nu must be positive");
  if (!params.solver_admissible())
    throw std::invalid_argument("z_norm: params are not solver-admissible (regularity must "
                                "be the critical one and the gap positive)");
  const BlockNormTable table = block_norm_table(traj, params, p);
  const double sup_part = timespace_norm(table, kInf, params);
  const double int_part = timespace_norm(table, 1.0, params.shifted(2.0));
  return std::max(sup_part, int_part);
}

}  // namespace anisoflow
