#include "anisoflow/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace anisoflow {

namespace {

Field map_spectrum(const Field& f, const std::function<Complex(std::size_t, const Field&)>& fn) {
  const Field fs = to_spectral(f);
  std::vector<Complex> out(fs.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = fn(i, fs);
  Field r(fs.grid(), Rep::spectral, std::move(out));
  return f.is_physical() ? to_physical(r) : r;
}

// phi1(z) = (1 - e^-z)/z and phi2(z) = (1 - e^-z (1+z))/z^2, evaluated
// stably near z = 0. Both tend to 1 resp. 1/2.
double phi1(double z) {
  if (z < 1e-8) return 1.0 - z / 2.0 + z * z / 6.0;
  return -std::expm1(-z) / z;
}
double phi2(double z) {
  if (z < 1e-4) return 0.5 - z / 3.0 + z * z / 8.0;
  return (1.0 - std::exp(-z) * (1.0 + z)) / (z * z);
}

}  // namespace

Field apply_multiplier(const Field& f, const MultiplierSymbol& symbol) {
  if (!symbol.eval) throw std::invalid_argument("apply_multiplier: empty symbol");
  return map_spectrum(f, [&](std::size_t i, const Field& fs) -> Complex {
    const double xi2 = frequency_sq(fs.grid(), i);
    if (xi2 == 0.0) return Complex(0.0, 0.0);
    const Complex p = symbol.eval(frequency(fs.grid(), i));
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
      throw std::domain_error("apply_multiplier: symbol evaluated to a non-finite value");
    return p * fs[i];
  });
}

Field heat_semigroup(const Field& f, double nu, double t) {
  if (t < 0.0) throw std::invalid_argument("heat_semigroup: t must be nonnegative");
  if (!(nu > 0.0)) throw std::invalid_argument("heat_semigroup: nu must be positive");
  if (t == 0.0) return f;
  return map_spectrum(f, [&](std::size_t i, const Field& fs) {
    return std::exp(-nu * t * frequency_sq(fs.grid(), i)) * fs[i];
  });
}

VectorField heat_semigroup(const VectorField& u, double nu, double t) {
  std::vector<Field> comps;
  comps.reserve(u.components().size());
  for (const auto& c : u.components()) comps.push_back(heat_semigroup(c, nu, t));
  return VectorField(std::move(comps));
}

VectorField leray_project(const VectorField& u) {
  const VectorField us = to_spectral(u);
  const Grid& g = us.grid();
  const int d = g.dim;
  std::vector<std::vector<Complex>> out(static_cast<std::size_t>(d),
                                        std::vector<Complex>(g.total()));
  for (std::size_t i = 0; i < g.total(); ++i) {
    const auto xi = frequency(g, i);
    const double xi2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    if (xi2 == 0.0) continue;  // homogeneous quotient: zero the mean mode
    Complex dot(0.0, 0.0);
    for (int j = 0; j < d; ++j) dot += xi[static_cast<std::size_t>(j)] * us[j][i];
    dot /= xi2;
    for (int j = 0; j < d; ++j)
      out[static_cast<std::size_t>(j)][i] = us[j][i] - xi[static_cast<std::size_t>(j)] * dot;
  }
  std::vector<Field> comps;
  comps.reserve(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j)
    comps.emplace_back(g, Rep::spectral, std::move(out[static_cast<std::size_t>(j)]));
  VectorField r(std::move(comps));
  return u.rep() == Rep::physical ? to_physical(r) : r;
}

Field riesz_transform(const Field& f, int axis) {
  const int d = f.grid().dim;
  if (axis < 0 || axis >= d) throw std::invalid_argument("riesz_transform: axis out of range");
  return map_spectrum(f, [&](std::size_t i, const Field& fs) -> Complex {
    const double xi2 = frequency_sq(fs.grid(), i);
    if (xi2 == 0.0) return Complex(0.0, 0.0);
    const auto xi = frequency(fs.grid(), i);
    return Complex(0.0, xi[static_cast<std::size_t>(axis)] / std::sqrt(xi2)) * fs[i];
  });
}

Field fractional_laplacian(const Field& f, double s) {
  return map_spectrum(f, [&](std::size_t i, const Field& fs) -> Complex {
    const double xi2 = frequency_sq(fs.grid(), i);
    if (xi2 == 0.0) return Complex(0.0, 0.0);
    return std::pow(xi2, 0.5 * s) * fs[i];
  });
}

Field divergence(const VectorField& u) {
  const VectorField us = to_spectral(u);
  const Grid& g = us.grid();
  std::vector<Complex> out(g.total());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto xi = frequency(g, i);
    Complex s(0.0, 0.0);
    for (int j = 0; j < g.dim; ++j) s += Complex(0.0, xi[static_cast<std::size_t>(j)]) * us[j][i];
    out[i] = s;
  }
  return Field(g, Rep::spectral, std::move(out));
}

VectorField gradient(const Field& f) {
  const Field fs = to_spectral(f);
  const Grid& g = fs.grid();
  std::vector<Field> comps;
  for (int j = 0; j < g.dim; ++j) {
    std::vector<Complex> out(g.total());
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto xi = frequency(g, i);
      out[i] = Complex(0.0, xi[static_cast<std::size_t>(j)]) * fs[i];
    }
    comps.emplace_back(g, Rep::spectral, std::move(out));
  }
  return VectorField(std::move(comps));
}

double max_divergence(const VectorField& u) {
  return max_abs(to_physical(divergence(u)));
}

VectorField nonlinear_term(const VectorField& v, const VectorField& w) {
  const Grid& g = v.grid();
  if (!(g == w.grid())) throw std::invalid_argument("nonlinear_term: mismatched grids");
  for (const auto& c : v.components())
    if (!within_dealias_band(c))
      throw std::invalid_argument("nonlinear_term: first argument exceeds dealiasing band");
  for (const auto& c : w.components())
    if (!within_dealias_band(c))
      throw std::invalid_argument("nonlinear_term: second argument exceeds dealiasing band");

  const VectorField vp = to_physical(v);
  const VectorField wp = to_physical(w);
  const int d = g.dim;

  // row i of the tensor: (v_i w_j)_j; divergence gives sum_j i xi_j (v_i w_j)^.
  std::vector<Field> rows;
  rows.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    std::vector<Complex> div_row(g.total(), Complex(0.0, 0.0));
    for (int j = 0; j < d; ++j) {
      std::vector<Complex> prod(g.total());
      for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = vp[i][k] * wp[j][k];
      Field pj = dealias(Field(g, Rep::physical, std::move(prod)));
      for (std::size_t k = 0; k < div_row.size(); ++k) {
        const auto xi = frequency(g, k);
        div_row[k] += Complex(0.0, xi[static_cast<std::size_t>(j)]) * pj[k];
      }
    }
    rows.emplace_back(g, Rep::spectral, std::move(div_row));
  }
  return leray_project(VectorField(std::move(rows)));
}

Field periodic_convolution(const Field& f, const Field& g) {
  if (!(f.grid() == g.grid()))
    throw std::invalid_argument("periodic_convolution: mismatched grids");
  const Field fs = to_spectral(f);
  const Field gs = to_spectral(g);
  double vol = 1.0;
  for (int i = 0; i < f.grid().dim; ++i) vol *= f.grid().length;
  std::vector<Complex> out(fs.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = vol * fs[i] * gs[i];
  Field r(fs.grid(), Rep::spectral, std::move(out));
  return f.is_physical() || g.is_physical() ? to_physical(r) : r;
}

Trajectory heat_trajectory(const VectorField& u0, double nu, double horizon, int steps) {
  if (steps < 1) throw std::invalid_argument("heat_trajectory: need at least 1 step");
  const VectorField us = to_spectral(u0);
  std::vector<VectorField> states;
  states.reserve(static_cast<std::size_t>(steps) + 1);
  const double dt = horizon / steps;
  for (int m = 0; m <= steps; ++m) states.push_back(heat_semigroup(us, nu, dt * m));
  return Trajectory(horizon, std::move(states));
}

namespace {

Trajectory duhamel_core(const Trajectory& g, double nu, double sign) {
  const Grid& grid = g.grid();
  const int d = grid.dim;
  const double dt = g.dt();
  const std::size_t total = grid.total();

  std::vector<VectorField> forcing;
  forcing.reserve(g.states().size());
  for (const auto& st : g.states()) forcing.push_back(leray_project(st));

  std::vector<VectorField> states;
  states.reserve(g.states().size());
  states.push_back(VectorField::zeros(grid, Rep::spectral));

  std::vector<std::vector<Complex>> acc(static_cast<std::size_t>(d),
                                        std::vector<Complex>(total, Complex(0.0, 0.0)));
  for (int m = 0; m < g.steps(); ++m) {
    const VectorField& g0 = forcing[static_cast<std::size_t>(m)];
    const VectorField& g1 = forcing[static_cast<std::size_t>(m) + 1];
    for (std::size_t i = 0; i < total; ++i) {
      const double c = nu * frequency_sq(grid, i);
      const double z = c * dt;
      const double decay = std::exp(-z);
      // int_0^dt e^{-c s} ds and int_0^dt s e^{-c s} ds via phi functions.
      const double i0 = dt * phi1(z);
      const double i1 = dt * dt * phi2(z);
      const double w_new = i0 - i1 / dt;  // weight of the endpoint value g1
      const double w_old = i1 / dt;       // weight of the start value g0
      for (int j = 0; j < d; ++j) {
        auto& a = acc[static_cast<std::size_t>(j)][i];
        a = decay * a + sign * (w_old * g0[j][i] + w_new * g1[j][i]);
      }
    }
    std::vector<Field> comps;
    comps.reserve(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
      comps.emplace_back(grid, Rep::spectral,
                         std::vector<Complex>(acc[static_cast<std::size_t>(j)]));
    }
    states.push_back(VectorField(std::move(comps)));
  }
  return Trajectory(g.horizon(), std::move(states));
}

}  // namespace

Trajectory duhamel_integral(const Trajectory& g, double nu) {
  if (!(nu > 0.0)) throw std::invalid_argument("duhamel_integral: nu must be positive");
  return duhamel_core(g, nu, +1.0);
}

Trajectory bilinear_B(const Trajectory& v, const Trajectory& w, double nu) {
  if (!(nu > 0.0)) throw std::invalid_argument("bilinear_B: nu must be positive");
  if (v.steps() != w.steps() || v.horizon() != w.horizon() || !(v.grid() == w.grid()))
    throw std::invalid_argument("bilinear_B: mismatched discretizations");
  std::vector<VectorField> forcing;
  forcing.reserve(v.states().size());
  for (int m = 0; m <= v.steps(); ++m)
    forcing.push_back(nonlinear_term(v.state(m), w.state(m)));
  Trajectory f(v.horizon(), std::move(forcing));
  return duhamel_core(f, nu, -1.0);
}

}  // namespace anisoflow
