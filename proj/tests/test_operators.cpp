#include <doctest.h>

#include <cmath>

#include "anisoflow/lab.hpp"
#include "anisoflow/norms.hpp"
#include "anisoflow/operators.hpp"
#include "anisoflow/rng.hpp"
#include "anisoflow/solver.hpp"

using namespace anisoflow;

namespace {

Field single_mode(const Grid& g, int k0, int k1, Complex c = Complex(1.0, 0.0)) {
  std::vector<Complex> s(g.total(), Complex(0.0, 0.0));
  std::size_t idx = static_cast<std::size_t>(g.index_of_mode(k0));
  if (g.dim >= 2)
    idx += static_cast<std::size_t>(g.index_of_mode(k1)) * static_cast<std::size_t>(g.n);
  s[idx] = c;
  return Field(g, Rep::spectral, std::move(s));
}

Complex l2_pairing(const VectorField& a, const VectorField& b) {
  const VectorField ap = to_physical(a), bp = to_physical(b);
  Complex acc(0.0, 0.0);
  for (int j = 0; j < a.dim(); ++j)
    for (std::size_t i = 0; i < ap[j].size(); ++i) acc += ap[j][i] * std::conj(bp[j][i]);
  return acc * a.grid().cell_volume();
}

}  // namespace

TEST_CASE("heat semigroup") {
  Grid g = make_grid(2, 32, 2.0 * kPi);
  DyadicPartition part = DyadicPartition::build(g);
  SplitMix64 rng(1);

  SUBCASE("t = 0 is the identity and negative t is rejected") {
    Field f = random_band_limited_field(part, rng);
    CHECK(max_abs(heat_semigroup(f, 1.0, 0.0) - f) == 0.0);
    CHECK_THROWS_AS((void)heat_semigroup(f, 1.0, -0.1), std::invalid_argument);
  }
  SUBCASE("diagonal action on a single mode") {
    const Complex c(0.7, -0.3);
    Field f = single_mode(g, 3, -2, c);
    Field out = heat_semigroup(f, 0.5, 0.25);
    const double factor = std::exp(-0.5 * 0.25 * (9.0 + 4.0));
    CHECK(std::abs(out[static_cast<std::size_t>(g.index_of_mode(3)) +
                       static_cast<std::size_t>(g.index_of_mode(-2)) * 32] -
                   c * factor) < 1e-15);
  }
  SUBCASE("semigroup law") {
    Field f = random_band_limited_field(part, rng);
    Field a = heat_semigroup(heat_semigroup(f, 1.3, 0.2), 1.3, 0.35);
    Field b = heat_semigroup(f, 1.3, 0.55);
    CHECK(max_abs(a - b) <= 1e-12 * max_abs(f));
  }
  SUBCASE("block decay rate sits in the expected window") {
    // Asymptotically the slowest annulus mode dominates; fit late-time decay.
    const int l = 2;
    const double nu = 1.0;
    VectorField u0 = random_divergence_free_block(part, l, rng);
    SpaceParams params = SpaceParams::physical({2.0, 2.0}, {0.5, 0.5}, 2.0, 0.0);
    const double rate_guess = nu * std::pow(0.75 * std::exp2(l), 2.0);
    std::vector<double> ts, logs;
    const double n0 = vector_space_norm(u0, params, part);
    for (int j = 1; j <= 40; ++j) {
      const double t = j * 0.25 / rate_guess;
      const double v = vector_space_norm(heat_semigroup(u0, nu, t), params, part);
      const double rel = v / n0;
      if (rel < 5e-2 && rel > 1e-6) {
        ts.push_back(t);
        logs.push_back(std::log(rel));
      }
    }
    REQUIRE(ts.size() >= 4);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      sx += ts[i];
      sy += logs[i];
      sxx += ts[i] * ts[i];
      sxy += ts[i] * logs[i];
    }
    const double nn = static_cast<double>(ts.size());
    const double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    const double c = -slope / (nu * std::exp2(2 * l));
    CHECK(c >= 0.5 * 0.75 * 0.75);
    CHECK(c <= 1.5 * 0.75 * 0.75);
  }
}

TEST_CASE("Leray projector") {
  Grid g = make_grid(2, 32, 2.0 * kPi);
  DyadicPartition part = DyadicPartition::build(g);
  SplitMix64 rng(2);

  SUBCASE("annihilates gradients") {
    Field phi = random_band_limited_field(part, rng);
    VectorField grad = gradient(phi);
    CHECK(max_abs(leray_project(grad)) <= 1e-12 * std::max(1.0, max_abs(grad)));
  }
  SUBCASE("fixes divergence-free fields and is idempotent") {
    VectorField u = random_divergence_free_field(part, rng);
    CHECK(max_abs(leray_project(u) - u) <= 1e-12 * max_abs(u));
    std::vector<Field> comps{to_spectral(random_band_limited_field(part, rng)),
                             to_spectral(random_band_limited_field(part, rng))};
    VectorField w(std::move(comps));
    VectorField pw = leray_project(w);
    CHECK(max_abs(leray_project(pw) - pw) <= 1e-12 * max_abs(pw));
    CHECK(max_divergence(pw) <= 1e-12 * max_abs(pw));
  }
  SUBCASE("self-adjoint under the discrete L2 pairing") {
    std::vector<Field> ca{to_spectral(random_band_limited_field(part, rng)),
                          to_spectral(random_band_limited_field(part, rng))};
    std::vector<Field> cb{to_spectral(random_band_limited_field(part, rng)),
                          to_spectral(random_band_limited_field(part, rng))};
    VectorField a(std::move(ca)), b(std::move(cb));
    const Complex lhs = l2_pairing(leray_project(a), b);
    const Complex rhs = l2_pairing(a, leray_project(b));
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
  }
  SUBCASE("3-d round trip") {
    Grid g3 = make_grid(3, 16, 2.0 * kPi);
    DyadicPartition p3 = DyadicPartition::build(g3);
    std::vector<Field> comps;
    for (int j = 0; j < 3; ++j)
      comps.push_back(to_spectral(random_band_limited_field(p3, rng)));
    VectorField u(std::move(comps));
    VectorField pu = leray_project(u);
    CHECK(max_divergence(pu) <= 1e-12 * max_abs(pu));
    CHECK(max_abs(leray_project(pu) - pu) <= 1e-12 * max_abs(pu));
  }
}

TEST_CASE("Riesz transforms") {
  Grid g = make_grid(2, 32, 2.0 * kPi);
  DyadicPartition part = DyadicPartition::build(g);
  SplitMix64 rng(3);

  SUBCASE("diagonal action") {
    Field f = single_mode(g, 3, 4, Complex(2.0, 0.0));
    Field out = riesz_transform(f, 0);
    const std::size_t idx = static_cast<std::size_t>(g.index_of_mode(3)) +
                            static_cast<std::size_t>(g.index_of_mode(4)) * 32;
    CHECK(std::abs(out[idx] - Complex(0.0, 2.0 * 3.0 / 5.0)) < 1e-15);
    CHECK_THROWS_AS((void)riesz_transform(f, 2), std::invalid_argument);
  }
  SUBCASE("sum of squares is minus the identity on mean-zero fields") {
    Field f = to_spectral(random_band_limited_field(part, rng));
    Field acc = Field::zeros(g, Rep::spectral);
    for (int j = 0; j < 2; ++j) acc = acc + riesz_transform(riesz_transform(f, j), j);
    CHECK(max_abs(acc + f) <= 1e-12 * max_abs(f));
  }
  SUBCASE("Morrey-norm boundedness uniform over scales") {
    const std::vector<double> q{2.0, 2.0}, lam{0.5, 0.5};
    double lo = kInf, hi = 0.0;
    for (int l = part.l_min(); l <= part.l_max(); ++l) {
      for (int s = 0; s < 5; ++s) {
        Field f = random_block_field(part, l, rng);
        Field blk = dyadic_block(f, l, part);
        const double denom = mixed_morrey_norm(blk, q, lam);
        if (denom <= 0.0) continue;
        const double r = mixed_morrey_norm(to_physical(riesz_transform(blk, 0)), q, lam) / denom;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
    }
    CHECK(hi / lo < 10.0);
  }
}

TEST_CASE("generic multipliers and the fractional Laplacian") {
  Grid g = make_grid(2, 32, 2.0 * kPi);
  DyadicPartition part = DyadicPartition::build(g);
  SplitMix64 rng(4);
  Field f = to_spectral(random_band_limited_field(part, rng));

  SUBCASE("unit symbol is the identity on mean-zero fields") {
    MultiplierSymbol one{[](const std::array<double, 3>&) { return Complex(1.0, 0.0); }, 0.0};
    CHECK(max_abs(apply_multiplier(f, one) - f) <= 1e-14 * max_abs(f));
  }
  SUBCASE("|xi|^2 acts as minus the Laplacian") {
    MultiplierSymbol sym{[](const std::array<double, 3>& xi) {
                           return Complex(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2], 0.0);
                         },
                         2.0};
    Field a = apply_multiplier(single_mode(g, 3, -4), sym);
    const std::size_t idx = static_cast<std::size_t>(g.index_of_mode(3)) +
                            static_cast<std::size_t>(g.index_of_mode(-4)) * 32;
    CHECK(std::abs(a[idx] - Complex(25.0, 0.0)) < 1e-13);
  }
  SUBCASE("fractional Laplacian powers compose to the identity") {
    Field a = fractional_laplacian(fractional_laplacian(f, 2.0), -2.0);
    CHECK(max_abs(a - f) <= 1e-10 * max_abs(f));
    CHECK(max_abs(fractional_laplacian(f, 0.0) - f) <= 1e-14 * max_abs(f));
    Field m = fractional_laplacian(single_mode(g, 0, 5), 0.75);
    const std::size_t idx = static_cast<std::size_t>(g.index_of_mode(5)) * 32;
    CHECK(std::abs(m[idx] - Complex(std::pow(5.0, 0.75), 0.0)) < 1e-13);
  }
  SUBCASE("besov boundedness of |xi|^gamma with the shifted regularity") {
    const double gamma = 1.0;
    SpaceParams src = SpaceParams::physical({2.0, 2.0}, {0.5, 0.5}, 2.0, 0.4);
    SpaceParams dst = src.shifted(-gamma);
    double lo = kInf, hi = 0.0;
    for (int l = part.l_min(); l <= part.l_max(); ++l) {
      Field blk = random_block_field(part, l, rng);
      const double denom = besov_mixed_morrey_norm(blk, src, part).value;
      if (denom <= 0.0) continue;
      Field out = to_physical(fractional_laplacian(to_spectral(blk), gamma));
      const double r = besov_mixed_morrey_norm(out, dst, part).value / denom;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    CHECK(hi / lo < 10.0);
  }
}

TEST_CASE("nonlinear term") {
  Grid g = make_grid(2, 32, 2.0 * kPi);
  DyadicPartition part = DyadicPartition::build(g);
  SplitMix64 rng(5);

  SUBCASE("bilinearity at zero") {
    VectorField z = VectorField::zeros(g, Rep::spectral);
    VectorField u = random_divergence_free_field(part, rng);
    CHECK(max_abs(nonlinear_term(z, u)) == 0.0);
  }
  SUBCASE("Taylor-Green advection is a pure gradient") {
    VectorField u = taylor_green(g);
    // div(u (x) u) itself is the gradient field (sin 2x, sin 2y)/2.
    const VectorField up = to_physical(u);
    std::vector<Complex> t11(g.total()), t12(g.total());
    for (std::size_t i = 0; i < g.total(); ++i) {
      t11[i] = up[0][i] * up[0][i];
      t12[i] = up[0][i] * up[1][i];
    }
    VectorField row1({dealias(Field(g, Rep::physical, std::move(t11))),
                      dealias(Field(g, Rep::physical, std::move(t12)))});
    Field div1 = to_physical(divergence(row1));
    for (std::size_t i = 0; i < g.total(); i += 7) {
      const auto x = coordinates(g, i);
      CHECK(std::abs(div1[i] - Complex(0.5 * std::sin(2.0 * x[0]), 0.0)) < 1e-12);
    }
    CHECK(max_abs(nonlinear_term(u, u)) <= 1e-10);
  }
  SUBCASE("output is divergence-free and mean-zero") {
    VectorField u = random_divergence_free_field(part, rng);
    VectorField v = random_divergence_free_field(part, rng);
    VectorField out = nonlinear_term(u, v);
    CHECK(max_divergence(out) <= 1e-12 * std::max(1.0, max_abs(out)));
    CHECK(std::abs(out[0][0]) + std::abs(out[1][0]) == 0.0);
  }
  SUBCASE("band violation is rejected") {
    VectorField bad({single_mode(g, 14, 0), Field::zeros(g, Rep::spectral)});
    CHECK_THROWS_AS((void)nonlinear_term(bad, bad), std::invalid_argument);
  }
}

TEST_CASE("periodic convolution matches the direct sum") {
  Grid g = make_grid(1, 8, 2.0);
  SplitMix64 rng(6);
  std::vector<Complex> fa(8), ga(8);
  for (auto& v : fa) v = Complex(rng.gaussian(), rng.gaussian());
  for (auto& v : ga) v = Complex(rng.gaussian(), rng.gaussian());
  Field f(g, Rep::physical, std::vector<Complex>(fa));
  Field w(g, Rep::physical, std::vector<Complex>(ga));
  Field conv = periodic_convolution(f, w);
  const double h = g.spacing();
  for (int i = 0; i < 8; ++i) {
    Complex acc(0.0, 0.0);
    for (int j = 0; j < 8; ++j)
      acc += fa[static_cast<std::size_t>(j)] *
             ga[static_cast<std::size_t>(((i - j) % 8 + 8) % 8)];
    CHECK(std::abs(conv[static_cast<std::size_t>(i)] - acc * h) < 1e-12);
  }
}

TEST_CASE("Duhamel integrator") {
  Grid g = make_grid(2, 32, 2.0 * kPi);
  DyadicPartition part = DyadicPartition::build(g);
  SplitMix64 rng(7);
  const double nu = 0.8;

  SUBCASE("constant single-mode forcing has a closed form") {
    // Divergence-free forcing at mode (3, 4): direction orthogonal to xi.
    std::vector<Complex> c1(g.total()), c2(g.total());
    const std::size_t idx = static_cast<std::size_t>(g.index_of_mode(3)) +
                            static_cast<std::size_t>(g.index_of_mode(4)) * 32;
    c1[idx] = Complex(4.0, 0.0);
    c2[idx] = Complex(-3.0, 0.0);
    VectorField gvec({Field(g, Rep::spectral, std::move(c1)),
                      Field(g, Rep::spectral, std::move(c2))});
    const int steps = 16;
    const double horizon = 0.5;
    Trajectory force(horizon, std::vector<VectorField>(steps + 1, gvec));
    Trajectory a = duhamel_integral(force, nu);
    const double xi2 = 25.0;
    for (int m = 0; m <= steps; ++m) {
      const double t = horizon * m / steps;
      const double expected = (1.0 - std::exp(-nu * t * xi2)) / (nu * xi2);
      CHECK(std::abs(a.state(m)[0][idx] - Complex(4.0 * expected, 0.0)) <= 1e-12);
      CHECK(std::abs(a.state(m)[1][idx] - Complex(-3.0 * expected, 0.0)) <= 1e-12);
    }
  }
  SUBCASE("bilinear operator: zero input, start at zero, divergence-free states") {
    Trajectory z = Trajectory::zeros(g, 1.0, 8);
    CHECK(max_abs(bilinear_B(z, z, nu)) == 0.0);

    VectorField u0 = random_divergence_free_field(part, rng);
    VectorField v0 = random_divergence_free_field(part, rng);
    Trajectory u = heat_trajectory(u0, nu, 1.0, 8);
    Trajectory v = heat_trajectory(v0, nu, 1.0, 8);
    Trajectory b = bilinear_B(u, v, nu);
    CHECK(max_abs(b.state(0)) == 0.0);
    for (int m = 0; m <= b.steps(); ++m)
      CHECK(max_divergence(b.state(m)) <= 1e-12 * std::max(1.0, max_abs(b.state(m))));
  }
  SUBCASE("bilinearity: cross terms from the parallelogram identity") {
    VectorField u0 = 0.1 * random_divergence_free_field(part, rng);
    VectorField v0 = 0.1 * random_divergence_free_field(part, rng);
    Trajectory u = heat_trajectory(u0, nu, 1.0, 8);
    Trajectory v = heat_trajectory(v0, nu, 1.0, 8);
    Trajectory lhs = bilinear_B(u, v, nu) + bilinear_B(v, u, nu);
    Trajectory rhs = bilinear_B(u + v, u + v, nu) - bilinear_B(u, u, nu) - bilinear_B(v, v, nu);
    CHECK(max_abs(lhs - rhs) <= 1e-10 * std::max(1.0, max_abs(lhs)));
  }
  SUBCASE("mismatched discretizations are rejected") {
    Trajectory a = Trajectory::zeros(g, 1.0, 8);
    Trajectory b = Trajectory::zeros(g, 1.0, 16);
    CHECK_THROWS_AS((void)bilinear_B(a, b, nu), std::invalid_argument);
  }
}
