#include <doctest.h>

#include <cmath>
#include <vector>

#include "anisoflow/grid.hpp"
#include "anisoflow/rng.hpp"

using namespace anisoflow;

namespace {

Field random_physical(const Grid& g, SplitMix64& rng, bool real_valued) {
  std::vector<Complex> s(g.total());
  for (auto& v : s)
    v = real_valued ? Complex(rng.gaussian(), 0.0) : Complex(rng.gaussian(), rng.gaussian());
  return Field(g, Rep::physical, std::move(s));
}

// Brute-force DFT oracle, independent of the FFT path.
std::vector<Complex> dft_oracle(const Field& f) {
  const Grid& g = f.grid();
  const std::size_t total = g.total();
  std::vector<Complex> out(total);
  for (std::size_t ki = 0; ki < total; ++ki) {
    const auto k = mode_vector(g, ki);
    Complex acc(0.0, 0.0);
    for (std::size_t xi = 0; xi < total; ++xi) {
      const auto idx = decode_index(g, xi);
      double phase = 0.0;
      for (int ax = 0; ax < g.dim; ++ax)
        phase += 2.0 * kPi * k[static_cast<std::size_t>(ax)] *
                 idx[static_cast<std::size_t>(ax)] / g.n;
      acc += f[xi] * std::polar(1.0, -phase);
    }
    out[ki] = acc / static_cast<double>(total);
  }
  return out;
}

}  // namespace

TEST_CASE("make_grid validates its arguments") {
  Grid g = make_grid(2, 8, 2.0 * kPi);
  CHECK(g.total() == 64);
  CHECK(g.spacing() == doctest::Approx(2.0 * kPi / 8));
  CHECK(make_grid(3, 32, 2.0 * kPi).total() == 32768);

  CHECK_THROWS_AS(make_grid(2, 7, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(2, 6, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(0, 8, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(4, 8, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(2, 8, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(2, 8, -1.0), std::invalid_argument);
}

TEST_CASE("constant field transforms to a pure DC coefficient") {
  Grid g = make_grid(2, 8, 2.0 * kPi);
  const Complex c(1.25, -0.5);
  std::vector<Complex> s(g.total(), c);
  Field spec = forward_transform(Field(g, Rep::physical, std::move(s)));
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (i == 0)
      CHECK(std::abs(spec[i] - c) < 1e-14);
    else
      CHECK(std::abs(spec[i]) < 1e-14);
  }
  Field back = inverse_transform(Field::zeros(g, Rep::spectral) + spec);
  CHECK(std::abs(back[3] - c) < 1e-13);
}

TEST_CASE("a pure exponential mode produces a single unit coefficient") {
  Grid g = make_grid(2, 16, 4.0);
  const int k0[2] = {3, -5};
  std::vector<Complex> s(g.total());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto x = coordinates(g, i);
    s[i] = std::polar(1.0, g.xi_unit() * (k0[0] * x[0] + k0[1] * x[1]));
  }
  Field spec = forward_transform(Field(g, Rep::physical, std::move(s)));
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto k = mode_vector(g, i);
    if (k[0] == k0[0] && k[1] == k0[1])
      CHECK(std::abs(spec[i] - Complex(1.0, 0.0)) < 1e-13);
    else
      CHECK(std::abs(spec[i]) < 1e-13);
  }
}

TEST_CASE("forward transform matches the brute-force DFT and is Hermitian for real data") {
  SplitMix64 rng(7);
  for (int d = 1; d <= 2; ++d) {
    Grid g = make_grid(d, 8, 2.0 * kPi);
    Field f = random_physical(g, rng, /*real_valued=*/true);
    Field spec = forward_transform(f);
    auto oracle = dft_oracle(f);
    for (std::size_t i = 0; i < spec.size(); ++i)
      CHECK(std::abs(spec[i] - oracle[i]) < 1e-12);
    // Hermitian symmetry: coefficient at -k is the conjugate of that at k.
    for (std::size_t i = 0; i < spec.size(); ++i) {
      const auto k = mode_vector(g, i);
      std::size_t j = 0, stride = 1;
      bool representable = true;
      for (int ax = 0; ax < d; ++ax) {
        const int neg = -k[static_cast<std::size_t>(ax)];
        if (neg < -g.n / 2 || neg >= g.n / 2) {
          representable = false;
          break;
        }
        j += static_cast<std::size_t>(g.index_of_mode(neg)) * stride;
        stride *= static_cast<std::size_t>(g.n);
      }
      if (representable) CHECK(std::abs(spec[i] - std::conj(spec[j])) < 1e-12);
    }
  }
}

TEST_CASE("inverse transform matches the brute-force inverse sum") {
  SplitMix64 rng(11);
  Grid g = make_grid(2, 8, 2.0 * kPi);
  std::vector<Complex> c(g.total());
  for (auto& v : c) v = Complex(rng.gaussian(), rng.gaussian());
  Field spec(g, Rep::spectral, std::move(c));
  Field phys = inverse_transform(spec);
  for (std::size_t xi = 0; xi < g.total(); ++xi) {
    const auto idx = decode_index(g, xi);
    Complex acc(0.0, 0.0);
    for (std::size_t ki = 0; ki < g.total(); ++ki) {
      const auto k = mode_vector(g, ki);
      double phase = 0.0;
      for (int ax = 0; ax < 2; ++ax)
        phase += 2.0 * kPi * k[static_cast<std::size_t>(ax)] *
                 idx[static_cast<std::size_t>(ax)] / g.n;
      acc += spec[ki] * std::polar(1.0, phase);
    }
    CHECK(std::abs(phys[xi] - acc) < 1e-12);
  }
  SUBCASE("zero spectrum gives the zero field") {
    Field z = inverse_transform(Field::zeros(g, Rep::spectral));
    CHECK(max_abs(z) == 0.0);
  }
}

TEST_CASE("round-trip, Parseval and linearity") {
  SplitMix64 rng(3);
  for (int d : {1, 2, 3}) {
    const int n = d == 3 ? 8 : 16;
    Grid g = make_grid(d, n, d == 2 ? 1.0 : 2.0 * kPi);
    for (int rep = 0; rep < 25; ++rep) {
      Field f = random_physical(g, rng, /*real_valued=*/false);
      Field back = inverse_transform(forward_transform(f));
      double err = 0.0;
      for (std::size_t i = 0; i < f.size(); ++i) err = std::max(err, std::abs(back[i] - f[i]));
      CHECK(err / max_abs(f) <= 1e-12);

      // Parseval under the series normalization:
      // sum |f|^2 h^d = L^d sum |c|^2.
      Field spec = forward_transform(f);
      double phys_sq = 0.0, spec_sq = 0.0;
      for (const auto& v : f.samples()) phys_sq += std::norm(v);
      for (const auto& v : spec.samples()) spec_sq += std::norm(v);
      double vol = 1.0;
      for (int ax = 0; ax < d; ++ax) vol *= g.length;
      CHECK(phys_sq * g.cell_volume() ==
            doctest::Approx(vol * spec_sq).epsilon(1e-10));
    }
    // Linearity.
    Field f = random_physical(g, rng, false);
    Field h = random_physical(g, rng, false);
    const Complex a(1.5, -2.0), b(-0.25, 0.75);
    Field lhs = forward_transform(a * f + b * h);
    Field rhs = a * forward_transform(f) + b * forward_transform(h);
    CHECK(max_abs(lhs - rhs) <= 1e-12 * std::max(1.0, max_abs(rhs)));
  }
}

TEST_CASE("representation tags are enforced") {
  Grid g = make_grid(2, 8, 2.0 * kPi);
  Field phys = Field::zeros(g, Rep::physical);
  Field spec = Field::zeros(g, Rep::spectral);
  CHECK_THROWS_AS((void)forward_transform(spec), std::invalid_argument);
  CHECK_THROWS_AS((void)inverse_transform(phys), std::invalid_argument);
  CHECK_THROWS_AS((void)(phys + spec), std::invalid_argument);
}

TEST_CASE("dealiasing zeroes exactly the modes above n/3") {
  Grid g = make_grid(2, 16, 2.0 * kPi);
  std::vector<Complex> c(g.total());
  for (auto& v : c) v = Complex(1.0, 1.0);
  Field f = dealias(Field(g, Rep::spectral, std::move(c)));
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto k = mode_vector(g, i);
    const bool keep = 3 * std::abs(k[0]) <= g.n && 3 * std::abs(k[1]) <= g.n;
    CHECK((keep ? f[i] == Complex(1.0, 1.0) : f[i] == Complex(0.0, 0.0)));
  }
  CHECK(within_dealias_band(f));
  CHECK_FALSE(within_dealias_band(Field(g, Rep::spectral,
                                        std::vector<Complex>(g.total(), Complex(1.0, 0.0)))));
}

TEST_CASE("vector fields enforce shared grid and tag") {
  Grid g = make_grid(2, 8, 2.0 * kPi);
  CHECK_THROWS_AS(VectorField({Field::zeros(g, Rep::physical)}), std::invalid_argument);
  CHECK_THROWS_AS(VectorField({Field::zeros(g, Rep::physical), Field::zeros(g, Rep::spectral)}),
                  std::invalid_argument);
  VectorField u = VectorField::zeros(g, Rep::spectral);
  CHECK(u.dim() == 2);
  CHECK(u.rep() == Rep::spectral);
}
