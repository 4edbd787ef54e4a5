#include <doctest.h>

#include <cmath>

#include "anisoflow/lab.hpp"
#include "anisoflow/norms.hpp"
#include "anisoflow/serialize.hpp"

using namespace anisoflow;

TEST_CASE("random block fields are real, annulus-supported and nonzero") {
  Grid g = make_grid(2, 32, 2.0 * kPi);
  DyadicPartition part = DyadicPartition::build(g);
  SplitMix64 rng(1);
  for (int l = part.l_min(); l <= part.l_max(); ++l) {
    Field f = random_block_field(part, l, rng);
    CHECK(max_abs(f) > 0.0);
    double im = 0.0;
    for (const auto& v : f.samples()) im = std::max(im, std::abs(v.imag()));
    CHECK(im <= 1e-12 * max_abs(f));
    Field fs = to_spectral(f);
    auto table = part.phi_table(l);
    for (std::size_t i = 0; i < fs.size(); ++i)
      if (table[i] <= 1e-14) CHECK(std::abs(fs[i]) <= 1e-13 * max_abs(f));
  }
}

TEST_CASE("Bernstein checks") {
  Grid g = make_grid(2, 32, 2.0 * kPi);
  DyadicPartition part = DyadicPartition::build(g);
  CheckOptions opts;
  opts.samples = 8;
  opts.seed = 3;

  SUBCASE("physical flavor passes with a modest spread") {
    auto rep = check_bernstein_physical(part, std::vector<double>{2.0, 2.0},
                                        std::vector<double>{0.5, 0.5}, opts);
    CHECK(rep.pass);
    CHECK(rep.fitted_C > 0.0);
    CHECK(rep.spread >= 1.0);
    CHECK(rep.per_scale_ratios.size() == static_cast<std::size_t>(part.num_scales()));
  }
  SUBCASE("classical specialization q = 1, lambda = 0 on the Fourier side is exact") {
    // The exponent vanishes and M_{1,0} is L^1, so the ratio is exactly 1.
    auto rep = check_bernstein_fourier_l1(part, std::vector<double>{1.0, 1.0},
                                          std::vector<double>{0.0, 0.0}, opts);
    CHECK(rep.fitted_C == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.spread == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("fourier Morrey-to-Morrey item validates its hypotheses") {
    CHECK_THROWS_WITH_AS(
        (void)check_bernstein_fourier_morrey(part, std::vector<double>{2.0, 2.0},
                                             std::vector<double>{0.5, 0.5},
                                             std::vector<double>{2.0, 2.0},
                                             std::vector<double>{0.5, 0.5}, opts),
        "bernstein-fourier-morrey: requires q_i < r_i", std::invalid_argument);
    auto rep = check_bernstein_fourier_morrey(part, std::vector<double>{2.0, 2.0},
                                              std::vector<double>{0.5, 0.5},
                                              std::vector<double>{4.0, 4.0},
                                              std::vector<double>{0.5, 0.5}, opts);
    CHECK(rep.pass);
  }
  SUBCASE("exponent-shifted control shows a geometric trend") {
    CheckOptions control = opts;
    control.exponent_shift = 0.5;
    auto rep = check_bernstein_physical(part, std::vector<double>{2.0, 2.0},
                                        std::vector<double>{0.5, 0.5}, control);
    CHECK(control_failed(rep));
    auto base = check_bernstein_physical(part, std::vector<double>{2.0, 2.0},
                                         std::vector<double>{0.5, 0.5}, opts);
    CHECK_FALSE(control_failed(base));
  }
}

TEST_CASE("embedding checks") {
  Grid g = make_grid(2, 32, 2.0 * kPi);
  DyadicPartition part = DyadicPartition::build(g);
  CheckOptions opts;
  opts.samples = 6;
  opts.seed = 5;

  SUBCASE("r-monotonicity is a hard inequality") {
    auto rep = check_r_monotonicity(SpaceFlavor::physical_besov, part,
                                    std::vector<double>{2.0, 2.0},
                                    std::vector<double>{0.5, 0.5}, 0.3, 1.0, kInf, opts);
    CHECK(rep.pass);
    CHECK(rep.fitted_C <= 1.0 + 1e-9);
    auto repf = check_r_monotonicity(SpaceFlavor::fourier_besov, part,
                                     std::vector<double>{2.0, 2.0},
                                     std::vector<double>{0.5, 0.5}, 0.3, 2.0, 4.0, opts);
    CHECK(repf.pass);
  }
  SUBCASE("parameter embedding validates and passes") {
    EmbeddingSpec spec;
    spec.family = EmbeddingFamily::besov_parameter;
    spec.q = {2.0, 2.0};
    spec.lambda = {0.5, 0.5};
    spec.r_vec = {4.0, 4.0};
    spec.mu = {0.0, 0.0};
    spec.a = 2.0;
    spec.reg = 0.3;
    auto rep = check_embeddings(spec, part, opts);
    CHECK(rep.pass);

    spec.mu = {0.5, 0.5};  // breaks (1-lambda)/q == (1-mu)/r
    CHECK_THROWS_AS((void)check_embeddings(spec, part, opts), std::invalid_argument);
  }
  SUBCASE("theta embedding needs theta in (0,1)") {
    EmbeddingSpec spec;
    spec.family = EmbeddingFamily::besov_theta;
    spec.q = {2.0, 2.0};
    spec.lambda = {0.5, 0.5};
    spec.theta = 1.0;
    CHECK_THROWS_AS((void)check_embeddings(spec, part, opts), std::invalid_argument);
    spec.theta = 0.5;
    CHECK(check_embeddings(spec, part, opts).pass);
  }
  SUBCASE("fb1 bridge has constant at most (L/2pi)^d = 1") {
    EmbeddingSpec spec;
    spec.family = EmbeddingFamily::fb1_to_besov_inf;
    spec.q = {2.0, 2.0};
    spec.lambda = {0.0, 0.0};
    spec.a = 2.0;
    spec.reg = 0.4;
    auto rep = check_embeddings(spec, part, opts);
    CHECK(rep.fitted_C <= 1.0 + 1e-9);
  }
}

TEST_CASE("sandwich check is stable across grid sizes") {
  CheckOptions opts;
  opts.samples = 5;
  opts.seed = 7;
  const std::vector<int> sizes{16, 32};
  auto reps = check_sandwich(std::vector<double>{2.0, 2.0}, std::vector<double>{0.5, 0.5},
                             sizes, 2.0 * kPi, opts);
  REQUIRE(reps.size() == 2);
  for (const auto& rep : reps) {
    CHECK(rep.pass);
    CHECK(rep.per_scale_ratios.size() == sizes.size());
  }
}

TEST_CASE("linear estimate slopes land in the lemma windows") {
  Grid g = make_grid(2, 16, 2.0 * kPi);
  DyadicPartition part = DyadicPartition::build(g);
  CheckOptions opts;
  opts.samples = 2;
  opts.seed = 11;
  const std::vector<double> nus{0.5, 1.0, 2.0};

  auto sup = check_linear_estimate(LinearEstimate::semigroup_sup, SpaceFlavor::physical_besov,
                                   part, std::vector<double>{2.0, 2.0},
                                   std::vector<double>{0.5, 0.5}, 2.0, nus, opts);
  REQUIRE(sup.slope.has_value());
  CHECK(*sup.slope >= -0.2);
  CHECK(*sup.slope <= 0.2);
  CHECK(sup.pass);

  auto integ = check_linear_estimate(LinearEstimate::semigroup_int, SpaceFlavor::physical_besov,
                                     part, std::vector<double>{2.0, 2.0},
                                     std::vector<double>{0.5, 0.5}, 2.0, nus, opts);
  REQUIRE(integ.slope.has_value());
  CHECK(*integ.slope >= -1.2);
  CHECK(*integ.slope <= -0.8);
  CHECK(integ.pass);
}

TEST_CASE("bilinear constant estimation produces a positive stable fit") {
  Grid g = make_grid(2, 16, 2.0 * kPi);
  DyadicPartition part = DyadicPartition::build(g);
  SpaceParams params = SpaceParams::critical(SpaceFlavor::physical_besov, {2.0, 2.0},
                                             {0.5, 0.5}, 2.0);
  CheckOptions opts;
  opts.samples = 3;
  opts.seed = 13;
  auto rep = estimate_bilinear_constant(params, part, 1.0, opts);
  CHECK(rep.fitted_C > 0.0);
  CHECK(rep.pass);
  CHECK(std::isfinite(rep.fitted_C));
}

TEST_CASE("reports are deterministic given a seed") {
  Grid g = make_grid(2, 16, 2.0 * kPi);
  DyadicPartition part = DyadicPartition::build(g);
  CheckOptions opts;
  opts.samples = 4;
  opts.seed = 99;
  auto a = check_bernstein_physical(part, std::vector<double>{2.0, 2.0},
                                    std::vector<double>{0.5, 0.5}, opts);
  auto b = check_bernstein_physical(part, std::vector<double>{2.0, 2.0},
                                    std::vector<double>{0.5, 0.5}, opts);
  CHECK(to_json(a) == to_json(b));
  opts.seed = 100;
  auto c = check_bernstein_physical(part, std::vector<double>{2.0, 2.0},
                                    std::vector<double>{0.5, 0.5}, opts);
  CHECK(to_json(a) != to_json(c));
}
