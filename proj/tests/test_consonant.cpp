#include <doctest.h>

#include <cmath>
#include <random>

#include "possfuse/consonant.hpp"
#include "possfuse/error.hpp"
#include "possfuse/fusion.hpp"
#include "support/generators.hpp"

using namespace possfuse;

namespace {

const Frame kTen(0.0, 10.0);
const Frame kSpeed(40.0, 100.0);

}  // namespace

TEST_CASE("consonant view rejects non-nested contours") {
  const FusionReport rw = combine(make_triangular(kSpeed, 70.0, 10.0),
                                  make_simple_support(kSpeed, {55.0, 62.0}, 0.3));
  CHECK_THROWS_AS(ConsonantView(rw.fused), UnsupportedShape);
  const auto flat = SampledCurve::sample(kTen, 65, [](double) { return 2.0; });
  CHECK_NOTHROW(ConsonantView(from_likelihood(LikelihoodCurve(flat))));
}

TEST_CASE("mass density over levels") {
  const ConsonantView t(make_triangular(kTen, 5.0, 5.0));
  const LevelMass m = mass_density_alpha(t, 0.5);
  CHECK(m.interval.lo == doctest::Approx(2.5));
  CHECK(m.interval.hi == doctest::Approx(7.5));
  CHECK(m.density == 1.0);

  // Midpoint integral of the density over (0, 1].
  double total = 0.0;
  for (int i = 0; i < 1000; ++i) total += mass_density_alpha(t, (i + 0.5) / 1000.0).density / 1000.0;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  // Mass per unit l on the left flank: d(alpha)/dl at l = 2, by central
  // differences on the cut endpoints (chain rule on the linear ramp).
  const double d_alpha = 1e-3;
  const double l_hi = mass_density_alpha(t, 0.4 + d_alpha).interval.lo;
  const double l_lo = mass_density_alpha(t, 0.4 - d_alpha).interval.lo;
  CHECK((2.0 * d_alpha) / (l_hi - l_lo) == doctest::Approx(0.2).epsilon(1e-9));
}

TEST_CASE("plausibility and belief of interval queries") {
  const PossFn tri = make_triangular(kTen, 5.0, 5.0);
  const ConsonantView t(tri);
  CHECK(plausibility(t, {3.3, 3.3}) == doctest::Approx(tri(3.3)));
  CHECK(plausibility(t, {0.0, 10.0}) == 1.0);
  CHECK(plausibility(t, {0.0, 2.0}) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK_THROWS_AS(plausibility(t, {-1.0, 2.0}), DomainError);

  CHECK(belief(t, {0.0, 10.0}) == 1.0);
  CHECK(belief(t, {2.5, 7.5}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(belief(t, {1.0, 2.0}) == 0.0);

  const ConsonantView w(make_simple_support(kSpeed, {55.0, 62.0}, 0.3));
  CHECK(plausibility(w, {60.0, 70.0}) == 1.0);
  CHECK(plausibility(w, {70.0, 80.0}) == 0.3);
  CHECK(belief(w, {50.0, 65.0}) == doctest::Approx(0.7));
  CHECK(belief(w, {56.0, 65.0}) == 0.0);
}

TEST_CASE("singleton plausibility equals the contour") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const PossFn p = gen::build(gen::random_family(rng, gen::random_kind(rng)));
    const ConsonantView v(p);
    for (int i = 0; i <= 400; ++i) {
      const double x = 20.0 * i / 400.0;
      CHECK(std::abs(plausibility(v, {x, x}) - p(x)) <= 1e-9);
    }
  }
}

TEST_CASE("discretize") {
  const ConsonantView t(make_triangular(kTen, 5.0, 5.0));
  const FiniteMass one = discretize(t, 1);
  REQUIRE(one.size() == 1);
  CHECK(one.focals()[0].interval.lo == doctest::Approx(2.5));
  CHECK(one.focals()[0].mass == 1.0);

  const FiniteMass two = discretize(t, 2);
  REQUIRE(two.size() == 2);
  CHECK(two.focals()[0].interval.lo == doctest::Approx(1.25));
  CHECK(two.focals()[0].interval.hi == doctest::Approx(8.75));
  CHECK(two.focals()[1].interval.lo == doctest::Approx(3.75));
  CHECK(two.focals()[1].interval.hi == doctest::Approx(6.25));
  CHECK(two.focals()[0].mass == 0.5);
  CHECK(two.focals()[1].mass == 0.5);

  CHECK_THROWS_AS(discretize(t, 0), ArgumentError);
}

TEST_CASE("discretized simple support recovers the two-focal mass") {
  const PossFn w = make_simple_support(kSpeed, {55.0, 62.0}, 0.3);
  const FiniteMass m = discretize(ConsonantView(w), 10);
  REQUIRE(m.size() == 2);
  CHECK(m.focals()[0].interval == Interval{40.0, 100.0});
  CHECK(m.focals()[0].mass == 0.3);
  CHECK(m.focals()[1].interval == Interval{55.0, 62.0});
  CHECK(m.focals()[1].mass == 1.0 - 0.3);

  const FiniteMass exact = simple_support_mass(w);
  REQUIRE(exact.size() == 2);
  CHECK(exact.focals()[0].mass == 1.0 - 0.3);
  CHECK(exact.total_mass() == 1.0);

  for (std::size_t n : {20u, 50u, 100u}) {
    const FiniteMass mn = discretize(ConsonantView(w), n);
    REQUIRE(mn.size() == 2);
    CHECK(std::abs(mn.focals()[0].mass - 0.3) <= 1e-15);
  }
}

TEST_CASE("discretize: total mass, nesting and plausibility convergence") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 12; ++trial) {
    const PossFn p = gen::build(gen::random_family(rng, gen::random_kind(rng)));
    const ConsonantView v(p);
    for (std::size_t n : {1u, 3u, 7u, 10u, 64u, 333u}) {
      const FiniteMass m = discretize(v, n);
      CHECK(m.total_mass() == 1.0);
      for (std::size_t i = 0; i + 1 < m.size(); ++i) {
        CHECK(m.focals()[i + 1].interval.within(m.focals()[i].interval));
      }
    }
    const std::size_t n = 400;
    const FiniteMass m = discretize(v, n);
    for (int q = 0; q < 20; ++q) {
      double a = 20.0 * u(rng);
      double b = 20.0 * u(rng);
      if (a > b) std::swap(a, b);
      const Interval query{a, b};
      CHECK(std::abs(m.plausibility(query) - plausibility(v, query)) <= 2.0 / n + 1e-6);
    }
  }
}
