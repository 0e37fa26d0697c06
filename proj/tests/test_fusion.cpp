#include <doctest.h>

#include <cmath>
#include <random>

#include "possfuse/consonant.hpp"
#include "possfuse/dempster.hpp"
#include "possfuse/error.hpp"
#include "possfuse/fusion.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace possfuse;

namespace {

const Frame kTen(0.0, 10.0);
const Frame kSpeed(40.0, 100.0);

PossFn vacuous(const Frame& f) {
  return from_likelihood(LikelihoodCurve(SampledCurve::sample(f, kDefaultGridSize, [](double) { return 1.0; })));
}

bool same_samples(const PossFn& a, const PossFn& b) {
  const auto x = a.curve().values();
  const auto y = b.curve().values();
  return std::equal(x.begin(), x.end(), y.begin(), y.end());
}

}  // namespace

TEST_CASE("vacuous evidence is the identity") {
  const PossFn p = make_triangular(kTen, 4.0, 3.0);
  const FusionReport r = combine(p, vacuous(kTen));
  CHECK(same_samples(r.fused, p));
  CHECK(r.norm == 1.0);
  REQUIRE(r.agreement_a);
  CHECK(*r.agreement_a == 1.0);
  CHECK(*r.contradiction_k == 0.0);
  CHECK(*r.support_against_mle == 0.0);
}

TEST_CASE("identical sources do not conflict") {
  const PossFn p = make_triangular(kTen, 5.0, 5.0);
  const FusionReport r = combine(p, p);
  CHECK(r.norm == 1.0);
  CHECK(*r.agreement_a == 1.0);
  CHECK(r.mle_x == 5.0);
  CHECK_FALSE(r.mle_tied);
  for (std::size_t i = 0; i < p.curve().size(); ++i) {
    CHECK(r.fused.curve()[i] == p.curve()[i] * p.curve()[i]);
  }
}

TEST_CASE("offset triangulars: closed form") {
  // Level-set reference: a = integral over alpha of pl2(cut1(alpha)).
  const oracle::Analytic t4{oracle::Family::Triangular, 4.0, 4.0, 0.0, 10.0};
  const oracle::Analytic t6{oracle::Family::Triangular, 6.0, 4.0, 0.0, 10.0};
  const double ref_a = oracle::level_agreement(t4, t6);
  CHECK(ref_a == doctest::Approx(0.875).epsilon(1e-9));

  const FusionReport r = combine(make_triangular(kTen, 4.0, 4.0), make_triangular(kTen, 6.0, 4.0));
  CHECK(std::abs(r.norm - 0.5625) <= 1e-4);
  CHECK(std::abs(r.mle_x - 5.0) <= 1e-3);
  REQUIRE(r.agreement_a);
  CHECK(std::abs(*r.agreement_a - 0.875) <= 1e-4);
  CHECK(std::abs(*r.support_against_mle - (1.0 - 0.5625 / 0.875)) <= 2e-3);
  CHECK(*r.contradiction_k == 1.0 - *r.agreement_a);
  REQUIRE(r.pairs.size() == 1);
  CHECK(r.pairs[0].agreement == r.agreement_a);
}

TEST_CASE("agreement edge cases") {
  const PossFn p = make_triangular(kTen, 4.0, 2.0);
  CHECK(agreement(p, p) == 1.0);
  CHECK(agreement(p, make_cosine_taper(kTen, 4.0, 3.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(agreement(make_triangular(kTen, 2.0, 1.5), make_triangular(kTen, 7.0, 2.0)) == 0.0);
  CHECK_THROWS_AS(agreement(p, make_triangular(Frame(0.0, 11.0), 4.0, 2.0)), ArgumentError);

  const FusionReport rw = combine(make_triangular(kSpeed, 70.0, 10.0),
                                  make_simple_support(kSpeed, {55.0, 62.0}, 0.3));
  CHECK_THROWS_AS(agreement(rw.fused, make_triangular(kSpeed, 70.0, 10.0)), UnsupportedShape);
}

TEST_CASE("agreement matches the level-set reference on random pairs") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 25; ++trial) {
    const gen::Pair pair = gen::random_pair(rng, 2.0);
    const PossFn p1 = gen::build(pair.first);
    const PossFn p2 = gen::build(pair.second);
    const double a = agreement(p1, p2);
    CHECK(std::abs(a - oracle::level_agreement(pair.first, pair.second)) <= 1e-4);
    CHECK(std::abs(a - agreement(p2, p1)) <= 1e-4);
  }
}

TEST_CASE("agreement against a simple support witness") {
  const PossFn radar = make_triangular(kSpeed, 70.0, 10.0);
  const PossFn witness = make_simple_support(kSpeed, {55.0, 62.0}, 0.3);
  // poss_r(62) = 1 - 8/10 = 0.2; a = 0.7 * 0.2 + 0.3.
  CHECK(agreement_vs_simple_support(radar, witness) == doctest::Approx(0.44).epsilon(1e-12));
  CHECK(agreement(witness, radar) == agreement_vs_simple_support(radar, witness));
  CHECK(agreement_vs_simple_support(radar, make_simple_support(kSpeed, {65.0, 80.0}, 0.3)) == 1.0);
  CHECK(agreement_vs_simple_support(radar, make_simple_support(kSpeed, {45.0, 50.0}, 0.999999)) ==
        doctest::Approx(1.0).epsilon(1e-5));
  CHECK_THROWS_AS(agreement_vs_simple_support(witness, radar), ArgumentError);

  // Same value from the discrete sum over the exact witness focals.
  const std::size_t n = 2000;
  const double discrete =
      discrete_agreement(discretize(ConsonantView(radar), n), simple_support_mass(witness));
  CHECK(std::abs(discrete - 0.44) <= 2.0 / n);

  const PossFn w2 = make_simple_support(kSpeed, {80.0, 90.0}, 0.4);
  CHECK(agreement(witness, w2) == doctest::Approx(1.0 - 0.7 * 0.6));
}

TEST_CASE("speeding scenario numbers") {
  const FusionReport r = combine(make_triangular(kSpeed, 70.0, 10.0),
                                 make_simple_support(kSpeed, {55.0, 62.0}, 0.3));
  CHECK(r.norm == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(*r.agreement_a == doctest::Approx(0.44).epsilon(1e-12));
  CHECK(r.mle_x == 70.0);
  CHECK(std::abs(*r.support_against_mle - (1.0 - 0.3 / 0.44)) <= 1e-9);
  CHECK(std::abs(*r.support_against_mle - 0.3182) <= 1e-3);

  const FusionReport agree = combine(make_triangular(kSpeed, 70.0, 10.0),
                                     make_simple_support(kSpeed, {65.0, 80.0}, 0.3));
  CHECK(*agree.agreement_a == 1.0);
  CHECK(*agree.support_against_mle == 0.0);
}

TEST_CASE("GENERAL operands: fusion proceeds, agreement is not computed") {
  const PossFn radar = make_triangular(kSpeed, 70.0, 10.0);
  const FusionReport rw = combine(radar, make_simple_support(kSpeed, {55.0, 62.0}, 0.3));
  const FusionReport again = combine(rw.fused, make_triangular(kSpeed, 68.0, 12.0));
  CHECK_FALSE(again.agreement_a);
  CHECK_FALSE(again.contradiction_k);
  CHECK_FALSE(again.support_against_mle);
  CHECK(again.norm > 0.0);
}

TEST_CASE("total conflict") {
  const PossFn a = make_triangular(kTen, 2.0, 1.5);
  const PossFn b = make_triangular(kTen, 7.0, 2.0);
  CHECK_THROWS_AS(combine(a, b), TotalConflict);
  const PossFn inputs[] = {a, vacuous(kTen), b, make_triangular(kTen, 5.0, 5.0)};
  try {
    chain_combine(inputs);
    FAIL("expected total conflict");
  } catch (const TotalConflict& e) {
    CHECK(e.prefix_length() == 3);
  }
}

TEST_CASE("commutativity and symmetric agreement") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 20; ++trial) {
    const gen::Pair pair = gen::random_pair(rng, 1.5);
    const PossFn p = gen::build(pair.first);
    const PossFn q = gen::build(pair.second);
    const FusionReport pq = combine(p, q);
    const FusionReport qp = combine(q, p);
    CHECK(same_samples(pq.fused, qp.fused));
    CHECK(std::abs(*pq.agreement_a - *qp.agreement_a) <= 1e-4);
    CHECK(*pq.agreement_a >= pq.norm - 1e-6);
    CHECK(*pq.support_against_mle >= -1e-9);
    CHECK(*pq.support_against_mle < 1.0);
    CHECK(std::abs(*pq.support_against_mle - (1.0 - pq.norm / *pq.agreement_a)) <= 1e-9);
    const auto v = pq.fused.curve().values();
    CHECK(std::abs(*std::max_element(v.begin(), v.end()) - 1.0) <= 1e-9);
  }
}

TEST_CASE("chain combination") {
  const PossFn p = make_triangular(kTen, 4.0, 4.0);
  const PossFn q = make_triangular(kTen, 6.0, 4.0);
  const PossFn single[] = {p};
  const FusionReport one = chain_combine(single);
  CHECK(same_samples(one.fused, p));
  CHECK(one.norm == 1.0);
  CHECK(*one.agreement_a == 1.0);

  const PossFn with_vacuous[] = {p, vacuous(kTen), q};
  const PossFn without[] = {p, q};
  CHECK(same_samples(chain_combine(with_vacuous).fused, chain_combine(without).fused));

  const PossFn triple[] = {p, q, make_triangular(kTen, 5.0, 4.0)};
  const FusionReport r = chain_combine(triple);
  CHECK(std::abs(r.mle_x - 5.0) <= 1e-3);
  REQUIRE(r.pairs.size() == 2);
  REQUIRE(r.agreement_a);
  CHECK(*r.agreement_a >= r.norm - 1e-6);

  // Regrouping earlier results gives identical samples.
  const FusionReport left = combine(combine(p, q).fused, triple[2]);
  const FusionReport right = combine(p, combine(q, triple[2]).fused);
  CHECK(same_samples(left.fused, r.fused));
  CHECK(same_samples(right.fused, r.fused));

  const PossFn empty[] = {p};
  CHECK_THROWS_AS(chain_combine(std::span<const PossFn>(empty, 0)), ArgumentError);
}

TEST_CASE("tied maxima are flagged") {
  const PossFn plateau = make_simple_support(kTen, {3.0, 5.0}, 0.2);
  const FusionReport r = combine(plateau, vacuous(kTen));
  CHECK(r.mle_tied);
  CHECK(r.mle_x == doctest::Approx(3.0).epsilon(1e-3));
}
