#include <doctest.h>

#include <cmath>

#include "maglab/error.hpp"
#include "maglab/generators.hpp"
#include "maglab/negative_type.hpp"
#include "support.hpp"

using namespace maglab;
using testing_support::to_matrix;
using testing_support::to_table;

namespace {

FiniteMetricSpace k32(double r) {
  SpaceSpec s;
  s.family = Family::CompleteBipartite;
  s.params = {{"m", 3}, {"n", 2}, {"r", r}};
  return generate(s);
}

FiniteMetricSpace random_four_point(CounterRng& rng) {
  // Any distances in [1, 2] satisfy the triangle inequality.
  Matrix d = Matrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) d(i, j) = d(j, i) = rng.uniform(1.0, 2.0);
  return FiniteMetricSpace(d);
}

}  // namespace

TEST_CASE("negative type agrees with the projected distance form") {
  CounterRng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto space = random_four_point(rng);
    const auto r = negative_type_test(space);
    CHECK(r.negative_type);
    CHECK(oracle::sum_zero_form_max(to_table(space.dist())) <= 1e-9);
  }
  const auto bad = negative_type_test(k32(1.0));
  CHECK_FALSE(bad.negative_type);
  CHECK(oracle::sum_zero_form_max(to_table(k32(1.0).dist())) > 1e-3);
}

TEST_CASE("witness of a failure") {
  const auto space = k32(1.0);
  const auto r = negative_type_test(space);
  REQUIRE(r.witness);
  const Vector& x = *r.witness;
  CHECK(std::abs(x.sum()) < 1e-12);
  const double form = x.dot(space.dist() * x);
  CHECK(form > 0.0);
  CHECK(form == doctest::Approx(r.witness_value));
  CHECK(r.gram_lambda_min < -r.tolerance_used);

  // Basepoint choice does not change the verdict.
  for (std::size_t b = 0; b < space.size(); ++b) CHECK_FALSE(negative_type_test(space, b).negative_type);
  CHECK_THROWS_AS(negative_type_test(space, 5), Error);
}

TEST_CASE("generated corpora have negative type") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SpaceSpec u;
    u.family = Family::UltrametricTree;
    u.params = {{"n", 10}};
    u.seed = seed;
    CHECK(negative_type_test(generate(u)).negative_type);

    SpaceSpec w;
    w.family = Family::WeightedTree;
    w.params = {{"n", 10}};
    w.seed = seed;
    CHECK(negative_type_test(generate(w)).negative_type);

    for (double p : {0.5, 1.0, 1.5, 2.0}) {
      SpaceSpec c;
      c.family = Family::PointCloudLp;
      c.params = {{"n", 10}, {"dim", 3}, {"p", p}};
      c.seed = seed;
      CHECK(negative_type_test(generate(c)).negative_type);
    }
  }
  SpaceSpec sphere;
  sphere.family = Family::SphereFibonacciNet;
  sphere.params = {{"n", 40}};
  CHECK(negative_type_test(generate(sphere)).negative_type);
  SpaceSpec disk;
  disk.family = Family::HyperbolicDiskNet;
  disk.params = {{"radius", 2}, {"rings", 3}, {"sectors", 6}};
  CHECK(negative_type_test(generate(disk)).negative_type);
}

TEST_CASE("stability scans") {
  const auto one = stability_scan(FiniteMetricSpace(Matrix::Zero(1, 1)));
  CHECK(one.classification == Stability::StablyPositiveDefinite);
  CHECK_FALSE(one.first_failing_scale);

  SpaceSpec g;
  g.family = Family::GridNet;
  g.params = {{"n", 2}, {"p", 2}, {"m", 4}};
  CHECK(stability_scan(generate(g)).classification == Stability::StablyPositiveDefinite);

  const auto k = stability_scan(k32(1.0));
  CHECK(k.classification == Stability::NotStablyPD);
  REQUIRE(k.first_failing_scale);
  CHECK(*k.first_failing_scale < std::log(std::sqrt(2.0)));
  for (const auto& rec : k.records) {
    CHECK((rec.lambda_min < -rec.tolerance) == (rec.t < std::log(std::sqrt(2.0))));
  }

  const auto scales = default_stability_scales();
  REQUIRE(scales.size() == 15);
  CHECK(scales.front() == std::ldexp(1.0, -10));
  CHECK(scales.back() == 16.0);
  for (std::size_t i = 1; i < k.records.size(); ++i) CHECK(k.records[i - 1].t < k.records[i].t);
}
