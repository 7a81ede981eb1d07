#include <doctest.h>

#include <cmath>

#include "maglab/diversity.hpp"
#include "maglab/error.hpp"
#include "maglab/generators.hpp"
#include "support.hpp"

using namespace maglab;
using testing_support::line_space;
using testing_support::to_matrix;
using testing_support::to_table;

namespace {

// {0, +-e1, +-e2} in l1^2: a star whose centre weight (1 - 3q) / (1 + q),
// q = exp(-t), is negative for t < log 3.
FiniteMetricSpace cross(double t) {
  SpaceSpec s;
  s.family = Family::PointCloudLp;
  s.params = {{"p", 1}};
  s.coords = {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  s.scale = t;
  return generate(s);
}

void check_simplex(const DiversityReport& r) {
  CHECK(r.measure.minCoeff() >= 0.0);
  CHECK(r.measure.sum() == doctest::Approx(1.0).epsilon(1e-14));
  for (std::size_t i : r.support) CHECK(r.measure(static_cast<Eigen::Index>(i)) > kSupportThreshold);
}

}  // namespace

TEST_CASE("closed-form diversities") {
  const auto one = max_diversity(FiniteMetricSpace(Matrix::Zero(1, 1)));
  CHECK(one.diversity == 1.0);
  CHECK(one.measure(0) == 1.0);

  for (double d : {0.1, 1.0, 10.0}) {
    Matrix m(2, 2);
    m << 0, d, d, 0;
    const auto r = max_diversity(FiniteMetricSpace(m));
    CHECK(r.diversity == doctest::Approx(2.0 / (1.0 + std::exp(-d))).epsilon(1e-12));
    CHECK(r.measure(0) == doctest::Approx(0.5));
    CHECK(r.converged);
  }

  std::vector<double> x(10);
  for (int i = 0; i < 10; ++i) x[i] = i / 9.0;
  const auto line = line_space(x);
  CHECK(max_diversity(line).diversity == doctest::Approx(magnitude(line)).epsilon(1e-6));
}

TEST_CASE("diversity against support enumeration") {
  CounterRng rng(31337);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(7));
    const auto d = testing_support::random_euclidean_distances(rng, n, 2, rng.uniform(0.2, 4.0));
    const FiniteMetricSpace space(to_matrix(d));
    const auto r = max_diversity(space);
    const double expected = oracle::diversity_by_enumeration(d);
    CHECK(r.converged);
    CHECK(r.diversity == doctest::Approx(expected).epsilon(1e-7));
    CHECK(r.diversity <= expected * (1 + 1e-12));
    CHECK(r.upper_bound >= expected * (1 - 1e-12));
    check_simplex(r);
  }
  const auto c = cross(1.0);
  CHECK(max_diversity(c).diversity == doctest::Approx(oracle::diversity_by_enumeration(to_table(c.dist()))).epsilon(1e-8));
}

TEST_CASE("solver bookkeeping") {
  SpaceSpec s;
  s.family = Family::PointCloudLp;
  s.params = {{"n", 60}, {"dim", 2}, {"extent", 5}};
  s.seed = 4;
  const auto space = generate(s);

  DiversityOptions traced;
  traced.record_trace = true;
  traced.face_solve_interval = 0;
  const auto r = max_diversity(space, traced);
  REQUIRE(r.objective_trace.size() >= 2);
  for (std::size_t k = 1; k < r.objective_trace.size(); ++k)
    CHECK(r.objective_trace[k] <= r.objective_trace[k - 1] + 1e-15);
  CHECK(r.diversity == doctest::Approx(1.0 / r.objective));
  CHECK(r.fw_gap <= 1e-8 * r.objective);

  const auto fast = max_diversity(space);
  CHECK(fast.diversity == doctest::Approx(r.diversity).epsilon(1e-7));
  CHECK(fast.iterations <= r.iterations);

  const auto capped = max_diversity(space, 1e-14, 2);
  CHECK_FALSE(capped.converged);
  CHECK(capped.iterations == 2);
  CHECK(capped.upper_bound >= capped.diversity);
}

TEST_CASE("indefinite forms are refused") {
  SpaceSpec s;
  s.family = Family::CompleteBipartite;
  s.params = {{"m", 3}, {"n", 2}, {"r", 0.3}};
  try {
    max_diversity(generate(s));
    FAIL("expected IndefiniteForm");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IndefiniteForm);
  }
}

TEST_CASE("positive weighting") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SpaceSpec s;
    s.family = Family::UltrametricTree;
    s.params = {{"n", 12}};
    s.seed = seed;
    const auto v = is_positively_weighted(generate(s));
    CHECK(v.positively_weighted);
    CHECK(v.magnitude == doctest::Approx(v.diversity).epsilon(1e-7));
  }
  SpaceSpec interval;
  interval.family = Family::IntervalNet;
  interval.params = {{"length", 3}, {"n", 40}};
  CHECK(is_positively_weighted(generate(interval)).positively_weighted);

  const double q = std::exp(-1.0);
  const auto c = is_positively_weighted(cross(1.0));
  CHECK_FALSE(c.positively_weighted);
  CHECK(c.certificate == PositivityCertificate::WeightingSign);
  CHECK(c.min_weight == doctest::Approx((1 - 3 * q) / (1 + q)));
  CHECK(c.diversity < c.magnitude);
  CHECK(is_positively_weighted(cross(2.0)).positively_weighted);

  // Seeded search over random 5-point clouds in l1^2.
  std::optional<std::uint64_t> found;
  for (std::uint64_t seed = 0; seed < 2000 && !found; ++seed) {
    SpaceSpec s;
    s.family = Family::PointCloudLp;
    s.params = {{"n", 5}, {"dim", 2}, {"p", 1}, {"extent", 1}};
    s.seed = seed;
    if (weighting(generate(s)).weighting.minCoeff() < -1e-6) found = seed;
  }
  REQUIRE(found);
  SpaceSpec s;
  s.family = Family::PointCloudLp;
  s.params = {{"n", 5}, {"dim", 2}, {"p", 1}, {"extent", 1}};
  s.seed = *found;
  CHECK_FALSE(is_positively_weighted(generate(s)).positively_weighted);
}

TEST_CASE("diversity is bounded by the exponential of the diameter") {
  CHECK(diversity_diameter_check(FiniteMetricSpace(Matrix::Zero(1, 1))));
  for (double d : {0.01, 1.0, 5.0}) {
    Matrix m(2, 2);
    m << 0, d, d, 0;
    CHECK(diversity_diameter_check(FiniteMetricSpace(m)));
    CHECK(2.0 / (1.0 + std::exp(-d)) <= std::exp(d));
  }
  CounterRng rng(8);
  for (int trial = 0; trial < 20; ++trial)
    CHECK(diversity_diameter_check(
        FiniteMetricSpace(to_matrix(testing_support::random_euclidean_distances(rng, 8, 3, 0.5)))));
}

TEST_CASE("removing a point never increases diversity") {
  CounterRng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const auto space =
        FiniteMetricSpace(to_matrix(testing_support::random_euclidean_distances(rng, 7, 2, 2.0)));
    const double full = max_diversity(space).diversity;
    for (std::size_t i = 0; i < space.size(); ++i)
      CHECK(max_diversity(space.without_point(i)).diversity <= full + 1e-10);
  }
}
