#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "maglab/error.hpp"
#include "maglab/generators.hpp"
#include "maglab/magnitude.hpp"
#include "support.hpp"

using namespace maglab;
using testing_support::line_space;
using testing_support::to_matrix;

namespace {

FiniteMetricSpace two_points(double d) {
  Matrix m(2, 2);
  m << 0, d, d, 0;
  return FiniteMetricSpace(m);
}

FiniteMetricSpace k32(double r) {
  SpaceSpec s;
  s.family = Family::CompleteBipartite;
  s.params = {{"m", 3}, {"n", 2}, {"r", r}};
  return generate(s);
}

FiniteMetricSpace singleton() { return FiniteMetricSpace(Matrix::Zero(1, 1)); }

}  // namespace

TEST_CASE("similarity matrix") {
  CHECK(similarity(singleton()).z(0, 0) == 1.0);
  const Matrix z = similarity(two_points(0.7)).z;
  CHECK(z(0, 0) == 1.0);
  CHECK(z(0, 1) == doctest::Approx(std::exp(-0.7)));
}

TEST_CASE("spectrum diagnostics") {
  const auto one = spectrum_diagnostics(singleton());
  CHECK(one.lambda_min == 1.0);
  CHECK(one.lambda_max == 1.0);
  CHECK(one.verdict == Definiteness::PositiveDefinite);

  const auto low = spectrum_diagnostics(k32(0.3));
  CHECK(low.verdict == Definiteness::Indefinite);
  CHECK(low.lambda_min < 0.0);
  CHECK(low.lambda_min == doctest::Approx(oracle::jacobi_eigenvalues(oracle::similarity(testing_support::to_table(k32(0.3).dist())))[0]));
  CHECK(spectrum_diagnostics(k32(0.5)).verdict == Definiteness::PositiveDefinite);

  CHECK(classify(1e-12, 1.0) == Definiteness::PositiveSemidefinite);
  CHECK(classify(-1e-12, 1.0) == Definiteness::PositiveSemidefinite);
  CHECK(classify(-1e-8, 5.0) == Definiteness::Indefinite);
  CHECK(psd_tolerance(0.5) == 1e-9);
  CHECK(psd_tolerance(5.0) == doctest::Approx(5e-9));
}

TEST_CASE("two-point magnitude") {
  for (double d : {0.1, 1.0, 10.0}) {
    const auto r = weighting(two_points(d));
    CHECK(r.magnitude == doctest::Approx(2.0 / (1.0 + std::exp(-d))).epsilon(1e-14));
    CHECK(r.weighting(0) == doctest::Approx(1.0 / (1.0 + std::exp(-d))));
    CHECK(r.positively_weighted);
  }
  CHECK(magnitude(singleton()) == 1.0);
}

TEST_CASE("magnitude against elimination and the line formula") {
  CounterRng rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(12));
    const auto x = testing_support::random_line_points(rng, n, 6.0);
    const double m = magnitude(line_space(x));
    CHECK(m == doctest::Approx(oracle::line_magnitude(x)).epsilon(1e-11));
    CHECK(m == doctest::Approx(oracle::magnitude(oracle::line_distances(x))).epsilon(1e-11));
  }
  for (int trial = 0; trial < 30; ++trial) {
    const auto d = testing_support::random_euclidean_distances(rng, 3 + static_cast<int>(rng.below(10)), 3, 4.0);
    CHECK(magnitude(FiniteMetricSpace(to_matrix(d))) == doctest::Approx(oracle::magnitude(d)).epsilon(1e-10));
  }
}

TEST_CASE("indefinite spaces refuse a magnitude") {
  try {
    weighting(k32(0.3));
    FAIL("expected NotPositiveDefiniteError");
  } catch (const NotPositiveDefiniteError& e) {
    CHECK(e.kind() == ErrorKind::NotPositiveDefinite);
    CHECK(e.diagnostics().lambda_min < 0.0);
    CHECK(std::string(e.what()).find("lambda_min") != std::string::npos);
  }
}

TEST_CASE("homogeneous spaces have constant weightings") {
  SpaceSpec s;
  s.family = Family::CircleNet;
  s.params = {{"n", 100}};
  const auto r = weighting(generate(s));
  const double mean = r.weighting.mean();
  CHECK((r.weighting.array() - mean).abs().maxCoeff() < 1e-10);
  CHECK(r.residual < 1e-12);
}

TEST_CASE("l1 products multiply magnitudes") {
  CounterRng rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    const auto xa = testing_support::random_line_points(rng, 4, 3.0, 0.1);
    const auto xb = testing_support::random_line_points(rng, 5, 3.0, 0.1);
    const auto prod = lp_product(line_space(xa), line_space(xb), 1.0);
    CHECK(magnitude(prod) == doctest::Approx(oracle::line_magnitude(xa) * oracle::line_magnitude(xb)).epsilon(1e-10));
  }
}

TEST_CASE("rayleigh quotient") {
  CounterRng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const auto space = FiniteMetricSpace(to_matrix(testing_support::random_euclidean_distances(rng, 6, 2, 3.0)));
    const auto w = weighting(space);
    CHECK(rayleigh(space, w.weighting) == doctest::Approx(w.magnitude).epsilon(1e-10));
    Vector point = Vector::Zero(6);
    point(2) = 1.0;
    CHECK(rayleigh(space, point) == doctest::Approx(1.0));
    for (int k = 0; k < 100; ++k) {
      Vector mu(6);
      for (int i = 0; i < 6; ++i) mu(i) = rng.uniform(-1.0, 1.0);
      CHECK(rayleigh(space, mu) <= w.magnitude + 1e-10);
    }
  }
  // K_{3,2} at r = 0.3 has a null-ish direction: pick the eigenvector of the
  // smallest eigenvalue and shift it onto zero of the quadratic form.
  const auto bad = k32(0.3);
  Eigen::SelfAdjointEigenSolver<Matrix> es(similarity(bad).z);
  const Vector lo = es.eigenvectors().col(0), hi = es.eigenvectors().col(4);
  const double a = es.eigenvalues()(0), b = es.eigenvalues()(4);
  const Vector null_mu = std::sqrt(b) * lo + std::sqrt(-a) * hi;
  try {
    rayleigh(bad, null_mu);
    FAIL("expected DegenerateQuadraticForm");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateQuadraticForm);
  }
}

TEST_CASE("scale sweeps") {
  const double grid[] = {3.0, 1.0, 2.0};
  const auto sweep = scale_sweep(two_points(1.0), grid);
  REQUIRE(sweep.records.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(sweep.records[i].t == static_cast<double>(i + 1));
    CHECK(*sweep.records[i].magnitude == doctest::Approx(2.0 / (1.0 + std::exp(-(i + 1.0)))));
  }
  CHECK(*sweep.records[0].magnitude < *sweep.records[1].magnitude);
  CHECK(*sweep.records[1].magnitude < *sweep.records[2].magnitude);

  const double kgrid[] = {0.25, 1.0};
  const auto ks = scale_sweep(k32(1.0), kgrid, true);
  CHECK(ks.records[0].verdict == Definiteness::Indefinite);
  CHECK_FALSE(ks.records[0].magnitude);
  CHECK_FALSE(ks.records[0].failure.empty());
  CHECK(ks.records[1].verdict == Definiteness::PositiveDefinite);
  CHECK(ks.records[1].magnitude);
  CHECK(ks.records[1].diversity);

  const double one[] = {1.0};
  const auto space = FiniteMetricSpace(to_matrix(oracle::line_distances({0, 0.3, 1.7})));
  CHECK(*scale_sweep(space, one).records[0].magnitude == magnitude(space));
}

TEST_CASE("dimension estimates") {
  const double far[] = {100, 200, 400, 700, 1000};
  const auto flat = magnitude_dimension_estimate(scale_sweep(two_points(1.0), far), 100, 1000);
  CHECK(std::abs(flat.slope) < 0.01);

  const double few[] = {1.0, 2.0};
  CHECK_THROWS_AS(magnitude_dimension_estimate(scale_sweep(two_points(1.0), few), 0.5, 3), Error);

  // Interval net of 2001 points (Lanczos path): the slope equals the OLS
  // slope of the exact values 1 + 2000 tanh(t / 4000).
  SpaceSpec s;
  s.family = Family::IntervalNet;
  s.params = {{"length", 1}, {"n", 2001}};
  const double ts[] = {8, 16, 32};
  const auto sweep = scale_sweep(generate(s), ts);
  std::vector<double> lx, ly;
  for (double t : ts) {
    std::vector<double> pts(2001);
    for (int i = 0; i < 2001; ++i) pts[i] = t * i / 2000.0;
    lx.push_back(std::log(t));
    ly.push_back(std::log(oracle::line_magnitude(pts)));
  }
  const double mx = (lx[0] + lx[1] + lx[2]) / 3, my = (ly[0] + ly[1] + ly[2]) / 3;
  double sxy = 0, sxx = 0;
  for (int i = 0; i < 3; ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  const auto est = magnitude_dimension_estimate(sweep, 8, 32);
  CHECK(est.records_used == 3);
  CHECK(est.slope == doctest::Approx(sxy / sxx).epsilon(1e-9));
  CHECK(est.slope == doctest::Approx(0.884).epsilon(1e-3));
}

TEST_CASE("large spaces use Lanczos and agree with the dense solver") {
  SpaceSpec s;
  s.family = Family::PointCloudLp;
  s.params = {{"n", 2100}, {"dim", 2}, {"extent", 20}, {"p", 2}};
  s.seed = 1;
  const auto space = generate(s);
  const auto diag = spectrum_diagnostics(space);
  CHECK(diag.method == "lanczos");
  Eigen::SelfAdjointEigenSolver<Matrix> dense(similarity(space).z, Eigen::EigenvaluesOnly);
  CHECK(diag.lambda_max == doctest::Approx(dense.eigenvalues()(2099)).epsilon(1e-8));
  CHECK(diag.lambda_min == doctest::Approx(dense.eigenvalues()(0)).epsilon(1e-3));
  CHECK(diag.verdict == Definiteness::PositiveDefinite);
}
