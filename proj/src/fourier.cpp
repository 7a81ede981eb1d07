#include "maglab/fourier.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <complex>
#include <limits>

#include "maglab/error.hpp"
#include "maglab/parallel.hpp"

namespace maglab {
namespace {

constexpr double kTwoPi = 2.0 * M_PI;

struct Transform {
  std::vector<double> fine;    // step h
  std::vector<double> coarse;  // step 2h
};

// 2 * trapezoid of f(x) cos(2 pi x w) over [0, L] for every w, at step h and 2h.
Transform cosine_transform(const std::vector<double>& f, double h, const std::vector<double>& omega) {
  const std::size_t n = f.size() - 1;
  Transform out;
  out.fine.resize(omega.size());
  out.coarse.resize(omega.size());
  parallel_for(omega.size(), [&](std::size_t k) {
    const double theta = kTwoPi * h * omega[k];
    const std::complex<double> step(std::cos(theta), std::sin(theta));
    std::complex<double> rot(1.0, 0.0);
    double fine = 0.0, coarse = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      if (i % 1024 == 0) rot = std::polar(1.0, theta * static_cast<double>(i));
      const double end = (i == 0 || i == n) ? 0.5 : 1.0;
      const double term = f[i] * rot.real();
      fine += end * term;
      if (i % 2 == 0) coarse += end * term;
      rot *= step;
    }
    out.fine[k] = 2.0 * h * fine;
    out.coarse[k] = 4.0 * h * coarse;
  });
  return out;
}

std::vector<double> kernel_samples(double p, double h, std::size_t n) {
  std::vector<double> f(n + 1);
  for (std::size_t i = 0; i <= n; ++i) f[i] = std::exp(-std::pow(static_cast<double>(i) * h, p));
  return f;
}

void check_exponent(double p) {
  if (!(p > 0.0 && p <= 2.0)) throw Error(ErrorKind::InvalidParams, "exponent must lie in (0, 2]");
}

}  // namespace

std::vector<double> FrequencyGrid::samples() const {
  if (!(step > 0.0) || !(omega_max >= 0.0)) throw Error(ErrorKind::InvalidParams, "bad frequency grid");
  const auto count = static_cast<std::size_t>(std::floor(omega_max / step + 1e-9)) + 1;
  std::vector<double> w(count);
  for (std::size_t k = 0; k < count; ++k) w[k] = static_cast<double>(k) * step;
  return w;
}

double stretched_exponential_tail(double p, double length) {
  check_exponent(p);
  if (!(length >= 0.0)) throw Error(ErrorKind::InvalidParams, "length must be nonnegative");
  return boost::math::tgamma(1.0 / p, std::pow(length, p)) / p;
}

FourierReport gamma_hat_1d(double p, double length, int intervals, const FrequencyGrid& grid, double tail_tol) {
  check_exponent(p);
  if (!(length > 0.0) || intervals < 2) throw Error(ErrorKind::InvalidParams, "need L > 0 and N >= 2");
  if (intervals % 2) ++intervals;

  FourierReport report;
  report.p = p;
  report.tail_bound = 2.0 * stretched_exponential_tail(p, length);
  if (report.tail_bound > tail_tol)
    throw Error(ErrorKind::QuadratureDivergence,
                "truncated tail " + std::to_string(report.tail_bound) + " exceeds tolerance");

  const double h = length / intervals;
  report.omega = grid.samples();
  const Transform t = cosine_transform(kernel_samples(p, h, intervals), h, report.omega);
  report.values = t.fine;

  double diff = 0.0;
  for (std::size_t k = 0; k < t.fine.size(); ++k) diff = std::max(diff, std::abs(t.fine[k] - t.coarse[k]));
  report.error_estimate = report.tail_bound + diff;

  report.positive = std::all_of(report.values.begin(), report.values.end(), [](double v) { return v > 0.0; });
  report.radially_decreasing = true;
  for (std::size_t k = 0; k + 1 < report.values.size(); ++k)
    if (!(report.values[k + 1] < report.values[k])) report.radially_decreasing = false;

  report.fitted_c = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < report.values.size(); ++k)
    report.fitted_c = std::min(report.fitted_c, report.values[k] * std::pow(1.0 + report.omega[k], 1.0 + p));
  return report;
}

double bump_hat(double omega) {
  // The bump is smooth with compact support, so the trapezoid rule converges
  // faster than any power of the step.
  constexpr int kSamples = 8192;
  static const std::vector<double> bump = [] {
    std::vector<double> b(kSamples + 1, 0.0);
    for (int i = 0; i < kSamples; ++i) {
      const double x = static_cast<double>(i) / kSamples;
      b[i] = std::exp(1.0 / (x * x - 1.0));
    }
    return b;
  }();
  static const double mass = [] {
    double s = 0.5 * bump[0];
    for (int i = 1; i <= kSamples; ++i) s += bump[i];
    return s;
  }();
  const double theta = kTwoPi * omega / kSamples;
  double s = 0.5 * bump[0];
  for (int i = 1; i < kSamples; ++i) s += bump[i] * std::cos(theta * i);
  return s / mass;
}

UpperBoundReport fourier_upper_bound_1d(double ell, double p, double alpha, double radius) {
  if (!(p > 0.0)) throw Error(ErrorKind::InvalidParams, "p must be positive");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorKind::InvalidParams, "alpha must lie in (0, 1]");
  if (!(ell >= 0.0) || !(radius > ell) || !std::isfinite(radius))
    throw Error(ErrorKind::InvalidParams, "need 0 <= ell < radius");

  UpperBoundReport report;
  report.beta = alpha * std::min(1.0, p);
  report.mollifier_width = 0.5 * (radius - ell);
  const double e = report.mollifier_width;
  const double a = ell + e;

  // psi^ decays like bump_hat(e w) / w; beyond 40 / e it is negligible.
  const double omega_max = 40.0 / e;
  const double step = std::min(1.0 / (40.0 * a), 1.0 / (40.0 * e));
  const std::vector<double> omega = FrequencyGrid{omega_max, step}.samples();
  report.grid_points = omega.size();

  double length = 40.0;
  while (2.0 * stretched_exponential_tail(report.beta, length) > 1e-12 && length < 1e7) length *= 2.0;
  const double wanted = std::ceil(length * 20.0 * omega_max);
  const auto intervals = static_cast<std::size_t>(std::min(wanted, 16777216.0)) / 2 * 2;
  const double h = length / static_cast<double>(intervals);
  const Transform f = cosine_transform(kernel_samples(report.beta, h, intervals), h, omega);
  const double tail = 2.0 * stretched_exponential_tail(report.beta, length);

  bool found = false;
  double err_at_max = 0.0;
  for (std::size_t k = 0; k < omega.size(); ++k) {
    const double w = omega[k];
    const double fhat = f.fine[k];
    const double ferr = std::abs(f.fine[k] - f.coarse[k]) + tail;
    if (!(fhat > ferr)) continue;
    const double box = w == 0.0 ? 2.0 * a : std::sin(kTwoPi * a * w) / (M_PI * w);
    const double psi = box * bump_hat(e * w);
    const double ratio = psi / fhat;
    if (ratio > 0.0 && (!found || ratio > report.bound)) {
      found = true;
      report.bound = ratio;
      report.argmax_omega = w;
      err_at_max = std::abs(ratio) * ferr / fhat;
    }
  }
  if (!found) throw Error(ErrorKind::NegativeRatioOnly, "no positive ratio on the frequency grid");
  report.error_estimate = err_at_max;
  return report;
}

}  // namespace maglab
