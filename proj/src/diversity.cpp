#include "maglab/diversity.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "internal.hpp"

namespace maglab {
namespace {

// Faces larger than this are left to the Frank-Wolfe iteration alone.
constexpr Eigen::Index kMaxFaceSolve = 2500;

class SimplexQuadratic {
 public:
  SimplexQuadratic(const Matrix& zeta, const DiversityOptions& options)
      : zeta_(zeta), options_(options), n_(zeta.rows()) {
    mu_ = Vector::Constant(n_, 1.0 / static_cast<double>(n_));
    refresh();
  }

  DiversityReport run() {
    DiversityReport report;
    int it = 0;
    for (; it < options_.max_iters; ++it) {
      if (gap() <= options_.tol * q_) {
        report.converged = true;
        break;
      }
      const int interval = options_.face_solve_interval;
      if (interval > 0 && it % interval == 0 && try_face_solve()) {
        trace(report);
        continue;
      }
      step();
      if (it % 1000 == 999) refresh();
      trace(report);
    }
    refresh();
    if (!report.converged && gap() <= options_.tol * q_) report.converged = true;

    mu_ = mu_.cwiseMax(0.0);
    mu_ /= mu_.sum();
    refresh();

    report.iterations = it;
    report.objective = q_;
    report.fw_gap = gap();
    report.diversity = 1.0 / q_;
    report.upper_bound = q_ - report.fw_gap > 0.0 ? 1.0 / (q_ - report.fw_gap)
                                                  : std::numeric_limits<double>::infinity();
    report.measure = mu_;
    for (Eigen::Index i = 0; i < n_; ++i)
      if (mu_(i) > kSupportThreshold) report.support.push_back(static_cast<std::size_t>(i));
    return report;
  }

 private:
  // Frank-Wolfe duality gap of q(mu) = mu^T zeta mu with gradient 2 zeta mu.
  double gap() const { return 2.0 * (q_ - zeta_mu_.minCoeff()); }

  void refresh() {
    zeta_mu_ = zeta_ * mu_;
    q_ = mu_.dot(zeta_mu_);
  }

  void trace(DiversityReport& report) const {
    if (options_.record_trace) report.objective_trace.push_back(q_);
  }

  // One Frank-Wolfe or away step with exact line search. Along d the
  // objective is q + 2 s g + g^2 c with slope s = d^T zeta mu, curvature
  // c = d^T zeta d.
  void step() {
    Eigen::Index toward = 0;
    zeta_mu_.minCoeff(&toward);
    Eigen::Index away = -1;
    double away_value = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n_; ++i)
      if (mu_(i) > 0.0 && zeta_mu_(i) > away_value) {
        away_value = zeta_mu_(i);
        away = i;
      }

    const double fw_gain = q_ - zeta_mu_(toward);
    const double away_gain = away >= 0 && mu_(away) < 1.0 ? away_value - q_ : -1.0;

    if (fw_gain >= away_gain) {
      // d = e_toward - mu
      const double slope = zeta_mu_(toward) - q_;
      const double curvature = 1.0 - 2.0 * zeta_mu_(toward) + q_;
      const double gamma = curvature > 0.0 ? std::min(1.0, -slope / curvature) : 1.0;
      mu_ *= 1.0 - gamma;
      mu_(toward) += gamma;
      zeta_mu_ = (1.0 - gamma) * zeta_mu_ + gamma * zeta_.col(toward);
    } else {
      // d = mu - e_away, feasible up to gamma_max.
      const double gamma_max = mu_(away) / (1.0 - mu_(away));
      const double slope = q_ - zeta_mu_(away);
      const double curvature = q_ - 2.0 * zeta_mu_(away) + 1.0;
      const double gamma = curvature > 0.0 ? std::min(gamma_max, -slope / curvature) : gamma_max;
      mu_ *= 1.0 + gamma;
      mu_(away) -= gamma;
      if (gamma == gamma_max) mu_(away) = 0.0;
      zeta_mu_ = (1.0 + gamma) * zeta_mu_ - gamma * zeta_.col(away);
    }
    q_ = mu_.dot(zeta_mu_);
  }

  // The minimiser of q on the face spanned by the current support is
  // proportional to the weighting of that face whenever it is positive.
  bool try_face_solve() {
    std::vector<Eigen::Index> face;
    for (Eigen::Index i = 0; i < n_; ++i)
      if (mu_(i) > 0.0) face.push_back(i);
    if (face == last_face_ || static_cast<Eigen::Index>(face.size()) > kMaxFaceSolve) return false;
    last_face_ = face;

    const auto m = static_cast<Eigen::Index>(face.size());
    Matrix sub(m, m);
    for (Eigen::Index a = 0; a < m; ++a)
      for (Eigen::Index b = 0; b < m; ++b) sub(a, b) = zeta_(face[a], face[b]);
    Eigen::LLT<Matrix> llt(sub);
    if (llt.info() != Eigen::Success) return false;
    const Vector ones = Vector::Ones(m);
    Vector x = llt.solve(ones);
    x += llt.solve(ones - sub * x);
    if (!(x.minCoeff() > 0.0)) return false;

    Vector candidate = Vector::Zero(n_);
    const double total = x.sum();
    for (Eigen::Index a = 0; a < m; ++a) candidate(face[a]) = x(a) / total;
    const Vector zc = zeta_ * candidate;
    const double qc = candidate.dot(zc);
    if (!(qc <= q_)) return false;
    mu_ = std::move(candidate);
    zeta_mu_ = zc;
    q_ = qc;
    return true;
  }

  const Matrix& zeta_;
  DiversityOptions options_;
  Eigen::Index n_;
  Vector mu_;
  Vector zeta_mu_;
  double q_ = 1.0;
  std::vector<Eigen::Index> last_face_;
};

}  // namespace

namespace detail {

DiversityReport max_diversity_from(const Matrix& zeta, const SpectrumDiagnostics& diagnostics,
                                   const DiversityOptions& options) {
  if (diagnostics.verdict == Definiteness::Indefinite) {
    std::ostringstream os;
    os << "quadratic form is indefinite (lambda_min = " << diagnostics.lambda_min
       << "); the simplex problem is nonconvex";
    throw Error(ErrorKind::IndefiniteForm, os.str());
  }
  if (!(options.tol > 0.0)) throw Error(ErrorKind::InvalidParams, "tolerance must be positive");
  if (options.max_iters < 0) throw Error(ErrorKind::InvalidParams, "max_iters must be nonnegative");
  return SimplexQuadratic(zeta, options).run();
}

}  // namespace detail

std::string_view to_string(PositivityCertificate certificate) {
  switch (certificate) {
    case PositivityCertificate::WeightingSign: return "weighting_sign";
    case PositivityCertificate::DiversityAgreement: return "diversity_agreement";
  }
  return "unknown";
}

DiversityReport max_diversity(const FiniteMetricSpace& space, const DiversityOptions& options) {
  const Matrix zeta = similarity(space).z;
  return detail::max_diversity_from(zeta, symmetric_spectrum(zeta), options);
}

DiversityReport max_diversity(const FiniteMetricSpace& space, double tol, int max_iters) {
  DiversityOptions options;
  options.tol = tol;
  options.max_iters = max_iters;
  return max_diversity(space, options);
}

PositivityVerdict is_positively_weighted(const FiniteMetricSpace& space, double tol) {
  const Matrix zeta = similarity(space).z;
  const SpectrumDiagnostics diag = symmetric_spectrum(zeta);
  const MagnitudeReport mag = detail::weighting_from(space, zeta, diag);
  const DiversityReport div = detail::max_diversity_from(zeta, diag, DiversityOptions{});

  PositivityVerdict verdict;
  verdict.magnitude = mag.magnitude;
  verdict.diversity = div.diversity;
  verdict.min_weight = mag.weighting.minCoeff();
  const bool agreement = std::abs(mag.magnitude - div.diversity) <= tol * mag.magnitude;

  if (mag.ill_conditioned) {
    verdict.positively_weighted = agreement;
    verdict.certificate = PositivityCertificate::DiversityAgreement;
    return verdict;
  }
  verdict.positively_weighted = mag.positively_weighted;
  verdict.certificate = PositivityCertificate::WeightingSign;
  if (mag.positively_weighted != agreement) {
    std::ostringstream os;
    os << "weighting sign says " << (mag.positively_weighted ? "positive" : "negative")
       << " (min weight " << verdict.min_weight << ") but |magnitude - diversity| = "
       << std::abs(mag.magnitude - div.diversity);
    throw Error(ErrorKind::Inconsistent, os.str());
  }
  return verdict;
}

bool diversity_diameter_check(const FiniteMetricSpace& space) {
  return max_diversity(space).diversity <= std::exp(space.diameter()) + 1e-9;
}

}  // namespace maglab
