#include "lfi/synthetic_likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lfi/errors.hpp"
#include "lfi/kernels.hpp"
#include "lfi/special.hpp"

namespace lfi {

double LogLikelihoodEstimate::log_value() const noexcept {
  return zero_mass_ ? -std::numeric_limits<double>::infinity() : value_;
}

Matrix simulate_summaries(const SimulatorModel& model, const ParameterVector& theta, int n,
                          const RngStream& base) {
  if (n < 1) throw PreconditionError("replicate count must be positive");
  if (theta.size() != model.parameter_dim()) throw PreconditionError("theta has the wrong dimension");
  return kernels::simulate_replicates(model, theta, n, base);
}

SyntheticLikelihoodFit fit_from_summaries(const Matrix& summaries) {
  const auto n = summaries.rows();
  if (n < 2) throw PreconditionError("synthetic likelihood needs n >= 2 replicates");
  SyntheticLikelihoodFit fit;
  fit.n = static_cast<int>(n);
  fit.mu = summaries.colwise().mean().transpose();
  const Matrix centered = summaries.rowwise() - fit.mu.transpose();
  fit.sigma = (centered.transpose() * centered) / static_cast<double>(n - 1);
  fit.sigma = 0.5 * (fit.sigma + fit.sigma.transpose());
  return fit;
}

SyntheticLikelihoodFit fit_moments(const SimulatorModel& model, const ParameterVector& theta, int n,
                                   const RngStream& base) {
  if (n < 2) throw PreconditionError("synthetic likelihood needs n >= 2 replicates");
  return fit_from_summaries(simulate_summaries(model, theta, n, base));
}

double sl_logdensity(const SummaryVector& s_obs, const SyntheticLikelihoodFit& fit) {
  const auto d = fit.mu.size();
  if (s_obs.size() != d) throw PreconditionError("s_obs and fit dimensions disagree");
  Eigen::LLT<Matrix> llt(fit.sigma);
  if (llt.info() != Eigen::Success) throw NotPositiveDefiniteError("sigma_n is not positive definite");
  const Matrix lower = llt.matrixL();
  const double log_det = 2.0 * lower.diagonal().array().unaryExpr([](double x) { return std::log(x); }).sum();
  if (!std::isfinite(log_det)) throw NotPositiveDefiniteError("sigma_n is singular");
  const Vector z = lower.triangularView<Eigen::Lower>().solve(s_obs - fit.mu);
  return -0.5 * static_cast<double>(d) * std::log(2.0 * std::numbers::pi) - 0.5 * log_det -
         0.5 * z.squaredNorm();
}

LogLikelihoodEstimate ghurye_olkin_log_unbiased(const SummaryVector& s_obs,
                                                const SyntheticLikelihoodFit& fit) {
  const int d = static_cast<int>(fit.mu.size());
  const int n = fit.n;
  if (s_obs.size() != d) throw PreconditionError("s_obs and fit dimensions disagree");
  if (n <= d + 3) throw PreconditionError("unbiased estimator needs n > d + 3");

  const Matrix scatter = fit.scatter();
  Eigen::LLT<Matrix> llt(scatter);
  if (llt.info() != Eigen::Success) throw NotPositiveDefiniteError("M_n is not positive definite");
  const Matrix lower = llt.matrixL();
  const double log_det_m = 2.0 * lower.diagonal().array().unaryExpr([](double x) { return std::log(x); }).sum();
  if (!std::isfinite(log_det_m)) throw NotPositiveDefiniteError("M_n is singular");

  // |M - v v^T / (1 - 1/n)| = |M| (1 - v^T M^{-1} v / (1 - 1/n)); PD iff the factor is positive.
  const double shrink = 1.0 - 1.0 / n;
  const Vector z = lower.triangularView<Eigen::Lower>().solve(s_obs - fit.mu);
  const double factor = 1.0 - z.squaredNorm() / shrink;
  if (!(factor > 0.0)) return LogLikelihoodEstimate::zero_mass();
  const double log_det_a = log_det_m + std::log(factor);

  const double dd = d;
  const double dn = n;
  const double log_value = -0.5 * dd * std::log(2.0 * std::numbers::pi) +
                           log_ghurye_olkin_constant(d, dn - 2.0) -
                           log_ghurye_olkin_constant(d, dn - 1.0) - 0.5 * dd * std::log(shrink) -
                           0.5 * (dn - dd - 2.0) * log_det_m + 0.5 * (dn - dd - 3.0) * log_det_a;
  return LogLikelihoodEstimate::finite(log_value);
}

LogLikelihoodEstimate estimate_log_sl(SlEstimator estimator, const SummaryVector& s_obs,
                                      const SyntheticLikelihoodFit& fit) {
  switch (estimator) {
    case SlEstimator::plugin:
      return LogLikelihoodEstimate::finite(sl_logdensity(s_obs, fit));
    case SlEstimator::unbiased:
      return ghurye_olkin_log_unbiased(s_obs, fit);
  }
  throw PreconditionError("unknown estimator");
}

TuneNTable tune_n_diagnostic(const SimulatorModel& model, const SummaryVector& s_obs,
                             const ParameterVector& theta_ref, const std::vector<int>& candidate_n,
                             int replications, const RngStream& rng, double target_sd) {
  if (replications < 2) throw PreconditionError("tune_n_diagnostic needs at least 2 replications");
  TuneNTable table;
  for (std::size_t c = 0; c < candidate_n.size(); ++c) {
    const int n = candidate_n[c];
    const RngStream per_n = rng.split(c);
    Vector values(replications);
    for (int r = 0; r < replications; ++r) {
      values[r] = sl_logdensity(s_obs, fit_moments(model, theta_ref, n, per_n.split(static_cast<std::uint64_t>(r))));
    }
    const double mean = values.mean();
    // Shifted by the first value so identical estimates give exactly zero.
    const Vector shifted = values.array() - values[0];
    const double var = (shifted.squaredNorm() - shifted.sum() * shifted.sum() / replications) / (replications - 1);
    const double sd = std::sqrt(std::max(0.0, var));
    table.rows.push_back({n, mean, sd});
    if (sd <= target_sd && (!table.recommended_n || n < *table.recommended_n)) table.recommended_n = n;
  }
  return table;
}

}  // namespace lfi
