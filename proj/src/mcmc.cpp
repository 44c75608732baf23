#include "lfi/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lfi/errors.hpp"

namespace lfi {
namespace {

void validate(const MCMCConfig& config, const PriorSpec& prior, const SimulatorModel& model) {
  const auto p = model.parameter_dim();
  if (config.iterations < 1) throw PreconditionError("MCMC needs at least one iteration");
  if (config.n < 2) throw PreconditionError("MCMC needs n >= 2 replicates per estimate");
  if (config.burn_in < 0 || config.burn_in > config.iterations) throw PreconditionError("burn-in out of range");
  if (config.initial.size() != p || prior.dimension() != p) {
    throw PreconditionError("initial point, prior and model dimensions disagree");
  }
  if (config.proposal_cov.rows() != p || config.proposal_cov.cols() != p) {
    throw PreconditionError("proposal covariance has the wrong shape");
  }
  if (!std::isfinite(prior.log_density(config.initial))) {
    throw PreconditionError("initial point lies outside the prior support");
  }
}

// Gaussian random-walk log density up to its constant; symmetric, so the
// forward and reverse terms cancel in the ratio.
double log_rw_density(const Eigen::LLT<Matrix>& chol, const Vector& to, const Vector& from) {
  const Vector z = chol.matrixL().solve(to - from);
  return -0.5 * z.squaredNorm();
}

}  // namespace

MCMCTrace run_mcmc_bsl(const SimulatorModel& model, const SummaryVector& s_obs, const PriorSpec& prior,
                       const MCMCConfig& config, const RngStream& rng) {
  validate(config, prior, model);
  const Eigen::LLT<Matrix> proposal(config.proposal_cov);
  if (proposal.info() != Eigen::Success) throw NotPositiveDefiniteError("proposal covariance is not PD");
  const Matrix proposal_lower = proposal.matrixL();
  const auto p = model.parameter_dim();
  const int iterations = config.iterations;

  MCMCTrace trace;
  trace.states.resize(iterations + 1, p);
  trace.log_sl.reserve(static_cast<std::size_t>(iterations) + 1);
  trace.accepted.reserve(static_cast<std::size_t>(iterations));
  trace.burn_in = config.burn_in;
  trace.n = config.n;

  ParameterVector current = config.initial;
  double current_log_prior = prior.log_density(current);
  LogLikelihoodEstimate current_sl = LogLikelihoodEstimate::zero_mass();
  try {
    current_sl = estimate_log_sl(config.estimator, s_obs, fit_moments(model, current, config.n, rng.split(1)));
  } catch (const NumericalError& e) {
    throw NumericalError(std::string("synthetic likelihood not estimable at the initial point: ") + e.what());
  }
  trace.states.row(0) = current.transpose();
  trace.log_sl.push_back(current_sl);

  RngStream chain = rng.split(0);
  int accepted_count = 0;
  for (int i = 1; i <= iterations; ++i) {
    Vector step(p);
    for (auto& v : step) v = chain.normal();
    const ParameterVector candidate = current + proposal_lower * step;
    bool accept = false;
    LogLikelihoodEstimate candidate_sl = LogLikelihoodEstimate::zero_mass();
    const double candidate_log_prior = prior.log_density(candidate);
    bool estimable = false;
    if (std::isfinite(candidate_log_prior)) {
      try {
        candidate_sl = estimate_log_sl(
            config.estimator, s_obs,
            fit_moments(model, candidate, config.n, rng.split(static_cast<std::uint64_t>(i) + 1)));
        estimable = true;
      } catch (const NotPositiveDefiniteError&) {
      }
    }
    // Drawn every iteration, after the replicate streams, whatever the outcome.
    const double log_u = std::log(chain.uniform());
    if (estimable && !candidate_sl.is_zero_mass()) {
      if (current_sl.is_zero_mass()) {
        accept = true;
      } else {
        const double log_r = (candidate_sl.log_value() + candidate_log_prior +
                              log_rw_density(proposal, current, candidate)) -
                             (current_sl.log_value() + current_log_prior +
                              log_rw_density(proposal, candidate, current));
        accept = log_u < std::min(0.0, log_r);
      }
    }

    if (accept) {
      current = candidate;
      current_sl = candidate_sl;
      current_log_prior = candidate_log_prior;
      ++accepted_count;
    }
    trace.states.row(i) = current.transpose();
    trace.log_sl.push_back(current_sl);
    trace.accepted.push_back(accept);
  }
  trace.acceptance_rate = static_cast<double>(accepted_count) / iterations;
  return trace;
}

double autocorrelation_ess(const Vector& series) {
  const auto t = series.size();
  if (t < 4) throw PreconditionError("ESS needs at least 4 samples");
  const double mean = series.mean();
  const Vector c = series.array() - mean;
  const double c0 = c.squaredNorm() / static_cast<double>(t);
  if (!(c0 > 0.0)) throw NumericalError("ESS undefined for a constant trace");

  auto autocov = [&](Eigen::Index lag) {
    return c.head(t - lag).dot(c.tail(t - lag)) / static_cast<double>(t);
  };
  // Geyer: sum pairs Gamma_m = gamma(2m) + gamma(2m+1) while positive.
  double sum_pairs = 0.0;
  for (Eigen::Index m = 0; 2 * m + 1 < t; ++m) {
    const double pair = autocov(2 * m) + autocov(2 * m + 1);
    if (pair <= 0.0) break;
    sum_pairs += pair;
  }
  const double tau = (2.0 * sum_pairs - c0) / c0;
  return static_cast<double>(t) / std::max(tau, 1e-12);
}

Vector normalized_ess(const MCMCTrace& trace, double total_simulations) {
  const auto kept = trace.states.rows() - trace.burn_in;
  if (kept < 100) throw PreconditionError("normalized ESS needs at least 100 states after burn-in");
  if (!(total_simulations > 0.0)) throw PreconditionError("total simulations must be positive");
  Vector out(trace.states.cols());
  for (Eigen::Index j = 0; j < trace.states.cols(); ++j) {
    const Vector column = trace.states.col(j).tail(kept);
    out[j] = autocorrelation_ess(column) / total_simulations * kNormalizedEssScale;
  }
  return out;
}

}  // namespace lfi
