#pragma once

#include <cstdint>
#include <vector>

#include "lfi/prior.hpp"
#include "lfi/rng.hpp"
#include "lfi/synthetic_likelihood.hpp"
#include "lfi/types.hpp"

namespace lfi {

/// Default scale of the Gaussian random-walk proposal (covariance 0.1^2 I).
inline constexpr double kDefaultProposalSd = 0.1;

/// Normalized ESS is ESS / (number of simulations) times this constant.
inline constexpr double kNormalizedEssScale = 1e6;

struct MCMCConfig {
  int iterations = 1000;
  ParameterVector initial;
  Matrix proposal_cov;
  int n = 50;
  SlEstimator estimator = SlEstimator::plugin;
  int burn_in = 0;
};

struct MCMCTrace {
  /// Row i is theta^i, i = 0..T.
  Matrix states;
  /// Log-SL estimate carried by each state.
  std::vector<LogLikelihoodEstimate> log_sl;
  /// accepted[i - 1] tells whether iteration i moved; size T.
  std::vector<bool> accepted;
  double acceptance_rate = 0.0;
  int burn_in = 0;
  int n = 0;

  int iterations() const noexcept { return static_cast<int>(accepted.size()); }
};

/// Random-walk Metropolis-Hastings on the (u)BSL posterior.
///
/// The current state's likelihood estimate is carried forward and never
/// re-estimated. The initial state simulates on `rng.split(1)`, iteration i on
/// `rng.split(i + 1)`; the proposal and the acceptance uniform come from the
/// chain stream `rng.split(0)`.
MCMCTrace run_mcmc_bsl(const SimulatorModel& model, const SummaryVector& s_obs,
                       const PriorSpec& prior, const MCMCConfig& config, const RngStream& rng);

/// Autocorrelation ESS with Geyer's initial positive sequence truncation.
/// Throws NumericalError for a constant series.
double autocorrelation_ess(const Vector& series);

/// Per-coordinate ESS after burn-in, divided by `total_simulations`, times kNormalizedEssScale.
Vector normalized_ess(const MCMCTrace& trace, double total_simulations);

}  // namespace lfi
