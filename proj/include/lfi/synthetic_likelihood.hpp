#pragma once

#include <optional>
#include <vector>

#include "lfi/prior.hpp"
#include "lfi/rng.hpp"
#include "lfi/types.hpp"

namespace lfi {

/// Draws one summary vector per call. Implementations must be safe to call
/// concurrently on distinct RngStreams.
class SimulatorModel {
 public:
  virtual ~SimulatorModel() = default;

  virtual int parameter_dim() const = 0;
  virtual int summary_dim() const = 0;
  virtual SummaryVector simulate(const ParameterVector& theta, RngStream& rng) const = 0;
};

/// Sample mean and unbiased sample covariance of n simulated summaries.
struct SyntheticLikelihoodFit {
  Vector mu;
  Matrix sigma;
  int n = 0;

  /// M_n = (n - 1) * sigma
  Matrix scatter() const { return static_cast<double>(n - 1) * sigma; }
};

/// Log of a likelihood estimate that may be exactly zero.
///
/// The unbiased normal-density estimator is a mixture of a point mass at zero
/// and a continuous part; zero mass is kept distinct from a very small value.
class LogLikelihoodEstimate {
 public:
  static LogLikelihoodEstimate finite(double log_value) { return LogLikelihoodEstimate(log_value, false); }
  static LogLikelihoodEstimate zero_mass() { return LogLikelihoodEstimate(0.0, true); }

  bool is_zero_mass() const noexcept { return zero_mass_; }
  /// Log value; -inf for zero mass.
  double log_value() const noexcept;

  friend bool operator==(const LogLikelihoodEstimate&, const LogLikelihoodEstimate&) = default;

 private:
  LogLikelihoodEstimate(double v, bool z) : value_(v), zero_mass_(z) {}

  double value_;
  bool zero_mass_;
};

enum class SlEstimator { plugin, unbiased };

/// Simulates n replicates at theta, replicate i on `base.split(i)`, in parallel.
Matrix simulate_summaries(const SimulatorModel& model, const ParameterVector& theta, int n,
                          const RngStream& base);

SyntheticLikelihoodFit fit_from_summaries(const Matrix& summaries);

SyntheticLikelihoodFit fit_moments(const SimulatorModel& model, const ParameterVector& theta,
                                   int n, const RngStream& base);

/// log N(s_obs; mu_n, sigma_n). Throws NotPositiveDefiniteError.
double sl_logdensity(const SummaryVector& s_obs, const SyntheticLikelihoodFit& fit);

/// Log of the Ghurye-Olkin unbiased estimate of N(s_obs; mu, Sigma).
/// Requires n > d + 3 (PreconditionError) and M_n PD (NotPositiveDefiniteError).
LogLikelihoodEstimate ghurye_olkin_log_unbiased(const SummaryVector& s_obs,
                                                const SyntheticLikelihoodFit& fit);

LogLikelihoodEstimate estimate_log_sl(SlEstimator estimator, const SummaryVector& s_obs,
                                      const SyntheticLikelihoodFit& fit);

/// Search settings for the maximum synthetic likelihood point estimate.
struct MaxSlConfig {
  PriorSpec search_box;
  ParameterVector initial;
  Matrix proposal_cov;
  int iterations = 2000;
  SlEstimator estimator = SlEstimator::plugin;
};

/// Runs an MCMC exploration and returns the visited state with the highest
/// estimated log SL. Throws NumericalError when no state was estimable.
ParameterVector max_synthetic_likelihood(const SimulatorModel& model, const SummaryVector& s_obs,
                                         int n, const MaxSlConfig& config, const RngStream& rng);

struct TuneNRow {
  int n;
  double mean_log_sl;
  double sd_log_sl;
};

struct TuneNTable {
  std::vector<TuneNRow> rows;
  /// Smallest candidate n whose log-SL standard deviation is at most `target_sd`.
  std::optional<int> recommended_n;
};

/// Repeats the log-SL estimate at theta_ref `replications` times for each
/// candidate n and reports its spread.
TuneNTable tune_n_diagnostic(const SimulatorModel& model, const SummaryVector& s_obs,
                             const ParameterVector& theta_ref, const std::vector<int>& candidate_n,
                             int replications, const RngStream& rng, double target_sd = 2.0);

}  // namespace lfi
