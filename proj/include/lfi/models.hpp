#pragma once

#include <vector>

#include "lfi/empirical_likelihood.hpp"
#include "lfi/rng.hpp"
#include "lfi/synthetic_likelihood.hpp"
#include "lfi/types.hpp"

namespace lfi {

/// g-and-k quantile distribution parameters.
struct GkParams {
  double a = 0.0;
  double b = 1.0;
  double g = 0.0;
  double k = 0.0;
  double c = 0.8;

  /// Throws DomainError unless b > 0 and k > -0.5.
  void validate() const;

  ParameterVector to_vector() const;
  /// (a, b, g, k) with c = 0.8.
  static GkParams from_vector(const ParameterVector& theta, double c = 0.8);
};

/// Q(p) = a + b (1 + c tanh(g z / 2)) (1 + z^2)^k z with z the standard normal quantile.
double gk_quantile(double p, const GkParams& params);

/// Inverse-transform draws, one uniform per observation.
Vector gk_simulate(int nobs, const GkParams& params, RngStream& rng);

struct QuantileConstraintSpec {
  std::vector<double> probabilities{0.1, 0.25, 0.5, 0.75, 0.9};
  double c = 0.8;

  /// Throws DomainError unless the probabilities are strictly increasing in (0, 1).
  void validate() const;
};

/// h_j(y, theta) = I(y < Q(p_j; theta)) - p_j, theta = (a, b, g, k).
ConstraintFunction gk_quantile_constraints(const QuantileConstraintSpec& spec);

/// -0.5 (neg2llr_1 - neg2llr_2). +-inf when exactly one side is infeasible;
/// NumericalError when both are.
double gk_log_bayes_factor(const Vector& data, const GkParams& params1, const GkParams& params2,
                           const QuantileConstraintSpec& spec);

struct GkBayesFactorStudy {
  std::vector<int> sample_sizes;
  /// Column order: (1 vs 2, n_0), (1 vs 2, n_1), ..., (1 vs 3, n_0), (1 vs 3, n_1), ...
  Matrix log_bf;
};

/// Replicated log Bayes factors of the data-generating model against two
/// alternatives. Replicate r at sample-size index j draws on rng.split(j).split(r).
GkBayesFactorStudy gk_bayes_factor_study(const GkParams& truth, const GkParams& alt2,
                                         const GkParams& alt3, const std::vector<int>& sample_sizes,
                                         int replicates, const QuantileConstraintSpec& spec,
                                         const RngStream& rng);

/// s ~ N(theta, covariance). With `degenerate` set, s = theta exactly.
class MvnToySimulator final : public SimulatorModel {
 public:
  explicit MvnToySimulator(Matrix covariance, bool degenerate = false);

  int parameter_dim() const override { return static_cast<int>(covariance_.rows()); }
  int summary_dim() const override { return static_cast<int>(covariance_.rows()); }
  SummaryVector simulate(const ParameterVector& theta, RngStream& rng) const override;

  const Matrix& covariance() const noexcept { return covariance_; }

 private:
  Matrix covariance_;
  Matrix lower_;
  bool degenerate_;
};

}  // namespace lfi
