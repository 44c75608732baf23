#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lfi/rng.hpp"
#include "lfi/types.hpp"

namespace lfi {

/// Importance-weighted point set. Weights are kept in log space; a zero
/// weight is -inf. Points are rows of `points`.
struct WeightedSample {
  Matrix points;
  Vector log_weights;
  std::vector<int> generations;

  std::size_t size() const noexcept { return static_cast<std::size_t>(points.rows()); }
  int dimension() const noexcept { return static_cast<int>(points.cols()); }

  /// Weights normalized to sum to one (log-sum-exp). Throws InvalidWeightsError.
  Vector normalized_weights() const;
  double ess() const;
};

/// Normalizes log weights through log-sum-exp. Throws InvalidWeightsError when
/// every weight is zero or any entry is NaN/+inf.
Vector normalize_log_weights(const Vector& log_weights);

/// Kish effective sample size 1 / sum_i (w_i / sum_j w_j)^2.
double ess(std::span<const double> weights);
double ess_from_log_weights(const Vector& log_weights);

/// `count` i.i.d. indices drawn with probability proportional to `probabilities`.
std::vector<std::size_t> multinomial_indices(const Vector& probabilities, std::size_t count,
                                             RngStream& rng);

/// Equal-weight resample of `count` points; rows of the result are points.
Matrix multinomial_resample(const WeightedSample& sample, std::size_t count, RngStream& rng);

struct WeightedMoments {
  Vector mean;
  Matrix covariance;
  /// Covariance failed a Cholesky factorization; caller decides how to regularize.
  bool singular = false;
};

/// Self-normalized mean and covariance sum_i w_i (x_i - m)(x_i - m)^T with sum w_i = 1.
WeightedMoments weighted_moments(const WeightedSample& sample);
WeightedMoments weighted_moments(const Matrix& points, const Vector& normalized_weights);

/// Smallest value whose cumulative normalized weight reaches `prob`.
double weighted_quantile(const Vector& values, const Vector& normalized_weights, double prob);

/// Midpoint of the heaviest of `bins` equal-width bins spanning the
/// positive-weight values; ties go to the lowest bin.
double weighted_histogram_mode(const Vector& values, const Vector& normalized_weights, int bins);

}  // namespace lfi
