#include "lfi/weighted_sample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "lfi/errors.hpp"

namespace lfi {

Vector normalize_log_weights(const Vector& log_weights) {
  if (log_weights.size() == 0) throw InvalidWeightsError("no weights");
  double top = -std::numeric_limits<double>::infinity();
  for (double v : log_weights) {
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
      throw InvalidWeightsError("log weights contain NaN or +inf");
    }
    top = std::max(top, v);
  }
  if (!std::isfinite(top)) throw InvalidWeightsError("every weight is zero");
  Vector w = (log_weights.array() - top).unaryExpr([](double x) { return std::exp(x); });
  return w / w.sum();
}

Vector WeightedSample::normalized_weights() const { return normalize_log_weights(log_weights); }

double WeightedSample::ess() const { return ess_from_log_weights(log_weights); }

double ess(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw InvalidWeightsError("weights must be finite and nonnegative");
    total += w;
  }
  if (!(total > 0.0)) throw InvalidWeightsError("every weight is zero");
  double sq = 0.0;
  for (double w : weights) {
    const double r = w / total;
    sq += r * r;
  }
  return 1.0 / sq;
}

double ess_from_log_weights(const Vector& log_weights) {
  const Vector w = normalize_log_weights(log_weights);
  return 1.0 / w.squaredNorm();
}

std::vector<std::size_t> multinomial_indices(const Vector& probabilities, std::size_t count,
                                             RngStream& rng) {
  if (count < 1) throw PreconditionError("resample count must be at least 1");
  std::vector<double> cumulative(static_cast<std::size_t>(probabilities.size()));
  double running = 0.0;
  for (Eigen::Index i = 0; i < probabilities.size(); ++i) {
    const double p = probabilities[i];
    if (!std::isfinite(p) || p < 0.0) throw InvalidWeightsError("probabilities must be finite and nonnegative");
    running += p;
    cumulative[static_cast<std::size_t>(i)] = running;
  }
  if (!(running > 0.0)) throw InvalidWeightsError("every weight is zero");

  std::vector<std::size_t> out(count);
  for (auto& idx : out) {
    const double u = rng.uniform() * running;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) {
      // u rounded up to the total; fall back to the last positive slot.
      it = std::lower_bound(cumulative.begin(), cumulative.end(), running);
    }
    idx = static_cast<std::size_t>(it - cumulative.begin());
  }
  return out;
}

Matrix multinomial_resample(const WeightedSample& sample, std::size_t count, RngStream& rng) {
  const auto idx = multinomial_indices(sample.normalized_weights(), count, rng);
  Matrix out(static_cast<Eigen::Index>(count), sample.points.cols());
  for (std::size_t r = 0; r < count; ++r) out.row(static_cast<Eigen::Index>(r)) = sample.points.row(static_cast<Eigen::Index>(idx[r]));
  return out;
}

WeightedMoments weighted_moments(const Matrix& points, const Vector& w) {
  if (points.rows() != w.size()) throw PreconditionError("weighted_moments: size mismatch");
  WeightedMoments m;
  m.mean = points.transpose() * w;
  const Matrix centered = points.rowwise() - m.mean.transpose();
  m.covariance = centered.transpose() * w.asDiagonal() * centered;
  m.covariance = 0.5 * (m.covariance + m.covariance.transpose());
  Eigen::LLT<Matrix> llt(m.covariance);
  m.singular = llt.info() != Eigen::Success || m.covariance.diagonal().minCoeff() <= 0.0;
  return m;
}

WeightedMoments weighted_moments(const WeightedSample& sample) {
  return weighted_moments(sample.points, sample.normalized_weights());
}

double weighted_quantile(const Vector& values, const Vector& w, double prob) {
  if (values.size() != w.size() || values.size() == 0) throw PreconditionError("weighted_quantile: size mismatch");
  if (!(prob >= 0.0 && prob <= 1.0)) throw DomainError("weighted_quantile: prob outside [0, 1]");
  std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values(a) < values(b); });
  double cum = 0.0;
  Eigen::Index last = order.front();
  for (auto i : order) {
    if (w(i) <= 0.0) continue;
    cum += w(i);
    last = i;
    if (cum >= prob) return values(i);
  }
  return values(last);
}

double weighted_histogram_mode(const Vector& values, const Vector& w, int bins) {
  if (values.size() != w.size() || values.size() == 0) throw PreconditionError("weighted_histogram_mode: size mismatch");
  if (bins < 1) throw PreconditionError("weighted_histogram_mode: bins < 1");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (w(i) <= 0.0) continue;
    lo = std::min(lo, values(i));
    hi = std::max(hi, values(i));
  }
  if (!(lo <= hi)) throw InvalidWeightsError("weighted_histogram_mode: no positive weights");
  if (lo == hi) return lo;
  const double width = (hi - lo) / bins;
  std::vector<double> mass(static_cast<std::size_t>(bins), 0.0);
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (w(i) <= 0.0) continue;
    const int b = std::clamp(static_cast<int>(std::floor((values(i) - lo) / width)), 0, bins - 1);
    mass[static_cast<std::size_t>(b)] += w(i);
  }
  const auto best = std::max_element(mass.begin(), mass.end()) - mass.begin();
  return lo + (static_cast<double>(best) + 0.5) * width;
}

}  // namespace lfi
