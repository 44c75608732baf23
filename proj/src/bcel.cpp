#include "lfi/bcel.hpp"

#include <cmath>
#include <limits>

#include "lfi/errors.hpp"
#include "lfi/kernels.hpp"

namespace lfi {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void validate(const BcelConfig& config) {
  if (config.draws < 2) throw PreconditionError("BCel needs at least 2 draws per generation");
  if (config.resample_count && *config.resample_count < 1) {
    throw PreconditionError("resample count must be positive");
  }
}

Vector prior_log_densities(const PriorSpec& prior, const Matrix& thetas) {
  Vector out(thetas.rows());
  for (Eigen::Index i = 0; i < thetas.rows(); ++i) out[i] = prior.log_density(thetas.row(i).transpose());
  return out;
}

bool all_zero(const Vector& log_weights) {
  return (log_weights.array() == kNegInf).all();
}

double log_sum_exp(const Eigen::Ref<const Eigen::RowVectorXd>& v) {
  const double top = v.maxCoeff();
  if (top == kNegInf) return kNegInf;
  return top + std::log((v.array() - top).unaryExpr([](double x) { return std::exp(x); }).sum());
}

}  // namespace

WeightedSample run_bcel(const DataMatrix& data, const BcelConfig& config, const RngStream& rng) {
  validate(config);
  WeightedSample sample;
  sample.points = kernels::sample_prior(config.prior, config.draws, rng.split(1));
  const Vector log_prior = prior_log_densities(config.prior, sample.points);
  sample.log_weights =
      kernels::el_log_weights(data, sample.points, log_prior, config.constraint, config.flavor);
  sample.generations.assign(static_cast<std::size_t>(config.draws), 1);
  if (all_zero(sample.log_weights)) {
    throw DegeneratePosteriorError(
        "every prior draw has zero empirical likelihood; widen the constraints or increase the draws");
  }
  return sample;
}

Matrix run_bcel_resampled(const DataMatrix& data, const BcelConfig& config, const RngStream& rng) {
  const WeightedSample sample = run_bcel(data, config, rng);
  RngStream resample_rng = rng.split(0);
  const auto count = static_cast<std::size_t>(config.resample_count.value_or(config.draws));
  return multinomial_resample(sample, count, resample_rng);
}

AmisResult run_bcel_amis(const DataMatrix& data, const AmisConfig& config, const RngStream& rng) {
  validate(config.base);
  if (config.generations < 1) throw PreconditionError("AMIS needs at least one generation");
  if (!(config.jitter_scale >= 0.0)) throw PreconditionError("jitter scale must be nonnegative");
  const int m = config.base.draws;
  const int p = config.base.prior.dimension();
  const int total = m * config.generations;

  AmisResult result;
  WeightedSample& sample = result.sample;
  sample = run_bcel(data, config.base, rng);
  result.generations_completed = 1;

  // Per point: log prior + log likelihood, and log q_s for every proposal so far
  // (column 0 is the prior, the generation-1 proposal).
  Vector log_target(total);
  Vector log_prior(total);
  Matrix log_q = Matrix::Constant(total, config.generations, kNegInf);
  log_prior.head(m) = prior_log_densities(config.base.prior, sample.points);
  log_target.head(m) = log_prior.head(m) + sample.log_weights;
  log_q.col(0).head(m) = log_prior.head(m);

  for (int t = 2; t <= config.generations; ++t) {
    const int filled = (t - 1) * m;
    const WeightedMoments moments = weighted_moments(sample);
    Matrix scale = moments.covariance;
    if (moments.singular) {
      const double eps = config.jitter_scale * scale.trace() / p;
      scale += eps * Matrix::Identity(p, p);
    }
    std::optional<MvtStudentT3> proposal;
    try {
      proposal.emplace(moments.mean, scale);
    } catch (const NotPositiveDefiniteError&) {
      throw NumericalError("AMIS generation " + std::to_string(t) + ": proposal covariance is singular");
    }

    const RngStream gen_rng = rng.split(static_cast<std::uint64_t>(t));
    Matrix fresh(m, p);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i) {
      RngStream draw_rng = gen_rng.split(static_cast<std::uint64_t>(i));
      fresh.row(i) = proposal->sample(draw_rng).transpose();
    }
    const Vector fresh_prior = prior_log_densities(config.base.prior, fresh);
    const Vector fresh_lik =
        kernels::el_log_weights(data, fresh, fresh_prior, config.base.constraint, config.base.flavor);

    sample.points.conservativeResize(filled + m, p);
    sample.points.bottomRows(m) = fresh;
    sample.generations.insert(sample.generations.end(), static_cast<std::size_t>(m), t);
    log_prior.segment(filled, m) = fresh_prior;
    for (int i = 0; i < m; ++i) {
      log_target[filled + i] = fresh_prior[i] == kNegInf ? kNegInf : fresh_prior[i] + fresh_lik[i];
    }
    log_q.col(0).segment(filled, m) = fresh_prior;

    // Previous proposals evaluated at the new points, the new one at every point.
    for (int s = 2; s < t; ++s) {
      log_q.col(s - 1).segment(filled, m) = kernels::mvt3_log_density(fresh, result.proposals[s - 2]);
    }
    log_q.col(t - 1).head(filled + m) = kernels::mvt3_log_density(sample.points, *proposal);
    result.proposals.push_back(*proposal);

    const int used = filled + m;
    Vector log_w(used);
    for (int i = 0; i < used; ++i) {
      if (log_target[i] == kNegInf) {
        log_w[i] = kNegInf;
        continue;
      }
      const double log_den = config.denominator == AmisDenominator::as_printed
                                 ? log_sum_exp(log_q.row(i).head(t - 1))
                                 : log_sum_exp(log_q.row(i).head(t)) - std::log(static_cast<double>(t));
      log_w[i] = log_target[i] - log_den;
    }
    sample.log_weights = log_w;
    result.generations_completed = t;

    const Vector fresh_w = log_w.tail(m);
    const double fresh_ess = all_zero(fresh_w) ? 0.0 : ess_from_log_weights(fresh_w);
    if (fresh_ess < 2.0 && t < config.generations) {
      result.stopped_early = true;
      break;
    }
  }
  if (all_zero(sample.log_weights)) throw DegeneratePosteriorError("AMIS weights are all zero");
  return result;
}

}  // namespace lfi
