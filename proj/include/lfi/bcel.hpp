#pragma once

#include <optional>
#include <vector>

#include "lfi/empirical_likelihood.hpp"
#include "lfi/mvt.hpp"
#include "lfi/prior.hpp"
#include "lfi/rng.hpp"
#include "lfi/weighted_sample.hpp"

namespace lfi {

struct BcelConfig {
  int draws = 1000;
  PriorSpec prior;
  ConstraintFunction constraint;
  LikelihoodFlavor flavor = LikelihoodFlavor::el;
  /// Resample size for run_bcel_resampled; defaults to `draws`.
  std::optional<int> resample_count;
};

/// Which proposal densities divide prior x likelihood in the AMIS weights.
enum class AmisDenominator {
  /// sum_{s=1}^{t-1} q_s with q_1 the prior; the current proposal is left out.
  as_printed,
  /// (1/t) sum_{s=1}^{t} q_s including the current proposal (deterministic mixture).
  full_mixture,
};

struct AmisConfig {
  BcelConfig base;
  int generations = 5;
  /// Jitter added once to a singular proposal covariance is this times trace/p.
  double jitter_scale = 1e-8;
  AmisDenominator denominator = AmisDenominator::as_printed;
};

struct AmisResult {
  WeightedSample sample;
  /// Proposals q_2..q_T in generation order.
  std::vector<MvtStudentT3> proposals;
  int generations_completed = 0;
  /// A generation's own ESS fell below 2 and the run stopped early.
  bool stopped_early = false;
};

/// Prior importance sampling with EL weights. Generation tag 1 on every point;
/// draw i uses rng.split(1).split(i). Throws DegeneratePosteriorError when all
/// weights vanish.
WeightedSample run_bcel(const DataMatrix& data, const BcelConfig& config, const RngStream& rng);

/// run_bcel followed by a multinomial resample (stream rng.split(0)).
Matrix run_bcel_resampled(const DataMatrix& data, const BcelConfig& config, const RngStream& rng);

/// Adaptive multiple importance sampling with Student t3 proposals fitted to
/// the accumulated weighted sample. Generation t draws on rng.split(t).
AmisResult run_bcel_amis(const DataMatrix& data, const AmisConfig& config, const RngStream& rng);

}  // namespace lfi
