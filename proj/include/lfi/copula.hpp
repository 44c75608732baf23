#pragma once

#include <vector>

#include "lfi/empirical_likelihood.hpp"
#include "lfi/prior.hpp"
#include "lfi/rng.hpp"
#include "lfi/types.hpp"
#include "lfi/weighted_sample.hpp"

namespace lfi {

class ClaytonCopula {
 public:
  /// psi in [-1, inf) minus {0}; d > 2 needs psi > 0.
  ClaytonCopula(int dimension, double psi);
  /// The psi -> 0 limit: independent uniforms.
  static ClaytonCopula independence(int dimension);

  int dimension() const noexcept { return dimension_; }
  double psi() const noexcept { return psi_; }
  bool is_independence() const noexcept { return independence_; }

  /// C(u) = (sum_j u_j^-psi - d + 1)^(-1/psi), floored at zero.
  double cdf(const Vector& u) const;

 private:
  ClaytonCopula(int dimension, double psi, bool independence);

  int dimension_;
  double psi_;
  bool independence_;
};

/// n x d matrix of copula draws. Marshall-Olkin frailty for psi > 0;
/// conditional inversion for d = 2 and psi < 0. Row i uses rng.split(i).
Matrix clayton_sample(int n, const ClaytonCopula& copula, const RngStream& rng);

/// Column ranks divided by n; ties get the average rank.
Matrix pseudo_observations(const Matrix& data);

/// h(d) = (d + 1) / (2^d - (d + 1))
double spearman_normalizer(int d);

/// Per-row terms h(d) (2^d prod_j (1 - u_ij) - 1). Entries u = 1 are clipped
/// to 1 - 1/(2n) first.
Vector spearman_terms(const Matrix& u);

/// Multivariate Spearman rho: the mean of spearman_terms.
double spearman_rho_multivariate(const Matrix& u);

enum class BcopConstraint {
  /// EL over the per-row terms against rho.
  per_observation,
  /// EL over leave-one-out jackknife pseudo-values of the rank estimator.
  estimator_residual,
};

struct BcopConfig {
  PriorSpec prior = PriorSpec::uniform(Vector::Constant(1, -1.0), Vector::Constant(1, 1.0));
  int prior_draws = 10000;
  LikelihoodFlavor flavor = LikelihoodFlavor::el;
  BcopConstraint constraint = BcopConstraint::per_observation;
};

/// Weighted posterior over rho. `uniforms` holds one n x d matrix of
/// marginal-transformed data per marginal posterior draw s; weights are
/// averaged over s. Prior draw b uses rng.split(b).
WeightedSample run_bcop(const std::vector<Matrix>& uniforms, const BcopConfig& config,
                        const RngStream& rng);

/// Nonparametric margins: a single pseudo-observation matrix from ranks.
WeightedSample run_bcop(const Matrix& data, const BcopConfig& config, const RngStream& rng);

}  // namespace lfi
