#pragma once

// Data-parallel kernels. Each has a serial twin in lfi::reference with the
// same signature and bit-identical results for any thread count; every loop
// writes only its own output slot and reductions happen afterwards in index order.

#include "lfi/empirical_likelihood.hpp"
#include "lfi/mvt.hpp"
#include "lfi/prior.hpp"
#include "lfi/rng.hpp"
#include "lfi/synthetic_likelihood.hpp"
#include "lfi/types.hpp"

namespace lfi::kernels {

/// Row i simulated at theta on base.split(i).
Matrix simulate_replicates(const SimulatorModel& model, const ParameterVector& theta, int n,
                           const RngStream& base);

/// Row i drawn from the prior on base.split(i).
Matrix sample_prior(const PriorSpec& prior, int count, const RngStream& base);

/// Log likelihood weight of each row of `thetas` (see log_likelihood_weight).
/// Rows with log_prior == -inf are skipped and get -inf.
Vector el_log_weights(const DataMatrix& data, const Matrix& thetas, const Vector& log_prior,
                      const ConstraintFunction& h, LikelihoodFlavor flavor);

/// Scalar mean-type constraint h_i = values_i - target evaluated for every target.
Vector scalar_mean_log_weights(const Vector& values, const Vector& targets,
                               LikelihoodFlavor flavor);

Vector mvt3_log_density(const Matrix& points, const MvtStudentT3& dist);

}  // namespace lfi::kernels

namespace lfi::reference {

Matrix simulate_replicates(const SimulatorModel& model, const ParameterVector& theta, int n,
                           const RngStream& base);
Matrix sample_prior(const PriorSpec& prior, int count, const RngStream& base);
Vector el_log_weights(const DataMatrix& data, const Matrix& thetas, const Vector& log_prior,
                      const ConstraintFunction& h, LikelihoodFlavor flavor);
Vector scalar_mean_log_weights(const Vector& values, const Vector& targets,
                               LikelihoodFlavor flavor);
Vector mvt3_log_density(const Matrix& points, const MvtStudentT3& dist);

}  // namespace lfi::reference
