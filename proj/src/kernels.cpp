#include "lfi/kernels.hpp"

#include <exception>
#include <limits>

#include "lfi/errors.hpp"

namespace lfi::kernels {

Matrix simulate_replicates(const SimulatorModel& model, const ParameterVector& theta, int n,
                           const RngStream& base) {
  const int d = model.summary_dim();
  Matrix out(n, d);
  // Lowest failing replicate wins so the reported error is thread-count independent.
  long first_failure = -1;
  std::string failure_message;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    try {
      RngStream rng = base.split(static_cast<std::uint64_t>(i));
      SummaryVector s = model.simulate(theta, rng);
      if (s.size() != d) throw DataError("simulator returned a summary of the wrong dimension");
      if (!s.allFinite()) throw DataError("simulator returned a non-finite summary");
      out.row(i) = s.transpose();
    } catch (const std::exception& e) {
#pragma omp critical(lfi_simulate_failure)
      if (first_failure < 0 || i < first_failure) {
        first_failure = i;
        failure_message = e.what();
      }
    }
  }
  if (first_failure >= 0) throw SimulationError(static_cast<std::size_t>(first_failure), failure_message);
  return out;
}

Matrix sample_prior(const PriorSpec& prior, int count, const RngStream& base) {
  Matrix out(count, prior.dimension());
#pragma omp parallel for schedule(static)
  for (int i = 0; i < count; ++i) {
    RngStream rng = base.split(static_cast<std::uint64_t>(i));
    out.row(i) = prior.sample(rng).transpose();
  }
  return out;
}

Vector el_log_weights(const DataMatrix& data, const Matrix& thetas, const Vector& log_prior,
                      const ConstraintFunction& h, LikelihoodFlavor flavor) {
  const auto m = thetas.rows();
  Vector out(m);
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 16)
  for (Eigen::Index i = 0; i < m; ++i) {
    if (log_prior[i] == -std::numeric_limits<double>::infinity()) {
      out[i] = -std::numeric_limits<double>::infinity();
      continue;
    }
    try {
      out[i] = log_likelihood_weight(flavor, h(data, thetas.row(i).transpose()));
    } catch (...) {
#pragma omp critical(lfi_el_weights_failure)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

Vector scalar_mean_log_weights(const Vector& values, const Vector& targets, LikelihoodFlavor flavor) {
  Vector out(targets.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (Eigen::Index b = 0; b < targets.size(); ++b) {
    const Matrix h = (values.array() - targets[b]).matrix();
    out[b] = log_likelihood_weight(flavor, h);
  }
  return out;
}

Vector mvt3_log_density(const Matrix& points, const MvtStudentT3& dist) {
  Vector out(points.rows());
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < points.rows(); ++i) out[i] = dist.log_pdf(points.row(i).transpose());
  return out;
}

}  // namespace lfi::kernels
