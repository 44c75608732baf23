// Serial reference versions of the kernels in kernels.cpp.

#include <exception>
#include <limits>

#include "lfi/errors.hpp"
#include "lfi/kernels.hpp"

namespace lfi::reference {

Matrix simulate_replicates(const SimulatorModel& model, const ParameterVector& theta, int n,
                           const RngStream& base) {
  Matrix out(n, model.summary_dim());
  for (int i = 0; i < n; ++i) {
    RngStream rng = base.split(static_cast<std::uint64_t>(i));
    SummaryVector s;
    try {
      s = model.simulate(theta, rng);
      if (s.size() != model.summary_dim()) throw DataError("simulator returned a summary of the wrong dimension");
      if (!s.allFinite()) throw DataError("simulator returned a non-finite summary");
    } catch (const std::exception& e) {
      throw SimulationError(static_cast<std::size_t>(i), e.what());
    }
    out.row(i) = s.transpose();
  }
  return out;
}

Matrix sample_prior(const PriorSpec& prior, int count, const RngStream& base) {
  Matrix out(count, prior.dimension());
  for (int i = 0; i < count; ++i) {
    RngStream rng = base.split(static_cast<std::uint64_t>(i));
    out.row(i) = prior.sample(rng).transpose();
  }
  return out;
}

Vector el_log_weights(const DataMatrix& data, const Matrix& thetas, const Vector& log_prior,
                      const ConstraintFunction& h, LikelihoodFlavor flavor) {
  Vector out(thetas.rows());
  for (Eigen::Index i = 0; i < thetas.rows(); ++i) {
    out[i] = log_prior[i] == -std::numeric_limits<double>::infinity()
                 ? -std::numeric_limits<double>::infinity()
                 : log_likelihood_weight(flavor, h(data, thetas.row(i).transpose()));
  }
  return out;
}

Vector scalar_mean_log_weights(const Vector& values, const Vector& targets, LikelihoodFlavor flavor) {
  Vector out(targets.size());
  for (Eigen::Index b = 0; b < targets.size(); ++b) {
    out[b] = log_likelihood_weight(flavor, (values.array() - targets[b]).matrix());
  }
  return out;
}

Vector mvt3_log_density(const Matrix& points, const MvtStudentT3& dist) {
  Vector out(points.rows());
  for (Eigen::Index i = 0; i < points.rows(); ++i) out[i] = dist.log_pdf(points.row(i).transpose());
  return out;
}

}  // namespace lfi::reference
