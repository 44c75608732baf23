#include "lfi/models.hpp"

#include <cmath>
#include <limits>

#include "lfi/errors.hpp"
#include "lfi/special.hpp"

namespace lfi {

void GkParams::validate() const {
  if (!std::isfinite(a) || !std::isfinite(g) || !std::isfinite(c)) throw DomainError("g-and-k parameters must be finite");
  if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("g-and-k scale b must be positive");
  if (!(k > -0.5) || !std::isfinite(k)) throw DomainError("g-and-k kurtosis k must exceed -0.5");
}

ParameterVector GkParams::to_vector() const {
  ParameterVector v(4);
  v << a, b, g, k;
  return v;
}

GkParams GkParams::from_vector(const ParameterVector& theta, double c) {
  if (theta.size() != 4) throw PreconditionError("g-and-k parameter vector needs 4 entries");
  return GkParams{theta[0], theta[1], theta[2], theta[3], c};
}

namespace {

// Quantile at a given standard normal deviate z.
double gk_at(double z, const GkParams& p) {
  // (1 - e^{-gz}) / (1 + e^{-gz}) = tanh(gz / 2)
  const double skew = 1.0 + p.c * std::tanh(0.5 * p.g * z);
  const double tail = p.k == 0.0 ? 1.0 : std::pow(1.0 + z * z, p.k);
  return p.a + p.b * skew * tail * z;
}

}  // namespace

double gk_quantile(double p, const GkParams& params) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("g-and-k quantile: p must lie in (0, 1)");
  params.validate();
  return gk_at(normal_quantile(p), params);
}

Vector gk_simulate(int nobs, const GkParams& params, RngStream& rng) {
  if (nobs < 1) throw PreconditionError("g-and-k simulation needs nobs >= 1");
  params.validate();
  Vector out(nobs);
  for (auto& y : out) y = gk_at(normal_quantile(rng.uniform()), params);
  return out;
}

void QuantileConstraintSpec::validate() const {
  if (probabilities.empty()) throw DomainError("quantile constraints need at least one probability");
  for (std::size_t j = 0; j < probabilities.size(); ++j) {
    const double p = probabilities[j];
    if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile probabilities must lie in (0, 1)");
    if (j > 0 && !(p > probabilities[j - 1])) throw DomainError("quantile probabilities must be strictly increasing");
  }
}

ConstraintFunction gk_quantile_constraints(const QuantileConstraintSpec& spec) {
  spec.validate();
  std::vector<double> z;
  for (double p : spec.probabilities) z.push_back(normal_quantile(p));
  return ConstraintFunction([spec, z](const DataMatrix& data, const ParameterVector& theta) -> Matrix {
    if (data.cols() != 1) throw PreconditionError("g-and-k constraints need scalar data");
    const GkParams params = GkParams::from_vector(theta, spec.c);
    params.validate();
    const auto q = static_cast<Eigen::Index>(z.size());
    Vector cut(q);
    for (Eigen::Index j = 0; j < q; ++j) cut[j] = gk_at(z[static_cast<std::size_t>(j)], params);
    Matrix h(data.rows(), q);
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
      for (Eigen::Index j = 0; j < q; ++j) {
        h(i, j) = (data(i, 0) < cut[j] ? 1.0 : 0.0) - spec.probabilities[static_cast<std::size_t>(j)];
      }
    }
    return h;
  });
}

double gk_log_bayes_factor(const Vector& data, const GkParams& params1, const GkParams& params2,
                           const QuantileConstraintSpec& spec) {
  const ConstraintFunction h = gk_quantile_constraints(spec);
  const ElResult r1 = el_maximize(data, params1.to_vector(), h);
  const ElResult r2 = el_maximize(data, params2.to_vector(), h);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (!r1.feasible && !r2.feasible) throw NumericalError("Bayes factor undefined: both EL problems are infeasible");
  if (!r1.feasible) return -kInf;
  if (!r2.feasible) return kInf;
  return -0.5 * (r1.neg2llr - r2.neg2llr);
}

GkBayesFactorStudy gk_bayes_factor_study(const GkParams& truth, const GkParams& alt2, const GkParams& alt3,
                                         const std::vector<int>& sample_sizes, int replicates,
                                         const QuantileConstraintSpec& spec, const RngStream& rng) {
  if (replicates < 1) throw PreconditionError("Bayes factor study needs at least one replicate");
  spec.validate();
  truth.validate();
  alt2.validate();
  alt3.validate();
  const auto sizes = static_cast<Eigen::Index>(sample_sizes.size());
  GkBayesFactorStudy study;
  study.sample_sizes = sample_sizes;
  study.log_bf.resize(replicates, 2 * sizes);
  for (Eigen::Index j = 0; j < sizes; ++j) {
    const int n = sample_sizes[static_cast<std::size_t>(j)];
    const RngStream size_rng = rng.split(static_cast<std::uint64_t>(j));
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < replicates; ++r) {
      try {
        RngStream rep_rng = size_rng.split(static_cast<std::uint64_t>(r));
        const Vector data = gk_simulate(n, truth, rep_rng);
        study.log_bf(r, j) = gk_log_bayes_factor(data, truth, alt2, spec);
        study.log_bf(r, sizes + j) = gk_log_bayes_factor(data, truth, alt3, spec);
      } catch (...) {
#pragma omp critical(lfi_gk_study_failure)
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
  }
  return study;
}

MvnToySimulator::MvnToySimulator(Matrix covariance, bool degenerate)
    : covariance_(std::move(covariance)), degenerate_(degenerate) {
  if (covariance_.rows() < 1 || covariance_.rows() != covariance_.cols()) {
    throw PreconditionError("toy covariance must be square and non-empty");
  }
  if (!degenerate_) {
    Eigen::LLT<Matrix> llt(covariance_);
    if (llt.info() != Eigen::Success) throw NotPositiveDefiniteError("toy covariance is not positive definite");
    lower_ = llt.matrixL();
  }
}

SummaryVector MvnToySimulator::simulate(const ParameterVector& theta, RngStream& rng) const {
  if (theta.size() != covariance_.rows()) throw PreconditionError("toy: theta has the wrong dimension");
  if (degenerate_) return theta;
  Vector z(theta.size());
  for (auto& v : z) v = rng.normal();
  return theta + lower_ * z;
}

}  // namespace lfi
