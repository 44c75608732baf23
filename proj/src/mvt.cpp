#include "lfi/mvt.hpp"

#include <cmath>
#include <numbers>

#include "lfi/errors.hpp"
#include "lfi/special.hpp"

namespace lfi {

MvtStudentT3::MvtStudentT3(Vector mean, Matrix scale) : mean_(std::move(mean)), scale_(std::move(scale)) {
  const auto p = mean_.size();
  if (p == 0 || scale_.rows() != p || scale_.cols() != p) {
    throw PreconditionError("t3: mean and scale dimensions disagree");
  }
  if (!scale_.allFinite() || (scale_ - scale_.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw NotPositiveDefiniteError("t3: scale matrix is not symmetric");
  }
  Eigen::LLT<Matrix> llt(scale_);
  if (llt.info() != Eigen::Success) throw NotPositiveDefiniteError("t3: scale matrix is not positive definite");
  lower_ = llt.matrixL();
  const double dp = static_cast<double>(p);
  const double log_det = 2.0 * lower_.diagonal().array().unaryExpr([](double x) { return std::log(x); }).sum();
  log_norm_ = log_gamma(0.5 * (kDof + dp)) - log_gamma(0.5 * kDof) -
              0.5 * dp * std::log(kDof * std::numbers::pi) - 0.5 * log_det;
}

double MvtStudentT3::log_pdf(const Vector& x) const {
  if (x.size() != mean_.size()) throw PreconditionError("t3: dimension mismatch");
  const Vector z = lower_.triangularView<Eigen::Lower>().solve(x - mean_);
  const double dp = static_cast<double>(mean_.size());
  return log_norm_ - 0.5 * (kDof + dp) * std::log1p(z.squaredNorm() / kDof);
}

Vector MvtStudentT3::sample(RngStream& rng) const {
  Vector z(mean_.size());
  for (auto& v : z) v = rng.normal();
  const double chi2 = 2.0 * rng.gamma(0.5 * kDof);
  return mean_ + lower_ * z / std::sqrt(chi2 / kDof);
}

double mvt3_logpdf(const Vector& x, const MvtStudentT3& dist) { return dist.log_pdf(x); }

}  // namespace lfi
