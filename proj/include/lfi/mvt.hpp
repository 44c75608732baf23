#pragma once

#include "lfi/rng.hpp"
#include "lfi/types.hpp"

namespace lfi {

/// Multivariate Student t with three degrees of freedom.
class MvtStudentT3 {
 public:
  static constexpr double kDof = 3.0;

  /// Throws NotPositiveDefiniteError if `scale` is asymmetric or not PD.
  MvtStudentT3(Vector mean, Matrix scale);

  const Vector& mean() const noexcept { return mean_; }
  const Matrix& scale() const noexcept { return scale_; }
  int dimension() const noexcept { return static_cast<int>(mean_.size()); }

  double log_pdf(const Vector& x) const;
  Vector sample(RngStream& rng) const;

 private:
  Vector mean_;
  Matrix scale_;
  Matrix lower_;
  double log_norm_;
};

double mvt3_logpdf(const Vector& x, const MvtStudentT3& dist);

}  // namespace lfi
