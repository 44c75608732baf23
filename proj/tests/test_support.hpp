#pragma once

#include <stdexcept>

#include "lfi/rng.hpp"
#include "lfi/synthetic_likelihood.hpp"

namespace testing_support {

using lfi::Matrix;
using lfi::Vector;

/// Common-random-numbers simulator: replicate r always returns theta + bank.row(r).
/// With a centered bank whose sample covariance is exactly `cov`, the fitted
/// moments at theta are (theta, cov) for every theta, so the synthetic
/// likelihood is the exact normal density.
class CrnSimulator final : public lfi::SimulatorModel {
 public:
  explicit CrnSimulator(Matrix bank) : bank_(std::move(bank)) {}
  int parameter_dim() const override { return static_cast<int>(bank_.cols()); }
  int summary_dim() const override { return static_cast<int>(bank_.cols()); }
  lfi::SummaryVector simulate(const lfi::ParameterVector& theta, lfi::RngStream& rng) const override {
    return theta + bank_.row(static_cast<Eigen::Index>(rng.stream_id() % bank_.rows())).transpose();
  }

 private:
  Matrix bank_;
};

/// n x d rows with zero mean and unbiased sample covariance exactly `cov`.
inline Matrix whitened_bank(int n, const Matrix& cov, std::uint64_t seed) {
  const auto d = cov.rows();
  lfi::RngStream r(seed, 0);
  Matrix x(n, d);
  for (int i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = r.normal();
  x.rowwise() -= x.colwise().mean();
  const Matrix s = x.transpose() * x / (n - 1.0);
  const Matrix ls = Eigen::LLT<Matrix>(s).matrixL();
  const Matrix lc = Eigen::LLT<Matrix>(cov).matrixL();
  // rows x_i -> lc ls^{-1} x_i
  const Matrix white = ls.triangularView<Eigen::Lower>().solve(x.transpose());
  return (lc * white).transpose();
}

class ConstantSimulator final : public lfi::SimulatorModel {
 public:
  explicit ConstantSimulator(Vector value) : value_(std::move(value)) {}
  int parameter_dim() const override { return static_cast<int>(value_.size()); }
  int summary_dim() const override { return static_cast<int>(value_.size()); }
  lfi::SummaryVector simulate(const lfi::ParameterVector&, lfi::RngStream&) const override { return value_; }

 private:
  Vector value_;
};

/// Throws on every replicate whose stream id is >= `first_bad`.
class FailingSimulator final : public lfi::SimulatorModel {
 public:
  explicit FailingSimulator(std::uint64_t first_bad) : first_bad_(first_bad) {}
  int parameter_dim() const override { return 1; }
  int summary_dim() const override { return 1; }
  lfi::SummaryVector simulate(const lfi::ParameterVector& theta, lfi::RngStream& rng) const override {
    if (rng.stream_id() >= first_bad_) throw std::runtime_error("model blew up");
    return theta;
  }

 private:
  std::uint64_t first_bad_;
};

}  // namespace testing_support
