#pragma once

#include <functional>

#include "lfi/types.hpp"

namespace lfi {

/// Estimating function h(y, theta). Evaluated on a whole data set at once:
/// row i of the result is h(y_i, theta) for observation row y_i.
class ConstraintFunction {
 public:
  using Batch = std::function<Matrix(const DataMatrix& data, const ParameterVector& theta)>;
  using Pointwise = std::function<Vector(const Eigen::RowVectorXd& y, const ParameterVector& theta)>;

  explicit ConstraintFunction(Batch fn);

  static ConstraintFunction pointwise(Pointwise fn);

  /// Evaluates and checks that every entry is finite (DataError otherwise).
  Matrix operator()(const DataMatrix& data, const ParameterVector& theta) const;

 private:
  Batch fn_;
};

/// h(y, theta) = y - theta; theta has one entry per data column.
ConstraintFunction mean_constraint();

/// h(y, theta) = I(y < theta) - prob for scalar data.
ConstraintFunction quantile_constraint(double prob);

/// Residual tolerance ||sum_i p_i h_i||_inf at which the solvers stop.
inline constexpr double kElTolerance = 1e-8;
inline constexpr int kElMaxIterations = 50;

struct ElResult {
  Vector weights;
  Vector lambda;
  /// -2 log prod(n p_i); +inf when zero is not inside the convex hull of {h_i}.
  double neg2llr = 0.0;
  bool converged = false;
  bool feasible = true;
  int iterations = 0;
};

/// Profile EL for constraint values H (n x q, one row per observation) against
/// the target sum_i p_i H_i = target. Damped Newton on the dual using Owen's
/// pseudo-logarithm. Requires n >= q + 1.
ElResult el_solve(const Matrix& h, const Vector& target);
ElResult el_solve(const Matrix& h);

ElResult el_maximize(const DataMatrix& data, const ParameterVector& theta,
                     const ConstraintFunction& h);

struct ElTestResult {
  double neg2llr = 0.0;
  double p_value = 1.0;
  Vector lambda;
  Vector weights;
  int iterations = 0;
  bool infeasible = false;
};

/// EL ratio test with a chi-square(q) reference distribution.
ElTestResult el_test(const DataMatrix& data, const ParameterVector& theta,
                     const ConstraintFunction& h);

struct ScalarInterval {
  double lower;
  double upper;
  /// Minimizer of -2LLR inside the search bracket.
  double estimate;
};

/// {theta : -2LLR(theta) <= chi2_1 upper-alpha quantile}, found by bisection on
/// each side of the minimizing theta within [search_lower, search_upper].
ScalarInterval el_confint(const DataMatrix& data, const ConstraintFunction& h, double alpha,
                          double search_lower, double search_upper);

/// Mean-constraint interval with the data range as the search bracket.
ScalarInterval el_mean_confint(const Vector& data, double alpha);

struct BetelResult {
  /// Tilted weights exp(lambda^T h_i) / sum_j exp(lambda^T h_j).
  Vector weights;
  Vector lambda;
  /// sum_i log p*_i, or -inf when infeasible.
  double log_weight = 0.0;
  bool converged = false;
  bool feasible = true;
  int iterations = 0;
};

/// Exponentially tilted EL: minimizes log sum_i exp(lambda^T h_i).
BetelResult betel_solve(const Matrix& h);

double betel_logweight(const DataMatrix& data, const ParameterVector& theta,
                       const ConstraintFunction& h);

}  // namespace lfi

namespace lfi {

enum class LikelihoodFlavor { el, betel };

/// Log of the unnormalized likelihood weight for constraint values H:
/// -0.5 * neg2llr for EL, sum_i log p*_i for BETEL, -inf when infeasible.
double log_likelihood_weight(LikelihoodFlavor flavor, const Matrix& h);

}  // namespace lfi
