#include "lfi/empirical_likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lfi/errors.hpp"
#include "lfi/special.hpp"

namespace lfi {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kSolverIterationCap = 100;
constexpr int kMaxHalvings = 60;
constexpr double kArmijo = 1e-4;
constexpr double kStallTolerance = 1e-6;
constexpr int kPolishSteps = 3;

// Owen's pseudo-logarithm: log z for z >= eps, its second-order Taylor
// expansion at eps below that, so the dual is finite for every lambda.
struct PseudoLog {
  double eps;
  double log_eps;

  explicit PseudoLog(double e) : eps(e), log_eps(std::log(e)) {}

  double value(double z) const {
    if (z >= eps) return std::log(z);
    const double r = z / eps;
    return log_eps - 1.5 + 2.0 * r - 0.5 * r * r;
  }
  double first(double z) const { return z >= eps ? 1.0 / z : (2.0 - z / eps) / eps; }
  // Negated second derivative (positive).
  double neg_second(double z) const { return z >= eps ? 1.0 / (z * z) : 1.0 / (eps * eps); }
};

void check_shape(const Matrix& h) {
  const auto n = h.rows();
  const auto q = h.cols();
  if (q < 1) throw PreconditionError("constraint dimension must be at least 1");
  if (n < q + 1) throw PreconditionError("EL needs at least q + 1 observations");
  if (!h.allFinite()) throw DataError("constraint values must be finite");
}

// Exact verdict for a scalar constraint: zero must lie strictly inside
// [min h, max h] unless every value is zero.
bool scalar_hull_fails(const Matrix& h) {
  if (h.cols() != 1) return false;
  const double lo = h.col(0).minCoeff();
  const double hi = h.col(0).maxCoeff();
  if (lo == 0.0 && hi == 0.0) return false;
  return !(lo < 0.0 && hi > 0.0);
}

// lambda with h lambda >= 0 everywhere and > 0 somewhere proves zero is not
// in the interior of the hull of the rows of h.
bool separates(const Matrix& h, const Vector& direction) {
  if (direction.squaredNorm() == 0.0) return false;
  const Vector w = h * direction;
  return w.minCoeff() >= 0.0 && w.maxCoeff() > 0.0;
}

Vector solve_newton(const Matrix& hessian, const Vector& rhs) {
  Eigen::LDLT<Matrix> ldlt(hessian);
  if (ldlt.info() == Eigen::Success && ldlt.isPositive() &&
      ldlt.vectorD().minCoeff() > 1e-14 * std::max(1.0, ldlt.vectorD().maxCoeff())) {
    return ldlt.solve(rhs);
  }
  return hessian.completeOrthogonalDecomposition().solve(rhs);
}

ElResult infeasible_el(Eigen::Index n, Eigen::Index q, int iterations) {
  ElResult r;
  r.weights = Vector::Zero(n);
  r.lambda = Vector::Constant(q, std::numeric_limits<double>::quiet_NaN());
  r.neg2llr = kInf;
  r.converged = false;
  r.feasible = false;
  r.iterations = iterations;
  return r;
}

}  // namespace

ConstraintFunction::ConstraintFunction(Batch fn) : fn_(std::move(fn)) {
  if (!fn_) throw PreconditionError("empty constraint function");
}

ConstraintFunction ConstraintFunction::pointwise(Pointwise fn) {
  return ConstraintFunction([fn = std::move(fn)](const DataMatrix& data, const ParameterVector& theta) {
    Matrix out;
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
      const Vector hi = fn(data.row(i), theta);
      if (i == 0) out.resize(data.rows(), hi.size());
      if (hi.size() != out.cols()) throw DataError("constraint returned vectors of varying length");
      out.row(i) = hi.transpose();
    }
    return out;
  });
}

Matrix ConstraintFunction::operator()(const DataMatrix& data, const ParameterVector& theta) const {
  Matrix h = fn_(data, theta);
  if (h.rows() != data.rows()) throw DataError("constraint must return one row per observation");
  if (!h.allFinite()) throw DataError("constraint values must be finite");
  return h;
}

ConstraintFunction mean_constraint() {
  return ConstraintFunction([](const DataMatrix& data, const ParameterVector& theta) -> Matrix {
    if (theta.size() != data.cols()) throw PreconditionError("mean constraint: theta needs one entry per data column");
    return data.rowwise() - theta.transpose();
  });
}

ConstraintFunction quantile_constraint(double prob) {
  if (!(prob > 0.0 && prob < 1.0)) throw DomainError("quantile probability must lie in (0, 1)");
  return ConstraintFunction([prob](const DataMatrix& data, const ParameterVector& theta) -> Matrix {
    if (data.cols() != 1 || theta.size() != 1) throw PreconditionError("quantile constraint is scalar");
    Matrix h(data.rows(), 1);
    for (Eigen::Index i = 0; i < data.rows(); ++i) h(i, 0) = (data(i, 0) < theta[0] ? 1.0 : 0.0) - prob;
    return h;
  });
}

ElResult el_solve(const Matrix& h_raw, const Vector& target) {
  check_shape(h_raw);
  if (target.size() != h_raw.cols()) throw PreconditionError("target dimension mismatch");
  const Matrix h = h_raw.rowwise() - target.transpose();
  const auto n = h.rows();
  const auto q = h.cols();
  if (scalar_hull_fails(h)) return infeasible_el(n, q, 0);

  const double dn = static_cast<double>(n);
  const PseudoLog plog(1.0 / dn);
  auto objective = [&](const Vector& lam) {
    const Vector z = Vector::Ones(n) + h * lam;
    double f = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) f -= plog.value(z[i]);
    return f;
  };

  auto feasible_result = [&](const Vector& lam, const Vector& z, int iter, bool converged) {
    ElResult r;
    r.weights = z.cwiseInverse() / dn;
    r.weights /= r.weights.sum();
    r.lambda = lam;
    r.neg2llr = std::max(0.0, -2.0 * (r.weights.array() * dn).unaryExpr([](double x) { return std::log(x); }).sum());
    r.converged = converged;
    r.feasible = true;
    r.iterations = iter;
    return r;
  };

  Vector lambda = Vector::Zero(q);
  double f = objective(lambda);
  int iter = 0;
  for (;; ++iter) {
    const Vector z = Vector::Ones(n) + h * lambda;
    if (z.minCoeff() >= plog.eps) {
      const Vector residual = h.transpose() * z.cwiseInverse() / dn;
      if (residual.lpNorm<Eigen::Infinity>() < kElTolerance) {
        // A few undamped polishing steps: near the hull boundary the smallest
        // weights are sensitive to residuals well below the tolerance.
        Vector best_lambda = lambda, best_z = z;
        double best_res = residual.lpNorm<Eigen::Infinity>();
        for (int k = 0; k < kPolishSteps && best_res > 0.0; ++k) {
          const Vector inv = best_z.cwiseInverse();
          const Matrix hess = h.transpose() * inv.cwiseAbs2().asDiagonal() * h;
          const Vector next = best_lambda + solve_newton(hess, h.transpose() * inv);
          const Vector next_z = Vector::Ones(n) + h * next;
          if (next_z.minCoeff() < plog.eps) break;
          const double next_res = (h.transpose() * next_z.cwiseInverse() / dn).lpNorm<Eigen::Infinity>();
          if (!(next_res < best_res)) break;
          best_lambda = next;
          best_z = next_z;
          best_res = next_res;
        }
        return feasible_result(best_lambda, best_z, iter, true);
      }
    }
    if (iter == kSolverIterationCap) break;

    Vector d1(n), w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      d1[i] = plog.first(z[i]);
      w[i] = plog.neg_second(z[i]);
    }
    const Vector grad = -(h.transpose() * d1);
    const Matrix hess = h.transpose() * w.asDiagonal() * h;
    const Vector step = solve_newton(hess, -grad);
    const double slope = grad.dot(step);
    if (!(slope < 0.0)) break;

    double t = 1.0;
    Vector next = lambda + step;
    double f_next = objective(next);
    for (int k = 0; k < kMaxHalvings && !(f_next <= f + kArmijo * t * slope); ++k) {
      t *= 0.5;
      next = lambda + t * step;
      f_next = objective(next);
    }
    if (!(f_next <= f)) break;
    lambda = next;
    f = f_next;
    if (separates(h, lambda)) return infeasible_el(n, q, iter + 1);
  }
  // Stalled at machine precision short of the tolerance: keep a loosely
  // converged interior solution, anything else is a hull failure.
  const Vector z = Vector::Ones(n) + h * lambda;
  if (z.minCoeff() >= plog.eps &&
      (h.transpose() * z.cwiseInverse() / dn).lpNorm<Eigen::Infinity>() < kStallTolerance) {
    return feasible_result(lambda, z, iter, false);
  }
  return infeasible_el(n, q, iter);
}

ElResult el_solve(const Matrix& h) { return el_solve(h, Vector::Zero(h.cols())); }

ElResult el_maximize(const DataMatrix& data, const ParameterVector& theta, const ConstraintFunction& h) {
  return el_solve(h(data, theta));
}

ElTestResult el_test(const DataMatrix& data, const ParameterVector& theta, const ConstraintFunction& h) {
  const Matrix values = h(data, theta);
  const ElResult r = el_solve(values);
  ElTestResult out;
  out.neg2llr = r.neg2llr;
  out.lambda = r.lambda;
  out.weights = r.weights;
  out.iterations = r.iterations;
  out.infeasible = !r.feasible;
  out.p_value = r.feasible ? chi2_sf(r.neg2llr, static_cast<int>(values.cols())) : 0.0;
  return out;
}

ScalarInterval el_confint(const DataMatrix& data, const ConstraintFunction& h, double alpha,
                          double search_lower, double search_upper) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("confidence level alpha must lie in (0, 1)");
  if (!(search_lower < search_upper)) throw PreconditionError("search bracket must satisfy lower < upper");
  auto r = [&](double theta) { return el_maximize(data, Vector::Constant(1, theta), h).neg2llr; };

  // Golden-section search for the minimizer of -2LLR.
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = search_lower, b = search_upper;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = r(c), fd = r(d);
  for (int i = 0; i < 200 && (b - a) > 1e-12 * std::max(1.0, std::abs(a) + std::abs(b)); ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = r(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = r(d);
    }
  }
  const double estimate = 0.5 * (a + b);
  if (!std::isfinite(r(estimate))) throw NumericalError("EL is infeasible everywhere in the search bracket");
  const double threshold = chi2_upper_quantile(alpha, 1);

  auto crossing = [&](double inside, double outside) {
    if (r(outside) <= threshold) return outside;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (inside + outside);
      if (mid == inside || mid == outside) break;
      (r(mid) <= threshold ? inside : outside) = mid;
    }
    return inside;
  };
  return {crossing(estimate, search_lower), crossing(estimate, search_upper), estimate};
}

ScalarInterval el_mean_confint(const Vector& data, double alpha) {
  if (data.size() < 2) throw PreconditionError("interval needs at least two observations");
  return el_confint(data, mean_constraint(), alpha, data.minCoeff(), data.maxCoeff());
}

BetelResult betel_solve(const Matrix& h) {
  check_shape(h);
  const auto n = h.rows();
  const auto q = h.cols();
  auto infeasible = [&](int iterations) {
    BetelResult r;
    r.weights = Vector::Zero(n);
    r.lambda = Vector::Constant(q, std::numeric_limits<double>::quiet_NaN());
    r.log_weight = -kInf;
    r.feasible = false;
    r.iterations = iterations;
    return r;
  };
  if (scalar_hull_fails(h)) return infeasible(0);

  auto log_sum_exp = [](const Vector& v) {
    const double top = v.maxCoeff();
    return top + std::log((v.array() - top).unaryExpr([](double x) { return std::exp(x); }).sum());
  };

  auto feasible_result = [&](const Vector& lam, const Vector& eta, double g, int iter, bool converged) {
    BetelResult r;
    const Vector p = (eta.array() - g).unaryExpr([](double x) { return std::exp(x); }).matrix();
    r.weights = p / p.sum();
    r.lambda = lam;
    r.log_weight = (eta.array() - g).sum();
    r.converged = converged;
    r.feasible = true;
    r.iterations = iter;
    return r;
  };

  Vector lambda = Vector::Zero(q);
  Vector eta = h * lambda;
  double g = log_sum_exp(eta);
  Vector grad;
  int iter = 0;
  for (;; ++iter) {
    const Vector p = (eta.array() - g).unaryExpr([](double x) { return std::exp(x); }).matrix();
    grad = h.transpose() * p;
    if (grad.lpNorm<Eigen::Infinity>() < kElTolerance) return feasible_result(lambda, eta, g, iter, true);
    if (iter == kSolverIterationCap) break;
    const Matrix hess = h.transpose() * p.asDiagonal() * h - grad * grad.transpose();
    const Vector step = solve_newton(hess, -grad);
    const double slope = grad.dot(step);
    if (!(slope < 0.0)) break;

    double t = 1.0;
    Vector next = lambda + step;
    Vector next_eta = h * next;
    double g_next = log_sum_exp(next_eta);
    for (int k = 0; k < kMaxHalvings && !(g_next <= g + kArmijo * t * slope); ++k) {
      t *= 0.5;
      next = lambda + t * step;
      next_eta = h * next;
      g_next = log_sum_exp(next_eta);
    }
    if (!(g_next <= g)) break;
    lambda = next;
    eta = next_eta;
    g = g_next;
    if (separates(h, -lambda)) return infeasible(iter + 1);
  }
  if (grad.lpNorm<Eigen::Infinity>() < kStallTolerance) return feasible_result(lambda, eta, g, iter, false);
  return infeasible(iter);
}

double betel_logweight(const DataMatrix& data, const ParameterVector& theta, const ConstraintFunction& h) {
  return betel_solve(h(data, theta)).log_weight;
}

double log_likelihood_weight(LikelihoodFlavor flavor, const Matrix& h) {
  switch (flavor) {
    case LikelihoodFlavor::el: {
      const ElResult r = el_solve(h);
      return r.feasible ? -0.5 * r.neg2llr : -kInf;
    }
    case LikelihoodFlavor::betel:
      return betel_solve(h).log_weight;
  }
  throw PreconditionError("unknown likelihood flavor");
}

}  // namespace lfi
