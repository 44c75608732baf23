#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "lfi/empirical_likelihood.hpp"
#include "lfi/errors.hpp"
#include "lfi/rng.hpp"
#include "oracles.hpp"

using namespace lfi;

namespace {

Vector normals(RngStream& r, int n, double mean = 0.0) {
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = mean + r.normal();
  return x;
}

std::vector<double> as_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

double el_mean(const Vector& x, double theta) {
  return el_maximize(x, Vector::Constant(1, theta), mean_constraint()).neg2llr;
}

// Zero strictly inside the convex hull of 2-D points iff the largest angular gap is below pi.
bool origin_inside_2d(const Matrix& h) {
  std::vector<double> angles;
  for (Eigen::Index i = 0; i < h.rows(); ++i) angles.push_back(std::atan2(h(i, 1), h(i, 0)));
  std::sort(angles.begin(), angles.end());
  double gap = angles.front() + 2 * std::numbers::pi - angles.back();
  for (std::size_t i = 1; i < angles.size(); ++i) gap = std::max(gap, angles[i] - angles[i - 1]);
  return gap < std::numbers::pi - 1e-9;
}

}  // namespace

TEST_CASE("uniform weights at the sample mean") {
  RngStream r(1, 0);
  const Vector x = normals(r, 30, 2.0);
  const auto res = el_maximize(x, Vector::Constant(1, x.mean()), mean_constraint());
  CHECK(res.converged);
  CHECK(res.neg2llr < 1e-12);
  CHECK(res.lambda.norm() < 1e-10);
  for (Eigen::Index i = 0; i < x.size(); ++i) CHECK(res.weights[i] == doctest::Approx(1.0 / 30).epsilon(1e-10));
  const auto t = el_test(x, Vector::Constant(1, x.mean()), mean_constraint());
  CHECK(t.p_value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_FALSE(t.infeasible);
}

TEST_CASE("hull failure is an explicit infeasible state") {
  Vector x(5);
  x << 1.0, 2.0, 3.0, 4.0, 5.0;
  for (double theta : {0.5, 1.0, 5.0, 7.0}) {
    const auto res = el_maximize(x, Vector::Constant(1, theta), mean_constraint());
    CHECK(std::isinf(res.neg2llr));
    CHECK_FALSE(res.feasible);
    const auto t = el_test(x, Vector::Constant(1, theta), mean_constraint());
    CHECK(t.infeasible);
    CHECK(t.p_value == 0.0);
  }
  Matrix h(4, 2);
  h << 1, 0, 0, 1, 1, 1, 2, -0.5;
  CHECK_FALSE(el_solve(h).feasible);
  CHECK_FALSE(betel_solve(h).feasible);
  CHECK(betel_solve(h).log_weight == -std::numeric_limits<double>::infinity());
}

TEST_CASE("small instance agrees with the primal simplex oracle") {
  Vector x(4);
  x << -1.2, 0.3, 0.7, 2.1;
  const double oracle_value = oracle::el_primal_neg2llr(as_std(x), 0.2);
  CHECK(std::abs(el_mean(x, 0.2) - oracle_value) < 1e-6);

  RngStream r(2, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 2 + static_cast<int>(r.uniform() * 5);
    const Vector y = normals(r, n);
    const double theta = y.minCoeff() + r.uniform() * (y.maxCoeff() - y.minCoeff());
    const double expected = oracle::el_primal_neg2llr(as_std(y), theta);
    CAPTURE(rep);
    CHECK(std::abs(el_mean(y, theta) - expected) < 1e-6);
  }
}

TEST_CASE("result invariants on random feasible instances") {
  RngStream r(3, 0);
  int worst = 0;
  for (int rep = 0; rep < 300; ++rep) {
    const int n = 5 + static_cast<int>(r.uniform() * 60);
    const int q = 1 + static_cast<int>(r.uniform() * 3);
    Matrix h(n, q);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < q; ++j) h(i, j) = r.normal() + 0.3;
    const auto res = el_solve(h);
    if (!res.feasible) continue;
    CAPTURE(rep);
    CHECK(res.converged);
    worst = std::max(worst, res.iterations);
    CHECK(res.weights.minCoeff() > 0.0);
    CHECK(res.weights.maxCoeff() < 1.0);
    CHECK(res.weights.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((h.transpose() * res.weights).lpNorm<Eigen::Infinity>() < 1e-8);
    const double from_weights = -2.0 * (res.weights.array() * n).log().sum();
    CHECK(res.neg2llr == doctest::Approx(from_weights).epsilon(1e-8).scale(1.0));
    CHECK(res.neg2llr >= 0.0);

    // Translating h and the target together leaves the weights unchanged.
    const Vector c = Vector::LinSpaced(q, -3.0, 5.0);
    const auto shifted = el_solve(h.rowwise() + c.transpose(), c);
    CHECK((shifted.weights - res.weights).lpNorm<Eigen::Infinity>() < 1e-7);
  }
  CHECK(worst <= kElMaxIterations);
}

TEST_CASE("feasibility verdicts match a 2-D hull oracle for EL and BETEL") {
  RngStream r(4, 0);
  int inside = 0, outside = 0;
  for (int rep = 0; rep < 400; ++rep) {
    const int n = 3 + static_cast<int>(r.uniform() * 8);
    Matrix h(n, 2);
    const double shift = 1.5 * r.normal();
    for (int i = 0; i < n; ++i) {
      h(i, 0) = r.normal() + shift;
      h(i, 1) = r.normal();
    }
    const bool expected = origin_inside_2d(h);
    (expected ? inside : outside)++;
    CAPTURE(rep);
    CHECK(el_solve(h).feasible == expected);
    CHECK(betel_solve(h).feasible == expected);
  }
  CHECK(inside > 50);
  CHECK(outside > 50);
}

TEST_CASE("median constraint at the sample median") {
  // n = 2k + 1: k values get h = +1/2 and k + 1 get -1/2; the optimum puts
  // mass 1/2 on each group, giving a closed form.
  RngStream r(5, 0);
  const int k = 50, n = 2 * k + 1;
  Vector y = normals(r, n);
  std::vector<double> sorted = as_std(y);
  std::sort(sorted.begin(), sorted.end());
  const auto res = el_maximize(y, Vector::Constant(1, sorted[k]), quantile_constraint(0.5));
  const double expected = -2.0 * (k * std::log(n * 0.5 / k) + (k + 1) * std::log(n * 0.5 / (k + 1)));
  CHECK(res.neg2llr == doctest::Approx(expected).epsilon(1e-8));
  CHECK(res.neg2llr < 0.02);
}

TEST_CASE("BETEL weights and multiplier") {
  RngStream r(6, 0);
  Vector x = normals(r, 12);
  x.array() -= x.mean();
  const auto centered = betel_solve(x);
  CHECK(centered.log_weight == doctest::Approx(-12 * std::log(12.0)));
  CHECK(centered.lambda.norm() < 1e-12);
  const auto el_centered = el_solve(x);
  CHECK((centered.weights - el_centered.weights).norm() < 1e-12);

  for (int rep = 0; rep < 50; ++rep) {
    Vector h = normals(r, 5, 0.4);
    if (h.minCoeff() >= 0.0 || h.maxCoeff() <= 0.0) continue;
    const auto b = betel_solve(h);
    REQUIRE(b.feasible);
    CHECK(b.weights.minCoeff() > 0.0);
    CHECK(b.weights.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(b.lambda[0] - oracle::betel_lambda_golden(as_std(h))) < 1e-6);
    double lw = 0.0;
    for (int i = 0; i < 5; ++i) lw += std::log(b.weights[i]);
    CHECK(b.log_weight == doctest::Approx(lw).epsilon(1e-10));
  }
}

TEST_CASE("log likelihood weight dispatch") {
  Vector h(4);
  h << -1.0, 0.5, 0.2, 0.9;
  CHECK(log_likelihood_weight(LikelihoodFlavor::el, h) == doctest::Approx(-0.5 * el_solve(h).neg2llr));
  CHECK(log_likelihood_weight(LikelihoodFlavor::betel, h) == doctest::Approx(betel_solve(h).log_weight));
  Vector bad(3);
  bad << 1.0, 2.0, 3.0;
  CHECK(log_likelihood_weight(LikelihoodFlavor::el, bad) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("errors") {
  Matrix h(2, 2);
  h << 1, -1, -1, 1;
  CHECK_THROWS_AS(el_solve(h), PreconditionError);
  Vector nan_h(3);
  nan_h << 1.0, std::nan(""), -1.0;
  CHECK_THROWS_AS(el_solve(nan_h), DataError);
  Vector x(3);
  x << 1.0, 2.0, 3.0;
  CHECK_THROWS_AS(el_maximize(x, Vector::Zero(2), mean_constraint()), PreconditionError);
  CHECK_THROWS_AS(quantile_constraint(1.0), DomainError);
  CHECK_THROWS_AS(el_mean_confint(x, 1.5), DomainError);
  const ConstraintFunction inf_h([](const DataMatrix& d, const ParameterVector&) -> Matrix {
    return Matrix::Constant(d.rows(), 1, std::numeric_limits<double>::infinity());
  });
  CHECK_THROWS_AS(el_maximize(x, Vector::Zero(1), inf_h), DataError);
}

TEST_CASE("intervals contain the mean and stay in the data range") {
  RngStream r(7, 0);
  for (int rep = 0; rep < 50; ++rep) {
    const Vector x = normals(r, 20, 3.0);
    const auto ci = el_mean_confint(x, 0.05);
    CHECK(ci.lower <= x.mean());
    CHECK(ci.upper >= x.mean());
    CHECK(ci.lower >= x.minCoeff());
    CHECK(ci.upper <= x.maxCoeff());
    CHECK(ci.estimate == doctest::Approx(x.mean()).epsilon(1e-6));
    const double threshold = 3.841458820694124;  // chi-square(1) 95% point
    CHECK(el_mean(x, ci.lower) == doctest::Approx(threshold).epsilon(1e-6));
    CHECK(el_mean(x, ci.upper) == doctest::Approx(threshold).epsilon(1e-6));
  }
}

TEST_CASE("Wilks calibration of the mean test") {
  RngStream r(8, 0);
  std::vector<double> stats;
  for (int rep = 0; rep < 2000; ++rep) stats.push_back(el_mean(normals(r, 100), 0.0));
  const double ks = oracle::ks_statistic(stats, [](double v) { return 1.0 - oracle::chi2_sf(v, 1); });
  CHECK(ks < oracle::ks_critical_001(stats.size()));
}

TEST_CASE("two-dimensional test rejection rate") {
  RngStream r(9, 0);
  Vector mu(2);
  mu << 1.0, 2.0;
  int rejections = 0;
  for (int rep = 0; rep < 2000; ++rep) {
    Matrix y(50, 2);
    for (int i = 0; i < 50; ++i) y.row(i) << 1.0 + r.normal(), 2.0 + r.normal();
    rejections += el_test(y, mu, mean_constraint()).p_value < 0.05;
  }
  CHECK(std::abs(rejections / 2000.0 - 0.05) < 0.02);
}

TEST_CASE("interval coverage") {
  RngStream r(10, 0);
  int covered = 0;
  for (int rep = 0; rep < 2000; ++rep) {
    const auto ci = el_mean_confint(normals(r, 50), 0.05);
    covered += ci.lower <= 0.0 && 0.0 <= ci.upper;
  }
  CHECK(std::abs(covered / 2000.0 - 0.95) < 0.02);
}
