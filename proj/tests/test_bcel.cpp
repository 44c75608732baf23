#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "lfi/bcel.hpp"
#include "lfi/errors.hpp"
#include "oracles.hpp"

using namespace lfi;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Vector normal_data(std::uint64_t seed, int n, double mean, double sd = 1.0) {
  RngStream r(seed, 1);
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = mean + sd * r.normal();
  return x;
}

BcelConfig example_one(int draws) {
  BcelConfig c{.draws = draws,
               .prior = PriorSpec::uniform(Vector::Constant(1, -10.0), Vector::Constant(1, 30.0)),
               .constraint = mean_constraint(),
               .resample_count = std::nullopt};
  return c;
}

ConstraintFunction always_satisfied() {
  return ConstraintFunction([](const DataMatrix& d, const ParameterVector&) -> Matrix {
    return Matrix::Zero(d.rows(), 1);
  });
}

struct Summary {
  double mean;
  double sd;
  double se;
};

Summary summarize(const WeightedSample& s) {
  const Vector w = s.normalized_weights();
  const double mean = w.dot(s.points.col(0));
  const double var = w.dot((s.points.col(0).array() - mean).square().matrix());
  return {mean, std::sqrt(var), std::sqrt(var / s.ess())};
}

// 1-D Student t3 density written out by hand.
double t3_pdf(double x, double m, double scale_var) {
  const double s = std::sqrt(scale_var);
  const double z = (x - m) / s;
  return std::tgamma(2.0) / (std::tgamma(1.5) * std::sqrt(3.0 * std::numbers::pi) * s) *
         std::pow(1.0 + z * z / 3.0, -2.0);
}

}  // namespace

TEST_CASE("a constraint that always holds returns the prior") {
  auto cfg = example_one(400);
  cfg.constraint = always_satisfied();
  const auto s = run_bcel(normal_data(1, 20, 0.0), cfg, RngStream(3, 0));
  CHECK(s.size() == 400);
  CHECK(s.log_weights.maxCoeff() == s.log_weights.minCoeff());
  CHECK(s.ess() == doctest::Approx(400.0).epsilon(1e-12));
  CHECK(s.points.minCoeff() >= -10.0);
  CHECK(s.points.maxCoeff() <= 30.0);
  for (int g : s.generations) CHECK(g == 1);
}

TEST_CASE("example one posterior") {
  const auto s = run_bcel(normal_data(7, 100, 10.0), example_one(5000), RngStream(7, 0));
  const auto sum = summarize(s);
  CHECK(sum.mean >= 9.8);
  CHECK(sum.mean <= 10.3);
  CHECK(sum.sd >= 0.05);
  CHECK(sum.sd <= 0.25);
}

TEST_CASE("weights are exactly zero outside the data hull and reproducible") {
  const Vector data = normal_data(2, 30, 10.0);
  const auto s = run_bcel(data, example_one(2000), RngStream(2, 0));
  int zeros = 0;
  for (Eigen::Index i = 0; i < s.points.rows(); ++i) {
    const double th = s.points(i, 0);
    const bool outside = th <= data.minCoeff() || th >= data.maxCoeff();
    CHECK((s.log_weights[i] == kNegInf) == outside);
    zeros += outside;
    if (!outside) {
      const double expected = -0.5 * el_maximize(data, Vector::Constant(1, th), mean_constraint()).neg2llr;
      CHECK(s.log_weights[i] == doctest::Approx(expected).epsilon(1e-12));
    }
  }
  CHECK(zeros > 0);
  CHECK(s.normalized_weights().minCoeff() >= 0.0);

  const auto again = run_bcel(data, example_one(2000), RngStream(2, 0));
  CHECK(again.points == s.points);
  CHECK(again.log_weights == s.log_weights);
}

TEST_CASE("BETEL flavor uses the tilted log weight") {
  const Vector data = normal_data(4, 25, 1.0);
  auto cfg = example_one(300);
  cfg.flavor = LikelihoodFlavor::betel;
  const auto s = run_bcel(data, cfg, RngStream(4, 0));
  for (Eigen::Index i = 0; i < s.points.rows(); ++i) {
    const double expected = betel_logweight(data, s.points.row(i).transpose(), mean_constraint());
    if (expected == kNegInf) {
      CHECK(s.log_weights[i] == kNegInf);
    } else {
      CHECK(s.log_weights[i] == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("self-normalized estimates ignore a common weight factor") {
  const auto s = run_bcel(normal_data(5, 50, 10.0), example_one(1000), RngStream(5, 0));
  WeightedSample scaled = s;
  scaled.log_weights.array() += 123.4;
  const auto a = weighted_moments(s);
  const auto b = weighted_moments(scaled);
  CHECK(a.mean[0] == doctest::Approx(b.mean[0]).epsilon(1e-12));
  CHECK(a.covariance(0, 0) == doctest::Approx(b.covariance(0, 0)).epsilon(1e-10));
  CHECK(s.ess() == doctest::Approx(scaled.ess()).epsilon(1e-12));
}

TEST_CASE("ESS shrinks as the constraint tightens") {
  // Data spread controls the width of the EL posterior for the mean.
  std::vector<double> ess;
  BcelConfig cfg{.draws = 4000,
                 .prior = PriorSpec::uniform(Vector::Constant(1, -2.0), Vector::Constant(1, 2.0)),
                 .constraint = mean_constraint(),
                 .resample_count = std::nullopt};
  for (double spread : {1.0, 0.3, 0.1}) ess.push_back(run_bcel(normal_data(6, 50, 0.0, spread), cfg, RngStream(6, 0)).ess());
  CHECK(ess[0] > ess[1]);
  CHECK(ess[1] > ess[2]);
}

TEST_CASE("resampling") {
  const Vector data = normal_data(8, 100, 10.0);
  auto cfg = example_one(5000);
  cfg.resample_count = 100000;
  const auto weighted = summarize(run_bcel(data, cfg, RngStream(8, 0)));
  const Matrix draws = run_bcel_resampled(data, cfg, RngStream(8, 0));
  CHECK(draws.rows() == 100000);
  const double mean = draws.col(0).mean();
  CHECK(std::abs(mean - weighted.mean) < 3 * weighted.sd / std::sqrt(100000.0));

  // Heaviest bin of a 0.1-wide histogram.
  const double lo = 8.0;
  std::vector<int> counts(40, 0);
  for (Eigen::Index i = 0; i < draws.rows(); ++i) {
    const int b = static_cast<int>((draws(i, 0) - lo) / 0.1);
    if (b >= 0 && b < 40) counts[b]++;
  }
  const auto top = std::max_element(counts.begin(), counts.end()) - counts.begin();
  const double center = lo + (top + 0.5) * 0.1;
  CHECK(center >= 9.8);
  CHECK(center <= 10.4);

  WeightedSample single;
  single.points = Matrix::Zero(4, 1);
  single.points << 1.0, 2.0, 3.0, 4.0;
  single.log_weights = Vector::Constant(4, kNegInf);
  single.log_weights[2] = -5.0;
  single.generations.assign(4, 1);
  RngStream r(9, 0);
  const Matrix constant = multinomial_resample(single, 50, r);
  CHECK((constant.array() == 3.0).all());

  cfg.resample_count = 0;
  CHECK_THROWS_AS(run_bcel_resampled(data, cfg, RngStream(8, 0)), PreconditionError);
}

TEST_CASE("errors") {
  const Vector data = normal_data(10, 20, 10.0);
  CHECK_THROWS_AS(run_bcel(data, example_one(1), RngStream(1, 0)), PreconditionError);
  BcelConfig far{.draws = 100,
                 .prior = PriorSpec::uniform(Vector::Constant(1, 50.0), Vector::Constant(1, 60.0)),
                 .constraint = mean_constraint(),
                 .resample_count = std::nullopt};
  CHECK_THROWS_AS(run_bcel(data, far, RngStream(1, 0)), DegeneratePosteriorError);
  AmisConfig amis{.base = example_one(100), .generations = 0};
  CHECK_THROWS_AS(run_bcel_amis(data, amis, RngStream(1, 0)), PreconditionError);
  amis.generations = 2;
  amis.jitter_scale = -1.0;
  CHECK_THROWS_AS(run_bcel_amis(data, amis, RngStream(1, 0)), PreconditionError);
}

TEST_CASE("one AMIS generation is plain BCel") {
  const Vector data = normal_data(11, 100, 10.0);
  const AmisConfig cfg{.base = example_one(500), .generations = 1};
  const auto amis = run_bcel_amis(data, cfg, RngStream(11, 0));
  const auto plain = run_bcel(data, example_one(500), RngStream(11, 0));
  CHECK(amis.sample.points == plain.points);
  CHECK(amis.sample.log_weights == plain.log_weights);
  CHECK(amis.generations_completed == 1);
  CHECK(amis.proposals.empty());

  const AmisConfig longer{.base = example_one(500), .generations = 3};
  const auto three = run_bcel_amis(data, longer, RngStream(11, 0));
  CHECK(three.sample.points.topRows(500) == plain.points);
  CHECK(three.sample.size() == 1500);
  CHECK(three.generations_completed == 3);
  CHECK(three.proposals.size() == 2);
  for (int i = 0; i < 1500; ++i) CHECK(three.sample.generations[i] == 1 + i / 500);
}

TEST_CASE("AMIS weights against a hand-built mixture density") {
  // With a constant likelihood every final weight is prior / mixture.
  const Vector data = normal_data(12, 20, 0.0);
  for (auto denominator : {AmisDenominator::as_printed, AmisDenominator::full_mixture}) {
    AmisConfig cfg{.base = example_one(300), .generations = 4, .denominator = denominator};
    cfg.base.constraint = always_satisfied();
    const auto res = run_bcel_amis(data, cfg, RngStream(12, 0));
    REQUIRE(res.generations_completed == 4);
    const int t = 4;
    for (std::size_t i = 0; i < res.sample.size(); ++i) {
      const double x = res.sample.points(static_cast<Eigen::Index>(i), 0);
      const double prior = 1.0 / 40.0;
      if (x < -10.0 || x > 30.0) {
        CHECK(res.sample.log_weights[static_cast<Eigen::Index>(i)] == kNegInf);
        continue;
      }
      std::vector<double> q{prior};
      for (const auto& prop : res.proposals) q.push_back(t3_pdf(x, prop.mean()[0], prop.scale()(0, 0)));
      double den = 0.0;
      if (denominator == AmisDenominator::as_printed) {
        for (int s = 0; s < t - 1; ++s) den += q[s];
      } else {
        for (int s = 0; s < t; ++s) den += q[s];
        den /= t;
      }
      const double expected = std::log(prior / den);
      CAPTURE(i);
      CHECK(std::abs(res.sample.log_weights[static_cast<Eigen::Index>(i)] - expected) < 1e-8);
    }
  }
}

TEST_CASE("AMIS proposals are fitted to the accumulated weighted sample") {
  const Vector data = normal_data(13, 100, 10.0);
  const AmisConfig cfg{.base = example_one(400), .generations = 2};
  const auto res = run_bcel_amis(data, cfg, RngStream(13, 0));
  const auto gen1 = run_bcel(data, example_one(400), RngStream(13, 0));
  const Vector w = gen1.normalized_weights();
  const double m = w.dot(gen1.points.col(0));
  const double v = w.dot((gen1.points.col(0).array() - m).square().matrix());
  REQUIRE(res.proposals.size() == 1);
  CHECK(res.proposals[0].mean()[0] == doctest::Approx(m).epsilon(1e-12));
  CHECK(res.proposals[0].scale()(0, 0) == doctest::Approx(v).epsilon(1e-10));
}

TEST_CASE("AMIS agrees with BCel on example one") {
  const Vector data = normal_data(14, 100, 10.0);
  const auto plain = summarize(run_bcel(data, example_one(5000), RngStream(14, 0)));
  for (auto denominator : {AmisDenominator::as_printed, AmisDenominator::full_mixture}) {
    const AmisConfig cfg{.base = example_one(1000), .generations = 5, .denominator = denominator};
    const auto amis = run_bcel_amis(data, cfg, RngStream(15, 0));
    const auto s = summarize(amis.sample);
    CHECK(std::abs(s.mean - plain.mean) < 3 * std::sqrt(s.se * s.se + plain.se * plain.se));
    CHECK(std::abs(s.sd / plain.sd - 1.0) < 0.2);
    CHECK(amis.sample.ess() > 2 * run_bcel(data, example_one(5000), RngStream(16, 0)).ess());
  }
}
