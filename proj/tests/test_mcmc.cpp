#include "doctest.h"

#include <cmath>
#include <numbers>

#include "lfi/errors.hpp"
#include "lfi/mcmc.hpp"
#include "lfi/models.hpp"
#include "lfi/special.hpp"
#include "test_support.hpp"

using namespace lfi;
using testing_support::ConstantSimulator;
using testing_support::CrnSimulator;
using testing_support::whitened_bank;

namespace {

MCMCConfig config(int iterations, Vector initial, double proposal_sd, int n,
                  SlEstimator est = SlEstimator::plugin) {
  MCMCConfig c;
  c.iterations = iterations;
  c.proposal_cov = proposal_sd * proposal_sd * Matrix::Identity(initial.size(), initial.size());
  c.initial = std::move(initial);
  c.n = n;
  c.estimator = est;
  return c;
}

PriorSpec flat(int p, double half_width = 10.0) {
  return PriorSpec::uniform(Vector::Constant(p, -half_width), Vector::Constant(p, half_width));
}

struct ChainSummary {
  Vector mean;
  Vector sd;
  Vector se;
};

ChainSummary summarize(const MCMCTrace& t) {
  const Matrix kept = t.states.bottomRows(t.states.rows() - t.burn_in);
  ChainSummary s;
  s.mean = kept.colwise().mean();
  const Matrix c = kept.rowwise() - s.mean.transpose();
  s.sd = (c.array().square().colwise().sum() / (kept.rows() - 1.0)).sqrt();
  s.se.resize(kept.cols());
  for (Eigen::Index j = 0; j < kept.cols(); ++j) s.se[j] = s.sd[j] / std::sqrt(autocorrelation_ess(kept.col(j)));
  return s;
}

}  // namespace

TEST_CASE("trace shape and reproducibility") {
  const MvnToySimulator model(Matrix::Identity(2, 2));
  const Vector s_obs = Vector::Zero(2);
  const auto cfg = config(500, Vector::Constant(2, 0.5), 0.5, 20);
  const auto t = run_mcmc_bsl(model, s_obs, flat(2), cfg, RngStream(1, 0));
  CHECK(t.states.rows() == 501);
  CHECK(t.log_sl.size() == 501);
  CHECK(t.iterations() == 500);
  CHECK(t.states.row(0).transpose() == cfg.initial);
  double flags = 0;
  for (bool a : t.accepted) flags += a;
  CHECK(t.acceptance_rate == doctest::Approx(flags / 500).epsilon(1e-15));
  CHECK(t.acceptance_rate > 0.0);

  const auto again = run_mcmc_bsl(model, s_obs, flat(2), cfg, RngStream(1, 0));
  CHECK(again.states == t.states);
  CHECK(again.accepted == t.accepted);
  CHECK(again.log_sl == t.log_sl);
  const auto other = run_mcmc_bsl(model, s_obs, flat(2), cfg, RngStream(2, 0));
  CHECK(other.states != t.states);

  // A rejected step repeats the state and its stored estimate.
  for (int i = 1; i <= 500; ++i) {
    if (!t.accepted[i - 1]) {
      CHECK(t.states.row(i) == t.states.row(i - 1));
      CHECK(t.log_sl[i] == t.log_sl[i - 1]);
    }
  }
}

TEST_CASE("proposals outside the prior are rejected without moving") {
  const MvnToySimulator model(Matrix::Identity(2, 2));
  const PriorSpec unit = PriorSpec::uniform(Vector::Zero(2), Vector::Ones(2));
  const auto cfg = config(200, Vector::Constant(2, 0.5), 1e6, 10);
  const auto t = run_mcmc_bsl(model, Vector::Zero(2), unit, cfg, RngStream(3, 0));
  CHECK(t.acceptance_rate == 0.0);
  for (Eigen::Index i = 0; i < t.states.rows(); ++i) CHECK(t.states.row(i).transpose() == cfg.initial);
}

TEST_CASE("startup and configuration errors") {
  const ConstantSimulator degenerate(Vector::Zero(2));
  CHECK_THROWS_AS(run_mcmc_bsl(degenerate, Vector::Zero(2), flat(2), config(10, Vector::Zero(2), 0.1, 10), RngStream(1, 0)),
                  NumericalError);
  const MvnToySimulator model(Matrix::Identity(2, 2));
  CHECK_THROWS_AS(run_mcmc_bsl(model, Vector::Zero(2), flat(2), config(10, Vector::Constant(2, 20.0), 0.1, 10), RngStream(1, 0)),
                  PreconditionError);
  CHECK_THROWS_AS(run_mcmc_bsl(model, Vector::Zero(2), flat(2), config(0, Vector::Zero(2), 0.1, 10), RngStream(1, 0)),
                  PreconditionError);
  auto bad = config(10, Vector::Zero(2), 0.1, 10);
  bad.proposal_cov(0, 0) = -1.0;
  CHECK_THROWS_AS(run_mcmc_bsl(model, Vector::Zero(2), flat(2), bad, RngStream(1, 0)), NotPositiveDefiniteError);
}

TEST_CASE("exact-likelihood chain targets the normal density") {
  // Common random numbers make every fit exact, so this is plain MH on N(s_obs, 1).
  const CrnSimulator model(whitened_bank(30, Matrix::Identity(1, 1), 9));
  const auto cfg = config(100000, Vector::Zero(1), 2.0, 30);
  const auto t = run_mcmc_bsl(model, Vector::Zero(1), flat(1), cfg, RngStream(5, 0));
  const int bins = 40;
  const double lo = -4.0, hi = 4.0, width = (hi - lo) / bins;
  std::vector<double> freq(bins, 0.0);
  double outside = 0.0;
  for (Eigen::Index i = 1; i < t.states.rows(); ++i) {
    const double x = t.states(i, 0);
    if (x < lo || x >= hi) {
      outside += 1.0;
      continue;
    }
    freq[static_cast<std::size_t>((x - lo) / width)] += 1.0;
  }
  const double total = static_cast<double>(t.states.rows() - 1);
  double tv = outside / total - 2 * normal_cdf(lo);
  tv = std::abs(tv);
  for (int b = 0; b < bins; ++b) {
    const double p = normal_cdf(lo + (b + 1) * width) - normal_cdf(lo + b * width);
    tv += std::abs(freq[b] / total - p);
  }
  CHECK(0.5 * tv < 0.05);
}

TEST_CASE("BSL posterior on the toy matches the conjugate posterior") {
  const MvnToySimulator model(Matrix::Identity(2, 2));
  Vector s_obs(2);
  s_obs << 0.4, -0.8;
  for (int n : {20, 50}) {
    const auto t = run_mcmc_bsl(model, s_obs, flat(2), config(50000, s_obs, 1.0, n), RngStream(11, n));
    const auto s = summarize(t);
    CAPTURE(n);
    for (int j = 0; j < 2; ++j) CHECK(std::abs(s.mean[j] - s_obs[j]) < 3 * s.se[j]);
  }
}

TEST_CASE("BSL and uBSL flavors agree on the toy") {
  const MvnToySimulator model(Matrix::Identity(2, 2));
  const Vector s_obs = Vector::Zero(2);
  const auto plug = summarize(run_mcmc_bsl(model, s_obs, flat(2), config(40000, s_obs, 1.0, 30), RngStream(21, 0)));
  const auto unb = summarize(
      run_mcmc_bsl(model, s_obs, flat(2), config(40000, s_obs, 1.0, 30, SlEstimator::unbiased), RngStream(22, 0)));
  for (int j = 0; j < 2; ++j) {
    const double combined = std::sqrt(plug.se[j] * plug.se[j] + unb.se[j] * unb.se[j]);
    CHECK(std::abs(plug.mean[j] - unb.mean[j]) < 3 * combined);
    CHECK(std::abs(unb.sd[j] / plug.sd[j] - 1.0) < 0.15);
  }
}

TEST_CASE("zero-mass estimates are never accepted and always left") {
  const MvnToySimulator model(Matrix::Identity(2, 2));
  // n = 6 makes zero-mass estimates common; start far out so the first estimate is zero.
  Vector start(2);
  start << 4.0, 4.0;
  const auto t = run_mcmc_bsl(model, Vector::Zero(2), flat(2), config(3000, start, 1.5, 6, SlEstimator::unbiased),
                              RngStream(4, 0));
  CHECK(t.log_sl[0].is_zero_mass());
  bool left = false;
  for (int i = 1; i <= t.iterations(); ++i) {
    if (t.accepted[i - 1]) CHECK_FALSE(t.log_sl[i].is_zero_mass());
    if (!t.log_sl[i].is_zero_mass()) left = true;
  }
  CHECK(left);
}

TEST_CASE("autocorrelation ESS oracles") {
  RngStream r(6, 0);
  const int T = 100000;
  Vector iid(T), ar(T);
  double prev = 0.0;
  const double rho = 0.5;
  for (int i = 0; i < T; ++i) {
    iid[i] = r.normal();
    prev = rho * prev + std::sqrt(1 - rho * rho) * r.normal();
    ar[i] = prev;
  }
  CHECK(std::abs(autocorrelation_ess(iid) / T - 1.0) < 0.10);
  CHECK(std::abs(autocorrelation_ess(ar) / T / ((1 - rho) / (1 + rho)) - 1.0) < 0.15);
  CHECK_THROWS_AS(autocorrelation_ess(Vector::Constant(500, 2.0)), NumericalError);
  CHECK_THROWS_AS(autocorrelation_ess(Vector::Zero(3)), PreconditionError);
}

TEST_CASE("normalized ESS scales by total simulations") {
  MCMCTrace t;
  RngStream r(8, 0);
  t.states.resize(1001, 2);
  for (Eigen::Index i = 0; i < t.states.rows(); ++i) {
    t.states(i, 0) = r.normal();
    t.states(i, 1) = r.normal();
  }
  t.accepted.assign(1000, true);
  t.n = 10;
  t.burn_in = 1;
  const Vector out = normalized_ess(t, 1000.0 * 10);
  for (int j = 0; j < 2; ++j) {
    const double e = autocorrelation_ess(t.states.col(j).tail(1000));
    CHECK(out[j] == doctest::Approx(e / 1e4 * kNormalizedEssScale));
  }
  t.burn_in = 950;
  CHECK_THROWS_AS(normalized_ess(t, 1e4), PreconditionError);
  t.burn_in = 0;
  t.states.col(1).setConstant(1.0);
  CHECK_THROWS_AS(normalized_ess(t, 1e4), NumericalError);
}
