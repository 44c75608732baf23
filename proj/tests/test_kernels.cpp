#include "doctest.h"

#include "lfi/bcel.hpp"
#include "lfi/copula.hpp"
#include "lfi/kernels.hpp"
#include "lfi/mcmc.hpp"
#include "lfi/models.hpp"
#include "lfi/parallel.hpp"

using namespace lfi;

namespace {

const int kThreadCounts[] = {1, 2, 3, 8};

struct ThreadGuard {
  ~ThreadGuard() { set_thread_count(0); }
};

Vector data_vector(int n) {
  RngStream r(99, 1);
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = 10.0 + r.normal();
  return x;
}

}  // namespace

TEST_CASE("kernels match the serial reference bit for bit") {
  ThreadGuard guard;
  Matrix cov(2, 2);
  cov << 1.0, 0.3, 0.3, 2.0;
  const MvnToySimulator model(cov);
  const PriorSpec prior = PriorSpec::uniform(Vector::Constant(1, -10.0), Vector::Constant(1, 30.0));
  const RngStream base(5, 3);
  const Vector data = data_vector(60);
  const Matrix thetas = reference::sample_prior(prior, 1500, base);
  Vector log_prior(thetas.rows());
  for (Eigen::Index i = 0; i < thetas.rows(); ++i) log_prior[i] = prior.log_density(thetas.row(i).transpose());
  const MvtStudentT3 t3(Vector::Constant(1, 10.0), Matrix::Constant(1, 1, 0.04));
  Vector theta(2);
  theta << 0.5, -1.0;

  const Matrix ref_sim = reference::simulate_replicates(model, theta, 500, base);
  const Vector ref_el = reference::el_log_weights(data, thetas, log_prior, mean_constraint(), LikelihoodFlavor::el);
  const Vector ref_betel =
      reference::el_log_weights(data, thetas, log_prior, mean_constraint(), LikelihoodFlavor::betel);
  const Vector ref_scalar = reference::scalar_mean_log_weights(data, thetas.col(0), LikelihoodFlavor::el);
  const Vector ref_t3 = reference::mvt3_log_density(thetas, t3);

  for (int threads : kThreadCounts) {
    set_thread_count(threads);
    CAPTURE(threads);
    CHECK(kernels::simulate_replicates(model, theta, 500, base) == ref_sim);
    CHECK(kernels::sample_prior(prior, 1500, base) == thetas);
    CHECK(kernels::el_log_weights(data, thetas, log_prior, mean_constraint(), LikelihoodFlavor::el) == ref_el);
    CHECK(kernels::el_log_weights(data, thetas, log_prior, mean_constraint(), LikelihoodFlavor::betel) == ref_betel);
    CHECK(kernels::scalar_mean_log_weights(data, thetas.col(0), LikelihoodFlavor::el) == ref_scalar);
    CHECK(kernels::mvt3_log_density(thetas, t3) == ref_t3);
  }
}

TEST_CASE("samplers are independent of the thread count") {
  ThreadGuard guard;
  const Vector data = data_vector(100);
  const BcelConfig bcel{.draws = 800,
                        .prior = PriorSpec::uniform(Vector::Constant(1, -10.0), Vector::Constant(1, 30.0)),
                        .constraint = mean_constraint(),
                        .resample_count = std::nullopt};
  const AmisConfig amis{.base = bcel, .generations = 3};
  const MvnToySimulator model(Matrix::Identity(2, 2));
  MCMCConfig mcmc{.iterations = 300, .initial = Vector::Zero(2), .proposal_cov = Matrix::Identity(2, 2), .n = 20};
  const PriorSpec flat = PriorSpec::uniform(Vector::Constant(2, -10.0), Vector::Constant(2, 10.0));
  const Matrix copula_data = clayton_sample(200, ClaytonCopula(3, 1.0), RngStream(4, 0));
  BcopConfig bcop;
  bcop.prior_draws = 500;

  set_thread_count(1);
  const auto bcel_ref = run_bcel(data, bcel, RngStream(1, 0));
  const auto amis_ref = run_bcel_amis(data, amis, RngStream(1, 0));
  const auto mcmc_ref = run_mcmc_bsl(model, Vector::Zero(2), flat, mcmc, RngStream(1, 0));
  const auto gk_ref = gk_bayes_factor_study({0, 1, 1, 0}, {0, 1, 0.5, 0}, {0, 1, 0, 0}, {100}, 8, {}, RngStream(1, 0));
  const auto bcop_ref = run_bcop(copula_data, bcop, RngStream(1, 0));

  for (int threads : kThreadCounts) {
    set_thread_count(threads);
    CAPTURE(threads);
    const auto b = run_bcel(data, bcel, RngStream(1, 0));
    CHECK(b.points == bcel_ref.points);
    CHECK(b.log_weights == bcel_ref.log_weights);
    const auto a = run_bcel_amis(data, amis, RngStream(1, 0));
    CHECK(a.sample.points == amis_ref.sample.points);
    CHECK(a.sample.log_weights == amis_ref.sample.log_weights);
    const auto m = run_mcmc_bsl(model, Vector::Zero(2), flat, mcmc, RngStream(1, 0));
    CHECK(m.states == mcmc_ref.states);
    CHECK(m.log_sl == mcmc_ref.log_sl);
    CHECK(gk_bayes_factor_study({0, 1, 1, 0}, {0, 1, 0.5, 0}, {0, 1, 0, 0}, {100}, 8, {}, RngStream(1, 0)).log_bf ==
          gk_ref.log_bf);
    CHECK(clayton_sample(200, ClaytonCopula(3, 1.0), RngStream(4, 0)) == copula_data);
    const auto c = run_bcop(copula_data, bcop, RngStream(1, 0));
    CHECK(c.log_weights == bcop_ref.log_weights);
  }
}
