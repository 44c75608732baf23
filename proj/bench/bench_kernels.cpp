// Serial reference vs OpenMP kernels. Run with --benchmark_filter=... as usual;
// the thread count argument is passed to set_thread_count.

#include <benchmark/benchmark.h>

#include "lfi/kernels.hpp"
#include "lfi/models.hpp"
#include "lfi/parallel.hpp"

using namespace lfi;

namespace {

Vector example_data() {
  RngStream r(1, 1);
  Vector x(100);
  for (int i = 0; i < 100; ++i) x[i] = 10.0 + r.normal();
  return x;
}

const PriorSpec& example_prior() {
  static const PriorSpec prior = PriorSpec::uniform(Vector::Constant(1, -10.0), Vector::Constant(1, 30.0));
  return prior;
}

struct ElInputs {
  Vector data = example_data();
  Matrix thetas;
  Vector log_prior;
  explicit ElInputs(int draws) {
    thetas = reference::sample_prior(example_prior(), draws, RngStream(2, 0));
    log_prior.resize(draws);
    for (int i = 0; i < draws; ++i) log_prior[i] = example_prior().log_density(thetas.row(i).transpose());
  }
};

void BM_el_weights_reference(benchmark::State& state) {
  const ElInputs in(static_cast<int>(state.range(0)));
  const auto h = mean_constraint();
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::el_log_weights(in.data, in.thetas, in.log_prior, h, LikelihoodFlavor::el));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_el_weights_parallel(benchmark::State& state) {
  const ElInputs in(static_cast<int>(state.range(0)));
  const auto h = mean_constraint();
  set_thread_count(static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::el_log_weights(in.data, in.thetas, in.log_prior, h, LikelihoodFlavor::el));
  }
  set_thread_count(0);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_scalar_weights_reference(benchmark::State& state) {
  const ElInputs in(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::scalar_mean_log_weights(in.data, in.thetas.col(0), LikelihoodFlavor::el));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_scalar_weights_parallel(benchmark::State& state) {
  const ElInputs in(static_cast<int>(state.range(0)));
  set_thread_count(static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::scalar_mean_log_weights(in.data, in.thetas.col(0), LikelihoodFlavor::el));
  }
  set_thread_count(0);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_simulate_reference(benchmark::State& state) {
  const MvnToySimulator model(Matrix::Identity(5, 5));
  const Vector theta = Vector::Zero(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::simulate_replicates(model, theta, static_cast<int>(state.range(0)), RngStream(3, 0)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_simulate_parallel(benchmark::State& state) {
  const MvnToySimulator model(Matrix::Identity(5, 5));
  const Vector theta = Vector::Zero(5);
  set_thread_count(static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::simulate_replicates(model, theta, static_cast<int>(state.range(0)), RngStream(3, 0)));
  }
  set_thread_count(0);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_mvt3_reference(benchmark::State& state) {
  const ElInputs in(static_cast<int>(state.range(0)));
  const MvtStudentT3 t3(Vector::Constant(1, 10.0), Matrix::Constant(1, 1, 0.04));
  for (auto _ : state) benchmark::DoNotOptimize(reference::mvt3_log_density(in.thetas, t3));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_mvt3_parallel(benchmark::State& state) {
  const ElInputs in(static_cast<int>(state.range(0)));
  const MvtStudentT3 t3(Vector::Constant(1, 10.0), Matrix::Constant(1, 1, 0.04));
  set_thread_count(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::mvt3_log_density(in.thetas, t3));
  set_thread_count(0);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_el_weights_reference)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_el_weights_parallel)->Args({5000, 1})->Args({5000, 2})->Args({5000, 4})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_scalar_weights_reference)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_scalar_weights_parallel)->Args({5000, 1})->Args({5000, 2})->Args({5000, 4})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_simulate_reference)->Arg(10000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_simulate_parallel)->Args({10000, 1})->Args({10000, 2})->Args({10000, 4})->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_mvt3_reference)->Arg(10000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_mvt3_parallel)->Args({10000, 1})->Args({10000, 2})->Args({10000, 4})->Unit(benchmark::kMicrosecond)->UseRealTime();

BENCHMARK_MAIN();
