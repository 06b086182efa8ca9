// Parallel kernels against their serial references.
//
//   ./cdh_bench --benchmark_filter=Blocks

#include <benchmark/benchmark.h>

#include "cdh/builders.hpp"
#include "cdh/dressing.hpp"
#include "cdh/linalg.hpp"
#include "cdh/sweep.hpp"

namespace {

cdh::DickeHeisenbergModel chain(int length) {
  cdh::DickeHeisenbergModel m;
  m.lambda = 1.0;
  m.gamma = {0.25, 0.25, 0.0};
  m.geometry.length = length;
  return m;
}

template <bool Parallel>
void Blocks(benchmark::State& state) {
  const int length = static_cast<int>(state.range(0));
  const int levels = static_cast<int>(state.range(1));
  const cdh::ModelSpec spec{chain(length)};
  const cdh::HermitianOperator h = cdh::system_hamiltonian(spec);
  const cdh::CouplingSpectrum s = cdh::coupling_spectrum(spec);
  const auto factor = cdh::exact_displacement();
  for (auto _ : state) {
    auto out = Parallel ? cdh::polaron_blocks(h, s, cdh::epsilon(spec), levels, factor)
                        : cdh::polaron_blocks_serial(h, s, cdh::epsilon(spec), levels, factor);
    benchmark::DoNotOptimize(out.data());
  }
}

cdh::cli::RunConfig sweep_config() {
  cdh::cli::RunConfig c;
  auto m = chain(6);
  c.model = m;
  c.truncation.cdh_levels = 3;
  c.truncation.rotation_levels = 3;
  c.rotation_levels_explicit = true;
  cdh::cli::SweepGrid g;
  g.lambda_over_omega = {0.0, 1.0, 4};
  g.delta_over_omega = {0.0, 1.0, 4};
  c.grid = g;
  c.observables = {cdh::cli::ObservableRequest{cdh::cli::ObservableRequest::Kind::mz, 0, cdh::Axis::z, 0.0}};
  return c;
}

void SweepParallel(benchmark::State& state) {
  const auto c = sweep_config();
  for (auto _ : state) benchmark::DoNotOptimize(cdh::cli::run_sweep(c, 0).rows.size());
}

void SweepSerial(benchmark::State& state) {
  const auto c = sweep_config();
  for (auto _ : state) benchmark::DoNotOptimize(cdh::cli::run_sweep_serial(c).rows.size());
}

}  // namespace

BENCHMARK(Blocks<true>)->Args({6, 3})->Args({8, 3})->Args({8, 6})->Unit(benchmark::kMillisecond);
BENCHMARK(Blocks<false>)->Args({6, 3})->Args({8, 3})->Args({8, 6})->Unit(benchmark::kMillisecond);
BENCHMARK(SweepParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(SweepSerial)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  cdh::linalg::use_single_threaded_blas();
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
