#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "cartan/parallel.hpp"
#include "cartan/projective.hpp"
#include "cartan/random.hpp"
#include "cartan/sampling.hpp"
#include "cartan/verify.hpp"

namespace {

using namespace cartan;

std::vector<Screw> make_screws(long count, long n) {
  std::vector<Screw> screws;
  screws.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    CounterRng rng(1, static_cast<std::uint64_t>(i));
    screws.push_back(sample_screw(rng, n, 4.0));
  }
  return screws;
}

template <bool Parallel>
void BM_SeExpBatch(benchmark::State& state) {
  const std::vector<Screw> screws = make_screws(state.range(0), 6);
  for (auto _ : state) {
    auto out = Parallel ? se_exp_batch_parallel(screws) : se_exp_batch_serial(screws);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SeExpBatch<false>)->Name("se_exp_batch/serial")->Arg(1000)->Arg(10000);
BENCHMARK(BM_SeExpBatch<true>)->Name("se_exp_batch/parallel")->Arg(1000)->Arg(10000);

template <bool Parallel>
void BM_Moebius(benchmark::State& state) {
  for (auto _ : state) {
    auto grid = Parallel ? moebius_grid_parallel(state.range(0), 9, 2.0) : moebius_grid(state.range(0), 9, 2.0);
    benchmark::DoNotOptimize(grid.data());
  }
}
BENCHMARK(BM_Moebius<false>)->Name("moebius_grid/serial")->Arg(128)->Arg(2048);
BENCHMARK(BM_Moebius<true>)->Name("moebius_grid/parallel")->Arg(128)->Arg(2048);

template <bool Parallel>
void BM_Verify(benchmark::State& state) {
  VerifyConfig cfg;
  cfg.n = 5;
  cfg.p = 2;
  cfg.samples = state.range(0);
  cfg.parallel = Parallel;
  for (auto _ : state) {
    const VerifyReport r = run_verification(cfg);
    benchmark::DoNotOptimize(r.pass);
  }
}
BENCHMARK(BM_Verify<false>)->Name("verify/serial")->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Verify<true>)->Name("verify/parallel")->Arg(100)->Unit(benchmark::kMillisecond);

} // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::AddCustomContext("omp_threads", std::to_string(parallel_threads()));
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
