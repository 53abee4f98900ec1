#include <map>

#include <benchmark/benchmark.h>

#include "somor/balanced_truncation.hpp"
#include "somor/benchmark_models.hpp"
#include "somor/frequency_response.hpp"
#include "somor/irka.hpp"
#include "somor/projection.hpp"
#include "somor/saddle.hpp"

namespace {

using namespace somor;

const SecondOrderIndex3System& dsms(Index n1) {
  static std::map<Index, SecondOrderIndex3System> cache;
  auto it = cache.find(n1);
  if (it == cache.end()) it = cache.emplace(n1, gen_dsms({.n1 = n1, .n2 = n1 / 10})).first;
  return it->second;
}

void BM_SaddleFactorize(benchmark::State& state) {
  const auto& sys = dsms(state.range(0));
  for (auto _ : state) {
    SaddleOperator op(sys, Complex(0.05, 0.4), SaddleSide::kRight);
    op.factorize();
    benchmark::DoNotOptimize(op.rcond_estimate());
  }
}
BENCHMARK(BM_SaddleFactorize)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_SaddleSolve(benchmark::State& state) {
  const auto& sys = dsms(state.range(0));
  SaddleOperator op(sys, Complex(0.05, 0.4), SaddleSide::kRight);
  op.factorize();
  const ComplexMatrix rhs = to_dense(sys.F).cast<Complex>();
  for (auto _ : state) benchmark::DoNotOptimize(op.solve(rhs));
}
BENCHMARK(BM_SaddleSolve)->Arg(500)->Arg(2000)->Unit(benchmark::kMicrosecond);

void BM_IrkaIteration(benchmark::State& state) {
  const auto& sys = dsms(2000);
  IrkaOptions opt;
  opt.r = state.range(0);
  opt.max_iter = 1;
  opt.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(irka_reduce(sys, opt).rom.Mr.data());
}
BENCHMARK(BM_IrkaIteration)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_BalancedTruncation(benchmark::State& state) {
  const auto sys = gen_random_first_order({.n = state.range(0), .seed = 1});
  for (auto _ : state) benchmark::DoNotOptimize(balanced_truncate(sys, 10).hankel.data());
}
BENCHMARK(BM_BalancedTruncation)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_ProjectorBuild(benchmark::State& state) {
  const auto sys = gen_random({.n1 = state.range(0), .n2 = state.range(0) / 10, .seed = 1});
  for (auto _ : state) {
    const auto p = build_projector(sys);
    benchmark::DoNotOptimize(split_projector(p).Psi_r.data());
  }
}
BENCHMARK(BM_ProjectorBuild)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_FullResponse(benchmark::State& state) {
  const auto& sys = dsms(2000);
  const auto grid = FrequencyGrid::logspace(1e-2, 1.0, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(full_response(sys, grid, 1).sigma_max.data());
}
BENCHMARK(BM_FullResponse)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
