#include <benchmark/benchmark.h>

#include "possfuse/consonant.hpp"
#include "possfuse/dempster.hpp"
#include "possfuse/fusion.hpp"

using namespace possfuse;

namespace {

const Frame kFrame(0.0, 20.0);

void BM_DempsterCombine(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const FiniteMass m1 = discretize(ConsonantView(make_triangular(kFrame, 9.0, 4.0)), n);
  const FiniteMass m2 = discretize(ConsonantView(make_cosine_taper(kFrame, 11.0, 5.0)), n);
  for (auto _ : state) benchmark::DoNotOptimize(dempster_combine(m1, m2));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DempsterCombine)->RangeMultiplier(2)->Range(64, 1024)->Complexity(benchmark::oNSquared);

void BM_Combine(benchmark::State& state) {
  const auto grid = static_cast<std::size_t>(state.range(0));
  const PossFn p1 = make_triangular(kFrame, 9.0, 4.0, grid);
  const PossFn p2 = make_cosine_taper(kFrame, 11.0, 5.0, grid);
  for (auto _ : state) benchmark::DoNotOptimize(combine(p1, p2));
}
BENCHMARK(BM_Combine)->Arg(1025)->Arg(4097)->Arg(16385);

void BM_Agreement(benchmark::State& state) {
  const auto grid = static_cast<std::size_t>(state.range(0));
  const PossFn p1 = make_triangular(kFrame, 9.0, 4.0, grid);
  const PossFn p2 = make_cosine_taper(kFrame, 11.0, 5.0, grid);
  for (auto _ : state) benchmark::DoNotOptimize(agreement(p1, p2));
}
BENCHMARK(BM_Agreement)->Arg(1025)->Arg(4097)->Arg(16385);

void BM_Discretize(benchmark::State& state) {
  const ConsonantView view(make_triangular(kFrame, 9.0, 4.0));
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(discretize(view, n));
}
BENCHMARK(BM_Discretize)->Arg(100)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
