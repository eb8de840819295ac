#include <benchmark/benchmark.h>

#include <random>

#include "rigidity/rigidity.hpp"

namespace {

using namespace rigidity;

std::vector<double> random_values(std::size_t n) {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  std::sort(v.begin(), v.end());
  return v;
}

void BM_CoveringNumber1d(benchmark::State& state) {
  const auto pts = random_values(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(covering_number_1d(pts, 1e-4));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CoveringNumber1d)->RangeMultiplier(10)->Range(100, 1000000)->Complexity();

void BM_CoveringNumberPower(benchmark::State& state) {
  const double eps = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(covering_number_power(-1.0, eps));
}
BENCHMARK(BM_CoveringNumberPower)->DenseRange(2, 8, 2);

void BM_SolveEta(benchmark::State& state) {
  const auto p = ProblemParams::make(2, 1, 3, 1.0, 1.0);
  const LambdaProfile lambda({0.5});
  for (auto _ : state) benchmark::DoNotOptimize(solve_eta(p, lambda, 1000000, 0.25));
}
BENCHMARK(BM_SolveEta);

void BM_RigidityBound(benchmark::State& state) {
  const auto set = SetDescriptor::finite(random_values(static_cast<std::size_t>(state.range(0))));
  const auto p = ProblemParams::make(1, 1, 3, 1.0);
  const auto grid = default_eps_grid(set);
  for (auto _ : state) benchmark::DoNotOptimize(rigidity_bound(p, LambdaProfile::zeros(1), set, grid).gamma);
}
BENCHMARK(BM_RigidityBound)->Arg(10)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_SemiAxes(benchmark::State& state) {
  const auto map = builtin_map("linear2d").sample(1.0, 129);
  std::size_t node = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(semi_axes(map, node, BoundaryPolicy::kOneSided));
    node = (node + 1) % map.node_count();
  }
}
BENCHMARK(BM_SemiAxes);

}  // namespace

BENCHMARK_MAIN();
