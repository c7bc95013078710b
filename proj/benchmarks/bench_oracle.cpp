#include <random>

#include <benchmark/benchmark.h>

#include "spiral/rng.hpp"
#include "spiral/that_oracle.hpp"

namespace {

spiral::Vector random_vector(std::mt19937_64& gen, int n) {
  spiral::Vector v(n);
  for (int j = 0; j < n; ++j) v[j] = spiral::rng::gaussian(gen);
  return v;
}

void BM_EuclideanL1Solve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 gen(1);
  const spiral::Vector s = random_vector(gen, n);
  const spiral::ThatInstance inst{2.0, spiral::NonsmoothSpec::l1(0.3),
                                  spiral::KernelKind::Euclidean};
  for (auto _ : state) {
    benchmark::DoNotOptimize(spiral::that_solve(inst, s));
  }
}
BENCHMARK(BM_EuclideanL1Solve)->Range(64, 4096);

void BM_QuarticL1Solve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 gen(2);
  const spiral::Vector s = random_vector(gen, n);
  const spiral::ThatInstance inst{2.0, spiral::NonsmoothSpec::l1(0.3),
                                  spiral::KernelKind::Quartic};
  for (auto _ : state) {
    benchmark::DoNotOptimize(spiral::that_solve(inst, s));
  }
}
BENCHMARK(BM_QuarticL1Solve)->Range(64, 4096);

void BM_QuarticRoot(benchmark::State& state) {
  std::mt19937_64 gen(3);
  double c = 0.5;
  double q = 3.7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(spiral::quartic_aggregation_root(c, q));
    c = 0.5 + 3.0 * spiral::rng::uniform01(gen);
    q = 10.0 * spiral::rng::uniform01(gen);
  }
}
BENCHMARK(BM_QuarticRoot);

}  // namespace

BENCHMARK_MAIN();
