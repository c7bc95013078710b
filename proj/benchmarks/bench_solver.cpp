#include <random>

#include <benchmark/benchmark.h>

#include "spiral/data_io.hpp"
#include "spiral/problem.hpp"
#include "spiral/solver.hpp"

namespace {

// One full outer iteration (aggregate refresh, linesearch, sweep) on a
// synthetic lasso; reported per components so epochs/second is visible.
void BM_SpiralEpoch(benchmark::State& state) {
  const int count = static_cast<int>(state.range(0));
  const int n = 50;
  const spiral::SynthLasso gen = spiral::synth_lasso(count, n, 0.1, 7);
  const auto problem = spiral::lasso_problem(gen.A, gen.b, gen.lambda);

  spiral::SpiralConfig config;
  config.max_epochs = 1000000;
  config.tolerance = 0.0;

  spiral::SpiralEngine engine(problem, config, spiral::Vector::Zero(n));
  for (auto _ : state) {
    engine.full_step();
    engine.linesearch_step();
    engine.incremental_sweep();
  }
  state.SetItemsProcessed(state.iterations() * count);
}
BENCHMARK(BM_SpiralEpoch)->Arg(200)->Arg(1000)->Arg(5000);

void BM_LbfgsTwoLoop(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 gen(11);
  spiral::LbfgsMemory memory(5);
  spiral::Vector z = spiral::Vector::Zero(n);
  spiral::Vector r = spiral::Vector::Random(n);
  for (int k = 0; k < 5; ++k) {
    spiral::Vector z_next = z + spiral::Vector::Random(n).cwiseAbs();
    spiral::Vector r_next = r + (z_next - z);
    memory.push_pair(z, z_next, r, r_next);
    z = z_next;
    r = r_next;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(memory.direction(r));
  }
}
BENCHMARK(BM_LbfgsTwoLoop)->Range(64, 4096);

}  // namespace
