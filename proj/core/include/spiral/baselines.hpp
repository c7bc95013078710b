#pragma once

#include <cstdint>
#include <random>

#include "spiral/problem.hpp"
#include "spiral/solver.hpp"
#include "spiral/trace.hpp"

namespace spiral {

// Proximal stochastic gradient with the diminishing stepsize
// gamma_t = gamma0 / (1 + t * gamma_tilde), t the epoch counter.
struct ProxSgdConfig {
  double gamma0 = 0.1;
  double gamma_tilde = 0.5;
  int minibatch = 1;
  std::uint64_t seed = 0;
  int max_epochs = 100;
  double tolerance = 0.0;
};

double prox_sgd_stepsize(int epoch, const ProxSgdConfig& config);

// One sampled step z' = prox_{gamma_t g}(z - gamma_t * mean of sampled
// component gradients); Euclidean-kernel problems only.
Vector prox_sgd_step(const FiniteSumProblem& problem, const Vector& z, int epoch,
                     const ProxSgdConfig& config, std::mt19937_64& rng,
                     long* gradient_evals = nullptr);

Trace run_prox_sgd(const FiniteSumProblem& problem, const ProxSgdConfig& config,
                   const Vector& z_init);

// Incremental table solver keeping per-component iterates and gradients
// (Theta(N n) memory, the contrast the O(n) solver is measured against).
struct FinitoConfig {
  double alpha = 0.999;
  SweepOrder sweep = SweepOrder::Cyclic;
  std::uint64_t sweep_seed = 0;
  int max_epochs = 100;
  double tolerance = 1e-10;
  std::size_t memory_cap_bytes = std::size_t{1} << 30;
};

// Bytes the iterate + gradient tables would occupy.
std::size_t finito_table_bytes(int components, int dimension);

// Throws std::runtime_error when the table estimate exceeds the cap.
Trace finito_miso_run(const FiniteSumProblem& problem, const FinitoConfig& config,
                      const Vector& z_init, const RunHooks* hooks = nullptr);

// |z - T(grad hhat(z))| evaluated in the canonical geometry
// gamma_i = 0.999 N / L_i; the yardstick used to report suboptimality for
// solvers that do not maintain their own aggregate.
double canonical_suboptimality(const FiniteSumProblem& problem, const Vector& z);

}  // namespace spiral
