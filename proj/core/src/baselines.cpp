#include "spiral/baselines.hpp"

#include <chrono>
#include <stdexcept>
#include <string>
#include <vector>

#include "spiral/that_oracle.hpp"

namespace spiral {

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Vector euclidean_prox(const NonsmoothSpec& g, double gamma, const Vector& x) {
  switch (g.tag) {
    case NonsmoothTag::Zero:
      return x;
    case NonsmoothTag::L1:
      return soft_threshold(x, gamma * g.lambda);
    case NonsmoothTag::NNBall:
      return project_nnball(x);
  }
  return x;
}

void require_euclidean(const FiniteSumProblem& problem, const char* who) {
  if (problem.kernel().kind() != KernelKind::Euclidean) {
    throw std::invalid_argument(std::string(who) +
                                ": requires a Euclidean-kernel problem");
  }
}

}  // namespace

double prox_sgd_stepsize(int epoch, const ProxSgdConfig& config) {
  return config.gamma0 / (1.0 + static_cast<double>(epoch) * config.gamma_tilde);
}

Vector prox_sgd_step(const FiniteSumProblem& problem, const Vector& z, int epoch,
                     const ProxSgdConfig& config, std::mt19937_64& rng,
                     long* gradient_evals) {
  require_euclidean(problem, "prox_sgd_step");
  const double gamma = prox_sgd_stepsize(epoch, config);
  const int count = problem.components();
  const int batch = std::max(1, config.minibatch);
  Vector step = z;
  const double coeff = -gamma / static_cast<double>(batch);
  for (int b = 0; b < batch; ++b) {
    const int i = static_cast<int>(rng() % static_cast<std::uint64_t>(count));
    problem.add_component_gradient(i, z, coeff, step);
    if (gradient_evals) ++*gradient_evals;
  }
  return euclidean_prox(problem.nonsmooth(), gamma, step);
}

Trace run_prox_sgd(const FiniteSumProblem& problem, const ProxSgdConfig& config,
                   const Vector& z_init) {
  require_euclidean(problem, "run_prox_sgd");
  if (!(config.gamma0 > 0.0) || config.gamma_tilde < 0.0) {
    throw std::invalid_argument("run_prox_sgd: invalid stepsize parameters");
  }
  const int count = problem.components();
  const int batch = std::max(1, config.minibatch);
  const int steps_per_epoch = (count + batch - 1) / batch;

  std::mt19937_64 rng(config.seed);
  Vector z = z_init;
  long evals = 0;

  Trace trace;
  trace.solver = "proxsgd";
  const auto t0 = std::chrono::steady_clock::now();
  for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
    for (int step = 0; step < steps_per_epoch; ++step) {
      z = prox_sgd_step(problem, z, epoch, config, rng, &evals);
    }
    TraceRecord rec;
    rec.epoch = static_cast<double>(evals) / static_cast<double>(count);
    rec.suboptimality = canonical_suboptimality(problem, z);
    rec.objective = problem.objective(z);
    rec.tau = 0.0;
    rec.backtracks = 0;
    rec.wall_time = seconds_since(t0);
    trace.records.push_back(rec);
    if (config.tolerance > 0.0 && rec.suboptimality <= config.tolerance) {
      trace.termination = "tolerance";
      break;
    }
  }
  if (trace.termination.empty()) trace.termination = "epoch_budget";
  trace.final_point = z;
  trace.gradient_evaluations = evals;
  return trace;
}

std::size_t finito_table_bytes(int components, int dimension) {
  return 2u * static_cast<std::size_t>(components) *
         static_cast<std::size_t>(dimension) * sizeof(double);
}

Trace finito_miso_run(const FiniteSumProblem& problem, const FinitoConfig& config,
                      const Vector& z_init, const RunHooks* hooks) {
  require_euclidean(problem, "finito_miso_run");
  const int count = problem.components();
  const int n = problem.dimension();
  const std::size_t table = finito_table_bytes(count, n);
  if (table > config.memory_cap_bytes) {
    throw std::runtime_error(
        "finito_miso_run: iterate/gradient tables would need " +
        std::to_string(table) + " bytes, above the configured cap of " +
        std::to_string(config.memory_cap_bytes));
  }
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw std::invalid_argument("finito_miso_run: alpha must lie in (0,1)");
  }

  const double n_components = static_cast<double>(count);
  Vector gammas(count);
  for (int i = 0; i < count; ++i) {
    gammas[i] = config.alpha * n_components / problem.smoothness(i);
  }
  const double c = gammas.cwiseInverse().sum();
  const double gamma_hat = 1.0 / c;

  // The per-component tables: iterates and their gradients.
  Matrix iterates(count, n);
  Matrix gradients(count, n);
  long evals = 0;
  Vector s = Vector::Zero(n);
  for (int i = 0; i < count; ++i) {
    iterates.row(i) = z_init.transpose();
    gradients.row(i) = problem.component_gradient(i, z_init).transpose();
    ++evals;
    s.noalias() += z_init / gammas[i];
    s.noalias() -= gradients.row(i).transpose() / n_components;
  }

  std::mt19937_64 sweep_rng(config.sweep_seed);
  std::vector<int> order(static_cast<std::size_t>(count));

  Vector z = z_init;
  Trace trace;
  trace.solver = "finito";
  const auto t0 = std::chrono::steady_clock::now();

  for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
    for (int i = 0; i < count; ++i) order[static_cast<std::size_t>(i)] = i;
    if (config.sweep == SweepOrder::ShuffledCyclic) {
      for (int i = count - 1; i > 0; --i) {
        const int j =
            static_cast<int>(sweep_rng() % static_cast<std::uint64_t>(i + 1));
        std::swap(order[static_cast<std::size_t>(i)],
                  order[static_cast<std::size_t>(j)]);
      }
    }
    for (int pos = 0; pos < count; ++pos) {
      const int i = order[static_cast<std::size_t>(pos)];
      z = euclidean_prox(problem.nonsmooth(), gamma_hat, gamma_hat * s);
      if (hooks && hooks->on_prox) hooks->on_prox(z);
      Vector grad = problem.component_gradient(i, z);
      ++evals;
      s.noalias() += (z - iterates.row(i).transpose()) / gammas[i];
      s.noalias() -= (grad - gradients.row(i).transpose()) / n_components;
      iterates.row(i) = z.transpose();
      gradients.row(i) = grad.transpose();
    }
    TraceRecord rec;
    rec.epoch = static_cast<double>(evals) / n_components;
    rec.suboptimality = canonical_suboptimality(problem, z);
    rec.objective = problem.objective(z);
    rec.wall_time = seconds_since(t0);
    trace.records.push_back(rec);
    if (rec.suboptimality <= config.tolerance) {
      trace.termination = "tolerance";
      break;
    }
  }
  if (trace.termination.empty()) trace.termination = "epoch_budget";
  trace.final_point = z;
  trace.gradient_evaluations = evals;
  return trace;
}

double canonical_suboptimality(const FiniteSumProblem& problem, const Vector& z) {
  const int count = problem.components();
  const double n_components = static_cast<double>(count);
  double c = 0.0;
  for (int i = 0; i < count; ++i) {
    c += problem.smoothness(i) / (0.999 * n_components);
  }
  Vector s = -problem.smooth_gradient(z);
  problem.kernel().add_gradient(z, c, s);
  ThatInstance inst{c, problem.nonsmooth(), problem.kernel().kind()};
  return (z - that_solve(inst, s)).norm();
}

}  // namespace spiral
