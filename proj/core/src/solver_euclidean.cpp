#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "spiral/solver.hpp"

namespace spiral {

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Vector prox_step(const NonsmoothSpec& g, double gamma_hat, const Vector& x) {
  switch (g.tag) {
    case NonsmoothTag::Zero:
      return x;
    case NonsmoothTag::L1:
      return soft_threshold(x, gamma_hat * g.lambda);
    case NonsmoothTag::NNBall:
      return project_nnball(x);
  }
  return x;
}

}  // namespace

Trace run_euclidean(const FiniteSumProblem& problem, const SpiralConfig& config,
                    const Vector& z_init, const RunHooks* hooks) {
  config.validate();
  if (problem.kernel().kind() != KernelKind::Euclidean) {
    throw UnsupportedOracleError(
        "run_euclidean: problem kernel is not Euclidean");
  }
  if (config.variant == SpiralVariant::Adaptive) {
    throw std::invalid_argument(
        "run_euclidean: adaptive stepsizes are only implemented in run()");
  }
  const int n = problem.dimension();
  const int count = problem.components();
  if (z_init.size() != n) {
    throw std::invalid_argument("run_euclidean: z_init dimension mismatch");
  }

  const double n_components = static_cast<double>(count);
  Vector gammas(count);
  for (int i = 0; i < count; ++i) {
    gammas[i] = config.alpha_step * n_components / problem.smoothness(i);
  }
  const double gamma_hat = 1.0 / gammas.cwiseInverse().sum();
  const NonsmoothSpec& g = problem.nonsmooth();

  long evals = 0;
  std::vector<double> inner_u(static_cast<std::size_t>(count), 0.0);

  const auto pass = [&](const Vector& x, Vector& s_out, double& f_out,
                        Vector& grad_out, std::vector<double>* cache) {
    grad_out.setZero();
    double acc = 0.0;
    const double inv_n = 1.0 / n_components;
    for (int i = 0; i < count; ++i) {
      const double t = problem.component_inner(i, x);
      if (cache) (*cache)[static_cast<std::size_t>(i)] = t;
      acc += problem.value_from_inner(i, t);
      problem.data().axpy(i, inv_n * problem.slope_from_inner(i, t), grad_out);
    }
    f_out = acc * inv_n;
    s_out = x - gamma_hat * grad_out;
    evals += count;
  };

  const auto lyap = [&](const Vector& y, const Vector& x, double f_x,
                        const Vector& grad_f_x) {
    return g.value(y) + 0.5 / gamma_hat * (y - x).squaredNorm() + f_x +
           grad_f_x.dot(y - x);
  };

  const auto prox = [&](const Vector& x) {
    Vector w = prox_step(g, gamma_hat, x);
    if (hooks && hooks->on_prox) hooks->on_prox(w);
    return w;
  };

  Vector s(n), z(n), v(n), u(n), y(n), d(n);
  Vector grad_f_z(n), grad_f_u(n);
  double f_z = 0.0, f_u = 0.0;
  double f_init = 0.0;
  pass(z_init, s, f_init, grad_f_z, nullptr);

  LbfgsMemory memory(config.lbfgs_memory);
  Vector prev_z, prev_r;
  bool prev_valid = false;

  std::mt19937_64 sweep_rng(config.sweep_seed);
  std::vector<int> order(static_cast<std::size_t>(count));

  Trace trace;
  trace.solver = "spiral-euclidean";
  const auto t0 = std::chrono::steady_clock::now();

  int iteration = 0;
  for (;;) {
    if (static_cast<double>(evals) / n_components >=
        static_cast<double>(config.max_epochs)) {
      trace.termination = "epoch_budget";
      break;
    }

    z = prox(s);
    pass(z, s, f_z, grad_f_z, nullptr);  // s now holds the refreshed aggregate
    Vector s_bar = s;
    v = prox(s_bar);
    const double lyap_vz = lyap(v, z, f_z, grad_f_z);
    if (hooks && hooks->on_outer) hooks->on_outer(iteration, z, v);

    double tau = 0.0;
    long backtracks = 0;
    bool fallback = false;
    const double subopt = (z - v).norm();

    TraceRecord rec;
    rec.objective = f_z + g.value(z);
    rec.suboptimality = subopt;
    rec.lyapunov = lyap_vz;

    if (subopt <= config.tolerance) {
      rec.epoch = static_cast<double>(evals) / n_components;
      rec.wall_time = seconds_since(t0);
      trace.records.push_back(rec);
      trace.termination = "tolerance";
      break;
    }

    Vector s_tilde(n);
    if (config.variant == SpiralVariant::NoLinesearch) {
      u = v;
      pass(u, s_tilde, f_u, grad_f_u, &inner_u);
    } else {
      const Vector r = z - v;
      if (config.direction == DirectionRule::Lbfgs) {
        if (prev_valid) memory.push_pair(prev_z, z, prev_r, r);
        d = memory.direction(r);
      } else {
        d = v - z;
      }
      d = safeguard_direction(std::move(d), z, v, config.direction_safeguard);
      if (hooks && hooks->on_direction) hooks->on_direction(iteration, d, z, v);

      tau = 1.0;
      for (;;) {
        u = z + (1.0 - tau) * (v - z) + tau * d;
        pass(u, s_tilde, f_u, grad_f_u, &inner_u);
        y = prox(s_tilde);
        const double lyap_yu = lyap(y, u, f_u, grad_f_u);
        const double resolution =
            8.0 * std::numeric_limits<double>::epsilon() *
            std::max({1.0, std::abs(lyap_yu), std::abs(lyap_vz)});
        if (lyap_yu <= lyap_vz + resolution) break;
        tau *= config.beta;
        ++backtracks;
        if (backtracks > config.max_backtracks) {
          u = v;
          pass(u, s_tilde, f_u, grad_f_u, &inner_u);
          tau = 0.0;
          fallback = true;
          break;
        }
      }
      prev_z = z;
      prev_r = z - v;
      prev_valid = config.direction == DirectionRule::Lbfgs;
    }

    s = s_tilde;
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
      const Vector z_tilde = prox(s);
      const double t_zt = problem.component_inner(i, z_tilde);
      ++evals;
      const double slope_zt = problem.slope_from_inner(i, t_zt);
      const double slope_u =
          problem.slope_from_inner(i, inner_u[static_cast<std::size_t>(i)]);
      problem.data().axpy(i, gamma_hat / n_components * (slope_u - slope_zt), s);
      s.noalias() += gamma_hat / gammas[i] * (z_tilde - u);
      if (hooks && hooks->on_inner) hooks->on_inner(iteration, i, s, z_tilde);
    }

    rec.epoch = static_cast<double>(evals) / n_components;
    rec.tau = tau;
    rec.backtracks = backtracks;
    rec.wall_time = seconds_since(t0);
    rec.linesearch_fallback = fallback;
    trace.records.push_back(rec);
    ++iteration;
  }

  trace.final_point = z;
  trace.gradient_evaluations = evals;
  return trace;
}

}  // namespace spiral
