#include "spiral/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace spiral {

namespace {

constexpr double kGammaUnderflow = 1e-16;

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("SpiralConfig: ") + what);
}

}  // namespace

void SpiralConfig::validate() const {
  require(beta > 0.0 && beta < 1.0, "beta must lie in (0,1)");
  require(alpha_step > 0.0 && alpha_step < 1.0, "alpha_step must lie in (0,1)");
  require(adaptive_alpha > 0.0 && adaptive_alpha < 1.0,
          "adaptive_alpha must lie in (0,1)");
  require(adaptive_sigma > 0.0 && adaptive_sigma < 1.0,
          "adaptive_sigma must lie in (0,1)");
  require(adaptive_gamma_scale > 0.0, "adaptive_gamma_scale must be positive");
  require(direction_safeguard > 0.0, "direction_safeguard must be positive");
  require(lbfgs_memory >= 1, "lbfgs_memory must be >= 1");
  require(max_epochs >= 1, "max_epochs must be >= 1");
  require(tolerance >= 0.0, "tolerance must be >= 0");
  require(max_backtracks >= 1, "max_backtracks must be >= 1");
}

SpiralEngine::SpiralEngine(const FiniteSumProblem& problem,
                           const SpiralConfig& config, Vector z_init,
                           const RunHooks* hooks)
    : problem_(&problem),
      config_(config),
      hooks_(hooks),
      n_(problem.dimension()),
      count_(problem.components()),
      memory_(config.lbfgs_memory),
      sweep_rng_(config.sweep_seed) {
  config_.validate();
  if (z_init.size() != n_) {
    throw std::invalid_argument("SpiralEngine: z_init dimension mismatch");
  }
  if (!that_supported(problem.kernel().kind(), problem.nonsmooth().tag)) {
    throw UnsupportedOracleError(
        "SpiralEngine: no aggregate proximal oracle for this (g, kernel) pair");
  }

  const double n_components = static_cast<double>(count_);
  gammas_.resize(count_);
  if (config_.variant == SpiralVariant::Adaptive) {
    gammas_.setConstant(config_.adaptive_gamma_scale * n_components);
  } else {
    for (int i = 0; i < count_; ++i) {
      gammas_[i] = config_.alpha_step * n_components / problem.smoothness(i);
    }
  }
  c_ = gammas_.cwiseInverse().sum();

  s_.resize(n_);
  s_bar_.resize(n_);
  s_tilde_.resize(n_);
  v_ = u_ = y_ = d_ = Vector::Zero(n_);
  grad_f_z_.resize(n_);
  grad_f_u_.resize(n_);
  grad_h_u_.resize(n_);
  inner_u_.assign(static_cast<std::size_t>(count_), 0.0);
  sweep_sum_grad_.resize(n_);
  sweep_sum_hgrad_.resize(n_);
  order_.resize(static_cast<std::size_t>(count_));

  z_ = std::move(z_init);
  double f_init = 0.0;
  full_pass(z_, s_, f_init, grad_f_z_, nullptr);
  if (config_.variant == SpiralVariant::Adaptive) {
    seed_sweep_sums(z_, f_init, grad_f_z_);
  }
}

void SpiralEngine::full_pass(const Vector& x, Vector& s_out, double& f_out,
                             Vector& grad_out, std::vector<double>* inner_cache) {
  grad_out.setZero();
  double acc = 0.0;
  const double inv_n = 1.0 / static_cast<double>(count_);
  for (int i = 0; i < count_; ++i) {
    const double t = problem_->component_inner(i, x);
    if (inner_cache) (*inner_cache)[static_cast<std::size_t>(i)] = t;
    acc += problem_->value_from_inner(i, t);
    problem_->data().axpy(i, inv_n * problem_->slope_from_inner(i, t), grad_out);
  }
  f_out = acc * inv_n;
  s_out = -grad_out;
  problem_->kernel().add_gradient(x, c_, s_out);
  evals_ += count_;
}

Vector SpiralEngine::that(const Vector& s) const {
  ThatInstance inst{c_, problem_->nonsmooth(), problem_->kernel().kind()};
  Vector w = that_solve(inst, s);
  if (hooks_ && hooks_->on_prox) hooks_->on_prox(w);
  return w;
}

double SpiralEngine::lyap(const Vector& y, const Vector& x, double f_x,
                          const Vector& grad_f_x) const {
  // phi(y) + D_hhat(y, x) rearranged so the smooth value at y cancels:
  //   g(y) + c D_h(y, x) + f(x) + <grad f(x), y - x>.
  return problem_->nonsmooth().value(y) +
         c_ * bregman_distance(problem_->kernel(), y, x) + f_x +
         grad_f_x.dot(y - x);
}

void SpiralEngine::shrink_all_gammas() {
  const double sigma = config_.adaptive_sigma;
  gammas_ *= sigma;
  if (gammas_.minCoeff() < kGammaUnderflow) {
    throw std::runtime_error(
        "adaptive stepsizes underflowed below 1e-16; the smoothness "
        "certificates cannot be satisfied at this point");
  }
  c_ /= sigma;
  sweep_sum_h_ /= sigma;
  sweep_sum_hdot_ /= sigma;
  sweep_sum_hgrad_ /= sigma;
  ++gamma_version_;
  ++shrinks_iter_;
  ++shrinks_total_;
  memory_.clear();
  prev_valid_ = false;
}

void SpiralEngine::shrink_component_gamma(int i) {
  const double old_inv = 1.0 / gammas_[i];
  gammas_[i] *= config_.adaptive_sigma;
  if (gammas_[i] < kGammaUnderflow) {
    throw std::runtime_error(
        "adaptive stepsizes underflowed below 1e-16; the smoothness "
        "certificates cannot be satisfied at this point");
  }
  const double delta = 1.0 / gammas_[i] - old_inv;
  c_ += delta;
  // The aggregate still carries (1/gamma_i) grad h(u) for the unprocessed
  // component; only that term depends on gamma_i.
  s_.noalias() += delta * grad_h_u_;
  ++gamma_version_;
  ++shrinks_iter_;
  ++shrinks_total_;
  memory_.clear();
  prev_valid_ = false;
}

void SpiralEngine::rebuild_s_from_sweep_sums() {
  s_ = sweep_sum_hgrad_ - sweep_sum_grad_ / static_cast<double>(count_);
}

void SpiralEngine::rebuild_s_bar() {
  s_bar_ = -grad_f_z_;
  problem_->kernel().add_gradient(z_, c_, s_bar_);
}

void SpiralEngine::seed_sweep_sums(const Vector& x, double f_x,
                                   const Vector& grad_f_x) {
  const double n_components = static_cast<double>(count_);
  sweep_sum_f_ = n_components * f_x;
  sweep_sum_grad_ = n_components * grad_f_x;
  sweep_sum_gdot_ = sweep_sum_grad_.dot(x);
  const Kernel& kernel = problem_->kernel();
  sweep_sum_h_ = c_ * kernel.value(x);
  sweep_sum_hgrad_ = c_ * kernel.gradient(x);
  sweep_sum_hdot_ = sweep_sum_hgrad_.dot(x);
}

namespace {

// The backtracking certificates compare two quantities that both vanish
// quadratically at convergence; a violation below the rounding noise of
// their constituent terms is not evidence against the current stepsizes.
double noise_floor(std::initializer_list<double> terms) {
  double scale = 1.0;
  for (double t : terms) scale = std::max(scale, std::abs(t));
  return 1e-13 * scale;
}

}  // namespace

bool SpiralEngine::stage1_needs_shrink(const Vector& z) const {
  const double n_components = static_cast<double>(count_);
  const double f_term = n_components * problem_->smooth_value(z);
  const double g_dot = sweep_sum_grad_.dot(z);
  const double lhs = f_term - sweep_sum_f_ - g_dot + sweep_sum_gdot_;
  const Kernel& kernel = problem_->kernel();
  const double h_term = c_ * kernel.value(z);
  const double h_dot = sweep_sum_hgrad_.dot(z);
  const double dist = h_term - sweep_sum_h_ - h_dot + sweep_sum_hdot_;
  return lhs > config_.adaptive_alpha * n_components * dist +
                   noise_floor({f_term, sweep_sum_f_, g_dot, sweep_sum_gdot_});
}

bool SpiralEngine::stage3_needs_shrink(const Vector& v) const {
  const double f_v = problem_->smooth_value(v);
  const double dot = grad_f_z_.dot(v - z_);
  const double lin = f_v - f_z_ - dot;
  return lin > c_ * bregman_distance(problem_->kernel(), v, z_) +
                   noise_floor({f_v, f_z_, dot});
}

bool SpiralEngine::stage5_needs_shrink(const Vector& y) const {
  const double f_y = problem_->smooth_value(y);
  const double dot = grad_f_u_.dot(y - u_);
  const double lin = f_y - f_u_ - dot;
  return lin > c_ * bregman_distance(problem_->kernel(), y, u_) +
                   noise_floor({f_y, f_u_, dot});
}

bool SpiralEngine::stage7_needs_shrink(int i, const Vector& z_tilde,
                                       double inner_zt) const {
  const double t_u = inner_u_[static_cast<std::size_t>(i)];
  const double f_zt = problem_->value_from_inner(i, inner_zt);
  const double f_u = problem_->value_from_inner(i, t_u);
  const double dot = problem_->slope_from_inner(i, t_u) * (inner_zt - t_u);
  const double lin = f_zt - f_u - dot;
  const double bound = static_cast<double>(count_) / gammas_[i] *
                       bregman_distance(problem_->kernel(), z_tilde, u_);
  return lin > bound + noise_floor({f_zt, f_u, dot});
}

void SpiralEngine::full_step() {
  const bool adaptive = config_.variant == SpiralVariant::Adaptive;

  z_ = that(s_);
  if (adaptive) {
    while (stage1_needs_shrink(z_)) {
      shrink_all_gammas();
      rebuild_s_from_sweep_sums();
      z_ = that(s_);
    }
  }

  full_pass(z_, s_bar_, f_z_, grad_f_z_, nullptr);

  v_ = that(s_bar_);
  if (adaptive) {
    while (stage3_needs_shrink(v_)) {
      shrink_all_gammas();
      rebuild_s_bar();
      v_ = that(s_bar_);
    }
  }

  lyap_vz_ = lyap(v_, z_, f_z_, grad_f_z_);
}

void SpiralEngine::linesearch_step() {
  backtracks_iter_ = 0;
  fallback_ = false;

  if (config_.variant == SpiralVariant::NoLinesearch) {
    u_ = v_;
    full_pass(u_, s_tilde_, f_u_, grad_f_u_, &inner_u_);
    grad_h_u_ = problem_->kernel().gradient(u_);
    tau_ = 0.0;
    return;
  }

  const Vector r = z_ - v_;
  if (config_.direction == DirectionRule::Lbfgs && prev_valid_ &&
      prev_version_ == gamma_version_) {
    memory_.push_pair(prev_z_, z_, prev_r_, r);
  }

  Vector d = config_.direction == DirectionRule::Lbfgs ? memory_.direction(r)
                                                       : Vector(v_ - z_);
  d = safeguard_direction(std::move(d), z_, v_, config_.direction_safeguard);
  linesearch_with_direction(std::move(d));
}

void SpiralEngine::linesearch_with_direction(Vector d) {
  const bool adaptive = config_.variant == SpiralVariant::Adaptive;
  d_ = std::move(d);

  bool restart = true;
  while (restart) {
    restart = false;
    if (hooks_ && hooks_->on_direction) hooks_->on_direction(iteration_, d_, z_, v_);

    tau_ = 1.0;
    for (;;) {
      u_ = z_ + (1.0 - tau_) * (v_ - z_) + tau_ * d_;
      full_pass(u_, s_tilde_, f_u_, grad_f_u_, &inner_u_);
      y_ = that(s_tilde_);

      if (adaptive && stage5_needs_shrink(y_)) {
        shrink_all_gammas();
        rebuild_s_bar();
        v_ = that(s_bar_);
        while (stage3_needs_shrink(v_)) {
          shrink_all_gammas();
          rebuild_s_bar();
          v_ = that(s_bar_);
        }
        lyap_vz_ = lyap(v_, z_, f_z_, grad_f_z_);
        // The stepsizes changed under the direction model; rebuild it from
        // the refreshed residual and re-enter the search at tau = 1.
        const Vector r = z_ - v_;
        d_ = config_.direction == DirectionRule::Lbfgs ? memory_.direction(r)
                                                       : Vector(v_ - z_);
        d_ = safeguard_direction(std::move(d_), z_, v_,
                                 config_.direction_safeguard);
        restart = true;
        break;
      }

      const double lyap_yu = lyap(y_, u_, f_u_, grad_f_u_);
      // Ties accept; a gap below the evaluation resolution of the two
      // Lyapunov values is a tie.
      const double resolution =
          8.0 * std::numeric_limits<double>::epsilon() *
          std::max({1.0, std::abs(lyap_yu), std::abs(lyap_vz_)});
      if (lyap_yu <= lyap_vz_ + resolution) break;

      tau_ *= config_.beta;
      ++backtracks_iter_;
      if (backtracks_iter_ > config_.max_backtracks) {
        // tau -> 0 limit; preserves descent by the nominal-step property.
        u_ = v_;
        full_pass(u_, s_tilde_, f_u_, grad_f_u_, &inner_u_);
        y_ = that(s_tilde_);
        tau_ = 0.0;
        fallback_ = true;
        break;
      }
    }
  }

  prev_z_ = z_;
  prev_r_ = z_ - v_;
  prev_valid_ = config_.direction == DirectionRule::Lbfgs;
  prev_version_ = gamma_version_;
  grad_h_u_ = problem_->kernel().gradient(u_);
}

void SpiralEngine::make_order() {
  for (int i = 0; i < count_; ++i) order_[static_cast<std::size_t>(i)] = i;
  if (config_.sweep == SweepOrder::ShuffledCyclic) {
    for (int i = count_ - 1; i > 0; --i) {
      const int j = static_cast<int>(sweep_rng_() % static_cast<std::uint64_t>(i + 1));
      std::swap(order_[static_cast<std::size_t>(i)], order_[static_cast<std::size_t>(j)]);
    }
  }
}

void SpiralEngine::incremental_sweep() {
  const bool adaptive = config_.variant == SpiralVariant::Adaptive;
  const double inv_n = 1.0 / static_cast<double>(count_);
  const Kernel& kernel = problem_->kernel();

  s_ = s_tilde_;
  make_order();

  if (adaptive) {
    sweep_sum_f_ = 0.0;
    sweep_sum_gdot_ = 0.0;
    sweep_sum_h_ = 0.0;
    sweep_sum_hdot_ = 0.0;
    sweep_sum_grad_.setZero();
    sweep_sum_hgrad_.setZero();
  }

  for (int pos = 0; pos < count_; ++pos) {
    const int i = order_[static_cast<std::size_t>(pos)];
    Vector z_tilde;
    double t_zt = 0.0;
    for (;;) {
      z_tilde = that(s_);
      t_zt = problem_->component_inner(i, z_tilde);
      ++evals_;
      if (adaptive && stage7_needs_shrink(i, z_tilde, t_zt)) {
        shrink_component_gamma(i);
        continue;
      }
      break;
    }

    const double inv_gamma = 1.0 / gammas_[i];
    const double slope_zt = problem_->slope_from_inner(i, t_zt);
    const double slope_u = problem_->slope_from_inner(i, inner_u_[static_cast<std::size_t>(i)]);
    kernel.add_gradient(z_tilde, inv_gamma, s_);
    s_.noalias() -= inv_gamma * grad_h_u_;
    problem_->data().axpy(i, inv_n * (slope_u - slope_zt), s_);

    if (adaptive) {
      sweep_sum_f_ += problem_->value_from_inner(i, t_zt);
      sweep_sum_gdot_ += slope_zt * t_zt;
      problem_->data().axpy(i, slope_zt, sweep_sum_grad_);
      const Vector grad_h_zt = kernel.gradient(z_tilde);
      sweep_sum_h_ += inv_gamma * kernel.value(z_tilde);
      sweep_sum_hdot_ += inv_gamma * grad_h_zt.dot(z_tilde);
      sweep_sum_hgrad_.noalias() += inv_gamma * grad_h_zt;
    }

    if (hooks_ && hooks_->on_inner) hooks_->on_inner(iteration_, i, s_, z_tilde);
  }
}

void SpiralEngine::record(Trace& trace, double started_at_seconds) {
  TraceRecord rec;
  rec.epoch = epochs();
  rec.suboptimality = suboptimality();
  rec.objective = f_z_ + problem_->nonsmooth().value(z_);
  rec.tau = tau_;
  rec.backtracks = backtracks_iter_ + shrinks_iter_;
  rec.wall_time = started_at_seconds;
  rec.lyapunov = lyap_vz_;
  rec.cumulative_shrinks = shrinks_total_;
  rec.linesearch_fallback = fallback_;
  trace.records.push_back(rec);
}

Trace SpiralEngine::run() {
  Trace trace;
  switch (config_.variant) {
    case SpiralVariant::Full:
      trace.solver = "spiral";
      break;
    case SpiralVariant::NoLinesearch:
      trace.solver = "spiral-no-ls";
      break;
    case SpiralVariant::Adaptive:
      trace.solver = "adaspiral";
      break;
  }
  const auto t0 = std::chrono::steady_clock::now();

  for (;;) {
    if (epochs() >= static_cast<double>(config_.max_epochs)) {
      trace.termination = "epoch_budget";
      break;
    }
    try {
      shrinks_iter_ = 0;
      backtracks_iter_ = 0;
      fallback_ = false;
      tau_ = 0.0;

      full_step();
      if (hooks_ && hooks_->on_outer) hooks_->on_outer(iteration_, z_, v_);

      if (suboptimality() <= config_.tolerance) {
        record(trace, seconds_since(t0));
        trace.termination = "tolerance";
        break;
      }

      linesearch_step();
      incremental_sweep();
      record(trace, seconds_since(t0));
      ++iteration_;
    } catch (const UnsupportedOracleError& e) {
      throw UnsupportedOracleError("iteration " + std::to_string(iteration_) +
                                   ": " + e.what());
    } catch (const std::runtime_error& e) {
      throw std::runtime_error("iteration " + std::to_string(iteration_) + ": " +
                               e.what());
    }
  }

  trace.final_point = z_;
  trace.gradient_evaluations = evals_;
  return trace;
}

std::size_t SpiralEngine::component_scalar_bytes() const {
  return static_cast<std::size_t>(gammas_.size()) * sizeof(double) +
         inner_u_.size() * sizeof(double) + order_.size() * sizeof(int);
}

int SpiralEngine::dense_vector_count() const {
  // s, s_bar, s_tilde, z, v, u, y, d, grad_f_z, grad_f_u, grad_h_u,
  // prev_z, prev_r, sweep_sum_grad, sweep_sum_hgrad, plus two per stored
  // L-BFGS pair.
  return 15 + 2 * memory_.size();
}

Trace run(const FiniteSumProblem& problem, const SpiralConfig& config,
          const Vector& z_init, const RunHooks* hooks) {
  SpiralEngine engine(problem, config, z_init, hooks);
  return engine.run();
}

}  // namespace spiral
