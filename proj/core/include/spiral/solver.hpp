#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "spiral/directions.hpp"
#include "spiral/problem.hpp"
#include "spiral/surrogate.hpp"
#include "spiral/that_oracle.hpp"
#include "spiral/trace.hpp"

namespace spiral {

enum class SpiralVariant { Full, NoLinesearch, Adaptive };
enum class SweepOrder { Cyclic, ShuffledCyclic };
enum class DirectionRule { Lbfgs, NominalStep };

struct SpiralConfig {
  SpiralVariant variant = SpiralVariant::Full;
  DirectionRule direction = DirectionRule::Lbfgs;

  // Linesearch shrink factor for tau.
  double beta = 0.5;
  // Non-adaptive stepsizes gamma_i = alpha_step * N / L_i.
  double alpha_step = 0.999;

  SweepOrder sweep = SweepOrder::Cyclic;
  std::uint64_t sweep_seed = 0;

  // Adaptive variant: acceptance margin for the outer stepsize check,
  // multiplicative shrink factor, and the optimistic start gamma_i = scale*N.
  double adaptive_alpha = 0.999;
  double adaptive_sigma = 0.5;
  double adaptive_gamma_scale = 10.0;

  // Directions are rescaled to |d| <= direction_safeguard * |z - v|.
  double direction_safeguard = 1e6;
  int lbfgs_memory = 5;

  int max_epochs = 100;
  double tolerance = 1e-10;
  int max_backtracks = 50;

  void validate() const;  // throws std::invalid_argument
};

// Optional observation points; used by tests and cross-checks, never by the
// production path. on_inner exposes the engine's internal aggregate vector,
// whose scaling differs between the Bregman and Euclidean implementations.
struct RunHooks {
  std::function<void(int k, const Vector& z, const Vector& v)> on_outer;
  std::function<void(int k, const Vector& d, const Vector& z, const Vector& v)>
      on_direction;
  std::function<void(int k, int i, const Vector& s, const Vector& z_tilde)> on_inner;
  std::function<void(const Vector& w)> on_prox;
};

// One solver run over a finite-sum problem. The outer loop alternates a full
// aggregate update, a quasi-Newton linesearch between the nominal step and
// the fast candidate, and an incremental sweep that refreshes the aggregate
// one component at a time. Working state is O(n) vectors plus O(N) scalars;
// no table of per-component iterates or gradients is kept.
class SpiralEngine {
 public:
  SpiralEngine(const FiniteSumProblem& problem, const SpiralConfig& config,
               Vector z_init, const RunHooks* hooks = nullptr);

  // Steps 1-3: z from the aggregate, full refresh at z, nominal step v.
  // Adaptive runs interleave their stage-1/stage-3 stepsize backtracking.
  void full_step();
  // Steps 4-5: direction, interpolation, Lyapunov acceptance. The
  // no-linesearch variant takes u = v directly.
  void linesearch_step();
  // The tau-loop of step 5 run with a caller-supplied direction (already
  // safeguarded). Adaptive stepsize shrinks inside the loop recompute the
  // direction from the refreshed residual.
  void linesearch_with_direction(Vector d);
  // Steps 6-9: cyclic or shuffled sweep updating the aggregate in place.
  void incremental_sweep();

  Trace run();

  const Vector& z() const { return z_; }
  const Vector& v() const { return v_; }
  const Vector& u() const { return u_; }
  const Vector& y() const { return y_; }
  const Vector& s() const { return s_; }
  const Vector& gammas() const { return gammas_; }
  double aggregate_coefficient() const { return c_; }

  Vector residual() const { return z_ - v_; }
  double suboptimality() const { return (z_ - v_).norm(); }
  double lyapunov_vz() const { return lyap_vz_; }
  double last_tau() const { return tau_; }
  long linesearch_backtracks() const { return backtracks_iter_; }
  long shrink_count() const { return shrinks_total_; }
  long gradient_evaluations() const { return evals_; }
  double epochs() const {
    return static_cast<double>(evals_) / static_cast<double>(count_);
  }

  // Adaptive stepsize conditions of the four backtracking stages; true
  // means the descent certificate failed and the stepsizes must shrink.
  bool stage1_needs_shrink(const Vector& z) const;
  bool stage3_needs_shrink(const Vector& v) const;
  bool stage5_needs_shrink(const Vector& y) const;
  bool stage7_needs_shrink(int i, const Vector& z_tilde, double inner_zt) const;

  // Structural memory accounting for the O(n)-state contract.
  std::size_t component_scalar_bytes() const;
  int dense_vector_count() const;

 private:
  void full_pass(const Vector& x, Vector& s_out, double& f_out, Vector& grad_out,
                 std::vector<double>* inner_cache);
  Vector that(const Vector& s) const;
  double lyap(const Vector& y, const Vector& x, double f_x,
              const Vector& grad_f_x) const;
  void shrink_all_gammas();
  void shrink_component_gamma(int i);
  void rebuild_s_from_sweep_sums();
  void rebuild_s_bar();
  void seed_sweep_sums(const Vector& x, double f_x, const Vector& grad_f_x);
  void make_order();
  void record(Trace& trace, double started_at_seconds);

  const FiniteSumProblem* problem_;
  SpiralConfig config_;
  const RunHooks* hooks_;
  int n_ = 0;
  int count_ = 0;

  Vector gammas_;
  double c_ = 0.0;

  Vector s_, s_bar_, s_tilde_;
  Vector z_, v_, u_, y_, d_;
  Vector grad_f_z_, grad_f_u_, grad_h_u_;
  double f_z_ = 0.0, f_u_ = 0.0;
  std::vector<double> inner_u_;

  double lyap_vz_ = 0.0;
  double tau_ = 0.0;
  long backtracks_iter_ = 0;
  long shrinks_iter_ = 0;
  bool fallback_ = false;

  long evals_ = 0;
  long shrinks_total_ = 0;
  int gamma_version_ = 0;
  int iteration_ = 0;

  LbfgsMemory memory_;
  Vector prev_z_, prev_r_;
  bool prev_valid_ = false;
  int prev_version_ = 0;

  std::mt19937_64 sweep_rng_;
  std::vector<int> order_;

  // Scalar aggregates of the previous sweep, enough to re-evaluate the
  // stage-1 condition and rebuild the aggregate vector after a shrink
  // without storing per-component iterates.
  double sweep_sum_f_ = 0.0, sweep_sum_gdot_ = 0.0;
  double sweep_sum_h_ = 0.0, sweep_sum_hdot_ = 0.0;
  Vector sweep_sum_grad_, sweep_sum_hgrad_;
};

Trace run(const FiniteSumProblem& problem, const SpiralConfig& config,
          const Vector& z_init, const RunHooks* hooks = nullptr);

// Euclidean-kernel specialization maintaining the prox-scaled aggregate
//   s <- s + (gamma_hat/N)(grad f_i(u) - grad f_i(z_i)) + (gamma_hat/gamma_i)(z_i - u)
// with gamma_hat = (sum_i gamma_i^{-1})^{-1} and prox_{gamma_hat g} steps.
// Written independently of run() so the two paths can cross-check each
// other; trajectories agree to solver tolerance, not bit-exactly.
// Supports the Full and NoLinesearch variants.
Trace run_euclidean(const FiniteSumProblem& problem, const SpiralConfig& config,
                    const Vector& z_init, const RunHooks* hooks = nullptr);

}  // namespace spiral
