#pragma once

#include <vector>

#include "spiral/problem.hpp"

namespace spiral {

// Stepsizes and kernels defining the surrogate distance-generating function
//   hhat = sum_i [ (1/gamma_i) h_i - (1/N) f_i ],
// the geometry in which the solver's proximal steps are taken.
//
// kernels may hold one entry (shared by every component, the common case) or
// one entry per component.
struct SurrogateParams {
  const FiniteSumProblem* problem = nullptr;
  Vector gammas;
  std::vector<Kernel> kernels;

  // Validates gamma_i in (0, N / L_i) against the problem's declared
  // constants. Adaptive runs manage their own stepsizes and skip the upper
  // bound via `checked = false`.
  SurrogateParams(const FiniteSumProblem& problem_in, Vector gammas_in,
                  bool checked = true);
  SurrogateParams(const FiniteSumProblem& problem_in, Vector gammas_in,
                  std::vector<Kernel> kernels_in, bool checked = true);

  const Kernel& kernel_of(int i) const {
    return kernels.size() == 1 ? kernels.front() : kernels[static_cast<std::size_t>(i)];
  }
  bool shared_kernel() const { return kernels.size() == 1; }
  // sum_i 1/gamma_i
  double aggregate_coefficient() const;
};

// grad hhat(z) = sum_i (1/gamma_i) grad h_i(z) - (1/N) sum_i grad f_i(z)
Vector surrogate_gradient(const SurrogateParams& params, const Vector& z);

// D_hhat(y, x) = sum_i (1/gamma_i) D_{h_i}(y, x)
//               - [ f(y) - f(x) - <grad f(x), y - x> ]
double surrogate_bregman(const SurrogateParams& params, const Vector& y,
                         const Vector& x);

// L(y, x) = phi(y) + D_hhat(y, x); evaluates everything from scratch.
// The solver keeps an equivalent cached form on its hot path.
double lyapunov(const FiniteSumProblem& problem, const SurrogateParams& params,
                const Vector& y, const Vector& x);

}  // namespace spiral
