#include "spiral/surrogate.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace spiral {

namespace {

void check_gammas(const FiniteSumProblem& problem, const Vector& gammas,
                  bool checked) {
  const int count = problem.components();
  if (gammas.size() != count) {
    throw std::invalid_argument("SurrogateParams: gamma count mismatch");
  }
  const double n = static_cast<double>(count);
  for (int i = 0; i < count; ++i) {
    if (!(gammas[i] > 0.0)) {
      throw std::invalid_argument("SurrogateParams: gamma must be positive");
    }
    if (checked && !(gammas[i] < n / problem.smoothness(i))) {
      throw std::invalid_argument("SurrogateParams: gamma_i must be below N / L_i");
    }
  }
}

}  // namespace

SurrogateParams::SurrogateParams(const FiniteSumProblem& problem_in,
                                 Vector gammas_in, bool checked)
    : SurrogateParams(problem_in, std::move(gammas_in), {problem_in.kernel()},
                      checked) {}

SurrogateParams::SurrogateParams(const FiniteSumProblem& problem_in,
                                 Vector gammas_in, std::vector<Kernel> kernels_in,
                                 bool checked)
    : problem(&problem_in), gammas(std::move(gammas_in)), kernels(std::move(kernels_in)) {
  check_gammas(problem_in, gammas, checked);
  if (kernels.size() != 1 &&
      kernels.size() != static_cast<std::size_t>(problem_in.components())) {
    throw std::invalid_argument("SurrogateParams: kernel count mismatch");
  }
}

double SurrogateParams::aggregate_coefficient() const {
  double c = 0.0;
  for (Eigen::Index i = 0; i < gammas.size(); ++i) c += 1.0 / gammas[i];
  return c;
}

Vector surrogate_gradient(const SurrogateParams& params, const Vector& z) {
  const FiniteSumProblem& problem = *params.problem;
  const int count = problem.components();
  Vector out = Vector::Zero(problem.dimension());
  if (params.shared_kernel()) {
    params.kernels.front().add_gradient(z, params.aggregate_coefficient(), out);
  } else {
    for (int i = 0; i < count; ++i) {
      params.kernel_of(i).add_gradient(z, 1.0 / params.gammas[i], out);
    }
  }
  const double inv_n = -1.0 / static_cast<double>(count);
  for (int i = 0; i < count; ++i) {
    problem.add_component_gradient(i, z, inv_n, out);
  }
  return out;
}

double surrogate_bregman(const SurrogateParams& params, const Vector& y,
                         const Vector& x) {
  const FiniteSumProblem& problem = *params.problem;
  const int count = problem.components();
  double dist = 0.0;
  if (params.shared_kernel()) {
    dist = params.aggregate_coefficient() *
           bregman_distance(params.kernels.front(), y, x);
  } else {
    for (int i = 0; i < count; ++i) {
      dist += bregman_distance(params.kernel_of(i), y, x) / params.gammas[i];
    }
  }
  const double lin = problem.smooth_value(y) - problem.smooth_value(x) -
                     problem.smooth_gradient(x).dot(y - x);
  return dist - lin;
}

double lyapunov(const FiniteSumProblem& problem, const SurrogateParams& params,
                const Vector& y, const Vector& x) {
  const double phi = problem.objective(y);
  if (!std::isfinite(phi)) return phi;
  return phi + surrogate_bregman(params, y, x);
}

}  // namespace spiral
