#pragma once

#include <stdexcept>

#include "spiral/kernel.hpp"
#include "spiral/nonsmooth.hpp"

namespace spiral {

// Requested (g, kernel) pair has no closed-form solver.
class UnsupportedOracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Aggregate proximal oracle
//   T(s) = argmin_w { g(w) + c h(w) - <s, w> },   c = sum_i 1/gamma_i,
// valid when every component shares one kernel h. Supported pairs:
//   Euclidean x {Zero, L1, NNBall}   (reduces to prox_{g/c}(s/c))
//   Quartic   x {Zero, L1}           (soft-threshold plus a cubic root)
struct ThatInstance {
  double c = 1.0;
  NonsmoothSpec g;
  KernelKind kernel = KernelKind::Euclidean;
};

bool that_supported(KernelKind kernel, NonsmoothTag tag);

// Throws UnsupportedOracleError for unsupported pairs.
Vector that_solve(const ThatInstance& inst, const Vector& s);

// sign(x_j) * max(|x_j| - t, 0) componentwise.
Vector soft_threshold(const Vector& x, double t);

// Euclidean projection onto {w : w >= 0, |w| <= 1}: clip negatives, then
// scale radially when outside the unit ball.
Vector project_nnball(const Vector& x);

// Minimizer of lambda |w|_1 + c (1/4 |w|^4 + 1/2 |w|^2) - <s, w>.
// With q = soft_threshold(s, lambda) the solution is q / rho where rho is
// the unique positive root of rho^3 - c rho^2 - c |q|^2.
Vector quartic_l1_solve(double c, double lambda, const Vector& s);

// The positive cubic root used above; exposed for direct testing.
double quartic_aggregation_root(double c, double q_squared_norm);

}  // namespace spiral
