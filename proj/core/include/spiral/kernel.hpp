#pragma once

#include <Eigen/Core>

namespace spiral {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class KernelKind { Euclidean, Quartic };

// Distance-generating function: strictly convex and C^1 on all of R^n.
// Two kinds are provided: the Euclidean kernel h(x) = 1/2 |x|^2 and the
// quartic kernel h(x) = 1/4 |x|^4 + 1/2 |x|^2 used by losses whose
// gradients are not globally Lipschitz.
class Kernel {
 public:
  static Kernel euclidean() { return Kernel(KernelKind::Euclidean); }
  static Kernel quartic() { return Kernel(KernelKind::Quartic); }

  KernelKind kind() const { return kind_; }

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;

  // out += coeff * grad h(x)
  void add_gradient(const Vector& x, double coeff, Vector& out) const;

 private:
  explicit Kernel(KernelKind kind) : kind_(kind) {}
  KernelKind kind_;
};

// D_h(y, x) = h(y) - h(x) - <grad h(x), y - x>.
//
// The Euclidean case is computed as 1/2 |y-x|^2 and the quartic case via a
// sum of nonnegative terms; both avoid catastrophic cancellation for y near
// x, which the solver's descent accounting depends on.
double bregman_distance(const Kernel& kernel, const Vector& y, const Vector& x);

// Gradient of the quartic kernel: (|x|^2 + 1) x.
Vector quartic_gradient(const Vector& x);

}  // namespace spiral
