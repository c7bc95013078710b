#include "spiral/kernel.hpp"

#include <stdexcept>

namespace spiral {

double Kernel::value(const Vector& x) const {
  const double sq = x.squaredNorm();
  switch (kind_) {
    case KernelKind::Euclidean:
      return 0.5 * sq;
    case KernelKind::Quartic:
      return 0.25 * sq * sq + 0.5 * sq;
  }
  return 0.0;
}

Vector Kernel::gradient(const Vector& x) const {
  switch (kind_) {
    case KernelKind::Euclidean:
      return x;
    case KernelKind::Quartic:
      return (x.squaredNorm() + 1.0) * x;
  }
  return x;
}

void Kernel::add_gradient(const Vector& x, double coeff, Vector& out) const {
  switch (kind_) {
    case KernelKind::Euclidean:
      out.noalias() += coeff * x;
      break;
    case KernelKind::Quartic:
      out.noalias() += coeff * (x.squaredNorm() + 1.0) * x;
      break;
  }
}

double bregman_distance(const Kernel& kernel, const Vector& y, const Vector& x) {
  if (y.size() != x.size()) {
    throw std::invalid_argument("bregman_distance: dimension mismatch");
  }
  switch (kernel.kind()) {
    case KernelKind::Euclidean:
      return 0.5 * (y - x).squaredNorm();
    case KernelKind::Quartic: {
      // With h4 = 1/4 |.|^4 one has the exact identity
      //   D_h4(y, x) = 1/4 (|y|^2 - |x|^2)^2 + 1/2 |x|^2 |y-x|^2,
      // a sum of nonnegative terms. The |y|^2 - |x|^2 factor is evaluated
      // as <y-x, y+x> so it stays accurate when |y| is close to |x|.
      const Vector diff = y - x;
      const double diff_sq = diff.squaredNorm();
      const double sq_gap = diff.dot(y + x);
      return 0.25 * sq_gap * sq_gap + 0.5 * x.squaredNorm() * diff_sq +
             0.5 * diff_sq;
    }
  }
  return 0.0;
}

Vector quartic_gradient(const Vector& x) {
  return (x.squaredNorm() + 1.0) * x;
}

}  // namespace spiral
