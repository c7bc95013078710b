#pragma once

#include <Eigen/Core>

namespace spiral {

enum class NonsmoothTag { Zero, L1, NNBall };

// Structured tag for the nonsmooth term g. Supported forms:
//   Zero    g = 0
//   L1      g = lambda * |.|_1
//   NNBall  g = indicator of {w : w >= 0, |w| <= 1}
struct NonsmoothSpec {
  NonsmoothTag tag = NonsmoothTag::Zero;
  double lambda = 0.0;

  static NonsmoothSpec zero() { return {NonsmoothTag::Zero, 0.0}; }
  static NonsmoothSpec l1(double lambda);
  static NonsmoothSpec nnball() { return {NonsmoothTag::NNBall, 0.0}; }

  // g(w); +inf outside the set for the indicator tag. Feasibility of the
  // ball indicator is checked with a small tolerance so that points
  // produced by the projection itself always evaluate as feasible.
  double value(const Eigen::VectorXd& w) const;

  bool is_indicator() const { return tag == NonsmoothTag::NNBall; }
};

}  // namespace spiral
