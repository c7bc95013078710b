#pragma once

#include <deque>

#include <Eigen/Core>

#include "spiral/kernel.hpp"

namespace spiral {

// Limited-memory BFGS model of the inverse Jacobian of the residual map,
// fed with (delta z, delta r) pairs from consecutive outer iterates.
class LbfgsMemory {
 public:
  explicit LbfgsMemory(int capacity = 5);

  int size() const { return static_cast<int>(pairs_.size()); }
  int capacity() const { return capacity_; }
  void clear() { pairs_.clear(); }

  // Stores (z_cur - z_prev, r_cur - r_prev) when the curvature guard
  // <dz, dr> > 1e-12 |dz| |dr| passes; evicts the oldest pair at capacity.
  // Returns whether the pair was kept.
  bool push_pair(const Vector& z_prev, const Vector& z_cur,
                 const Vector& r_prev, const Vector& r_cur);

  // d = -B r by the two-loop recursion, with initial scaling
  // <dz, dr> / <dr, dr> from the newest pair; empty memory gives -r.
  Vector direction(const Vector& r) const;

 private:
  struct Pair {
    Vector dz;
    Vector dr;
    double inv_curvature;  // 1 / <dz, dr>
  };
  std::deque<Pair> pairs_;
  int capacity_;
};

// Rescales d so that |d| <= cap * |z - v|; Lyapunov-based global convergence
// only needs directions bounded by a multiple of the residual.
Vector safeguard_direction(Vector d, const Vector& z, const Vector& v, double cap);

}  // namespace spiral
