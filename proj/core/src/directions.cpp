#include "spiral/directions.hpp"

#include <stdexcept>
#include <vector>

namespace spiral {

LbfgsMemory::LbfgsMemory(int capacity) : capacity_(capacity) {
  if (capacity < 1) throw std::invalid_argument("LbfgsMemory: capacity must be >= 1");
}

bool LbfgsMemory::push_pair(const Vector& z_prev, const Vector& z_cur,
                            const Vector& r_prev, const Vector& r_cur) {
  if (z_prev.size() != z_cur.size() || r_prev.size() != r_cur.size() ||
      z_cur.size() != r_cur.size()) {
    throw std::invalid_argument("LbfgsMemory::push_pair: dimension mismatch");
  }
  Pair pair;
  pair.dz = z_cur - z_prev;
  pair.dr = r_cur - r_prev;
  const double curvature = pair.dz.dot(pair.dr);
  if (!(curvature > 1e-12 * pair.dz.norm() * pair.dr.norm())) {
    return false;
  }
  pair.inv_curvature = 1.0 / curvature;
  if (static_cast<int>(pairs_.size()) == capacity_) pairs_.pop_front();
  pairs_.push_back(std::move(pair));
  return true;
}

Vector LbfgsMemory::direction(const Vector& r) const {
  if (pairs_.empty()) return -r;

  Vector q = r;
  std::vector<double> alpha(pairs_.size());
  for (std::size_t k = pairs_.size(); k-- > 0;) {
    const Pair& p = pairs_[k];
    alpha[k] = p.inv_curvature * p.dz.dot(q);
    q.noalias() -= alpha[k] * p.dr;
  }
  const Pair& newest = pairs_.back();
  q *= 1.0 / (newest.inv_curvature * newest.dr.squaredNorm());
  for (std::size_t k = 0; k < pairs_.size(); ++k) {
    const Pair& p = pairs_[k];
    const double beta = p.inv_curvature * p.dr.dot(q);
    q.noalias() += (alpha[k] - beta) * p.dz;
  }
  return -q;
}

Vector safeguard_direction(Vector d, const Vector& z, const Vector& v, double cap) {
  if (!(cap > 0.0)) throw std::invalid_argument("safeguard_direction: cap must be > 0");
  const double limit = cap * (z - v).norm();
  const double norm = d.norm();
  if (norm > limit) {
    d *= limit > 0.0 ? limit / norm : 0.0;
  }
  return d;
}

}  // namespace spiral
