#include "spiral/that_oracle.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <string>

namespace spiral {

bool that_supported(KernelKind kernel, NonsmoothTag tag) {
  if (kernel == KernelKind::Euclidean) return true;
  return tag == NonsmoothTag::Zero || tag == NonsmoothTag::L1;
}

Vector soft_threshold(const Vector& x, double t) {
  if (t < 0.0) throw std::invalid_argument("soft_threshold: threshold must be >= 0");
  Vector out(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double mag = std::abs(x[j]) - t;
    out[j] = mag > 0.0 ? (x[j] > 0.0 ? mag : -mag) : 0.0;
  }
  return out;
}

Vector project_nnball(const Vector& x) {
  Vector y = x.cwiseMax(0.0);
  const double norm = y.norm();
  if (norm > 1.0) y /= norm;
  return y;
}

double quartic_aggregation_root(double c, double q_squared_norm) {
  if (!(c > 0.0)) throw std::invalid_argument("quartic root: c must be positive");
  if (q_squared_norm <= 0.0) return c;

  const auto residual = [&](double rho) {
    return rho * rho * (rho - c) - c * q_squared_norm;
  };

  // p(rho) = rho^3 - c rho^2 - c |q|^2 satisfies p(c) <= 0 and is strictly
  // increasing on [c, inf), so the unique positive root lies in
  // [c, c + k |q|^{2/3}] once k is large enough; k = max(1, c^{1/3}) makes
  // the upper end nonnegative, and the loop doubles it as a rounding guard.
  double lo = c;
  const double step = std::cbrt(q_squared_norm);
  double k = std::max(1.0, std::cbrt(c));
  double hi = c + k * step;
  int expand = 0;
  while (residual(hi) < 0.0 && expand++ < 64) {
    k *= 2.0;
    hi = c + k * step;
  }

  double rho = std::min(hi, c + std::cbrt(q_squared_norm) + std::cbrt(c));
  const double scale = std::max({1.0, c * c * c, hi * hi * hi});
  for (int it = 0; it < 200; ++it) {
    const double p = residual(rho);
    if (p > 0.0) {
      hi = rho;
    } else {
      lo = rho;
    }
    if (std::abs(p) <= 1e-15 * scale) return rho;
    const double dp = rho * (3.0 * rho - 2.0 * c);
    double next = dp > 0.0 ? rho - p / dp : lo;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 8.0 * std::numeric_limits<double>::epsilon() * hi) {
      return 0.5 * (lo + hi);
    }
    rho = next;
  }
  throw std::runtime_error("quartic root: bracketed Newton failed to converge");
}

Vector quartic_l1_solve(double c, double lambda, const Vector& s) {
  if (!(c > 0.0)) throw std::invalid_argument("quartic_l1_solve: c must be positive");
  Vector q = lambda > 0.0 ? soft_threshold(s, lambda) : s;
  const double qn2 = q.squaredNorm();
  if (qn2 == 0.0) return Vector::Zero(s.size());
  const double rho = quartic_aggregation_root(c, qn2);
  return q / rho;
}

Vector that_solve(const ThatInstance& inst, const Vector& s) {
  if (!(inst.c > 0.0)) throw std::invalid_argument("that_solve: c must be positive");
  switch (inst.kernel) {
    case KernelKind::Euclidean: {
      const double gamma_hat = 1.0 / inst.c;
      switch (inst.g.tag) {
        case NonsmoothTag::Zero:
          return gamma_hat * s;
        case NonsmoothTag::L1:
          return soft_threshold(gamma_hat * s, gamma_hat * inst.g.lambda);
        case NonsmoothTag::NNBall:
          return project_nnball(gamma_hat * s);
      }
      break;
    }
    case KernelKind::Quartic: {
      switch (inst.g.tag) {
        case NonsmoothTag::Zero:
          return quartic_l1_solve(inst.c, 0.0, s);
        case NonsmoothTag::L1:
          return quartic_l1_solve(inst.c, inst.g.lambda, s);
        case NonsmoothTag::NNBall:
          throw UnsupportedOracleError(
              "that_solve: quartic kernel with the nonnegative-ball indicator "
              "has no implemented oracle");
      }
      break;
    }
  }
  throw UnsupportedOracleError("that_solve: unsupported (g, kernel) pair");
}

}  // namespace spiral
