#include "spiral/nonsmooth.hpp"

#include <limits>
#include <stdexcept>

namespace spiral {

NonsmoothSpec NonsmoothSpec::l1(double lambda) {
  if (lambda < 0.0) {
    throw std::invalid_argument("NonsmoothSpec::l1: lambda must be >= 0");
  }
  return {NonsmoothTag::L1, lambda};
}

double NonsmoothSpec::value(const Eigen::VectorXd& w) const {
  switch (tag) {
    case NonsmoothTag::Zero:
      return 0.0;
    case NonsmoothTag::L1:
      return lambda * w.lpNorm<1>();
    case NonsmoothTag::NNBall: {
      constexpr double kFeasTol = 1e-10;
      if (w.minCoeff() < -kFeasTol || w.norm() > 1.0 + kFeasTol) {
        return std::numeric_limits<double>::infinity();
      }
      return 0.0;
    }
  }
  return 0.0;
}

}  // namespace spiral
