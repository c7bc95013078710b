#include <doctest.h>

#include <random>

#include "spiral/kernel.hpp"
#include "spiral/problem.hpp"
#include "spiral/surrogate.hpp"
#include "support/oracles.hpp"

using spiral::Kernel;
using spiral::Vector;

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("bregman distance closed-form examples") {
  const Kernel euclid = Kernel::euclidean();
  const Kernel quartic = Kernel::quartic();

  CHECK(spiral::bregman_distance(euclid, vec2(1, 2), vec2(1, 2)) == 0.0);
  CHECK(spiral::bregman_distance(euclid, vec2(3, 0), vec2(0, 4)) ==
        doctest::Approx(12.5).epsilon(1e-15));
  CHECK(spiral::bregman_distance(quartic, vec2(1, 0), vec2(0, 0)) ==
        doctest::Approx(0.75).epsilon(1e-15));

  Vector mismatched(3);
  mismatched.setZero();
  CHECK_THROWS_AS(spiral::bregman_distance(euclid, vec2(0, 0), mismatched),
                  std::invalid_argument);
}

TEST_CASE("quartic gradient examples and finite differences") {
  CHECK(spiral::quartic_gradient(vec2(1, 0)) == vec2(2, 0));
  CHECK(spiral::quartic_gradient(vec2(0, 0)) == vec2(0, 0));
  CHECK((spiral::quartic_gradient(vec2(1, 1)) - vec2(3, 3)).norm() < 1e-12);

  const Kernel quartic = Kernel::quartic();
  std::mt19937_64 gen(7);
  for (int rep = 0; rep < 20; ++rep) {
    const Vector x = oracles::random_vector(gen, 4, 2.0);
    const Vector fd = oracles::fd_gradient(
        [&](const Vector& p) { return quartic.value(p); }, x);
    const Vector g = spiral::quartic_gradient(x);
    CHECK((g - fd).norm() <= 1e-6 * std::max(1.0, g.norm()));
  }
}

TEST_CASE("kernel gradients match values by central differences") {
  std::mt19937_64 gen(21);
  for (const Kernel& kernel : {Kernel::euclidean(), Kernel::quartic()}) {
    for (int rep = 0; rep < 30; ++rep) {
      Vector x = oracles::random_vector(gen, 5, 3.0);
      if (x.norm() > 10.0) x *= 10.0 / x.norm();
      const Vector fd = oracles::fd_gradient(
          [&](const Vector& p) { return kernel.value(p); }, x);
      const Vector g = kernel.gradient(x);
      CHECK((g - fd).norm() <= 1e-6 * std::max(1.0, g.norm()));
    }
  }
}

TEST_CASE("kernels are strictly convex on sampled segments") {
  std::mt19937_64 gen(3);
  for (const Kernel& kernel : {Kernel::euclidean(), Kernel::quartic()}) {
    for (int rep = 0; rep < 200; ++rep) {
      const Vector x = oracles::random_vector(gen, 3, 2.0);
      Vector y = oracles::random_vector(gen, 3, 2.0);
      if ((x - y).norm() < 1e-3) y[0] += 1.0;
      const double t = spiral::rng::uniform(gen, 0.1, 0.9);
      const double mid = kernel.value(t * x + (1.0 - t) * y);
      const double chord = t * kernel.value(x) + (1.0 - t) * kernel.value(y);
      CHECK(mid < chord - 1e-12);
    }
  }
}

TEST_CASE("bregman distance nonnegative on many pairs, zero iff equal") {
  std::mt19937_64 gen(11);
  for (const Kernel& kernel : {Kernel::euclidean(), Kernel::quartic()}) {
    for (int rep = 0; rep < 10000; ++rep) {
      const Vector x = oracles::random_vector(gen, 4, 3.0);
      const Vector y = oracles::random_vector(gen, 4, 3.0);
      CHECK(spiral::bregman_distance(kernel, y, x) >= 0.0);
    }
    const Vector x = oracles::random_vector(gen, 4, 3.0);
    CHECK(spiral::bregman_distance(kernel, x, x) == 0.0);
    Vector y = x;
    y[1] += 1e-3;
    CHECK(spiral::bregman_distance(kernel, y, x) > 0.0);
  }
}

TEST_CASE("three-point identity") {
  std::mt19937_64 gen(13);
  for (const Kernel& kernel : {Kernel::euclidean(), Kernel::quartic()}) {
    for (int rep = 0; rep < 500; ++rep) {
      const Vector x = oracles::random_vector(gen, 4, 2.0);
      const Vector y = oracles::random_vector(gen, 4, 2.0);
      const Vector z = oracles::random_vector(gen, 4, 2.0);
      const double lhs = spiral::bregman_distance(kernel, x, z);
      const double rhs = spiral::bregman_distance(kernel, x, y) +
                         spiral::bregman_distance(kernel, y, z) +
                         (x - y).dot(kernel.gradient(y) - kernel.gradient(z));
      const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
      CHECK(std::abs(lhs - rhs) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("euclidean distance equals the half squared norm") {
  std::mt19937_64 gen(17);
  const Kernel euclid = Kernel::euclidean();
  for (int rep = 0; rep < 1000; ++rep) {
    const Vector x = oracles::random_vector(gen, 6, 4.0);
    const Vector y = oracles::random_vector(gen, 6, 4.0);
    const double d = spiral::bregman_distance(euclid, y, x);
    const double closed = 0.5 * (y - x).squaredNorm();
    CHECK(std::abs(d - closed) <= 1e-14 * std::max(1.0, closed));
  }
}

TEST_CASE("surrogate gradient closed-form examples") {
  // N=1, Euclidean kernel, f == 0 via a zero data row, gamma = 2.
  {
    spiral::Matrix a(1, 1);
    a << 0.0;
    Vector b(1);
    b << 0.0;
    auto problem = spiral::lasso_problem(a, b, 0.0);
    Vector gammas(1);
    gammas << 2.0;
    spiral::SurrogateParams params(problem, gammas);
    Vector z(1);
    z << 4.0;
    const Vector g = spiral::surrogate_gradient(params, z);
    CHECK(g[0] == doctest::Approx(2.0).epsilon(1e-15));
  }
  // N=2, f_i(z) = z^2/2 realized as a lasso with rows 1/sqrt(2).
  {
    spiral::Matrix a(2, 1);
    a << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    Vector b = Vector::Zero(2);
    auto problem = spiral::lasso_problem(a, b, 0.0);
    Vector gammas = Vector::Ones(2);
    spiral::SurrogateParams params(problem, gammas);
    Vector z(1);
    z << 1.0;
    const Vector g = spiral::surrogate_gradient(params, z);
    CHECK(g[0] == doctest::Approx(1.0).epsilon(1e-12));
  }
  // Quartic shared kernel, single phase-retrieval term; gradient of f
  // vanishes at the exact measurement, leaving the kernel part.
  {
    spiral::Matrix a(1, 2);
    a << 1.0, 0.0;
    Vector b(1);
    b << 1.0;
    auto problem = spiral::phase_retrieval_problem(a, b, 0.0);
    Vector gammas = Vector::Ones(1);
    spiral::SurrogateParams params(problem, gammas, /*checked=*/false);
    const Vector z = vec2(1, 0);
    const Vector g = spiral::surrogate_gradient(params, z);
    CHECK((g - vec2(2, 0)).norm() < 1e-14);

    const Vector fd = oracles::fd_gradient(
        [&](const Vector& p) {
          return problem.kernel().value(p) / gammas[0] -
                 problem.component_value(0, p);
        },
        z);
    CHECK((g - fd).norm() <= 1e-6 * std::max(1.0, g.norm()));
  }
}

TEST_CASE("surrogate params validate stepsizes for non-adaptive runs") {
  spiral::Matrix a(1, 1);
  a << 1.0;
  Vector b(1);
  b << 0.0;
  auto problem = spiral::lasso_problem(a, b, 0.5);  // L_1 = 1
  Vector bad(1);
  bad << 1.5;  // above N / L_1 = 1
  CHECK_THROWS_AS(spiral::SurrogateParams(problem, bad), std::invalid_argument);
  Vector zero(1);
  zero << 0.0;
  CHECK_THROWS_AS(spiral::SurrogateParams(problem, zero), std::invalid_argument);
  Vector ok(1);
  ok << 0.9;
  CHECK_NOTHROW(spiral::SurrogateParams(problem, ok));
  // Unchecked construction is the adaptive escape hatch.
  CHECK_NOTHROW(spiral::SurrogateParams(problem, bad, /*checked=*/false));
}
