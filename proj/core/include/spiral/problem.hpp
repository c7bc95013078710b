#pragma once

#include <Eigen/Core>

#include "spiral/data_matrix.hpp"
#include "spiral/kernel.hpp"
#include "spiral/nonsmooth.hpp"

namespace spiral {

enum class ProblemFamily { Lasso, NnPca, PhaseRetrieval };

// Finite-sum objective
//   phi(z) = (1/N) sum_i f_i(z) + g(z)
// where every component has the linear-composite form f_i(z) = psi_i(<a_i, z>)
// for a family-specific scalar loss psi_i. That structure is what lets the
// solvers re-derive a cached component gradient from a single stored inner
// product instead of an O(n) vector per component.
//
// Per-component relative-smoothness constants L_i are declared at
// construction relative to the shared kernel.
class FiniteSumProblem {
 public:
  FiniteSumProblem(ProblemFamily family, DataMatrix rows, Vector labels,
                   NonsmoothSpec g, Kernel kernel);

  int components() const { return rows_.rows(); }
  int dimension() const { return rows_.cols(); }
  ProblemFamily family() const { return family_; }
  const Kernel& kernel() const { return kernel_; }
  const NonsmoothSpec& nonsmooth() const { return g_; }
  const DataMatrix& data() const { return rows_; }
  double label(int i) const { return labels_[i]; }

  double smoothness(int i) const { return smoothness_[i]; }
  const Vector& smoothness_constants() const { return smoothness_; }

  // <a_i, z>; the scalar from which value and gradient follow.
  double component_inner(int i, const Vector& z) const { return rows_.dot(i, z); }

  double value_from_inner(int i, double t) const;
  // psi_i'(t); grad f_i(z) = psi_i'(<a_i, z>) a_i
  double slope_from_inner(int i, double t) const;

  double component_value(int i, const Vector& z) const {
    return value_from_inner(i, component_inner(i, z));
  }
  Vector component_gradient(int i, const Vector& z) const;
  // out += coeff * grad f_i(z)
  void add_component_gradient(int i, const Vector& z, double coeff, Vector& out) const;
  // out += coeff * psi_i'(t) a_i for a cached inner product t
  void add_gradient_from_inner(int i, double t, double coeff, Vector& out) const {
    rows_.axpy(i, coeff * slope_from_inner(i, t), out);
  }

  // (1/N) sum_i f_i(z)
  double smooth_value(const Vector& z) const;
  // (1/N) sum_i grad f_i(z)
  Vector smooth_gradient(const Vector& z) const;
  // phi(z); +inf when g is an indicator and z is infeasible
  double objective(const Vector& z) const;

 private:
  ProblemFamily family_;
  DataMatrix rows_;
  Vector labels_;
  NonsmoothSpec g_;
  Kernel kernel_;
  Vector smoothness_;
};

// f_i(z) = (N/2)(<a_i,z> - b_i)^2, so (1/N) sum f_i = 1/2 |Az - b|^2.
// Euclidean kernel, L_i = N |a_i|^2 (floored for zero rows), g = lambda l1.
FiniteSumProblem lasso_problem(DataMatrix A, Vector b, double lambda);
FiniteSumProblem lasso_problem(const Matrix& A, const Vector& b, double lambda);

// f_i(z) = -1/2 <a_i,z>^2. Euclidean kernel, L_i = |a_i|^2,
// g = indicator of {w >= 0, |w| <= 1}.
FiniteSumProblem nnpca_problem(DataMatrix A);
FiniteSumProblem nnpca_problem(const Matrix& A);

// f_i(z) = 1/4 (<a_i,z>^2 - b_i)^2 with the quartic kernel
// h(z) = 1/4 |z|^4 + 1/2 |z|^2, L_i = 3 |a_i|^4 + b_i |a_i|^2, g = lambda l1.
FiniteSumProblem phase_retrieval_problem(DataMatrix A, Vector b, double lambda);
FiniteSumProblem phase_retrieval_problem(const Matrix& A, const Vector& b, double lambda);

}  // namespace spiral
