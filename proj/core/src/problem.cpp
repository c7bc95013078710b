#include "spiral/problem.hpp"

#include <stdexcept>
#include <utility>

namespace spiral {

namespace {

// Keeps gamma_i = alpha N / L_i finite when a data row is identically zero.
constexpr double kSmoothnessFloor = 1e-12;

Vector smoothness_for(ProblemFamily family, const DataMatrix& rows,
                      const Vector& labels) {
  const int count = rows.rows();
  Vector out(count);
  for (int i = 0; i < count; ++i) {
    const double sq = rows.row_squared_norm(i);
    double li = 0.0;
    switch (family) {
      case ProblemFamily::Lasso:
        li = static_cast<double>(count) * sq;
        break;
      case ProblemFamily::NnPca:
        li = sq;
        break;
      case ProblemFamily::PhaseRetrieval:
        li = 3.0 * sq * sq + labels[i] * sq;
        break;
    }
    out[i] = li > kSmoothnessFloor ? li : kSmoothnessFloor;
  }
  return out;
}

}  // namespace

FiniteSumProblem::FiniteSumProblem(ProblemFamily family, DataMatrix rows,
                                   Vector labels, NonsmoothSpec g, Kernel kernel)
    : family_(family),
      rows_(std::move(rows)),
      labels_(std::move(labels)),
      g_(g),
      kernel_(kernel) {
  if (rows_.rows() < 1 || rows_.cols() < 1) {
    throw std::invalid_argument("FiniteSumProblem: empty data");
  }
  if (labels_.size() != rows_.rows()) {
    throw std::invalid_argument("FiniteSumProblem: label count mismatch");
  }
  smoothness_ = smoothness_for(family_, rows_, labels_);
}

double FiniteSumProblem::value_from_inner(int i, double t) const {
  switch (family_) {
    case ProblemFamily::Lasso: {
      const double r = t - labels_[i];
      return 0.5 * static_cast<double>(components()) * r * r;
    }
    case ProblemFamily::NnPca:
      return -0.5 * t * t;
    case ProblemFamily::PhaseRetrieval: {
      const double r = t * t - labels_[i];
      return 0.25 * r * r;
    }
  }
  return 0.0;
}

double FiniteSumProblem::slope_from_inner(int i, double t) const {
  switch (family_) {
    case ProblemFamily::Lasso:
      return static_cast<double>(components()) * (t - labels_[i]);
    case ProblemFamily::NnPca:
      return -t;
    case ProblemFamily::PhaseRetrieval:
      return t * (t * t - labels_[i]);
  }
  return 0.0;
}

Vector FiniteSumProblem::component_gradient(int i, const Vector& z) const {
  Vector out = Vector::Zero(dimension());
  add_component_gradient(i, z, 1.0, out);
  return out;
}

void FiniteSumProblem::add_component_gradient(int i, const Vector& z,
                                              double coeff, Vector& out) const {
  rows_.axpy(i, coeff * slope_from_inner(i, component_inner(i, z)), out);
}

double FiniteSumProblem::smooth_value(const Vector& z) const {
  double acc = 0.0;
  for (int i = 0; i < components(); ++i) acc += component_value(i, z);
  return acc / static_cast<double>(components());
}

Vector FiniteSumProblem::smooth_gradient(const Vector& z) const {
  Vector out = Vector::Zero(dimension());
  const double inv_n = 1.0 / static_cast<double>(components());
  for (int i = 0; i < components(); ++i) add_component_gradient(i, z, inv_n, out);
  return out;
}

double FiniteSumProblem::objective(const Vector& z) const {
  const double gval = g_.value(z);
  if (!std::isfinite(gval)) return gval;
  return smooth_value(z) + gval;
}

FiniteSumProblem lasso_problem(DataMatrix A, Vector b, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("lasso_problem: lambda must be >= 0");
  NonsmoothSpec g = lambda > 0.0 ? NonsmoothSpec::l1(lambda) : NonsmoothSpec::zero();
  return FiniteSumProblem(ProblemFamily::Lasso, std::move(A), std::move(b), g,
                          Kernel::euclidean());
}

FiniteSumProblem lasso_problem(const Matrix& A, const Vector& b, double lambda) {
  return lasso_problem(DataMatrix::dense(A), b, lambda);
}

FiniteSumProblem nnpca_problem(DataMatrix A) {
  Vector labels = Vector::Zero(A.rows());
  return FiniteSumProblem(ProblemFamily::NnPca, std::move(A), std::move(labels),
                          NonsmoothSpec::nnball(), Kernel::euclidean());
}

FiniteSumProblem nnpca_problem(const Matrix& A) {
  return nnpca_problem(DataMatrix::dense(A));
}

FiniteSumProblem phase_retrieval_problem(DataMatrix A, Vector b, double lambda) {
  if (lambda < 0.0) {
    throw std::invalid_argument("phase_retrieval_problem: lambda must be >= 0");
  }
  if (b.size() > 0 && b.minCoeff() < 0.0) {
    throw std::invalid_argument("phase_retrieval_problem: measurements must be >= 0");
  }
  NonsmoothSpec g = lambda > 0.0 ? NonsmoothSpec::l1(lambda) : NonsmoothSpec::zero();
  return FiniteSumProblem(ProblemFamily::PhaseRetrieval, std::move(A), std::move(b),
                          g, Kernel::quartic());
}

FiniteSumProblem phase_retrieval_problem(const Matrix& A, const Vector& b,
                                         double lambda) {
  return phase_retrieval_problem(DataMatrix::dense(A), b, lambda);
}

}  // namespace spiral
