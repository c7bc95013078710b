#pragma once

#include <vector>

#include <Eigen/Core>

namespace spiral {

// One sparse data row as 0-based (index, value) pairs with strictly
// increasing indices.
struct SparseRow {
  std::vector<int> idx;
  std::vector<double> val;
};

// Row-access matrix backing a finite-sum problem. Dense storage for
// generated data, sparse rows for LIBSVM-style inputs; both expose the
// same per-row dot/axpy interface the solvers are written against.
class DataMatrix {
 public:
  DataMatrix() = default;

  static DataMatrix dense(Eigen::MatrixXd rows);
  static DataMatrix sparse(std::vector<SparseRow> rows, int cols);

  int rows() const;
  int cols() const { return cols_; }
  bool is_dense() const { return dense_storage_; }

  double dot(int i, const Eigen::VectorXd& z) const;
  // out += coeff * a_i
  void axpy(int i, double coeff, Eigen::VectorXd& out) const;
  double row_squared_norm(int i) const;
  Eigen::VectorXd row_dense(int i) const;

 private:
  Eigen::MatrixXd dense_;
  std::vector<SparseRow> sparse_;
  int cols_ = 0;
  bool dense_storage_ = true;
};

}  // namespace spiral
