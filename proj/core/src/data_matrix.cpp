#include "spiral/data_matrix.hpp"

#include <stdexcept>
#include <utility>

namespace spiral {

DataMatrix DataMatrix::dense(Eigen::MatrixXd rows) {
  DataMatrix m;
  m.cols_ = static_cast<int>(rows.cols());
  m.dense_ = std::move(rows);
  m.dense_storage_ = true;
  return m;
}

DataMatrix DataMatrix::sparse(std::vector<SparseRow> rows, int cols) {
  for (const auto& r : rows) {
    if (!r.idx.empty() && r.idx.back() >= cols) {
      throw std::invalid_argument("DataMatrix::sparse: index exceeds column count");
    }
  }
  DataMatrix m;
  m.cols_ = cols;
  m.sparse_ = std::move(rows);
  m.dense_storage_ = false;
  return m;
}

int DataMatrix::rows() const {
  return dense_storage_ ? static_cast<int>(dense_.rows())
                        : static_cast<int>(sparse_.size());
}

double DataMatrix::dot(int i, const Eigen::VectorXd& z) const {
  if (dense_storage_) return dense_.row(i).dot(z);
  const SparseRow& r = sparse_[static_cast<std::size_t>(i)];
  double acc = 0.0;
  for (std::size_t k = 0; k < r.idx.size(); ++k) {
    acc += r.val[k] * z[r.idx[k]];
  }
  return acc;
}

void DataMatrix::axpy(int i, double coeff, Eigen::VectorXd& out) const {
  if (coeff == 0.0) return;
  if (dense_storage_) {
    out.noalias() += coeff * dense_.row(i).transpose();
    return;
  }
  const SparseRow& r = sparse_[static_cast<std::size_t>(i)];
  for (std::size_t k = 0; k < r.idx.size(); ++k) {
    out[r.idx[k]] += coeff * r.val[k];
  }
}

double DataMatrix::row_squared_norm(int i) const {
  if (dense_storage_) return dense_.row(i).squaredNorm();
  const SparseRow& r = sparse_[static_cast<std::size_t>(i)];
  double acc = 0.0;
  for (double v : r.val) acc += v * v;
  return acc;
}

Eigen::VectorXd DataMatrix::row_dense(int i) const {
  if (dense_storage_) return dense_.row(i).transpose();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(cols_);
  const SparseRow& r = sparse_[static_cast<std::size_t>(i)];
  for (std::size_t k = 0; k < r.idx.size(); ++k) {
    out[r.idx[k]] = r.val[k];
  }
  return out;
}

}  // namespace spiral
