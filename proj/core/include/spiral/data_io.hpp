#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "spiral/data_matrix.hpp"

namespace spiral {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Dataset {
  std::vector<SparseRow> rows;  // 0-based indices
  Eigen::VectorXd labels;
  int dimension = 0;
  std::string provenance;

  DataMatrix matrix() const { return DataMatrix::sparse(rows, dimension); }
};

// LIBSVM text: one `label idx:val idx:val ...` sample per line, 1-based
// strictly increasing indices, `#` comments, blank lines skipped. The
// dimension is the largest index seen unless a positive override is given.
Dataset parse_libsvm(std::istream& in, int dimension_override = 0);
void write_libsvm(const Dataset& dataset, std::ostream& out);

// Synthetic l1-regularized least-squares instance with a certified optimum:
// the dual certificate is constructed first (columns scaled so the residual's
// correlations sit exactly at +-lambda on the support and strictly inside
// off it) and the right-hand side is derived from it.
struct SynthLasso {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  double lambda = 0.0;
  Eigen::VectorXd optimum;
};
SynthLasso synth_lasso(int N, int n, double density, std::uint64_t seed);

// Measurement design A = [M S_1; ...; M S_d] with M the 1/sqrt(n)-scaled
// Sylvester Hadamard matrix and S_j random diagonal sign matrices; every row
// has unit norm. b_i = <a_i, z_true>^2, zeroed with probability p_c.
struct PhaseData {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
};
PhaseData hadamard_phase_data(int n, int d, double p_c, std::uint64_t seed,
                              const Eigen::VectorXd& z_true);

}  // namespace spiral
