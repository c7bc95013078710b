#include "spiral/data_io.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <Eigen/Dense>

#include "spiral/rng.hpp"

namespace spiral {

namespace {

[[noreturn]] void parse_fail(int lineno, const std::string& what) {
  throw ParseError("libsvm parse error at line " + std::to_string(lineno) + ": " +
                   what);
}

double parse_number(const std::string& token, int lineno) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    parse_fail(lineno, "non-numeric token '" + token + "'");
  }
  if (used != token.size()) {
    parse_fail(lineno, "non-numeric token '" + token + "'");
  }
  return value;
}

std::string format_value(double v) {
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return std::string(buf.data());
}

}  // namespace

Dataset parse_libsvm(std::istream& in, int dimension_override) {
  Dataset out;
  out.provenance = "libsvm";
  std::vector<double> labels;
  int max_index = 0;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream tokens(line);
    std::string token;
    if (!(tokens >> token)) continue;  // blank line

    labels.push_back(parse_number(token, lineno));
    SparseRow row;
    int prev_index = 0;
    while (tokens >> token) {
      const auto colon = token.find(':');
      if (colon == std::string::npos) {
        parse_fail(lineno, "expected idx:val, got '" + token + "'");
      }
      const std::string idx_str = token.substr(0, colon);
      const double idx_val = parse_number(idx_str, lineno);
      const int index = static_cast<int>(idx_val);
      if (static_cast<double>(index) != idx_val || index < 1) {
        parse_fail(lineno, "feature index must be a positive integer, got '" +
                               idx_str + "'");
      }
      if (index <= prev_index) {
        parse_fail(lineno, "feature indices must be strictly increasing");
      }
      prev_index = index;
      row.idx.push_back(index - 1);
      row.val.push_back(parse_number(token.substr(colon + 1), lineno));
    }
    if (prev_index > max_index) max_index = prev_index;
    out.rows.push_back(std::move(row));
  }

  out.dimension = dimension_override > 0 ? dimension_override : max_index;
  if (dimension_override > 0 && max_index > dimension_override) {
    throw ParseError("libsvm parse error: feature index " +
                     std::to_string(max_index) + " exceeds requested dimension " +
                     std::to_string(dimension_override));
  }
  out.labels = Eigen::Map<const Eigen::VectorXd>(labels.data(),
                                                 static_cast<Eigen::Index>(labels.size()));
  return out;
}

void write_libsvm(const Dataset& dataset, std::ostream& out) {
  for (std::size_t r = 0; r < dataset.rows.size(); ++r) {
    out << format_value(dataset.labels[static_cast<Eigen::Index>(r)]);
    const SparseRow& row = dataset.rows[r];
    for (std::size_t k = 0; k < row.idx.size(); ++k) {
      out << ' ' << (row.idx[k] + 1) << ':' << format_value(row.val[k]);
    }
    out << '\n';
  }
}

SynthLasso synth_lasso(int N, int n, double density, std::uint64_t seed) {
  if (N < 1 || n < 1) throw std::invalid_argument("synth_lasso: N, n must be >= 1");
  if (N < n) throw std::invalid_argument("synth_lasso: needs N >= n");
  if (!(density > 0.0 && density <= 1.0)) {
    throw std::invalid_argument("synth_lasso: density must lie in (0, 1]");
  }
  std::mt19937_64 gen(seed);

  // Certificate-first construction: fix the solution and the dual sign
  // pattern, then pick the residual rho with A^T rho = lambda * v so the
  // correlations sit exactly at +-lambda on the support and strictly inside
  // off it; the right-hand side follows as b = A x* + rho.
  Eigen::MatrixXd A(N, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < n; ++j) A(i, j) = scale * rng::gaussian(gen);
  }

  int support = static_cast<int>(std::lround(density * n));
  support = std::max(1, std::min(support, n));

  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) perm[static_cast<std::size_t>(j)] = j;
  for (int j = n - 1; j > 0; --j) {
    std::swap(perm[static_cast<std::size_t>(j)],
              perm[static_cast<std::size_t>(rng::uniform_index(gen, j + 1))]);
  }

  const double lambda = 1.0;
  Eigen::VectorXd x_star = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd dual(n);
  for (int pos = 0; pos < n; ++pos) {
    const int j = perm[static_cast<std::size_t>(pos)];
    if (pos < support) {
      const double sign = rng::sign(gen);
      x_star[j] = sign * rng::uniform(gen, 0.5, 1.5);
      dual[j] = sign;
    } else {
      dual[j] = rng::sign(gen) * rng::uniform(gen, 0.1, 0.8);
    }
  }

  // Least-norm residual satisfying the correlation equations; A has full
  // column rank for Gaussian data with N >= n.
  const Eigen::VectorXd rho =
      A * (A.transpose() * A).ldlt().solve(lambda * dual);

  SynthLasso out;
  out.A = std::move(A);
  out.lambda = lambda;
  out.optimum = std::move(x_star);
  out.b = out.A * out.optimum + rho;
  return out;
}

PhaseData hadamard_phase_data(int n, int d, double p_c, std::uint64_t seed,
                              const Eigen::VectorXd& z_true) {
  if (n < 1 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("hadamard_phase_data: n must be a power of two");
  }
  if (d < 1) throw std::invalid_argument("hadamard_phase_data: d must be >= 1");
  if (p_c < 0.0 || p_c > 1.0) {
    throw std::invalid_argument("hadamard_phase_data: p_c must lie in [0,1]");
  }
  if (z_true.size() != n) {
    throw std::invalid_argument("hadamard_phase_data: z_true must have length n");
  }

  // Sylvester construction, then the 1/sqrt(n) scaling makes rows orthonormal.
  Eigen::MatrixXd H(1, 1);
  H(0, 0) = 1.0;
  for (int size = 1; size < n; size *= 2) {
    Eigen::MatrixXd next(2 * size, 2 * size);
    next.topLeftCorner(size, size) = H;
    next.topRightCorner(size, size) = H;
    next.bottomLeftCorner(size, size) = H;
    next.bottomRightCorner(size, size) = -H;
    H = std::move(next);
  }
  H /= std::sqrt(static_cast<double>(n));

  std::mt19937_64 gen(seed);
  PhaseData out;
  out.A.resize(d * n, n);
  for (int block = 0; block < d; ++block) {
    Eigen::VectorXd signs(n);
    for (int j = 0; j < n; ++j) signs[j] = rng::sign(gen);
    out.A.middleRows(block * n, n) = H * signs.asDiagonal();
  }

  out.b.resize(d * n);
  for (int i = 0; i < d * n; ++i) {
    const double t = out.A.row(i).dot(z_true);
    out.b[i] = t * t;
  }
  for (int i = 0; i < d * n; ++i) {
    if (rng::bernoulli(gen, p_c)) out.b[i] = 0.0;
  }
  return out;
}

}  // namespace spiral
