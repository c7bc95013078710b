#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spiral/baselines.hpp"
#include "spiral/problem.hpp"
#include "spiral/solver.hpp"
#include "spiral/trace.hpp"

namespace spiral {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PlotAxes {
  enum class X { Epochs, Seconds };
  X x = X::Epochs;
};

// Standalone SVG with one suboptimality polyline per trace, log-scale y
// axis with decade ticks, and a legend. Zero suboptimalities are clamped to
// 1e-16 and flagged in the legend entry.
std::string emit_svg(const std::vector<Trace>& traces, const PlotAxes& axes);

struct SolverEntry {
  std::string name;  // spiral | spiral-no-ls | adaspiral | spiral-euclidean |
                     // proxsgd | finito
  SpiralConfig spiral;
  ProxSgdConfig sgd;
  FinitoConfig finito;
};

struct InitSpec {
  // zero | proxsgd | spectral | csv; empty selects the family default
  // (lasso: zero, nnpca: proxsgd warmup, phase_retrieval: spectral).
  std::string scheme;
  int warmup_epochs = 10;
  int power_iterations = 20;
  std::string path;  // csv scheme: one value per line
};

struct ProblemSpec {
  std::string family;       // lasso | nnpca | phase_retrieval
  double lambda = 0.1;
  std::string source_type;  // synthetic | libsvm | hadamard
  std::string path;         // libsvm file
  int N = 0;
  int n = 0;
  double density = 0.1;     // synthetic lasso support density
  int d = 5;                // hadamard blocks
  double p_c = 0.02;        // hadamard corruption probability
  int signal_nonzeros = 0;  // hadamard synthetic signal; 0 -> n/8
  std::string signal_path;  // hadamard signal from csv instead
  std::uint64_t seed = 0;
};

struct ExperimentConfig {
  ProblemSpec problem;
  std::vector<SolverEntry> solvers;
  int epochs = 100;
  double tolerance = 1e-10;
  std::uint64_t seed = 0;
  InitSpec init;
  std::string output_dir = ".";

  // Throws ConfigError on malformed input or schema violations.
  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig from_file(const std::string& path);
};

struct RunOutcome {
  std::string solver;
  bool ok = false;
  std::string error;
  std::string csv_path;
  Trace trace;
};

struct ExperimentResult {
  std::vector<RunOutcome> runs;
  bool all_ok() const;
};

// Builds the problem once, derives one shared initial point, runs every
// configured solver on identical inputs, and writes one trace CSV per
// solver into the output directory (SPIRAL_OUTPUT_DIR overrides it).
// Per-solver failures are recorded and do not stop the remaining runs.
ExperimentResult run_experiment(const ExperimentConfig& config);

// The problem/init construction used by run_experiment, exposed for tests.
FiniteSumProblem build_problem(const ProblemSpec& spec);
Vector build_initial_point(const FiniteSumProblem& problem,
                           const ExperimentConfig& config);

}  // namespace spiral
