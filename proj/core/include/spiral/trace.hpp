#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace spiral {

// One row of per-iteration metrics. The first six fields are the normative
// CSV schema; the rest are in-memory diagnostics used by tests and never
// serialized.
struct TraceRecord {
  double epoch = 0.0;          // cumulative individual gradient evals / N
  double suboptimality = 0.0;  // D(z) = |z - v|
  double objective = 0.0;      // phi(z)
  double tau = 0.0;            // last accepted linesearch stepsize
  long backtracks = 0;         // linesearch shrinks + adaptive stepsize shrinks
  double wall_time = 0.0;      // seconds since run start

  double lyapunov = 0.0;
  long cumulative_shrinks = 0;
  bool linesearch_fallback = false;
};

struct Trace {
  std::string solver;
  std::vector<TraceRecord> records;
  Eigen::VectorXd final_point;
  long gradient_evaluations = 0;
  std::string termination;  // "tolerance" | "epoch_budget"

  double final_suboptimality() const {
    return records.empty() ? 0.0 : records.back().suboptimality;
  }
};

// Schema: epoch,suboptimality,objective,tau,backtracks,wall_time
void write_trace_csv(const Trace& trace, std::ostream& out);
Trace read_trace_csv(std::istream& in);

}  // namespace spiral
