#include "spiral/trace.hpp"

#include <array>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace spiral {

namespace {

std::string format_double(double v) {
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return std::string(buf.data());
}

}  // namespace

void write_trace_csv(const Trace& trace, std::ostream& out) {
  out << "epoch,suboptimality,objective,tau,backtracks,wall_time\n";
  for (const TraceRecord& r : trace.records) {
    out << format_double(r.epoch) << ',' << format_double(r.suboptimality) << ','
        << format_double(r.objective) << ',' << format_double(r.tau) << ','
        << r.backtracks << ',' << format_double(r.wall_time) << '\n';
  }
}

Trace read_trace_csv(std::istream& in) {
  Trace trace;
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("trace csv: empty stream");
  }
  if (line != "epoch,suboptimality,objective,tau,backtracks,wall_time") {
    throw std::runtime_error("trace csv: unexpected header '" + line + "'");
  }
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string field;
    std::array<std::string, 6> parts;
    int count = 0;
    while (std::getline(fields, field, ',')) {
      if (count >= 6) {
        throw std::runtime_error("trace csv: too many fields at line " +
                                 std::to_string(lineno));
      }
      parts[static_cast<std::size_t>(count++)] = field;
    }
    if (count != 6) {
      throw std::runtime_error("trace csv: expected 6 fields at line " +
                               std::to_string(lineno));
    }
    TraceRecord rec;
    try {
      rec.epoch = std::stod(parts[0]);
      rec.suboptimality = std::stod(parts[1]);
      rec.objective = std::stod(parts[2]);
      rec.tau = std::stod(parts[3]);
      rec.backtracks = std::stol(parts[4]);
      rec.wall_time = std::stod(parts[5]);
    } catch (const std::exception&) {
      throw std::runtime_error("trace csv: malformed number at line " +
                               std::to_string(lineno));
    }
    trace.records.push_back(rec);
  }
  return trace;
}

}  // namespace spiral
