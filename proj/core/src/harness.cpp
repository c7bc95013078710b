#include "spiral/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spiral/data_io.hpp"
#include "spiral/rng.hpp"

namespace spiral {

namespace {

using nlohmann::json;

SweepOrder parse_sweep(const std::string& text) {
  if (text == "cyclic") return SweepOrder::Cyclic;
  if (text == "shuffled") return SweepOrder::ShuffledCyclic;
  throw ConfigError("config: unknown sweep order '" + text + "'");
}

SolverEntry parse_solver(const json& j, const ExperimentConfig& base) {
  if (!j.contains("name")) throw ConfigError("config: solver entry without name");
  SolverEntry entry;
  entry.name = j.at("name").get<std::string>();

  SpiralConfig& sc = entry.spiral;
  sc.max_epochs = base.epochs;
  sc.tolerance = base.tolerance;
  sc.sweep_seed = base.seed;
  if (entry.name == "spiral") {
    sc.variant = SpiralVariant::Full;
  } else if (entry.name == "spiral-no-ls") {
    sc.variant = SpiralVariant::NoLinesearch;
  } else if (entry.name == "adaspiral") {
    sc.variant = SpiralVariant::Adaptive;
  } else if (entry.name == "spiral-euclidean") {
    sc.variant = SpiralVariant::Full;
  }
  if (j.contains("alpha")) sc.alpha_step = j.at("alpha").get<double>();
  if (j.contains("beta")) sc.beta = j.at("beta").get<double>();
  if (j.contains("lbfgs_memory")) sc.lbfgs_memory = j.at("lbfgs_memory").get<int>();
  if (j.contains("sweep")) sc.sweep = parse_sweep(j.at("sweep").get<std::string>());
  if (j.contains("sigma")) sc.adaptive_sigma = j.at("sigma").get<double>();
  if (j.contains("adaptive_alpha")) {
    sc.adaptive_alpha = j.at("adaptive_alpha").get<double>();
  }
  if (j.contains("gamma_scale")) {
    sc.adaptive_gamma_scale = j.at("gamma_scale").get<double>();
  }
  if (j.contains("safeguard")) {
    sc.direction_safeguard = j.at("safeguard").get<double>();
  }

  entry.sgd.max_epochs = base.epochs;
  entry.sgd.seed = base.seed;
  if (j.contains("gamma0")) entry.sgd.gamma0 = j.at("gamma0").get<double>();
  if (j.contains("gamma_tilde")) {
    entry.sgd.gamma_tilde = j.at("gamma_tilde").get<double>();
  }
  if (j.contains("minibatch")) entry.sgd.minibatch = j.at("minibatch").get<int>();

  entry.finito.max_epochs = base.epochs;
  entry.finito.tolerance = base.tolerance;
  entry.finito.sweep_seed = base.seed;
  if (j.contains("alpha")) entry.finito.alpha = j.at("alpha").get<double>();
  if (j.contains("sweep")) {
    entry.finito.sweep = parse_sweep(j.at("sweep").get<std::string>());
  }
  if (j.contains("memory_cap_bytes")) {
    entry.finito.memory_cap_bytes = j.at("memory_cap_bytes").get<std::size_t>();
  }
  return entry;
}

Vector read_vector_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open vector file '" + path + "'");
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      if (field.empty()) continue;
      values.push_back(std::stod(field));
    }
  }
  return Eigen::Map<const Vector>(values.data(),
                                  static_cast<Eigen::Index>(values.size()));
}

}  // namespace

bool ExperimentResult::all_ok() const {
  for (const RunOutcome& r : runs) {
    if (!r.ok) return false;
  }
  return true;
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  ExperimentConfig cfg;
  try {
    if (!j.contains("problem")) throw ConfigError("config: missing 'problem'");
    const json& p = j.at("problem");
    cfg.problem.family = p.at("family").get<std::string>();
    if (p.contains("lambda")) cfg.problem.lambda = p.at("lambda").get<double>();

    const json& src = p.at("source");
    cfg.problem.source_type = src.at("type").get<std::string>();
    if (src.contains("path")) cfg.problem.path = src.at("path").get<std::string>();
    if (src.contains("N")) cfg.problem.N = src.at("N").get<int>();
    if (src.contains("n")) cfg.problem.n = src.at("n").get<int>();
    if (src.contains("density")) cfg.problem.density = src.at("density").get<double>();
    if (src.contains("d")) cfg.problem.d = src.at("d").get<int>();
    if (src.contains("p_c")) cfg.problem.p_c = src.at("p_c").get<double>();
    if (src.contains("seed")) cfg.problem.seed = src.at("seed").get<std::uint64_t>();
    if (src.contains("signal_nonzeros")) {
      cfg.problem.signal_nonzeros = src.at("signal_nonzeros").get<int>();
    }
    if (src.contains("signal_path")) {
      cfg.problem.signal_path = src.at("signal_path").get<std::string>();
    }

    if (j.contains("epochs")) cfg.epochs = j.at("epochs").get<int>();
    if (j.contains("tolerance")) cfg.tolerance = j.at("tolerance").get<double>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("output_dir")) {
      cfg.output_dir = j.at("output_dir").get<std::string>();
    }
    if (j.contains("init")) {
      const json& init = j.at("init");
      if (init.contains("scheme")) cfg.init.scheme = init.at("scheme").get<std::string>();
      if (init.contains("epochs")) cfg.init.warmup_epochs = init.at("epochs").get<int>();
      if (init.contains("power_iterations")) {
        cfg.init.power_iterations = init.at("power_iterations").get<int>();
      }
      if (init.contains("path")) cfg.init.path = init.at("path").get<std::string>();
    }

    if (!j.contains("solvers") || !j.at("solvers").is_array() ||
        j.at("solvers").empty()) {
      throw ConfigError("config: 'solvers' must be a non-empty array");
    }
    for (const json& s : j.at("solvers")) {
      cfg.solvers.push_back(parse_solver(s, cfg));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (cfg.epochs < 1) throw ConfigError("config: epoch budget must be >= 1");
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return from_json_text(text.str());
}

FiniteSumProblem build_problem(const ProblemSpec& spec) {
  const auto dataset = [&]() -> Dataset {
    std::ifstream in(spec.path);
    if (!in) throw ConfigError("config: cannot open data file '" + spec.path + "'");
    return parse_libsvm(in);
  };

  if (spec.family == "lasso") {
    if (spec.source_type == "synthetic") {
      if (spec.N < 1 || spec.n < 1) {
        throw ConfigError("config: synthetic lasso needs N and n");
      }
      SynthLasso gen = synth_lasso(spec.N, spec.n, spec.density, spec.seed);
      return lasso_problem(gen.A, gen.b, spec.lambda > 0.0 ? spec.lambda : gen.lambda);
    }
    if (spec.source_type == "libsvm") {
      Dataset data = dataset();
      return lasso_problem(data.matrix(), data.labels, spec.lambda);
    }
    throw ConfigError("config: unsupported lasso source '" + spec.source_type + "'");
  }

  if (spec.family == "nnpca") {
    if (spec.source_type == "synthetic") {
      if (spec.N < 1 || spec.n < 1) {
        throw ConfigError("config: synthetic nnpca needs N and n");
      }
      std::mt19937_64 gen(spec.seed);
      Matrix A(spec.N, spec.n);
      for (int i = 0; i < spec.N; ++i) {
        for (int j = 0; j < spec.n; ++j) A(i, j) = rng::gaussian(gen);
      }
      return nnpca_problem(A);
    }
    if (spec.source_type == "libsvm") {
      Dataset data = dataset();
      return nnpca_problem(data.matrix());
    }
    throw ConfigError("config: unsupported nnpca source '" + spec.source_type + "'");
  }

  if (spec.family == "phase_retrieval") {
    if (spec.source_type == "hadamard") {
      if (spec.n < 1) throw ConfigError("config: hadamard source needs n");
      Vector signal;
      if (!spec.signal_path.empty()) {
        signal = read_vector_csv(spec.signal_path);
        if (signal.size() != spec.n) {
          throw ConfigError("config: signal length does not match n");
        }
      } else {
        std::mt19937_64 gen(spec.seed + 0x9e3779b97f4a7c15ull);
        signal = Vector::Zero(spec.n);
        int nonzeros = spec.signal_nonzeros > 0 ? spec.signal_nonzeros
                                                : std::max(1, spec.n / 8);
        nonzeros = std::min(nonzeros, spec.n);
        for (int k = 0; k < nonzeros; ++k) {
          int j = rng::uniform_index(gen, spec.n);
          while (signal[j] != 0.0) j = (j + 1) % spec.n;
          signal[j] = rng::gaussian(gen);
        }
      }
      PhaseData data = hadamard_phase_data(spec.n, spec.d, spec.p_c, spec.seed, signal);
      const double lambda =
          spec.lambda > 0.0 ? spec.lambda : 1.0 / static_cast<double>(data.b.size());
      return phase_retrieval_problem(data.A, data.b, lambda);
    }
    if (spec.source_type == "libsvm") {
      Dataset data = dataset();
      return phase_retrieval_problem(data.matrix(), data.labels, spec.lambda);
    }
    throw ConfigError("config: unsupported phase_retrieval source '" +
                      spec.source_type + "'");
  }

  throw ConfigError("config: unknown problem family '" + spec.family + "'");
}

Vector build_initial_point(const FiniteSumProblem& problem,
                           const ExperimentConfig& config) {
  const int n = problem.dimension();
  std::string scheme = config.init.scheme;
  if (scheme.empty()) {
    if (config.problem.family == "nnpca") {
      scheme = "proxsgd";
    } else if (config.problem.family == "phase_retrieval") {
      scheme = "spectral";
    } else {
      scheme = "zero";
    }
  }

  if (scheme == "zero") return Vector::Zero(n);

  if (scheme == "csv") {
    Vector init = read_vector_csv(config.init.path);
    if (init.size() != n) {
      throw ConfigError("config: init vector length does not match dimension");
    }
    return init;
  }

  if (scheme == "proxsgd") {
    // Shared warm start: a seeded feasible point refined by a few proximal
    // stochastic gradient epochs; every solver then starts from its output.
    std::mt19937_64 gen(config.seed + 0x51ed2701u);
    Vector start(n);
    for (int j = 0; j < n; ++j) start[j] = std::abs(rng::gaussian(gen));
    if (problem.nonsmooth().tag == NonsmoothTag::NNBall) {
      start = project_nnball(start);
    }
    ProxSgdConfig warm;
    warm.max_epochs = config.init.warmup_epochs;
    warm.seed = config.seed + 0x5eed;
    Trace warm_trace = run_prox_sgd(problem, warm, start);
    return warm_trace.final_point;
  }

  if (scheme == "spectral") {
    // Power iteration on (1/N) sum b_i a_i a_i^T, scaled so the output norm
    // matches the measurement magnitude sqrt(n * mean(b)).
    std::mt19937_64 gen(config.seed + 0x77ab1eu);
    Vector w(n);
    for (int j = 0; j < n; ++j) w[j] = rng::gaussian(gen);
    w.normalize();
    const int count = problem.components();
    for (int it = 0; it < config.init.power_iterations; ++it) {
      Vector next = Vector::Zero(n);
      for (int i = 0; i < count; ++i) {
        const double t = problem.component_inner(i, w);
        problem.data().axpy(i, problem.label(i) * t / count, next);
      }
      const double norm = next.norm();
      if (!(norm > 0.0)) break;
      w = next / norm;
    }
    double mean_b = 0.0;
    for (int i = 0; i < count; ++i) mean_b += problem.label(i);
    mean_b /= static_cast<double>(count);
    w *= std::sqrt(std::max(0.0, mean_b * static_cast<double>(n)));
    return w;
  }

  throw ConfigError("config: unknown init scheme '" + scheme + "'");
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (config.solvers.empty()) throw ConfigError("config: no solvers configured");

  FiniteSumProblem problem = build_problem(config.problem);
  const Vector z_init = build_initial_point(problem, config);

  std::string out_dir = config.output_dir;
  if (const char* env = std::getenv("SPIRAL_OUTPUT_DIR"); env && *env) {
    out_dir = env;
  }
  std::filesystem::create_directories(out_dir);

  ExperimentResult result;
  for (const SolverEntry& entry : config.solvers) {
    RunOutcome outcome;
    outcome.solver = entry.name;
    try {
      if (entry.name == "spiral" || entry.name == "spiral-no-ls" ||
          entry.name == "adaspiral") {
        outcome.trace = run(problem, entry.spiral, z_init);
      } else if (entry.name == "spiral-euclidean") {
        outcome.trace = run_euclidean(problem, entry.spiral, z_init);
      } else if (entry.name == "proxsgd") {
        outcome.trace = run_prox_sgd(problem, entry.sgd, z_init);
      } else if (entry.name == "finito") {
        outcome.trace = finito_miso_run(problem, entry.finito, z_init);
      } else if (entry.name == "proxsvrg" || entry.name == "proxsaga" ||
                 entry.name == "proxsarah") {
        throw std::runtime_error("solver name '" + entry.name +
                                 "' is reserved but not implemented");
      } else {
        throw std::runtime_error("unknown solver '" + entry.name + "'");
      }
      outcome.trace.solver = entry.name;
      const std::string path = out_dir + "/" + entry.name + ".csv";
      std::ofstream out(path);
      if (!out) throw std::runtime_error("cannot write trace to '" + path + "'");
      write_trace_csv(outcome.trace, out);
      outcome.csv_path = path;
      outcome.ok = true;
    } catch (const std::exception& e) {
      outcome.ok = false;
      outcome.error = e.what();
    }
    result.runs.push_back(std::move(outcome));
  }
  return result;
}

}  // namespace spiral
