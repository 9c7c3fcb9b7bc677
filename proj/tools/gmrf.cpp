// Command-line front end. Talks to the library exclusively through gmrf.h.

#include "gmrf/gmrf.h"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const noexcept { Free(p); }
};

using Matrix = std::unique_ptr<gmrf_matrix, Deleter<gmrf_matrix, gmrf_matrix_free>>;
using Graph = std::unique_ptr<gmrf_graph, Deleter<gmrf_graph, gmrf_graph_free>>;
using Precision = std::unique_ptr<gmrf_precision, Deleter<gmrf_precision, gmrf_precision_free>>;
using Trace = std::unique_ptr<gmrf_order_trace, Deleter<gmrf_order_trace, gmrf_order_trace_free>>;
using Benchmark = std::unique_ptr<gmrf_benchmark, Deleter<gmrf_benchmark, gmrf_benchmark_free>>;

// Exit codes.
constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_usage = 2;
constexpr int exit_non_stationary = 3;
constexpr int exit_too_few_samples = 4;
constexpr int exit_singular_block = 5;

struct CommandError {
  int code;
};

int exit_code(gmrf_status status) {
  switch (status) {
    case GMRF_OK: return exit_ok;
    case GMRF_ERR_INVALID_ARGUMENT: return exit_usage;
    case GMRF_ERR_NON_STATIONARY: return exit_non_stationary;
    case GMRF_ERR_INSUFFICIENT_SAMPLES: return exit_too_few_samples;
    case GMRF_ERR_SINGULAR_BLOCK: return exit_singular_block;
    default: return exit_failure;
  }
}

void check(gmrf_status status) {
  if (status == GMRF_OK) return;
  std::cerr << "error: " << gmrf_status_string(status) << ": " << gmrf_last_error() << '\n';
  throw CommandError{exit_code(status)};
}

[[noreturn]] void usage_error(const std::string& what) {
  std::cerr << "error: " << what << '\n';
  throw CommandError{exit_usage};
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

Matrix load_data(const std::string& path) {
  gmrf_matrix* m = nullptr;
  check(gmrf_matrix_read_csv(path.c_str(), &m));
  return Matrix(m);
}

Graph load_graph(const std::string& path) {
  gmrf_graph* g = nullptr;
  check(gmrf_graph_read(path.c_str(), &g));
  return Graph(g);
}

void require_same_dimension(const Matrix& data, const Graph& graph) {
  if (gmrf_matrix_cols(data.get()) != gmrf_graph_size(graph.get())) {
    usage_error("graph has " + std::to_string(gmrf_graph_size(graph.get())) + " vertices but the data has " +
                std::to_string(gmrf_matrix_cols(data.get())) + " columns");
  }
}

struct SimulateArgs {
  std::string model = "ar";
  int order = 0;
  std::vector<double> coeffs;
  std::size_t n = 0;
  std::size_t t = 0;
  std::uint64_t seed = 0;
  std::string out;
};

void run_simulate(const SimulateArgs& a) {
  if (a.order < 0 || static_cast<std::size_t>(a.order) != a.coeffs.size()) {
    usage_error("--order " + std::to_string(a.order) + " needs exactly that many --coeffs, got " +
                std::to_string(a.coeffs.size()));
  }
  gmrf_matrix* m = nullptr;
  if (a.model == "ar") {
    check(gmrf_simulate_ar(a.coeffs.data(), a.coeffs.size(), 1.0, a.n, a.t, 1, a.seed, &m));
  } else {
    check(gmrf_simulate_mixed_ar(a.coeffs.data(), a.coeffs.size(), a.n, a.t, a.seed, &m));
  }
  Matrix data(m);
  check(gmrf_matrix_write_csv(data.get(), a.out.c_str()));
}

struct ShrinkArgs {
  std::string data;
  std::string target = "diagonal";
  std::string out;
};

void run_shrink(const ShrinkArgs& a) {
  Matrix data = load_data(a.data);
  gmrf_matrix* cov = nullptr;
  double lambda = 0.0;
  double nu = 0.0;
  const gmrf_target target = a.target == "identity" ? GMRF_TARGET_IDENTITY : GMRF_TARGET_DIAGONAL;
  check(gmrf_cov_shrink(data.get(), target, &cov, &lambda, &nu));
  Matrix covariance(cov);
  check(gmrf_matrix_write_csv(covariance.get(), a.out.c_str()));
  std::cout << "lambda=" << fmt(lambda) << '\n';
  if (target == GMRF_TARGET_IDENTITY) std::cout << "nu=" << fmt(nu) << '\n';
}

struct EstimateArgs {
  std::string data;
  std::string graph;
  int markov_order = 1;
  bool no_shrinkage = false;
  bool no_symmetrize = false;
  std::string out;
};

void run_estimate(const EstimateArgs& a) {
  Matrix data = load_data(a.data);
  Graph graph = load_graph(a.graph);
  require_same_dimension(data, graph);
  gmrf_precision_options opts;
  gmrf_precision_options_default(&opts);
  opts.markov_order = a.markov_order;
  opts.shrinkage = a.no_shrinkage ? 0 : 1;
  opts.symmetrize = a.no_symmetrize ? 0 : 1;
  gmrf_precision* p = nullptr;
  check(gmrf_prec_sparse(data.get(), graph.get(), &opts, &p));
  Precision prec(p);
  if (gmrf_precision_is_symmetric(prec.get()) && !gmrf_precision_is_spd(prec.get())) {
    std::cerr << "warning: estimate does not admit a Cholesky factorization\n";
  }
  check(gmrf_precision_write(prec.get(), a.out.c_str()));
}

struct SelectArgs {
  std::string data;
  std::string graph;
  int max_order = 0;
  std::string rule = "exhaustive";
};

void run_select(const SelectArgs& a) {
  Matrix data = load_data(a.data);
  Graph graph = load_graph(a.graph);
  require_same_dimension(data, graph);
  const gmrf_stop_rule rule = a.rule == "first-rise" ? GMRF_RULE_FIRST_RISE : GMRF_RULE_EXHAUSTIVE;
  gmrf_order_trace* t = nullptr;
  check(gmrf_select_order(data.get(), graph.get(), a.max_order, rule, &t));
  Trace trace(t);
  std::cout << "order,nll,aic\n";
  for (std::size_t k = 0; k < gmrf_order_trace_size(trace.get()); ++k) {
    int order = 0;
    int valid = 0;
    double nll = 0.0;
    double aic = 0.0;
    check(gmrf_order_trace_entry(trace.get(), k, &order, &nll, &aic, &valid));
    if (!valid) std::cerr << "warning: order " << order << " has no SPD estimate; skipped\n";
    std::cout << order << ',' << fmt(nll) << ',' << fmt(aic) << '\n';
  }
  std::cout << "selected=" << gmrf_order_trace_selected(trace.get()) << '\n';
}

struct BenchmarkArgs {
  std::string experiment;
  int reps = 1;
  std::uint64_t seed = 0;
  std::string scale = "desk";
  unsigned threads = 0;
  std::string out;
};

void run_benchmark(const BenchmarkArgs& a) {
  gmrf_experiment experiment = GMRF_EXPERIMENT_DIMENSION;
  if (a.experiment == "samplesize") experiment = GMRF_EXPERIMENT_SAMPLESIZE;
  if (a.experiment == "arorder") experiment = GMRF_EXPERIMENT_ARORDER;
  const gmrf_scale scale = a.scale == "paper" ? GMRF_SCALE_PAPER : GMRF_SCALE_DESK;
  gmrf_benchmark* b = nullptr;
  check(gmrf_benchmark_run(experiment, a.reps, a.seed, scale, a.threads, &b));
  Benchmark bench(b);
  std::size_t failed_rows = 0;
  for (std::size_t k = 0; k < gmrf_benchmark_size(bench.get()); ++k) {
    int failed = 0;
    check(gmrf_benchmark_record(bench.get(), k, nullptr, nullptr, nullptr, nullptr, nullptr, &failed));
    failed_rows += static_cast<std::size_t>(failed);
  }
  if (failed_rows > 0) std::cerr << "warning: " << failed_rows << " estimator runs failed\n";
  check(gmrf_benchmark_write_csv(bench.get(), a.out.c_str()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph-constrained sparse precision and shrinkage covariance estimation"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Simulate AR(p) or mixed-effect AR(p) paths to CSV");
  simulate->add_option("--model", sim.model, "Process model")->check(CLI::IsMember({"ar", "mixed"}));
  simulate->add_option("--order", sim.order, "AR order P")->required();
  simulate->add_option("--coeffs", sim.coeffs, "Comma-separated coefficients c1,...,cP")->delimiter(',');
  simulate->add_option("--n", sim.n, "Realisations (rows)")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--t", sim.t, "Horizon T (columns)")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "RNG seed")->required();
  simulate->add_option("--out", sim.out, "Output CSV")->required();

  ShrinkArgs shr;
  auto* shrink = app.add_subcommand("shrink", "Stein-type shrinkage covariance estimate");
  shrink->add_option("--data", shr.data, "Dataset CSV")->required();
  shrink->add_option("--target", shr.target, "Shrinkage target")->check(CLI::IsMember({"diagonal", "identity"}));
  shrink->add_option("--out", shr.out, "Output covariance CSV")->required();

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Sparse precision estimate under a known graph");
  estimate->add_option("--data", est.data, "Dataset CSV")->required();
  estimate->add_option("--graph", est.graph, "Graph (Matrix Market)")->required();
  estimate->add_option("--markov-order", est.markov_order, "Markov order")->check(CLI::NonNegativeNumber);
  estimate->add_flag("--no-shrinkage", est.no_shrinkage, "Use plain block sample covariances");
  estimate->add_flag("--no-symmetrize", est.no_symmetrize, "Keep the raw column-wise estimate");
  estimate->add_option("--out", est.out, "Output precision (Matrix Market)")->required();

  SelectArgs sel;
  auto* select = app.add_subcommand("select-order", "Markov-order selection by penalized quasi-likelihood");
  select->add_option("--data", sel.data, "Dataset CSV")->required();
  select->add_option("--graph", sel.graph, "Graph (Matrix Market)")->required();
  select->add_option("--max-order", sel.max_order, "Largest order to evaluate")
      ->required()
      ->check(CLI::NonNegativeNumber);
  select->add_option("--rule", sel.rule, "Stop rule")->check(CLI::IsMember({"exhaustive", "first-rise"}));

  BenchmarkArgs ben;
  auto* bench = app.add_subcommand("benchmark", "Monte-Carlo Frobenius-error benchmarks on AR processes");
  bench->add_option("--experiment", ben.experiment, "Sweep")
      ->required()
      ->check(CLI::IsMember({"dimension", "samplesize", "arorder"}));
  bench->add_option("--reps", ben.reps, "Replicates per sweep value")->required()->check(CLI::PositiveNumber);
  bench->add_option("--seed", ben.seed, "RNG seed")->required();
  bench->add_option("--scale", ben.scale, "Sweep ranges")->check(CLI::IsMember({"desk", "paper"}));
  bench->add_option("--threads", ben.threads, "Worker threads (0 = all cores)");
  bench->add_option("--out", ben.out, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e, std::cerr, std::cerr);
    return exit_usage;
  }

  try {
    if (*simulate) run_simulate(sim);
    if (*shrink) run_shrink(shr);
    if (*estimate) run_estimate(est);
    if (*select) run_select(sel);
    if (*bench) run_benchmark(ben);
  } catch (const CommandError& e) {
    return e.code;
  }
  return exit_ok;
}
