#include "gmrf/benchmark.hpp"

#include "gmrf/arp.hpp"
#include "gmrf/graph.hpp"
#include "gmrf/moments.hpp"
#include "gmrf/precision.hpp"
#include "gmrf/rng.hpp"
#include "parallel.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <tuple>

namespace gmrf {

namespace {

constexpr double ar1_phi = 0.8;
constexpr double arp_total = 0.8;
constexpr double nan = std::numeric_limits<double>::quiet_NaN();

struct Setup {
  ArProcessSpec process;
  Index n = 0;
  int markov_order = 1;
};

Setup make_setup(Experiment experiment, int value) {
  if (value < 0) fail(ErrorCode::invalid_argument, "sweep values must be non-negative");
  Setup s;
  switch (experiment) {
    case Experiment::dimension:
      s.process.coefficients = {ar1_phi};
      s.process.horizon = value;
      s.n = 100;
      break;
    case Experiment::samplesize:
      s.process.coefficients = {ar1_phi};
      s.process.horizon = 100;
      s.n = value;
      break;
    case Experiment::arorder:
      s.process.coefficients.assign(static_cast<std::size_t>(value), value > 0 ? arp_total / value : 0.0);
      s.process.horizon = 40;
      s.n = 100;
      s.markov_order = value;
      if (value >= s.process.horizon) fail(ErrorCode::invalid_argument, "AR order must be below T = 40");
      break;
  }
  if (s.process.horizon < 2) fail(ErrorCode::invalid_argument, "benchmark horizon must be at least 2");
  if (s.n < 4) fail(ErrorCode::invalid_argument, "benchmark sample size must be at least 4");
  return s;
}

// Dense inverse of a (possibly non-symmetric) precision estimate.
std::optional<Eigen::MatrixXd> invert(const Eigen::MatrixXd& m) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (!lu.isInvertible()) return std::nullopt;
  Eigen::MatrixXd inv = lu.inverse();
  if (!inv.allFinite()) return std::nullopt;
  return inv;
}

void format_double(std::ostream& out, double v) {
  if (std::isnan(v)) {
    out << "nan";
    return;
  }
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  out.write(buf, ptr - buf);
}

}  // namespace

const char* to_string(Experiment e) noexcept {
  switch (e) {
    case Experiment::dimension: return "dimension";
    case Experiment::samplesize: return "samplesize";
    case Experiment::arorder: return "arorder";
  }
  return "unknown";
}

const char* to_string(Estimator e) noexcept {
  switch (e) {
    case Estimator::gspme: return "gspme";
    case Estimator::le: return "le";
    case Estimator::shrinkage: return "shrinkage";
    case Estimator::sample: return "sample";
  }
  return "unknown";
}

std::optional<Experiment> parse_experiment(std::string_view s) noexcept {
  for (auto e : {Experiment::dimension, Experiment::samplesize, Experiment::arorder}) {
    if (s == to_string(e)) return e;
  }
  return std::nullopt;
}

std::optional<Scale> parse_scale(std::string_view s) noexcept {
  if (s == "desk") return Scale::desk;
  if (s == "paper") return Scale::paper;
  return std::nullopt;
}

std::vector<int> sweep_values(Experiment experiment, Scale scale) {
  const bool desk = scale == Scale::desk;
  switch (experiment) {
    case Experiment::dimension:
      if (desk) return {10, 25, 50, 75, 100};
      return {10, 25, 50, 75, 90, 100, 110, 125, 150, 200, 250, 300};
    case Experiment::samplesize:
      if (desk) return {30, 100, 300, 1000};
      return {30, 50, 75, 90, 100, 110, 150, 300, 1000, 3000, 10000};
    case Experiment::arorder:
      if (desk) return {0, 1, 2, 4, 8, 16, 39};
      std::vector<int> all(40);
      for (int p = 0; p < 40; ++p) all[static_cast<std::size_t>(p)] = p;
      return all;
  }
  return {};
}

std::vector<BenchmarkRecord> benchmark_point(Experiment experiment, int sweep_value, int rep,
                                             std::uint64_t seed) {
  const Setup setup = make_setup(experiment, sweep_value);
  const Index horizon = setup.process.horizon;
  const Eigen::MatrixXd true_cov = population_covariance_arp(setup.process, horizon).matrix();
  const Eigen::MatrixXd true_prec = population_precision_arp(setup.process, horizon).matrix();

  Rng point_rng = substream(seed, Stream::benchmark,
                            {static_cast<std::uint64_t>(experiment), static_cast<std::uint64_t>(sweep_value),
                             static_cast<std::uint64_t>(rep)});
  const Dataset x = simulate_ar(setup.process, setup.n, point_rng());
  const SparsityPattern graph = band_pattern(horizon, 1);

  std::vector<BenchmarkRecord> out;
  for (auto est : {Estimator::gspme, Estimator::le, Estimator::shrinkage, Estimator::sample}) {
    BenchmarkRecord r{experiment, est, sweep_value, rep, nan, nan, false};
    try {
      Eigen::MatrixXd cov, prec;
      bool have_cov = true;
      if (est == Estimator::gspme || est == Estimator::le) {
        PrecisionEstimateOptions opts;
        opts.markov_order = setup.markov_order;
        opts.shrinkage = opts.symmetrize = (est == Estimator::gspme);
        prec = Eigen::MatrixXd(prec_sparse(x, graph, opts).matrix);
        auto inv = invert(prec);
        have_cov = inv.has_value();
        if (have_cov) cov = std::move(*inv);
      } else {
        DenseSymmetricMatrix c = est == Estimator::shrinkage ? cov_shrink_spd(x).covariance
                                                             : sample_covariance(x);
        prec = pseudo_inverse(c).matrix();
        cov = c.matrix();
      }
      r.frob_prec = frobenius_error(prec, true_prec);
      if (have_cov) r.frob_cov = frobenius_error(cov, true_cov);
      r.failed = !have_cov || !std::isfinite(r.frob_prec) || !std::isfinite(r.frob_cov);
    } catch (const Error&) {
      r.failed = true;
    }
    out.push_back(r);
  }
  return out;
}

std::vector<BenchmarkRecord> run_benchmark(const BenchmarkConfig& config) {
  if (config.reps < 1) fail(ErrorCode::invalid_argument, "reps must be at least 1");
  const std::vector<int> sweep = config.sweep ? *config.sweep : sweep_values(config.experiment, config.scale);
  for (int v : sweep) make_setup(config.experiment, v);

  const std::size_t reps = static_cast<std::size_t>(config.reps);
  std::vector<std::vector<BenchmarkRecord>> slots(sweep.size() * reps);
  detail::parallel_for(slots.size(), config.threads, [&](std::size_t k) {
    slots[k] = benchmark_point(config.experiment, sweep[k / reps], static_cast<int>(k % reps), config.seed);
  });

  std::vector<BenchmarkRecord> records;
  records.reserve(slots.size() * 4);
  for (auto& s : slots) records.insert(records.end(), s.begin(), s.end());
  std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.sweep_value, a.rep, a.estimator) < std::tie(b.sweep_value, b.rep, b.estimator);
  });
  return records;
}

void write_benchmark_csv(std::ostream& out, std::span<const BenchmarkRecord> records) {
  out << "experiment,estimator,sweep_value,rep,frob_cov,frob_prec,status\n";
  for (const auto& r : records) {
    out << to_string(r.experiment) << ',' << to_string(r.estimator) << ',' << r.sweep_value << ','
        << r.rep << ',';
    format_double(out, r.frob_cov);
    out << ',';
    format_double(out, r.frob_prec);
    out << ',' << (r.failed ? "failed" : "ok") << '\n';
  }
}

}  // namespace gmrf
