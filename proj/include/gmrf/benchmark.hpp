#pragma once

#include "gmrf/errors.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace gmrf {

enum class Experiment { dimension, samplesize, arorder };

/// Declaration order is the row order within one (sweep value, rep).
enum class Estimator { gspme, le, shrinkage, sample };

enum class Scale { desk, paper };

const char* to_string(Experiment e) noexcept;
const char* to_string(Estimator e) noexcept;
std::optional<Experiment> parse_experiment(std::string_view s) noexcept;
std::optional<Scale> parse_scale(std::string_view s) noexcept;

/// Frobenius errors of one estimator against the population covariance and
/// precision. `failed` rows carry NaN in the metric(s) that could not be
/// computed.
struct BenchmarkRecord {
  Experiment experiment = Experiment::dimension;
  Estimator estimator = Estimator::gspme;
  int sweep_value = 0;
  int rep = 0;
  double frob_cov = 0.0;
  double frob_prec = 0.0;
  bool failed = false;
};

struct BenchmarkConfig {
  Experiment experiment = Experiment::dimension;
  int reps = 1;
  std::uint64_t seed = 0;
  Scale scale = Scale::desk;
  /// Replaces the scale's sweep when set.
  std::optional<std::vector<int>> sweep;
  /// 0 picks hardware concurrency.
  unsigned threads = 0;
};

/// Sweep values of an experiment:
///   dimension   T (n = 100, AR(1) phi = 0.8)
///   samplesize  n (T = 100, AR(1) phi = 0.8)
///   arorder     p (n = 100, T = 40, psi_j = 0.8 / p)
std::vector<int> sweep_values(Experiment experiment, Scale scale);

/// The four records (one per estimator) for a single sweep value and rep.
std::vector<BenchmarkRecord> benchmark_point(Experiment experiment, int sweep_value, int rep,
                                             std::uint64_t seed);

/// All records, sorted by (sweep value, rep, estimator).
std::vector<BenchmarkRecord> run_benchmark(const BenchmarkConfig& config);

/// Header `experiment,estimator,sweep_value,rep,frob_cov,frob_prec,status`.
void write_benchmark_csv(std::ostream& out, std::span<const BenchmarkRecord> records);

}  // namespace gmrf
