#include "gmrf/gmrf.h"

#include "gmrf/arp.hpp"
#include "gmrf/benchmark.hpp"
#include "gmrf/io.hpp"
#include "gmrf/moments.hpp"
#include "gmrf/precision.hpp"
#include "gmrf/selection.hpp"

#include <fstream>
#include <memory>
#include <limits>
#include <new>
#include <string>

struct gmrf_matrix {
  Eigen::MatrixXd values;
};

struct gmrf_graph {
  gmrf::SparsityPattern pattern;
};

struct gmrf_precision {
  Eigen::SparseMatrix<double> values;
  bool symmetric = false;
  bool spd = false;
};

struct gmrf_order_trace {
  gmrf::OrderSelectionTrace trace;
};

struct gmrf_benchmark {
  std::vector<gmrf::BenchmarkRecord> records;
};

namespace {

thread_local std::string last_error;
thread_local long long last_column = -1;

gmrf_status to_status(gmrf::ErrorCode code) {
  using gmrf::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return GMRF_ERR_INVALID_ARGUMENT;
    case ErrorCode::insufficient_samples: return GMRF_ERR_INSUFFICIENT_SAMPLES;
    case ErrorCode::singular_block: return GMRF_ERR_SINGULAR_BLOCK;
    case ErrorCode::not_positive_definite: return GMRF_ERR_NOT_POSITIVE_DEFINITE;
    case ErrorCode::non_stationary: return GMRF_ERR_NON_STATIONARY;
    case ErrorCode::degenerate_conditional: return GMRF_ERR_DEGENERATE_CONDITIONAL;
    case ErrorCode::numeric: return GMRF_ERR_NUMERIC;
    case ErrorCode::io: return GMRF_ERR_IO;
  }
  return GMRF_ERR_INTERNAL;
}

template <typename Body>
gmrf_status guard(Body&& body) {
  last_error.clear();
  last_column = -1;
  try {
    body();
    return GMRF_OK;
  } catch (const gmrf::SingularBlockError& e) {
    last_error = e.what();
    last_column = e.column();
    return GMRF_ERR_SINGULAR_BLOCK;
  } catch (const gmrf::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return GMRF_ERR_INTERNAL;
}

template <typename T>
void require(const T* p, const char* name) {
  if (p == nullptr) gmrf::fail(gmrf::ErrorCode::invalid_argument, std::string(name) + " is NULL");
}

gmrf::SparseSymmetricMatrix symmetric_of(const gmrf_precision* prec) {
  require(prec, "precision");
  if (!prec->symmetric) {
    gmrf::fail(gmrf::ErrorCode::invalid_argument, "precision estimate is not symmetric");
  }
  return gmrf::SparseSymmetricMatrix(prec->values);
}

gmrf_precision* wrap(gmrf::PrecisionEstimate est) {
  return new gmrf_precision{std::move(est.matrix), est.symmetrized, est.spd};
}

}  // namespace

extern "C" {

const char* gmrf_last_error(void) { return last_error.c_str(); }

const char* gmrf_status_string(gmrf_status status) {
  switch (status) {
    case GMRF_OK: return "ok";
    case GMRF_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case GMRF_ERR_INSUFFICIENT_SAMPLES: return "insufficient-samples";
    case GMRF_ERR_SINGULAR_BLOCK: return "singular-block";
    case GMRF_ERR_NOT_POSITIVE_DEFINITE: return "not-positive-definite";
    case GMRF_ERR_NON_STATIONARY: return "non-stationary";
    case GMRF_ERR_DEGENERATE_CONDITIONAL: return "degenerate-conditional";
    case GMRF_ERR_NUMERIC: return "numeric";
    case GMRF_ERR_IO: return "io";
    case GMRF_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

long long gmrf_last_error_column(void) { return last_column; }

// Dense matrices

gmrf_status gmrf_matrix_create(size_t rows, size_t cols, const double* row_major, gmrf_matrix** out) {
  return guard([&] {
    require(out, "out");
    if (rows > 0 && cols > 0) require(row_major, "row_major");
    auto m = std::make_unique<gmrf_matrix>();
    m->values.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (size_t i = 0; i < rows; ++i) {
      for (size_t j = 0; j < cols; ++j) {
        m->values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row_major[i * cols + j];
      }
    }
    *out = m.release();
  });
}

void gmrf_matrix_free(gmrf_matrix* m) { delete m; }

size_t gmrf_matrix_rows(const gmrf_matrix* m) { return m ? static_cast<size_t>(m->values.rows()) : 0; }

size_t gmrf_matrix_cols(const gmrf_matrix* m) { return m ? static_cast<size_t>(m->values.cols()) : 0; }

gmrf_status gmrf_matrix_copy(const gmrf_matrix* m, double* row_major, size_t len) {
  return guard([&] {
    require(m, "matrix");
    require(row_major, "row_major");
    const auto& v = m->values;
    if (len < static_cast<size_t>(v.size())) {
      gmrf::fail(gmrf::ErrorCode::invalid_argument, "output buffer too small");
    }
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        row_major, v.rows(), v.cols()) = v;
  });
}

gmrf_status gmrf_matrix_read_csv(const char* path, gmrf_matrix** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new gmrf_matrix{gmrf::io::read_csv(std::filesystem::path(path))};
  });
}

gmrf_status gmrf_matrix_write_csv(const gmrf_matrix* m, const char* path) {
  return guard([&] {
    require(m, "matrix");
    require(path, "path");
    gmrf::io::write_csv(std::filesystem::path(path), m->values);
  });
}

// Graphs

gmrf_status gmrf_graph_band(size_t p, size_t bandwidth, gmrf_graph** out) {
  return guard([&] {
    require(out, "out");
    *out = new gmrf_graph{gmrf::band_pattern(static_cast<gmrf::Index>(p), static_cast<gmrf::Index>(bandwidth))};
  });
}

gmrf_status gmrf_graph_from_edges(size_t p, const size_t* rows, const size_t* cols, size_t count,
                                  gmrf_graph** out) {
  return guard([&] {
    require(out, "out");
    if (count > 0) {
      require(rows, "rows");
      require(cols, "cols");
    }
    std::vector<std::pair<gmrf::Index, gmrf::Index>> edges;
    edges.reserve(count);
    for (size_t k = 0; k < count; ++k) {
      edges.emplace_back(static_cast<gmrf::Index>(rows[k]), static_cast<gmrf::Index>(cols[k]));
    }
    *out = new gmrf_graph{gmrf::SparsityPattern::from_edges(static_cast<gmrf::Index>(p), edges)};
  });
}

gmrf_status gmrf_graph_expand(const gmrf_graph* g, int markov_order, gmrf_graph** out) {
  return guard([&] {
    require(g, "graph");
    require(out, "out");
    *out = new gmrf_graph{gmrf::expand_order(g->pattern, markov_order)};
  });
}

void gmrf_graph_free(gmrf_graph* g) { delete g; }

size_t gmrf_graph_size(const gmrf_graph* g) { return g ? static_cast<size_t>(g->pattern.size()) : 0; }

size_t gmrf_graph_edge_pairs(const gmrf_graph* g) {
  return g ? static_cast<size_t>(g->pattern.edge_pairs()) : 0;
}

int gmrf_graph_contains(const gmrf_graph* g, size_t i, size_t j) {
  return g && g->pattern.contains(static_cast<gmrf::Index>(i), static_cast<gmrf::Index>(j)) ? 1 : 0;
}

gmrf_status gmrf_graph_read(const char* path, gmrf_graph** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new gmrf_graph{gmrf::io::read_pattern(std::filesystem::path(path))};
  });
}

gmrf_status gmrf_graph_write(const gmrf_graph* g, const char* path) {
  return guard([&] {
    require(g, "graph");
    require(path, "path");
    gmrf::io::write_pattern(std::filesystem::path(path), g->pattern);
  });
}

// Simulation

gmrf_status gmrf_simulate_ar(const double* coefficients, size_t order, double noise_sd, size_t n,
                             size_t horizon, int stationary_init, uint64_t seed, gmrf_matrix** out) {
  return guard([&] {
    require(out, "out");
    if (order > 0) require(coefficients, "coefficients");
    gmrf::ArProcessSpec spec;
    spec.coefficients.assign(coefficients, coefficients + order);
    spec.noise_sd = noise_sd;
    spec.horizon = static_cast<gmrf::Index>(horizon);
    spec.stationary_init = stationary_init != 0;
    *out = new gmrf_matrix{gmrf::simulate_ar(spec, static_cast<gmrf::Index>(n), seed)};
  });
}

gmrf_status gmrf_simulate_mixed_ar(const double* coefficients, size_t order, size_t n, size_t horizon,
                                   uint64_t seed, gmrf_matrix** out) {
  return guard([&] {
    require(out, "out");
    if (order > 0) require(coefficients, "coefficients");
    gmrf::MixedEffectArSpec spec;
    spec.coefficients.assign(coefficients, coefficients + order);
    spec.horizon = static_cast<gmrf::Index>(horizon);
    spec.realisations = static_cast<gmrf::Index>(n);
    spec.seed = seed;
    *out = new gmrf_matrix{gmrf::simulate_mixed_effect_ar(spec)};
  });
}

// Shrinkage

gmrf_status gmrf_cov_shrink(const gmrf_matrix* data, gmrf_target target, gmrf_matrix** covariance,
                            double* lambda, double* nu) {
  return guard([&] {
    require(data, "data");
    require(covariance, "covariance");
    gmrf::ShrinkageEstimate est;
    if (target == GMRF_TARGET_IDENTITY) {
      est = gmrf::cov_shrink_identity(data->values);
    } else if (target == GMRF_TARGET_DIAGONAL) {
      est = gmrf::cov_shrink_spd(data->values);
    } else {
      gmrf::fail(gmrf::ErrorCode::invalid_argument, "unknown shrinkage target");
    }
    if (lambda) *lambda = est.lambda;
    if (nu) *nu = est.nu.value_or(std::numeric_limits<double>::quiet_NaN());
    *covariance = new gmrf_matrix{est.covariance.matrix()};
  });
}

// Precision

void gmrf_precision_options_default(gmrf_precision_options* opts) {
  if (opts) *opts = gmrf_precision_options{1, 1, 1};
}

gmrf_status gmrf_prec_sparse(const gmrf_matrix* data, const gmrf_graph* g, const gmrf_precision_options* opts,
                             gmrf_precision** out) {
  return guard([&] {
    require(data, "data");
    require(g, "graph");
    require(out, "out");
    gmrf::PrecisionEstimateOptions o;
    if (opts) {
      o.markov_order = opts->markov_order;
      o.shrinkage = opts->shrinkage != 0;
      o.symmetrize = opts->symmetrize != 0;
    }
    *out = wrap(gmrf::prec_sparse(data->values, g->pattern, o));
  });
}

void gmrf_precision_free(gmrf_precision* prec) { delete prec; }

size_t gmrf_precision_size(const gmrf_precision* prec) {
  return prec ? static_cast<size_t>(prec->values.rows()) : 0;
}

int gmrf_precision_is_symmetric(const gmrf_precision* prec) { return prec && prec->symmetric ? 1 : 0; }

int gmrf_precision_is_spd(const gmrf_precision* prec) { return prec && prec->spd ? 1 : 0; }

size_t gmrf_precision_nonzeros(const gmrf_precision* prec) {
  if (!prec) return 0;
  size_t count = 0;
  for (Eigen::Index k = 0; k < prec->values.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(prec->values, k); it; ++it) {
      if (it.value() != 0.0) ++count;
    }
  }
  return count;
}

double gmrf_precision_get(const gmrf_precision* prec, size_t i, size_t j) {
  if (!prec || i >= gmrf_precision_size(prec) || j >= gmrf_precision_size(prec)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return prec->values.coeff(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
}

gmrf_status gmrf_precision_read(const char* path, gmrf_precision** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    gmrf::SparseSymmetricMatrix m(gmrf::io::read_sparse(std::filesystem::path(path)));
    const bool spd = gmrf::admits_spd_factorization(m);
    *out = new gmrf_precision{m.matrix(), true, spd};
  });
}

gmrf_status gmrf_precision_write(const gmrf_precision* prec, const char* path) {
  return guard([&] {
    require(prec, "precision");
    require(path, "path");
    gmrf::io::write_sparse(std::filesystem::path(path), prec->values, prec->symmetric);
  });
}

gmrf_status gmrf_prec_nll(const gmrf_matrix* data, const gmrf_precision* prec, double* out) {
  return guard([&] {
    require(data, "data");
    require(out, "out");
    *out = gmrf::prec_nll(data->values, symmetric_of(prec));
  });
}

gmrf_status gmrf_prec_aic(const gmrf_matrix* data, const gmrf_precision* prec, double* out) {
  return guard([&] {
    require(data, "data");
    require(out, "out");
    *out = gmrf::prec_aic(data->values, symmetric_of(prec));
  });
}

gmrf_status gmrf_conditional_expectation(const gmrf_precision* prec, const double* xrow, size_t len,
                                         size_t i, double* out) {
  return guard([&] {
    require(xrow, "xrow");
    require(out, "out");
    Eigen::Map<const Eigen::VectorXd> row(xrow, static_cast<Eigen::Index>(len));
    *out = gmrf::conditional_expectation(symmetric_of(prec), row, static_cast<gmrf::Index>(i));
  });
}

// Order selection

gmrf_status gmrf_select_order(const gmrf_matrix* data, const gmrf_graph* g, int max_order, gmrf_stop_rule rule,
                              gmrf_order_trace** out) {
  return guard([&] {
    require(data, "data");
    require(g, "graph");
    require(out, "out");
    const auto r = rule == GMRF_RULE_FIRST_RISE ? gmrf::StopRule::first_rise : gmrf::StopRule::exhaustive;
    *out = new gmrf_order_trace{gmrf::select_markov_order(data->values, g->pattern, max_order, r)};
  });
}

void gmrf_order_trace_free(gmrf_order_trace* t) { delete t; }

size_t gmrf_order_trace_size(const gmrf_order_trace* t) { return t ? t->trace.entries.size() : 0; }

int gmrf_order_trace_selected(const gmrf_order_trace* t) { return t ? t->trace.selected : -1; }

gmrf_status gmrf_order_trace_entry(const gmrf_order_trace* t, size_t k, int* order, double* nll, double* aic,
                                   int* valid) {
  return guard([&] {
    require(t, "trace");
    if (k >= t->trace.entries.size()) gmrf::fail(gmrf::ErrorCode::invalid_argument, "trace index out of range");
    const auto& e = t->trace.entries[k];
    if (order) *order = e.order;
    if (nll) *nll = e.nll;
    if (aic) *aic = e.aic;
    if (valid) *valid = e.valid ? 1 : 0;
  });
}

// Benchmarks

gmrf_status gmrf_benchmark_run(gmrf_experiment experiment, int reps, uint64_t seed, gmrf_scale scale,
                               unsigned threads, gmrf_benchmark** out) {
  return guard([&] {
    require(out, "out");
    gmrf::BenchmarkConfig config;
    switch (experiment) {
      case GMRF_EXPERIMENT_DIMENSION: config.experiment = gmrf::Experiment::dimension; break;
      case GMRF_EXPERIMENT_SAMPLESIZE: config.experiment = gmrf::Experiment::samplesize; break;
      case GMRF_EXPERIMENT_ARORDER: config.experiment = gmrf::Experiment::arorder; break;
      default: gmrf::fail(gmrf::ErrorCode::invalid_argument, "unknown experiment");
    }
    config.scale = scale == GMRF_SCALE_PAPER ? gmrf::Scale::paper : gmrf::Scale::desk;
    config.reps = reps;
    config.seed = seed;
    config.threads = threads;
    *out = new gmrf_benchmark{gmrf::run_benchmark(config)};
  });
}

void gmrf_benchmark_free(gmrf_benchmark* b) { delete b; }

size_t gmrf_benchmark_size(const gmrf_benchmark* b) { return b ? b->records.size() : 0; }

gmrf_status gmrf_benchmark_record(const gmrf_benchmark* b, size_t k, gmrf_estimator* estimator, int* sweep_value,
                                  int* rep, double* frob_cov, double* frob_prec, int* failed) {
  return guard([&] {
    require(b, "benchmark");
    if (k >= b->records.size()) gmrf::fail(gmrf::ErrorCode::invalid_argument, "record index out of range");
    const auto& r = b->records[k];
    if (estimator) *estimator = static_cast<gmrf_estimator>(r.estimator);
    if (sweep_value) *sweep_value = r.sweep_value;
    if (rep) *rep = r.rep;
    if (frob_cov) *frob_cov = r.frob_cov;
    if (frob_prec) *frob_prec = r.frob_prec;
    if (failed) *failed = r.failed ? 1 : 0;
  });
}

gmrf_status gmrf_benchmark_write_csv(const gmrf_benchmark* b, const char* path) {
  return guard([&] {
    require(b, "benchmark");
    require(path, "path");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) gmrf::fail(gmrf::ErrorCode::io, std::string("cannot write ") + path);
    gmrf::write_benchmark_csv(out, b->records);
    out.flush();
    if (!out) gmrf::fail(gmrf::ErrorCode::io, std::string("write failed for ") + path);
  });
}

}  // extern "C"
