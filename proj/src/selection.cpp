#include "gmrf/selection.hpp"

#include "gmrf/moments.hpp"
#include "gmrf/precision.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace gmrf {

namespace {

double nll_with_covariance(const Eigen::MatrixXd& s, const SparseSymmetricMatrix& prec) {
  const auto logdet = spd_log_determinant(prec);
  if (!logdet) fail(ErrorCode::not_positive_definite, "precision has no SPD factorization");
  double trace = 0.0;
  const auto& m = prec.matrix();
  for (Index k = 0; k < m.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it) {
      trace += it.value() * s(it.row(), it.col());
    }
  }
  return 0.5 * (trace - *logdet);
}

void check_shapes(const DataRef& x, const SparseSymmetricMatrix& prec) {
  if (prec.size() != x.cols()) {
    fail(ErrorCode::invalid_argument, "precision is " + std::to_string(prec.size()) +
                                          "-dimensional but the data has " +
                                          std::to_string(x.cols()) + " columns");
  }
}

}  // namespace

double prec_nll(const DataRef& x, const SparseSymmetricMatrix& prec) {
  check_shapes(x, prec);
  return nll_with_covariance(sample_covariance(x).matrix(), prec);
}

double aic_penalty(const SparseSymmetricMatrix& prec, Index n) {
  if (n < 1) fail(ErrorCode::invalid_argument, "sample count must be positive");
  return double(prec.nonzeros() + prec.size()) / (2.0 * double(n));
}

double prec_aic(const DataRef& x, const SparseSymmetricMatrix& prec) {
  return prec_nll(x, prec) + aic_penalty(prec, x.rows());
}

OrderSelectionTrace select_markov_order(const DataRef& x, const SparsityPattern& g, int max_order,
                                        StopRule rule) {
  if (max_order < 0) fail(ErrorCode::invalid_argument, "max order must be non-negative");
  if (g.size() != x.cols()) fail(ErrorCode::invalid_argument, "graph and data dimensions differ");
  const Eigen::MatrixXd s = sample_covariance(x).matrix();
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();

  OrderSelectionTrace trace;
  int best = -1;
  double best_aic = std::numeric_limits<double>::infinity();
  double last_valid_aic = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= max_order; ++k) {
    PrecisionEstimateOptions opts;
    opts.markov_order = k;
    const PrecisionEstimate est = prec_sparse(x, g, opts);
    OrderEvaluation eval{k, false, nan, nan};
    if (est.spd) {
      const SparseSymmetricMatrix prec = est.symmetric();
      eval.valid = true;
      eval.nll = nll_with_covariance(s, prec);
      eval.aic = eval.nll + aic_penalty(prec, x.rows());
    }
    trace.entries.push_back(eval);
    if (!eval.valid) continue;

    const bool rose = eval.aic > last_valid_aic;
    last_valid_aic = eval.aic;
    if (eval.aic < best_aic) {
      best_aic = eval.aic;
      best = k;
    }
    if (rule == StopRule::first_rise && rose) break;
  }
  if (best < 0) {
    fail(ErrorCode::not_positive_definite, "no Markov order produced an SPD precision estimate");
  }
  trace.selected = best;
  return trace;
}

}  // namespace gmrf
