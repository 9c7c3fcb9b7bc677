#pragma once

#include "gmrf/graph.hpp"
#include "gmrf/matrix.hpp"

#include <vector>

namespace gmrf {

/// Average Gaussian negative quasi-likelihood 0.5 * (tr(S L) - log det L),
/// S the unbiased sample covariance of x. tr(S L) runs over the stored
/// entries of L only. Throws not-positive-definite if L has no Cholesky
/// factorization.
double prec_nll(const DataRef& x, const SparseSymmetricMatrix& prec);

/// (nnz + p) / (2 n), nnz counting non-zero entries of both triangles.
double aic_penalty(const SparseSymmetricMatrix& prec, Index n);

/// prec_nll + aic_penalty.
double prec_aic(const DataRef& x, const SparseSymmetricMatrix& prec);

enum class StopRule {
  /// Evaluate every order up to the maximum; pick the smallest arg-min.
  exhaustive,
  /// Stop at the first order whose aic rises above the previous valid one.
  first_rise,
};

struct OrderEvaluation {
  int order = 0;
  /// False when the estimate at this order had no SPD factorization; nll and
  /// aic are NaN then and the order is never selected.
  bool valid = false;
  double nll = 0.0;
  double aic = 0.0;
};

struct OrderSelectionTrace {
  std::vector<OrderEvaluation> entries;  // ascending order, starting at 0
  int selected = 0;
};

/// Markov-order search over 0..max_order with shrinkage-stabilized estimates.
/// Throws not-positive-definite when no evaluated order is valid.
OrderSelectionTrace select_markov_order(const DataRef& x, const SparsityPattern& g, int max_order,
                                        StopRule rule = StopRule::exhaustive);

}  // namespace gmrf
