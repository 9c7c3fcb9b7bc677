#pragma once

#include "gmrf/graph.hpp"
#include "gmrf/matrix.hpp"

#include <functional>

namespace gmrf {

struct PrecisionEstimateOptions {
  int markov_order = 1;
  bool shrinkage = true;
  bool symmetrize = true;
  /// Worker threads for the column loop; 0 picks hardware concurrency.
  unsigned threads = 1;
};

/// Solves block * w = e_local. Tries a Cholesky factorization first and falls
/// back to full-pivot LU; throws SingularBlockError(vertex) if both fail.
Eigen::VectorXd solve_block_column(const Eigen::MatrixXd& block, Index local, Index vertex);

/// Non-zero values of precision column `ne.vertex`, aligned with ne.members.
/// The block covariance is the plain sample covariance of the selected data
/// columns, or its diagonal-target shrinkage estimate when `shrinkage` is set.
Eigen::VectorXd precision_column(const DataRef& x, const NeighborSet& ne, bool shrinkage);

struct PrecisionEstimate {
  /// Symmetrized estimate, or the raw column-wise estimate when
  /// symmetrization is off (then generally not symmetric).
  Eigen::SparseMatrix<double> matrix;
  bool symmetrized = false;
  /// Diagnostic: sparse Cholesky of the symmetrized estimate succeeded.
  bool spd = false;

  /// Throws invalid-argument if the estimate was not symmetrized.
  SparseSymmetricMatrix symmetric() const;
};

/// Returns the block covariance for the sorted index set of column `vertex`.
using BlockCovariance =
    std::function<Eigen::MatrixXd(std::span<const Index> members, Index vertex)>;

/// Column-by-column assembly over `support` (already order-expanded).
PrecisionEstimate assemble_precision(const SparsityPattern& support, const BlockCovariance& blocks,
                                     bool symmetrize, unsigned threads = 1);

/// Same estimator with every block taken from a known covariance matrix.
PrecisionEstimate precision_from_covariance(const DenseSymmetricMatrix& covariance,
                                            const SparsityPattern& support, bool symmetrize);

/// Graph-constrained precision estimate of the data x (n x p).
PrecisionEstimate prec_sparse(const DataRef& x, const SparsityPattern& g,
                              const PrecisionEstimateOptions& opts = {});

/// E[x_i | x_ne(i)] = -sum_{j in ne(i)} L_ij x_j / L_ii, zero-mean model.
double conditional_expectation(const SparseSymmetricMatrix& prec,
                               const Eigen::Ref<const Eigen::VectorXd>& xrow, Index i);

}  // namespace gmrf
