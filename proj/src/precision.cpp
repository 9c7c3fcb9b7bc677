#include "gmrf/precision.hpp"

#include "gmrf/moments.hpp"
#include "parallel.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <limits>
#include <string>

namespace gmrf {

namespace {

Eigen::MatrixXd select_columns(const DataRef& x, std::span<const Index> members) {
  Eigen::MatrixXd out(x.rows(), static_cast<Index>(members.size()));
  for (std::size_t k = 0; k < members.size(); ++k) out.col(static_cast<Index>(k)) = x.col(members[k]);
  return out;
}

Eigen::MatrixXd block_covariance(const DataRef& x, std::span<const Index> members, bool shrinkage,
                                 Index vertex) {
  const Eigen::MatrixXd sub = select_columns(x, members);
  if (shrinkage) return cov_shrink_spd(sub).covariance.matrix();
  // A sample covariance has rank at most n - 1.
  if (static_cast<Index>(members.size()) > x.rows() - 1) throw SingularBlockError(vertex);
  return sample_covariance(sub).matrix();
}

}  // namespace

Eigen::VectorXd solve_block_column(const Eigen::MatrixXd& block, Index local, Index vertex) {
  const Index b = block.rows();
  if (block.cols() != b || local < 0 || local >= b) {
    fail(ErrorCode::invalid_argument, "block / position mismatch at column " + std::to_string(vertex));
  }
  if (!block.allFinite()) throw SingularBlockError(vertex);
  const Eigen::VectorXd rhs = Eigen::VectorXd::Unit(b, local);
  const double tiny = std::numeric_limits<double>::epsilon() * double(b);

  Eigen::LLT<Eigen::MatrixXd> llt(block);
  if (llt.info() == Eigen::Success && llt.rcond() > tiny) {
    Eigen::VectorXd w = llt.solve(rhs);
    if (w.allFinite()) return w;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(block);
  if (lu.isInvertible()) {
    Eigen::VectorXd w = lu.solve(rhs);
    if (w.allFinite()) return w;
  }
  throw SingularBlockError(vertex);
}

Eigen::VectorXd precision_column(const DataRef& x, const NeighborSet& ne, bool shrinkage) {
  const Index local = ne.local_position();
  for (Index m : ne.members) {
    if (m < 0 || m >= x.cols()) fail(ErrorCode::invalid_argument, "neighbor index outside the data");
  }
  if (x.rows() < 2) fail(ErrorCode::insufficient_samples, "precision column needs n >= 2");
  return solve_block_column(block_covariance(x, ne.members, shrinkage, ne.vertex), local, ne.vertex);
}

SparseSymmetricMatrix PrecisionEstimate::symmetric() const {
  if (!symmetrized) fail(ErrorCode::invalid_argument, "estimate was not symmetrized");
  return SparseSymmetricMatrix(matrix);
}

PrecisionEstimate assemble_precision(const SparsityPattern& support, const BlockCovariance& blocks,
                                     bool symmetrize, unsigned threads) {
  const Index p = support.size();
  std::vector<Eigen::VectorXd> columns(static_cast<std::size_t>(p));
  detail::parallel_for(static_cast<std::size_t>(p), threads, [&](std::size_t jj) {
    const Index j = static_cast<Index>(jj);
    const NeighborSet ne = neighbor_set(support, j);
    columns[jj] = solve_block_column(blocks(ne.members, j), ne.local_position(), j);
  });

  Eigen::SparseMatrix<double> raw(p, p);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(support.stored_entries()));
  for (Index j = 0; j < p; ++j) {
    auto col = support.column(j);
    const auto& w = columns[static_cast<std::size_t>(j)];
    for (std::size_t k = 0; k < col.size(); ++k) triplets.emplace_back(col[k], j, w(static_cast<Index>(k)));
  }
  raw.setFromTriplets(triplets.begin(), triplets.end());

  PrecisionEstimate out;
  if (symmetrize) {
    SparseSymmetricMatrix sym = gmrf::symmetrize(raw);
    out.spd = admits_spd_factorization(sym);
    out.matrix = sym.matrix();
    out.symmetrized = true;
  } else {
    out.matrix = std::move(raw);
  }
  return out;
}

PrecisionEstimate precision_from_covariance(const DenseSymmetricMatrix& covariance,
                                            const SparsityPattern& support, bool symmetrize) {
  if (covariance.size() != support.size()) {
    fail(ErrorCode::invalid_argument, "covariance and pattern dimensions differ");
  }
  const Eigen::MatrixXd& cov = covariance.matrix();
  auto blocks = [&](std::span<const Index> members, Index) {
    const Index b = static_cast<Index>(members.size());
    Eigen::MatrixXd block(b, b);
    for (Index r = 0; r < b; ++r) {
      for (Index c = 0; c < b; ++c) block(r, c) = cov(members[r], members[c]);
    }
    return block;
  };
  return assemble_precision(support, blocks, symmetrize);
}

PrecisionEstimate prec_sparse(const DataRef& x, const SparsityPattern& g,
                              const PrecisionEstimateOptions& opts) {
  if (g.size() != x.cols()) {
    fail(ErrorCode::invalid_argument, "graph has " + std::to_string(g.size()) +
                                          " vertices but the data has " + std::to_string(x.cols()) +
                                          " columns");
  }
  const Index needed = opts.shrinkage ? 4 : 2;
  if (x.rows() < needed) {
    fail(ErrorCode::insufficient_samples,
         "precision estimate needs at least " + std::to_string(needed) + " observations");
  }
  const SparsityPattern support = expand_order(g, opts.markov_order);
  auto blocks = [&](std::span<const Index> members, Index vertex) {
    return block_covariance(x, members, opts.shrinkage, vertex);
  };
  return assemble_precision(support, blocks, opts.symmetrize, opts.threads);
}

double conditional_expectation(const SparseSymmetricMatrix& prec,
                               const Eigen::Ref<const Eigen::VectorXd>& xrow, Index i) {
  if (xrow.size() != prec.size()) fail(ErrorCode::invalid_argument, "row length differs from precision size");
  if (i < 0 || i >= prec.size()) fail(ErrorCode::invalid_argument, "vertex outside the precision matrix");
  double diag = 0.0;
  double acc = 0.0;
  for (Eigen::SparseMatrix<double>::InnerIterator it(prec.matrix(), i); it; ++it) {
    if (it.row() == i) {
      diag = it.value();
    } else {
      acc += it.value() * xrow(it.row());
    }
  }
  if (diag == 0.0) {
    fail(ErrorCode::degenerate_conditional, "zero diagonal precision at vertex " + std::to_string(i));
  }
  return -acc / diag;
}

}  // namespace gmrf
