#include "gmrf/matrix.hpp"

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCholesky>

#include <cmath>

namespace gmrf {

DenseSymmetricMatrix::DenseSymmetricMatrix(Eigen::MatrixXd m) : values_(std::move(m)) {
  if (values_.rows() != values_.cols()) {
    fail(ErrorCode::invalid_argument, "symmetric matrix must be square");
  }
  if (values_ != values_.transpose()) {
    fail(ErrorCode::invalid_argument, "matrix is not exactly symmetric");
  }
}

DenseSymmetricMatrix DenseSymmetricMatrix::from_lower(Eigen::MatrixXd m) {
  if (m.rows() != m.cols()) fail(ErrorCode::invalid_argument, "symmetric matrix must be square");
  m.triangularView<Eigen::StrictlyUpper>() = m.transpose().triangularView<Eigen::StrictlyUpper>();
  DenseSymmetricMatrix out;
  out.values_ = std::move(m);
  return out;
}

SparseSymmetricMatrix::SparseSymmetricMatrix(Eigen::SparseMatrix<double> m) : values_(std::move(m)) {
  if (values_.rows() != values_.cols()) {
    fail(ErrorCode::invalid_argument, "symmetric matrix must be square");
  }
  values_.makeCompressed();
  Eigen::SparseMatrix<double> t = values_.transpose();
  for (Index k = 0; k < values_.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(values_, k); it; ++it) {
      if (t.coeff(it.row(), it.col()) != it.value()) {
        fail(ErrorCode::invalid_argument, "sparse matrix is not exactly symmetric");
      }
    }
  }
  for (Index k = 0; k < t.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(t, k); it; ++it) {
      if (values_.coeff(it.row(), it.col()) != it.value()) {
        fail(ErrorCode::invalid_argument, "sparse matrix is not exactly symmetric");
      }
    }
  }
}

Index SparseSymmetricMatrix::nonzeros() const {
  Index count = 0;
  for (Index k = 0; k < values_.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(values_, k); it; ++it) {
      if (it.value() != 0.0) ++count;
    }
  }
  return count;
}

SparseSymmetricMatrix symmetrize(const Eigen::SparseMatrix<double>& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::invalid_argument, "symmetrize needs a square matrix");
  Eigen::SparseMatrix<double> t = m.transpose();
  // Each pair is computed as 0.5 * (a + b) on both sides; addition commutes,
  // so the result is exactly symmetric.
  Eigen::SparseMatrix<double> sum = 0.5 * (m + t);
  return SparseSymmetricMatrix(std::move(sum));
}

std::optional<double> spd_log_determinant(const SparseSymmetricMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>, Eigen::Lower, Eigen::AMDOrdering<int>> llt(
      m.matrix());
  if (llt.info() != Eigen::Success) return std::nullopt;
  double logdet = 0.0;
  Eigen::SparseMatrix<double> factor = llt.matrixL();
  for (Index k = 0; k < factor.outerSize(); ++k) {
    double d = factor.coeff(k, k);
    if (!(d > 0.0) || !std::isfinite(d)) return std::nullopt;
    logdet += std::log(d);
  }
  return 2.0 * logdet;
}

}  // namespace gmrf
