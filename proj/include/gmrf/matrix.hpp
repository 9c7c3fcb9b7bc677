#pragma once

#include "gmrf/errors.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <optional>

namespace gmrf {

/// Observations in rows, dimensions in columns.
using Dataset = Eigen::MatrixXd;
using DataRef = Eigen::Ref<const Eigen::MatrixXd>;

/// Dense matrix whose storage is exactly symmetric.
class DenseSymmetricMatrix {
 public:
  DenseSymmetricMatrix() = default;

  /// Throws invalid-argument unless `m` is square and exactly symmetric.
  explicit DenseSymmetricMatrix(Eigen::MatrixXd m);

  /// Copies the lower triangle of `m` onto its upper triangle.
  static DenseSymmetricMatrix from_lower(Eigen::MatrixXd m);

  const Eigen::MatrixXd& matrix() const noexcept { return values_; }
  Index size() const noexcept { return values_.rows(); }
  double operator()(Index i, Index j) const { return values_(i, j); }

 private:
  Eigen::MatrixXd values_;
};

/// Sparse matrix with both triangles stored and value(i, j) == value(j, i).
class SparseSymmetricMatrix {
 public:
  SparseSymmetricMatrix() = default;

  /// Throws invalid-argument unless `m` is square and exactly symmetric.
  explicit SparseSymmetricMatrix(Eigen::SparseMatrix<double> m);

  const Eigen::SparseMatrix<double>& matrix() const noexcept { return values_; }
  Index size() const noexcept { return values_.rows(); }
  double coeff(Index i, Index j) const { return values_.coeff(i, j); }

  /// Stored entries holding a non-zero value, counting both triangles.
  Index nonzeros() const;

  Eigen::MatrixXd to_dense() const { return Eigen::MatrixXd(values_); }

 private:
  Eigen::SparseMatrix<double> values_;
};

/// (m + m^T) / 2. The support is the union of the supports of m and m^T.
SparseSymmetricMatrix symmetrize(const Eigen::SparseMatrix<double>& m);

/// log det(m) from a fill-reducing sparse Cholesky factorization, or empty
/// when the factorization breaks down (m not positive definite).
std::optional<double> spd_log_determinant(const SparseSymmetricMatrix& m);

inline bool admits_spd_factorization(const SparseSymmetricMatrix& m) {
  return spd_log_determinant(m).has_value();
}

}  // namespace gmrf
