#pragma once

#include "gmrf/graph.hpp"
#include "gmrf/matrix.hpp"

#include <filesystem>
#include <iosfwd>

namespace gmrf::io {

// Datasets and dense matrices: headerless CSV, one row per line, values
// written with 17 significant digits.
Eigen::MatrixXd read_csv(std::istream& in);
Eigen::MatrixXd read_csv(const std::filesystem::path& path);
void write_csv(std::ostream& out, const Eigen::Ref<const Eigen::MatrixXd>& m);
void write_csv(const std::filesystem::path& path, const Eigen::Ref<const Eigen::MatrixXd>& m);

// Matrix Market coordinate format with 1-based indices.
//
// Graphs are written as `pattern symmetric` (lower triangle). Any square
// coordinate file is accepted on read; stored non-zero entries become edges
// and the result is symmetrized.
SparsityPattern read_pattern(std::istream& in);
SparsityPattern read_pattern(const std::filesystem::path& path);
void write_pattern(std::ostream& out, const SparsityPattern& g);
void write_pattern(const std::filesystem::path& path, const SparsityPattern& g);

// Sparse real matrices: `real symmetric` (lower triangle) when `symmetric`,
// otherwise `real general`. Reading mirrors symmetric files.
Eigen::SparseMatrix<double> read_sparse(std::istream& in);
Eigen::SparseMatrix<double> read_sparse(const std::filesystem::path& path);
void write_sparse(std::ostream& out, const Eigen::SparseMatrix<double>& m, bool symmetric);
void write_sparse(const std::filesystem::path& path, const Eigen::SparseMatrix<double>& m,
                  bool symmetric);

}  // namespace gmrf::io
