#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace gmrf {

using Index = Eigen::Index;

enum class ErrorCode {
  invalid_argument = 1,
  insufficient_samples,
  singular_block,
  not_positive_definite,
  non_stationary,
  degenerate_conditional,
  numeric,
  io,
};

const char* to_string(ErrorCode code) noexcept;

/// Base exception for every failure raised by the library. The code maps
/// one-to-one onto the C API status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A block covariance could not be inverted while estimating column `column`.
class SingularBlockError : public Error {
 public:
  explicit SingularBlockError(Index column);

  Index column() const noexcept { return column_; }

 private:
  Index column_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace gmrf
