#include "gmrf/errors.hpp"

namespace gmrf {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::insufficient_samples: return "insufficient-samples";
    case ErrorCode::singular_block: return "singular-block";
    case ErrorCode::not_positive_definite: return "not-positive-definite";
    case ErrorCode::non_stationary: return "non-stationary";
    case ErrorCode::degenerate_conditional: return "degenerate-conditional";
    case ErrorCode::numeric: return "numeric";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(what), code_(code) {}

SingularBlockError::SingularBlockError(Index column)
    : Error(ErrorCode::singular_block,
            "singular block covariance at column " + std::to_string(column)),
      column_(column) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace gmrf
