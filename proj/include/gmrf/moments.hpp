#pragma once

#include "gmrf/matrix.hpp"

#include <optional>

namespace gmrf {

/// Column means. Throws invalid-argument for an empty dataset.
Eigen::VectorXd sample_mean(const DataRef& x);

/// Unbiased sample covariance (divisor n - 1). Requires n >= 2.
DenseSymmetricMatrix sample_covariance(const DataRef& x);

/// Location-invariant unbiased estimates built from fourth-order U-statistics:
///   y1 -> tr(Sigma), y2 -> tr(Sigma^2), y3 -> sum_i sigma_ii^2.
/// y2 and y3 can come out negative on tiny samples.
struct TraceStatistics {
  double y1 = 0.0;
  double y2 = 0.0;
  double y3 = 0.0;
};

/// Requires n >= 4 (four distinct sample indices).
TraceStatistics trace_statistics(const DataRef& x);

enum class ShrinkageTarget { identity, diagonal };

/// Shrinkage intensity for the given target, clipped to [0, 1]. Degenerate
/// (non-positive or non-finite) denominators give 1.
///
/// identity: (y2 + y1^2) / (n y2 + (p - n + 1) / p * y1^2)
/// diagonal: (y2 + y1^2 - 2 y3) / (n y2 + y1^2 - (n + 1) y3)
///
/// `n` is the number of observations.
double shrinkage_intensity(const TraceStatistics& stats, Index n, Index p, ShrinkageTarget target);

struct ShrinkageEstimate {
  double lambda = 0.0;
  std::optional<double> nu;  // identity target scale, y1 / p
  DenseSymmetricMatrix covariance;
  ShrinkageTarget target = ShrinkageTarget::diagonal;
};

/// (1 - lambda) S + lambda diag(S). Diagonal of S is preserved exactly.
ShrinkageEstimate cov_shrink_spd(const DataRef& x);

/// (1 - lambda) S + lambda nu I with nu = y1 / p.
ShrinkageEstimate cov_shrink_identity(const DataRef& x);

}  // namespace gmrf
