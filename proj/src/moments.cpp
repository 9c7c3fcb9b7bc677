#include "gmrf/moments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gmrf {

namespace {

constexpr Index min_shrinkage_samples = 4;

void require_samples(Index n, Index needed, const char* what) {
  if (n < needed) {
    fail(ErrorCode::insufficient_samples, std::string(what) + " needs at least " +
                                              std::to_string(needed) + " observations, got " +
                                              std::to_string(n));
  }
}

Eigen::MatrixXd centered(const DataRef& x) {
  Eigen::RowVectorXd mean = x.colwise().mean();
  return x.rowwise() - mean;
}

// Combines the distinct-index sums of a Gram matrix G = Xc Xc^T built from
// column-centred data (all row sums of G vanish). With q_i = G_ii:
//   sum_{i != j} G_ij^2             = |G|_F^2 - sum q_i^2
//   sum_{i,j,k distinct} G_ij G_jk  = sum q_i^2 - sum_{i != j} G_ij^2
//   sum_{i,j,k,l distinct} G_ij G_kl = T^2 - 4 (3-sum) - 2 (2-sum),
//   T = sum_{i != j} G_ij = -sum q_i
// and returns U2 - 2 U5 + U6.
double squared_trace_statistic(double n, double sum_q, double sum_q2, double gram_frob2) {
  const double perm2 = n * (n - 1.0);
  const double perm3 = perm2 * (n - 2.0);
  const double perm4 = perm3 * (n - 3.0);
  const double pairs = gram_frob2 - sum_q2;
  const double triples = sum_q2 - pairs;
  const double off_total = -sum_q;
  const double quads = off_total * off_total - 4.0 * triples - 2.0 * pairs;
  return pairs / perm2 - 2.0 * triples / perm3 + quads / perm4;
}

}  // namespace

Eigen::VectorXd sample_mean(const DataRef& x) {
  if (x.rows() < 1 || x.cols() < 1) fail(ErrorCode::invalid_argument, "empty dataset");
  return x.colwise().mean().transpose();
}

DenseSymmetricMatrix sample_covariance(const DataRef& x) {
  if (x.cols() < 1) fail(ErrorCode::invalid_argument, "dataset has no columns");
  require_samples(x.rows(), 2, "sample covariance");
  const Eigen::MatrixXd xc = centered(x);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(x.cols(), x.cols());
  s.selfadjointView<Eigen::Lower>().rankUpdate(xc.transpose(), 1.0 / double(x.rows() - 1));
  return DenseSymmetricMatrix::from_lower(std::move(s));
}

TraceStatistics trace_statistics(const DataRef& x) {
  if (x.cols() < 1) fail(ErrorCode::invalid_argument, "dataset has no columns");
  require_samples(x.rows(), min_shrinkage_samples, "trace statistics");
  const Eigen::MatrixXd xc = centered(x);
  const double n = double(x.rows());

  const Eigen::VectorXd q = xc.rowwise().squaredNorm();
  const double sum_q = q.sum();
  const double sum_q2 = q.squaredNorm();
  // |Xc Xc^T|_F = |Xc^T Xc|_F; form whichever Gram matrix is smaller.
  double gram_frob2 = 0.0;
  if (xc.cols() <= xc.rows()) {
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(xc.cols(), xc.cols());
    c.selfadjointView<Eigen::Lower>().rankUpdate(xc.transpose());
    c.triangularView<Eigen::StrictlyUpper>() = c.transpose();
    gram_frob2 = c.squaredNorm();
  } else {
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(xc.rows(), xc.rows());
    g.selfadjointView<Eigen::Lower>().rankUpdate(xc);
    g.triangularView<Eigen::StrictlyUpper>() = g.transpose();
    gram_frob2 = g.squaredNorm();
  }

  TraceStatistics out;
  // U1 - U4 reduces to tr(S) for centred data.
  out.y1 = sum_q / (n - 1.0);
  out.y2 = squared_trace_statistic(n, sum_q, sum_q2, gram_frob2);
  // Per coordinate the Gram matrix is v v^T, so q_i = v_i^2 and |G|_F^2 = (sum v_i^2)^2.
  for (Index a = 0; a < xc.cols(); ++a) {
    const double s2 = xc.col(a).squaredNorm();
    const double s4 = xc.col(a).array().square().square().sum();
    out.y3 += squared_trace_statistic(n, s2, s4, s2 * s2);
  }
  return out;
}

double shrinkage_intensity(const TraceStatistics& stats, Index n, Index p, ShrinkageTarget target) {
  require_samples(n, min_shrinkage_samples, "shrinkage intensity");
  if (p < 1) fail(ErrorCode::invalid_argument, "dimension must be positive");
  const double nn = double(n);
  const double pp = double(p);
  const double y1sq = stats.y1 * stats.y1;
  double num = 0.0;
  double den = 0.0;
  if (target == ShrinkageTarget::identity) {
    num = stats.y2 + y1sq;
    den = nn * stats.y2 + (pp - nn + 1.0) / pp * y1sq;
  } else {
    num = stats.y2 + y1sq - 2.0 * stats.y3;
    den = nn * stats.y2 + y1sq - (nn + 1.0) * stats.y3;
  }
  if (!std::isfinite(num) || !std::isfinite(den) || den <= 0.0) return 1.0;
  return std::clamp(num / den, 0.0, 1.0);
}

ShrinkageEstimate cov_shrink_spd(const DataRef& x) {
  require_samples(x.rows(), min_shrinkage_samples, "shrinkage covariance");
  const TraceStatistics stats = trace_statistics(x);
  const double lambda = shrinkage_intensity(stats, x.rows(), x.cols(), ShrinkageTarget::diagonal);
  Eigen::MatrixXd s = sample_covariance(x).matrix();
  const Eigen::VectorXd diag = s.diagonal();
  s *= (1.0 - lambda);
  s.diagonal() = diag;
  return ShrinkageEstimate{lambda, std::nullopt, DenseSymmetricMatrix(std::move(s)),
                           ShrinkageTarget::diagonal};
}

ShrinkageEstimate cov_shrink_identity(const DataRef& x) {
  require_samples(x.rows(), min_shrinkage_samples, "shrinkage covariance");
  const TraceStatistics stats = trace_statistics(x);
  const double lambda = shrinkage_intensity(stats, x.rows(), x.cols(), ShrinkageTarget::identity);
  const double nu = stats.y1 / double(x.cols());
  Eigen::MatrixXd s = (1.0 - lambda) * sample_covariance(x).matrix();
  s.diagonal().array() += lambda * nu;
  return ShrinkageEstimate{lambda, nu, DenseSymmetricMatrix(std::move(s)), ShrinkageTarget::identity};
}

}  // namespace gmrf
