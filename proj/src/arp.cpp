#include "gmrf/arp.hpp"

#include "gmrf/rng.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace gmrf {

namespace {

constexpr double stationarity_margin = 1e-10;

void require_stationary(std::span<const double> coefficients) {
  if (!is_stationary(coefficients)) {
    fail(ErrorCode::non_stationary, "AR coefficients are not stationary");
  }
}

void require_horizon(Index horizon) {
  if (horizon < 1) fail(ErrorCode::invalid_argument, "horizon must be at least 1");
}

Eigen::MatrixXd toeplitz(const Eigen::VectorXd& gamma, Index size) {
  Eigen::MatrixXd m(size, size);
  for (Index i = 0; i < size; ++i) {
    for (Index j = 0; j < size; ++j) m(i, j) = gamma(std::abs(i - j));
  }
  return m;
}

}  // namespace

bool is_stationary(std::span<const double> coefficients) {
  const Index p = static_cast<Index>(coefficients.size());
  if (p == 0) return true;
  for (double c : coefficients) {
    if (!std::isfinite(c)) return false;
  }
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
  for (Index j = 0; j < p; ++j) companion(0, j) = coefficients[static_cast<std::size_t>(j)];
  for (Index i = 1; i < p; ++i) companion(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
  if (es.info() != Eigen::Success) return false;
  return es.eigenvalues().cwiseAbs().maxCoeff() < 1.0 - stationarity_margin;
}

Eigen::VectorXd ar_autocovariance(const ArProcessSpec& spec, Index max_lag) {
  require_stationary(spec.coefficients);
  if (!(spec.noise_sd > 0.0)) fail(ErrorCode::invalid_argument, "noise_sd must be positive");
  const Index p = spec.order();
  const auto& psi = spec.coefficients;
  const double noise_var = spec.noise_sd * spec.noise_sd;

  // gamma_k - sum_j psi_j gamma_{|k-j|} = noise_var * [k == 0], k = 0..p
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(p + 1, p + 1);
  for (Index k = 0; k <= p; ++k) {
    for (Index j = 1; j <= p; ++j) a(k, std::abs(k - j)) -= psi[static_cast<std::size_t>(j - 1)];
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(p + 1);
  rhs(0) = noise_var;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) fail(ErrorCode::numeric, "singular Yule-Walker system");
  const Eigen::VectorXd head = lu.solve(rhs);

  Eigen::VectorXd gamma(std::max(max_lag, p) + 1);
  gamma.head(p + 1) = head;
  for (Index k = p + 1; k < gamma.size(); ++k) {
    double acc = 0.0;
    for (Index j = 1; j <= p; ++j) acc += psi[static_cast<std::size_t>(j - 1)] * gamma(k - j);
    gamma(k) = acc;
  }
  return gamma.head(max_lag + 1);
}

Dataset simulate_ar(const ArProcessSpec& spec, Index n, std::uint64_t seed) {
  require_horizon(spec.horizon);
  if (n < 1) fail(ErrorCode::invalid_argument, "need at least one realisation");
  if (!(spec.noise_sd > 0.0)) fail(ErrorCode::invalid_argument, "noise_sd must be positive");
  const Index p = spec.order();
  const Index horizon = spec.horizon;
  const auto& psi = spec.coefficients;

  const Index warm = spec.stationary_init ? std::min(p, horizon) : 0;
  Eigen::MatrixXd init_factor;
  if (warm > 0) {
    const Eigen::VectorXd gamma = ar_autocovariance(spec, warm - 1);
    Eigen::LLT<Eigen::MatrixXd> llt(toeplitz(gamma, warm));
    if (llt.info() != Eigen::Success) fail(ErrorCode::numeric, "stationary initial covariance is not PD");
    init_factor = llt.matrixL();
  }

  Dataset x = Dataset::Zero(n, horizon);
  for (Index i = 0; i < n; ++i) {
    Rng rng = substream(seed, Stream::innovations, {static_cast<std::uint64_t>(i)});
    std::normal_distribution<double> normal;
    if (warm > 0) {
      Eigen::VectorXd z(warm);
      for (Index k = 0; k < warm; ++k) z(k) = normal(rng);
      x.row(i).head(warm) = (init_factor * z).transpose();
    }
    for (Index t = warm; t < horizon; ++t) {
      double acc = 0.0;
      for (Index j = 1; j <= p && j <= t; ++j) acc += psi[static_cast<std::size_t>(j - 1)] * x(i, t - j);
      x(i, t) = acc + spec.noise_sd * normal(rng);
    }
  }
  return x;
}

Dataset simulate_mixed_effect_ar(const MixedEffectArSpec& spec) {
  require_horizon(spec.horizon);
  if (spec.realisations < 1) fail(ErrorCode::invalid_argument, "need at least one realisation");
  const double total = std::accumulate(spec.coefficients.begin(), spec.coefficients.end(), 0.0);
  if (spec.coefficients.empty() || std::abs(total - 1.0) > 1e-12) {
    fail(ErrorCode::invalid_argument, "mixed-effect AR coefficients must sum to 1");
  }
  const Index p = static_cast<Index>(spec.coefficients.size());
  const auto& psi = spec.coefficients;

  Rng effect_rng = substream(spec.effect_seed.value_or(spec.seed), Stream::random_effects);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Eigen::VectorXd u(spec.horizon);
  for (Index t = 0; t < spec.horizon; ++t) u(t) = uniform(effect_rng);

  Dataset x = Dataset::Zero(spec.realisations, spec.horizon);
  for (Index i = 0; i < spec.realisations; ++i) {
    Rng rng = substream(spec.seed, Stream::innovations, {static_cast<std::uint64_t>(i)});
    std::normal_distribution<double> normal;
    for (Index t = 0; t < spec.horizon; ++t) {
      double acc = 0.0;
      for (Index j = 1; j <= p && j <= t; ++j) acc += psi[static_cast<std::size_t>(j - 1)] * x(i, t - j);
      x(i, t) = u(t) * acc + normal(rng);
    }
  }
  return x;
}

DenseSymmetricMatrix population_covariance_ar1(double phi, Index horizon) {
  require_horizon(horizon);
  if (!(std::abs(phi) < 1.0)) fail(ErrorCode::non_stationary, "AR(1) needs |phi| < 1");
  Eigen::VectorXd gamma(horizon);
  const double scale = 1.0 / (1.0 - phi * phi);
  for (Index k = 0; k < horizon; ++k) gamma(k) = std::pow(phi, double(k)) * scale;
  return DenseSymmetricMatrix(toeplitz(gamma, horizon));
}

SparseSymmetricMatrix population_precision_ar1(double phi, Index horizon) {
  if (horizon < 2) fail(ErrorCode::invalid_argument, "AR(1) precision needs horizon >= 2");
  if (!(std::abs(phi) < 1.0)) fail(ErrorCode::non_stationary, "AR(1) needs |phi| < 1");
  std::vector<Eigen::Triplet<double>> triplets;
  for (Index t = 0; t < horizon; ++t) {
    const bool edge = (t == 0 || t == horizon - 1);
    triplets.emplace_back(t, t, edge ? 1.0 : 1.0 + phi * phi);
    if (t + 1 < horizon) {
      triplets.emplace_back(t + 1, t, -phi);
      triplets.emplace_back(t, t + 1, -phi);
    }
  }
  Eigen::SparseMatrix<double> m(horizon, horizon);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return SparseSymmetricMatrix(std::move(m));
}

DenseSymmetricMatrix population_covariance_arp(const ArProcessSpec& spec, Index horizon) {
  require_horizon(horizon);
  return DenseSymmetricMatrix(toeplitz(ar_autocovariance(spec, horizon - 1), horizon));
}

DenseSymmetricMatrix population_precision_arp(const ArProcessSpec& spec, Index horizon) {
  const DenseSymmetricMatrix cov = population_covariance_arp(spec, horizon);
  Eigen::LLT<Eigen::MatrixXd> llt(cov.matrix());
  if (llt.info() != Eigen::Success) fail(ErrorCode::numeric, "population covariance is not PD");
  Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(horizon, horizon));
  return DenseSymmetricMatrix::from_lower(std::move(inv));
}

double frobenius_error(const Eigen::Ref<const Eigen::MatrixXd>& a,
                       const Eigen::Ref<const Eigen::MatrixXd>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(ErrorCode::invalid_argument, "frobenius_error: shape mismatch");
  }
  return (a - b).norm();
}

DenseSymmetricMatrix pseudo_inverse(const DenseSymmetricMatrix& m, std::optional<double> rank_tol) {
  const Index p = m.size();
  if (p == 0) return m;
  const double tol = rank_tol.value_or(double(p) * std::numeric_limits<double>::epsilon());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.matrix());
  if (es.info() != Eigen::Success) fail(ErrorCode::numeric, "eigendecomposition failed");
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double cutoff = tol * ev.cwiseAbs().maxCoeff();
  Eigen::VectorXd inv_ev = Eigen::VectorXd::Zero(p);
  for (Index k = 0; k < p; ++k) {
    if (std::abs(ev(k)) > cutoff) inv_ev(k) = 1.0 / ev(k);
  }
  const Eigen::MatrixXd& v = es.eigenvectors();
  Eigen::MatrixXd out = v * inv_ev.asDiagonal() * v.transpose();
  return DenseSymmetricMatrix::from_lower(std::move(out));
}

}  // namespace gmrf
