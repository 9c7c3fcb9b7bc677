#pragma once

#include "gmrf/matrix.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace gmrf {

/// x_t = sum_j psi_j x_{t-j} + noise_sd * e_t,  e_t ~ N(0, 1).
struct ArProcessSpec {
  std::vector<double> coefficients;  // psi_1 .. psi_p
  double noise_sd = 1.0;
  Index horizon = 1;                 // T
  /// Draw the first p values from the stationary distribution; otherwise the
  /// pre-sample is zero.
  bool stationary_init = true;

  int order() const noexcept { return static_cast<int>(coefficients.size()); }
};

/// x_{i,t} = u_t sum_j psi_j x_{i,t-j} + e_{i,t}, u_t ~ U(0, 1) shared by all
/// realisations, zero pre-sample, sum_j psi_j = 1.
struct MixedEffectArSpec {
  std::vector<double> coefficients;
  Index horizon = 1;
  Index realisations = 1;
  std::uint64_t seed = 0;
  /// Seed of the u_t stream; defaults to `seed`. Innovations always use `seed`.
  std::optional<std::uint64_t> effect_seed;
};

/// Companion-matrix spectral radius below 1 - 1e-10.
bool is_stationary(std::span<const double> coefficients);

/// n independent paths of length spec.horizon. Row i depends only on
/// (seed, i).
Dataset simulate_ar(const ArProcessSpec& spec, Index n, std::uint64_t seed);

Dataset simulate_mixed_effect_ar(const MixedEffectArSpec& spec);

/// Toeplitz phi^{|i-j|} / (1 - phi^2).
DenseSymmetricMatrix population_covariance_ar1(double phi, Index horizon);

/// Tridiagonal: corners 1, interior diagonal 1 + phi^2, off-diagonal -phi.
SparseSymmetricMatrix population_precision_ar1(double phi, Index horizon);

/// Autocovariances gamma_0 .. gamma_{max_lag} from the Yule-Walker system.
Eigen::VectorXd ar_autocovariance(const ArProcessSpec& spec, Index max_lag);

/// T x T Toeplitz covariance of a stationary AR(p) process.
DenseSymmetricMatrix population_covariance_arp(const ArProcessSpec& spec, Index horizon);

/// Dense inverse of population_covariance_arp.
DenseSymmetricMatrix population_precision_arp(const ArProcessSpec& spec, Index horizon);

/// sqrt(sum (a_ij - b_ij)^2). Throws invalid-argument on shape mismatch.
double frobenius_error(const Eigen::Ref<const Eigen::MatrixXd>& a,
                       const Eigen::Ref<const Eigen::MatrixXd>& b);

/// Spectral pseudo-inverse; eigenvalues with |ev| <= rank_tol * max|ev| are
/// dropped. Default rank_tol is p * machine epsilon.
DenseSymmetricMatrix pseudo_inverse(const DenseSymmetricMatrix& m,
                                    std::optional<double> rank_tol = std::nullopt);

}  // namespace gmrf
