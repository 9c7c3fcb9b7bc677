#include <doctest.h>

#include "oracles.hpp"

#include <gmrf/arp.hpp>
#include <gmrf/errors.hpp>
#include <gmrf/moments.hpp>

#include <cmath>

using gmrf::Index;

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

gmrf::ArProcessSpec ar(std::vector<double> psi, Index t) {
  gmrf::ArProcessSpec s;
  s.coefficients = std::move(psi);
  s.horizon = t;
  return s;
}

// Closed-form AR(2) autocovariances.
Eigen::MatrixXd ar2_covariance(double a, double b, Index t) {
  Eigen::VectorXd g(t);
  g(0) = (1 - b) / ((1 + b) * ((1 - b) * (1 - b) - a * a));
  if (t > 1) g(1) = a * g(0) / (1 - b);
  for (Index k = 2; k < t; ++k) g(k) = a * g(k - 1) + b * g(k - 2);
  Eigen::MatrixXd c(t, t);
  for (Index i = 0; i < t; ++i)
    for (Index j = 0; j < t; ++j) c(i, j) = g(std::abs(i - j));
  return c;
}

}  // namespace

TEST_CASE("stationarity") {
  CHECK(gmrf::is_stationary(std::vector<double>{}));
  CHECK(gmrf::is_stationary(std::vector<double>{0.8}));
  CHECK_FALSE(gmrf::is_stationary(std::vector<double>{1.2}));
  CHECK_FALSE(gmrf::is_stationary(std::vector<double>{1.0}));
  CHECK(gmrf::is_stationary(std::vector<double>{0.4, 0.4}));
  CHECK_FALSE(gmrf::is_stationary(std::vector<double>{0.5, 0.5}));
  CHECK(gmrf::is_stationary(std::vector<double>{0.2, 0.2, 0.2}));
}

TEST_CASE("simulate_ar order 0 is white noise") {
  Eigen::MatrixXd x = gmrf::simulate_ar(ar({}, 4), 20000, 5);
  Eigen::MatrixXd s = oracle::sample_cov(x);
  CHECK(max_abs(s - Eigen::MatrixXd::Identity(4, 4)) < 5 * std::sqrt(2.0 / 20000));
  CHECK(x.colwise().mean().cwiseAbs().maxCoeff() < 5 / std::sqrt(20000.0));
}

TEST_CASE("simulate_ar stationary start") {
  Eigen::MatrixXd x = gmrf::simulate_ar(ar({0.8}, 10), 50000, 17);
  Eigen::MatrixXd s = oracle::sample_cov(x);
  const double v = 1.0 / 0.36;
  CHECK(std::abs(s(0, 0) / v - 1) < 0.02);
  CHECK(std::abs(s(9, 9) / v - 1) < 0.02);
}

TEST_CASE("simulate_ar determinism and row independence") {
  auto spec = ar({0.5, 0.2}, 12);
  Eigen::MatrixXd a = gmrf::simulate_ar(spec, 8, 3);
  CHECK(a == gmrf::simulate_ar(spec, 8, 3));
  CHECK(a.topRows(5) == gmrf::simulate_ar(spec, 5, 3));
  CHECK(a != gmrf::simulate_ar(spec, 8, 4));
}

TEST_CASE("simulate_ar rejects non-stationary coefficients") {
  try {
    gmrf::simulate_ar(ar({1.2}, 10), 5, 1);
    FAIL("expected throw");
  } catch (const gmrf::Error& e) {
    CHECK(e.code() == gmrf::ErrorCode::non_stationary);
  }
  auto spec = ar({1.2}, 10);
  spec.stationary_init = false;
  Eigen::MatrixXd x = gmrf::simulate_ar(spec, 5, 1);
  CHECK(x.allFinite());
  CHECK_THROWS(gmrf::simulate_ar(ar({0.5}, 0), 5, 1));
}

TEST_CASE("AR(2) simulation matches the population covariance") {
  const Index n = 200000, t = 6;
  auto spec = ar({0.4, 0.4}, t);
  Eigen::MatrixXd b = gmrf::population_covariance_arp(spec, t).matrix();
  CHECK(max_abs(b - ar2_covariance(0.4, 0.4, t)) < 1e-10);
  Eigen::LLT<Eigen::MatrixXd> llt(b);
  CHECK(llt.info() == Eigen::Success);

  Eigen::MatrixXd s = oracle::sample_cov(gmrf::simulate_ar(spec, n, 42));
  for (Index i = 0; i < t; ++i)
    for (Index j = 0; j < t; ++j) {
      const double se = std::sqrt((b(i, i) * b(j, j) + b(i, j) * b(i, j)) / double(n));
      CHECK(std::abs(s(i, j) - b(i, j)) < 5 * se);
    }
}

TEST_CASE("mixed-effect AR") {
  gmrf::MixedEffectArSpec spec;
  spec.coefficients = {1.0};
  spec.horizon = 8;
  spec.realisations = 6;
  spec.seed = 10;
  Eigen::MatrixXd a = gmrf::simulate_mixed_effect_ar(spec);
  CHECK(a == gmrf::simulate_mixed_effect_ar(spec));

  // zero pre-sample: the first value is the innovation alone, whatever u is
  spec.effect_seed = 999;
  Eigen::MatrixXd b = gmrf::simulate_mixed_effect_ar(spec);
  CHECK(a.col(0) == b.col(0));
  CHECK(a.rightCols(7) != b.rightCols(7));
  // same innovations as white noise with the same seed; recover u_t from row 0
  Eigen::MatrixXd e = gmrf::simulate_ar(gmrf::ArProcessSpec{{}, 1.0, 8, true}, 6, 10);
  CHECK(a.col(0) == e.col(0));
  for (Index t = 1; t < 8; ++t) {
    const double u = (a(0, t) - e(0, t)) / a(0, t - 1);
    CHECK(u >= 0.0);
    CHECK(u <= 1.0);
    for (Index i = 1; i < 6; ++i) CHECK(a(i, t) == doctest::Approx(u * a(i, t - 1) + e(i, t)).epsilon(1e-10));
  }

  spec.coefficients = {1.0 / 3, 1.0 / 3, 1.0 - 2.0 / 3};
  spec.horizon = 100;
  spec.realisations = 100;
  Eigen::MatrixXd c = gmrf::simulate_mixed_effect_ar(spec);
  CHECK(c.rows() == 100);
  CHECK(c.cols() == 100);
  CHECK(c.allFinite());

  spec.coefficients = {0.5, 0.4};
  CHECK_THROWS_AS(gmrf::simulate_mixed_effect_ar(spec), gmrf::Error);
}

TEST_CASE("AR(1) closed forms") {
  Eigen::MatrixXd b2 = gmrf::population_covariance_ar1(0.8, 2).matrix();
  CHECK(b2(0, 0) == doctest::Approx(2.7778).epsilon(1e-4));
  CHECK(b2(0, 1) == doctest::Approx(2.2222).epsilon(1e-4));
  CHECK(b2(1, 0) == b2(0, 1));
  CHECK(gmrf::population_covariance_ar1(0.0, 5).matrix() == Eigen::MatrixXd::Identity(5, 5));
  CHECK(max_abs(gmrf::population_covariance_ar1(0.8, 50).matrix() -
                gmrf::population_covariance_arp(ar({0.8}, 50), 50).matrix()) < 1e-10);

  Eigen::MatrixXd l4 = gmrf::population_precision_ar1(0.8, 4).to_dense();
  Eigen::Matrix4d expect;
  expect << 1, -0.8, 0, 0, -0.8, 1.64, -0.8, 0, 0, -0.8, 1.64, -0.8, 0, 0, -0.8, 1;
  CHECK(max_abs(l4 - expect) < 1e-15);
  CHECK(gmrf::population_precision_ar1(0.0, 5).to_dense() == Eigen::MatrixXd::Identity(5, 5));
  Eigen::MatrixXd prod = gmrf::population_precision_ar1(0.8, 10).to_dense() *
                         gmrf::population_covariance_ar1(0.8, 10).matrix();
  CHECK(max_abs(prod - Eigen::MatrixXd::Identity(10, 10)) < 1e-10);
  CHECK_THROWS(gmrf::population_precision_ar1(0.8, 1));
  CHECK_THROWS(gmrf::population_covariance_ar1(1.0, 3));
}

TEST_CASE("AR(p) population moments") {
  auto white = ar({}, 5);
  white.noise_sd = 2.0;
  CHECK(max_abs(gmrf::population_covariance_arp(white, 5).matrix() - 4.0 * Eigen::MatrixXd::Identity(5, 5)) <
        1e-15);
  CHECK(max_abs(gmrf::population_precision_arp(white, 5).matrix() - 0.25 * Eigen::MatrixXd::Identity(5, 5)) <
        1e-15);

  CHECK(max_abs(gmrf::population_precision_arp(ar({0.8}, 12), 12).matrix() -
                oracle::ar1_precision(0.8, 12)) < 1e-8);

  Eigen::MatrixXd l3 = gmrf::population_precision_arp(ar({0.3, 0.2, 0.25}, 10), 10).matrix();
  for (Index i = 0; i < 10; ++i)
    for (Index j = 0; j < 10; ++j)
      if (std::abs(i - j) > 3) CHECK(std::abs(l3(i, j)) < 1e-8);
  CHECK(l3 == l3.transpose());

  auto g = gmrf::ar_autocovariance(ar({0.4, 0.4}, 1), 4);
  Eigen::MatrixXd c = ar2_covariance(0.4, 0.4, 5);
  for (Index k = 0; k <= 4; ++k) CHECK(g(k) == doctest::Approx(c(0, k)).epsilon(1e-12));
  CHECK_THROWS_AS(gmrf::population_covariance_arp(ar({1.2}, 3), 3), gmrf::Error);
}

TEST_CASE("frobenius error") {
  Eigen::Matrix2d m;
  m << 1, 2, 3, 4;
  CHECK(gmrf::frobenius_error(m, m) == 0.0);
  CHECK(gmrf::frobenius_error(Eigen::Matrix2d::Identity(), Eigen::Matrix2d::Zero()) ==
        doctest::Approx(std::sqrt(2.0)));
  Eigen::Matrix2d swap;
  swap << 0, 1, 1, 0;
  CHECK(gmrf::frobenius_error(Eigen::Matrix2d::Identity(), swap) == doctest::Approx(2.0));
  CHECK_THROWS(gmrf::frobenius_error(Eigen::Matrix2d::Identity(), Eigen::Matrix3d::Identity()));
}

TEST_CASE("pseudo inverse") {
  Eigen::MatrixXd b = oracle::ar1_covariance(0.6, 6);
  CHECK(max_abs(gmrf::pseudo_inverse(gmrf::DenseSymmetricMatrix(b)).matrix() - b.inverse()) < 1e-10);

  auto r1 = gmrf::pseudo_inverse(gmrf::DenseSymmetricMatrix(Eigen::MatrixXd::Ones(2, 2))).matrix();
  CHECK(max_abs(r1 - Eigen::MatrixXd::Constant(2, 2, 0.25)) < 1e-14);

  auto z = gmrf::pseudo_inverse(gmrf::DenseSymmetricMatrix(Eigen::MatrixXd::Zero(3, 3))).matrix();
  CHECK(z == Eigen::MatrixXd::Zero(3, 3));

  // Moore-Penrose conditions on a rank-deficient sample covariance
  Eigen::MatrixXd s = oracle::sample_cov(oracle::standard_normal(4, 7, 1));
  s = 0.5 * (s + s.transpose());
  Eigen::MatrixXd p = gmrf::pseudo_inverse(gmrf::DenseSymmetricMatrix(s)).matrix();
  CHECK(max_abs(s * p * s - s) < 1e-10);
  CHECK(max_abs(p * s * p - p) < 1e-10);
}
