#include <doctest.h>

#include <cmath>

#include "recip/baselines.hpp"
#include "recip/error.hpp"
#include "recip/rng.hpp"

using namespace recip;

namespace {

Eigen::MatrixXd random_matrix(Rng& rng, long n, long d, double scale = 1.0) {
  Eigen::MatrixXd X(n, d);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < d; ++j) X(i, j) = scale * rng.normal();
  return X;
}

double ridge_objective(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                       const Eigen::VectorXd& w, double alpha) {
  return (X * w - y).squaredNorm() + alpha * w.squaredNorm();
}

}  // namespace

TEST_CASE("ridge closed form on a one-point problem") {
  // minimize (w - 2)^2 + w^2  ->  w = 1
  Eigen::MatrixXd X(1, 1);
  X << 1.0;
  Eigen::VectorXd y(1);
  y << 2.0;
  CHECK(fit_ridge(X, y, 1.0).w[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ridge with alpha 0 interpolates invertible square systems") {
  Rng rng(3);
  const Eigen::MatrixXd X = random_matrix(rng, 4, 4);
  Eigen::VectorXd y(4);
  for (long i = 0; i < 4; ++i) y[i] = rng.normal();
  const auto m = fit_ridge(X, y, 0.0);
  CHECK((X * m.w - y).norm() < 1e-9);
}

TEST_CASE("ridge alpha 0 on a singular system returns the minimum-norm solution") {
  // Duplicate columns: any split of the weight fits; minimum norm splits evenly.
  Eigen::MatrixXd X(3, 2);
  X << 1, 1, 2, 2, 3, 3;
  Eigen::VectorXd y(3);
  y << 2, 4, 6;
  const auto m = fit_ridge(X, y, 0.0);
  CHECK((X * m.w - y).norm() < 1e-9);
  CHECK(m.w[0] == doctest::Approx(m.w[1]).epsilon(1e-9));
}

TEST_CASE("ridge normal equations hold and the FD gradient vanishes") {
  Rng rng(17);
  for (const double alpha : {0.1, 1.0, 10.0}) {
    const Eigen::MatrixXd X = random_matrix(rng, 30, 5);
    Eigen::VectorXd y(30);
    for (long i = 0; i < 30; ++i) y[i] = rng.normal();
    const auto m = fit_ridge(X, y, alpha);

    const Eigen::VectorXd residual =
        (X.transpose() * X + alpha * Eigen::MatrixXd::Identity(5, 5)) * m.w - X.transpose() * y;
    CHECK(residual.norm() < 1e-8 * std::max(1.0, (X.transpose() * y).norm()));

    // Central finite differences around the solution.
    const double h = 1e-6;
    for (long j = 0; j < 5; ++j) {
      Eigen::VectorXd wp = m.w, wm = m.w;
      wp[j] += h;
      wm[j] -= h;
      const double g =
          (ridge_objective(X, y, wp, alpha) - ridge_objective(X, y, wm, alpha)) / (2 * h);
      CHECK(std::abs(g) < 1e-5);
    }
  }
}

TEST_CASE("lasso shrinks everything to zero above the threshold") {
  Rng rng(23);
  const Eigen::MatrixXd X = random_matrix(rng, 20, 4);
  Eigen::VectorXd y(20);
  for (long i = 0; i < 20; ++i) y[i] = rng.normal();
  const double threshold = 2.0 * (X.transpose() * y).lpNorm<Eigen::Infinity>();
  const auto m = fit_lasso(X, y, threshold * 1.001);
  CHECK(m.w.lpNorm<Eigen::Infinity>() == 0.0);
  // Just below the threshold something becomes active.
  const auto m2 = fit_lasso(X, y, threshold * 0.95);
  CHECK(m2.w.lpNorm<Eigen::Infinity>() > 0.0);
}

TEST_CASE("lasso with lambda 0 matches least squares") {
  Rng rng(29);
  const Eigen::MatrixXd X = random_matrix(rng, 40, 5);
  Eigen::VectorXd y(40);
  for (long i = 0; i < 40; ++i) y[i] = rng.normal();
  const auto ls = fit_ridge(X, y, 0.0);
  const auto cd = fit_lasso(X, y, 0.0);
  CHECK((ls.w - cd.w).lpNorm<Eigen::Infinity>() < 1e-6);
}

TEST_CASE("lasso satisfies the KKT conditions componentwise") {
  Rng rng(31);
  for (const double lambda : {0.5, 2.0, 20.0}) {
    const Eigen::MatrixXd X = random_matrix(rng, 50, 6);
    Eigen::VectorXd y(50);
    for (long i = 0; i < 50; ++i) y[i] = 2.0 * rng.normal();
    const auto m = fit_lasso(X, y, lambda);
    const Eigen::VectorXd grad = 2.0 * X.transpose() * (X * m.w - y);
    for (long j = 0; j < 6; ++j) {
      if (m.w[j] > 0) {
        CHECK(grad[j] == doctest::Approx(-lambda).epsilon(1e-4));
      } else if (m.w[j] < 0) {
        CHECK(grad[j] == doctest::Approx(lambda).epsilon(1e-4));
      } else {
        CHECK(std::abs(grad[j]) <= lambda + 1e-5);
      }
    }
  }
}

TEST_CASE("lasso objective beats random perturbations") {
  Rng rng(37);
  const Eigen::MatrixXd X = random_matrix(rng, 30, 5);
  Eigen::VectorXd y(30);
  for (long i = 0; i < 30; ++i) y[i] = rng.normal();
  const double lambda = 3.0;
  const auto m = fit_lasso(X, y, lambda);
  const double opt = lasso_objective(X, y, m.w, lambda);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd probe = m.w;
    for (long j = 0; j < probe.size(); ++j) probe[j] += 0.1 * rng.normal();
    CHECK(opt <= lasso_objective(X, y, probe, lambda) + 1e-9);
  }
}

TEST_CASE("history predictors") {
  CHECK(predict_p1({2, 4, 6}, 3.2) == doctest::Approx(6.0));
  CHECK(predict_p1({}, 3.2) == doctest::Approx(3.2));
  CHECK(predict_pk({2, 4, 6}, 2, 0.0) == doctest::Approx(5.0));
  CHECK(predict_pk({7}, 5, 0.0) == doctest::Approx(7.0));
  CHECK(predict_pk({}, 3, 1.5) == doctest::Approx(1.5));
  CHECK_THROWS_AS(predict_pk({1.0}, 0, 0.0), ValidationError);

  // P1 equals Pk with k = 1 on every input.
  Rng rng(41);
  for (int round = 0; round < 100; ++round) {
    std::vector<double> h(rng.index(6), 0.0);
    for (auto& d : h) d = rng.uniform(0, 30);
    CHECK(predict_p1(h, 9.9) == predict_pk(h, 1, 9.9));
  }
}
