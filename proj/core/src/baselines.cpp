#include "recip/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "recip/error.hpp"

namespace recip {

RidgeModel fit_ridge(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double alpha) {
  if (X.rows() != y.size()) throw DimensionError("ridge: X rows != y length");
  if (X.rows() == 0) throw DataError("ridge: empty dataset");
  if (alpha < 0.0) throw ValidationError("ridge alpha must be >= 0");
  RidgeModel m;
  m.alpha = alpha;
  if (alpha == 0.0) {
    // Minimum-norm least squares covers singular systems.
    m.w = X.completeOrthogonalDecomposition().solve(y);
    return m;
  }
  const long d = X.cols();
  Eigen::MatrixXd gram = X.transpose() * X;
  gram.diagonal().array() += alpha;
  Eigen::VectorXd rhs = X.transpose() * y;
  m.w = gram.ldlt().solve(rhs);
  (void)d;
  return m;
}

double lasso_objective(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                       const Eigen::VectorXd& w, double lambda) {
  return (X * w - y).squaredNorm() + lambda * w.lpNorm<1>();
}

LassoModel fit_lasso(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda,
                     double tol, long max_sweeps) {
  if (X.rows() != y.size()) throw DimensionError("lasso: X rows != y length");
  if (X.rows() == 0) throw DataError("lasso: empty dataset");
  if (lambda < 0.0) throw ValidationError("lasso lambda must be >= 0");
  const long d = X.cols();

  LassoModel m;
  m.lambda = lambda;
  m.w = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd col_sq(d);
  for (long j = 0; j < d; ++j) col_sq[j] = X.col(j).squaredNorm();
  Eigen::VectorXd r = y;  // residual y - Xw

  const auto soft = [](double z, double g) {
    if (z > g) return z - g;
    if (z < -g) return z + g;
    return 0.0;
  };

  for (long sweep = 0; sweep < max_sweeps; ++sweep) {
    double max_change = 0.0;
    for (long j = 0; j < d; ++j) {
      if (col_sq[j] == 0.0) continue;
      const double old = m.w[j];
      const double z = X.col(j).dot(r) + col_sq[j] * old;
      const double next = soft(z, lambda / 2.0) / col_sq[j];
      if (next != old) {
        r -= (next - old) * X.col(j);
        m.w[j] = next;
        max_change = std::max(max_change, std::abs(next - old));
      }
    }
    m.sweeps = sweep + 1;

    // Duality gap: feasible dual point scaled from the residual.
    const double primal = r.squaredNorm() + lambda * m.w.lpNorm<1>();
    double gap = primal;
    if (lambda > 0.0) {
      const double corr = 2.0 * (X.transpose() * r).lpNorm<Eigen::Infinity>();
      const double s = corr > lambda ? lambda / corr : 1.0;
      const double dual = 2.0 * s * r.dot(y) - s * s * r.squaredNorm();
      gap = primal - dual;
    }
    if (gap <= tol * std::max(1.0, primal)) return m;
    // lambda == 0 (plain least squares) has no usable gap; stop on stall.
    if (max_change <= 1e-14 * (1.0 + m.w.lpNorm<Eigen::Infinity>())) return m;
  }
  m.converged = false;
  return m;
}

double predict_p1(const std::vector<double>& history, double fallback_mean) {
  return predict_pk(history, 1, fallback_mean);
}

double predict_pk(const std::vector<double>& history, int k, double fallback_mean) {
  if (k < 1) throw ValidationError("k must be >= 1");
  if (history.empty()) return fallback_mean;
  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), history.size());
  double sum = 0.0;
  for (std::size_t i = history.size() - take; i < history.size(); ++i) sum += history[i];
  return sum / static_cast<double>(take);
}

}  // namespace recip
