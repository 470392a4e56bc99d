#pragma once

#include <Eigen/Dense>
#include <vector>

namespace recip {

struct RidgeModel {
  Eigen::VectorXd w;
  double alpha = 0.0;
};

struct LassoModel {
  Eigen::VectorXd w;
  double lambda = 0.0;
  long sweeps = 0;
  bool converged = true;
};

// Exact solve of (X'X + alpha I) w = X'y. With alpha = 0 and a singular
// system, returns the minimum-norm least-squares solution.
RidgeModel fit_ridge(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double alpha);

// Cyclic coordinate descent on sum (x_i'w - y_i)^2 + lambda * |w|_1.
// Stops on a duality-gap style criterion (gap <= tol * max(1, primal)) or
// when a full sweep no longer moves any coordinate.
LassoModel fit_lasso(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda,
                     double tol = 1e-6, long max_sweeps = 100000);

double lasso_objective(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                       const Eigen::VectorXd& w, double lambda);

// History predictors. `history` holds the target user's completed delays in
// chronological order; an empty history falls back to the supplied mean.
double predict_p1(const std::vector<double>& history, double fallback_mean);
double predict_pk(const std::vector<double>& history, int k, double fallback_mean);

}  // namespace recip
