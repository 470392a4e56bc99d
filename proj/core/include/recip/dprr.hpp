#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "recip/features.hpp"

namespace recip {

struct DprrConfig {
  double alpha = 1.0;  // ridge weight on the global parameter
  double beta = 0.5;   // network-lasso weight
  double rho = 1.0;    // ADMM penalty
  long max_iterations = 500;
  double tol_primal = 1e-4;  // scaled by sqrt(total pair-variable count)
  double tol_dual = 1e-4;
  long group_pair_cap = 200;  // groups larger than this are subsampled for pairs
  std::uint64_t seed = 0;     // only used for the pair-cap subsample
  unsigned threads = 1;
  bool pin_global_to_zero = false;  // the PD variant: no w, no alpha term
};

// Rows partitioned by target user. The implied adjacency has A_ij = 1
// exactly when rows i != j share a group.
struct SameTargetGroups {
  std::vector<std::vector<long>> rows_of_group;
  std::vector<int> group_of_row;

  long ordered_pair_count() const {
    long p = 0;
    for (const auto& g : rows_of_group) {
      const long s = static_cast<long>(g.size());
      p += s * (s - 1);
    }
    return p;
  }
};

SameTargetGroups build_same_target_groups(const Dataset& ds);

// The full objective: sum_i (x_i'(w + wt_i) - y_i)^2 + alpha |w|^2
// + beta * sum over ordered same-group pairs of |wt_i - wt_j|.
// Each unordered pair is counted twice.
double dprr_objective(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                      const SameTargetGroups& groups, double alpha, double beta,
                      const Eigen::VectorXd& w, const Eigen::MatrixXd& wtilde);

// Consensus constraint system: one constraint a_i = z_p + w per ordered
// in-group pair p = (i, j), with scaled dual u_p.
struct PairSystem {
  std::vector<std::pair<long, long>> pairs;  // ordered (i, j)
  std::vector<long> partner;                 // index of (j, i)
  std::vector<std::vector<long>> pairs_of_row;
  std::vector<long> partner_count;  // m_i
  std::vector<long> isolated_rows;  // m_i == 0
  std::vector<std::string> warnings;

  long count() const { return static_cast<long>(pairs.size()); }
};

// Builds the ordered-pair system from groups. Groups larger than
// `group_pair_cap` contribute pairs only among a seeded subsample of their
// rows; the remaining rows are treated as isolated and a warning is recorded.
PairSystem build_pair_system(const SameTargetGroups& groups, long n, long group_pair_cap,
                             std::uint64_t seed);

struct AdmmState {
  Eigen::MatrixXd a;  // n x d
  Eigen::VectorXd w;  // d
  Eigen::MatrixXd z;  // P x d
  Eigen::MatrixXd u;  // P x d
};

AdmmState make_admm_state(long n, int d, const PairSystem& ps);

// One pass of each update rule. All closed forms; see the per-function
// subproblems in the tests.
void update_a(AdmmState& s, const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
              const PairSystem& ps, double rho, unsigned threads = 1);
void update_w(AdmmState& s, const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
              const PairSystem& ps, double alpha, double rho);
// pair_beta is the weight multiplying |z_p - z_q| for one unordered pair in
// the z subproblem. fit_dprr passes 2*beta so the solved problem matches the
// ordered-sum objective above.
void update_z(AdmmState& s, const PairSystem& ps, double pair_beta, double rho,
              unsigned threads = 1);
void update_u(AdmmState& s, const PairSystem& ps);

// sqrt(sum over pairs |a_i - w - z_p|^2)
double primal_residual(const AdmmState& s, const PairSystem& ps);

struct FitDiagnostics {
  double final_objective = 0.0;
  long iterations = 0;
  bool converged = false;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  std::vector<std::string> warnings;
};

struct DprrModel {
  Eigen::VectorXd w;
  Eigen::MatrixXd wtilde;                 // per training row
  std::vector<std::string> target_names;  // per group
  std::vector<Eigen::VectorXd> weber_points;
  std::map<std::string, int> group_by_target;
  std::optional<Standardization> scaler;
  DprrConfig config;
  FitDiagnostics diag;
};

// ADMM fit. Cycles update_a, update_w, update_z, update_u until both the
// primal residual and rho * |z_k+1 - z_k| drop below tol * sqrt(P*d), or
// max_iterations is hit (the model is then returned with converged=false).
// NaN in any iterate raises NumericError.
DprrModel fit_dprr(const Dataset& ds, const SameTargetGroups& groups, const DprrConfig& cfg);

// Geometric median of a point set (Weiszfeld, with the standard modified
// step when an iterate lands on an anchor). One point returns that point;
// two points return the midpoint.
Eigen::VectorXd weber_point(const std::vector<Eigen::VectorXd>& points, double tol = 1e-8,
                            long max_iterations = 20000);

// x must already be standardized with the model's scaler. Unseen targets use
// the global parameter only. Negative raw predictions clamp to 0.
double predict_delay(const DprrModel& model, const Eigen::VectorXd& x,
                     const std::string& target_name);

}  // namespace recip
