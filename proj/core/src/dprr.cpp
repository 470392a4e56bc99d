#include "recip/dprr.hpp"

#include <algorithm>
#include <cmath>

#include "recip/baselines.hpp"
#include "recip/error.hpp"
#include "recip/parallel.hpp"
#include "recip/rng.hpp"

namespace recip {

SameTargetGroups build_same_target_groups(const Dataset& ds) {
  SameTargetGroups g;
  g.group_of_row.resize(static_cast<std::size_t>(ds.n()));
  g.rows_of_group.resize(static_cast<std::size_t>(ds.num_groups));
  for (long i = 0; i < ds.n(); ++i) {
    const int gid = ds.meta[static_cast<std::size_t>(i)].group;
    if (gid < 0 || gid >= ds.num_groups)
      throw DataError("row group id out of range: " + std::to_string(gid));
    g.group_of_row[static_cast<std::size_t>(i)] = gid;
    g.rows_of_group[static_cast<std::size_t>(gid)].push_back(i);
  }
  return g;
}

double dprr_objective(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                      const SameTargetGroups& groups, double alpha, double beta,
                      const Eigen::VectorXd& w, const Eigen::MatrixXd& wtilde) {
  if (X.rows() != y.size() || X.rows() != wtilde.rows() || X.cols() != wtilde.cols() ||
      X.cols() != w.size())
    throw DimensionError("objective: inconsistent dimensions");
  double obj = alpha * w.squaredNorm();
  for (long i = 0; i < X.rows(); ++i) {
    const double r = X.row(i).dot(w.transpose() + wtilde.row(i)) - y[i];
    obj += r * r;
  }
  // Ordered pairs: each unordered pair contributes twice.
  for (const auto& rows : groups.rows_of_group) {
    for (std::size_t ai = 0; ai < rows.size(); ++ai) {
      for (std::size_t bi = ai + 1; bi < rows.size(); ++bi) {
        obj += 2.0 * beta * (wtilde.row(rows[ai]) - wtilde.row(rows[bi])).norm();
      }
    }
  }
  return obj;
}

PairSystem build_pair_system(const SameTargetGroups& groups, long n, long group_pair_cap,
                             std::uint64_t seed) {
  PairSystem ps;
  ps.pairs_of_row.resize(static_cast<std::size_t>(n));
  ps.partner_count.assign(static_cast<std::size_t>(n), 0);

  for (std::size_t gid = 0; gid < groups.rows_of_group.size(); ++gid) {
    const auto& rows = groups.rows_of_group[gid];
    std::vector<long> members = rows;
    if (group_pair_cap > 0 && static_cast<long>(members.size()) > group_pair_cap) {
      Rng rng(derive_seed(seed, 0x70617200ULL + gid));
      const auto picks =
          rng.sample_without_replacement(members.size(), static_cast<std::size_t>(group_pair_cap));
      std::vector<long> sampled;
      sampled.reserve(picks.size());
      for (std::size_t p : picks) sampled.push_back(rows[p]);
      std::sort(sampled.begin(), sampled.end());
      ps.warnings.push_back("group " + std::to_string(gid) + " has " +
                            std::to_string(rows.size()) + " rows; pairs subsampled to " +
                            std::to_string(group_pair_cap));
      members = std::move(sampled);
    }
    for (std::size_t ai = 0; ai < members.size(); ++ai) {
      for (std::size_t bi = ai + 1; bi < members.size(); ++bi) {
        const long i = members[ai];
        const long j = members[bi];
        const long p = static_cast<long>(ps.pairs.size());
        ps.pairs.emplace_back(i, j);
        ps.pairs.emplace_back(j, i);
        ps.partner.push_back(p + 1);
        ps.partner.push_back(p);
        ps.pairs_of_row[static_cast<std::size_t>(i)].push_back(p);
        ps.pairs_of_row[static_cast<std::size_t>(j)].push_back(p + 1);
        ++ps.partner_count[static_cast<std::size_t>(i)];
        ++ps.partner_count[static_cast<std::size_t>(j)];
      }
    }
  }
  for (long i = 0; i < n; ++i) {
    if (ps.partner_count[static_cast<std::size_t>(i)] == 0) ps.isolated_rows.push_back(i);
  }
  return ps;
}

AdmmState make_admm_state(long n, int d, const PairSystem& ps) {
  AdmmState s;
  s.a = Eigen::MatrixXd::Zero(n, d);
  s.w = Eigen::VectorXd::Zero(d);
  s.z = Eigen::MatrixXd::Zero(ps.count(), d);
  s.u = Eigen::MatrixXd::Zero(ps.count(), d);
  return s;
}

namespace {

// Minimum-norm exact solve for a row with no in-group partner: the row's
// localized parameter absorbs its residual completely.
inline Eigen::VectorXd isolated_row_parameter(const Eigen::VectorXd& x, double y,
                                              const Eigen::VectorXd& w) {
  const double nx = x.squaredNorm();
  if (nx == 0.0) return Eigen::VectorXd::Zero(x.size());
  return x * ((y - x.dot(w)) / nx);
}

}  // namespace

void update_a(AdmmState& s, const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
              const PairSystem& ps, double rho, unsigned threads) {
  const long n = X.rows();
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t ii = lo; ii < hi; ++ii) {
      const long i = static_cast<long>(ii);
      const long m = ps.partner_count[ii];
      const Eigen::VectorXd x = X.row(i).transpose();
      if (m == 0) {
        s.a.row(i) = (s.w + isolated_row_parameter(x, y[i], s.w)).transpose();
        continue;
      }
      // (2 x x' + rho m I) a = 2 y x + rho sum_p (z_p + w - u_p),
      // inverted with Sherman-Morrison.
      Eigen::VectorXd b = 2.0 * y[i] * x;
      for (const long p : ps.pairs_of_row[ii]) {
        b += rho * (s.z.row(p).transpose() + s.w - s.u.row(p).transpose());
      }
      const double scale = rho * static_cast<double>(m);
      const double xb = x.dot(b);
      const double denom = scale + 2.0 * x.squaredNorm();
      s.a.row(i) = (b / scale - x * (2.0 * xb / (scale * denom))).transpose();
    }
  });
}

void update_w(AdmmState& s, const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
              const PairSystem& ps, double alpha, double rho) {
  const long P = ps.count();
  if (P == 0) {
    // No coupled rows: the global parameter falls back to the plain ridge
    // solution over the whole dataset.
    s.w = fit_ridge(X, y, alpha).w;
    return;
  }
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(s.w.size());
  for (long p = 0; p < P; ++p) {
    const long i = ps.pairs[static_cast<std::size_t>(p)].first;
    sum += s.a.row(i).transpose() - s.z.row(p).transpose() + s.u.row(p).transpose();
  }
  s.w = rho * sum / (2.0 * alpha + rho * static_cast<double>(P));
}

void update_z(AdmmState& s, const PairSystem& ps, double pair_beta, double rho,
              unsigned threads) {
  const long P = ps.count();
  parallel_for(static_cast<std::size_t>(P), threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t p = lo; p < hi; ++p) {
      const long q = ps.partner[p];
      if (q < static_cast<long>(p)) continue;  // handle each unordered pair once
      const long i = ps.pairs[p].first;
      const long j = ps.pairs[static_cast<std::size_t>(q)].first;
      const Eigen::VectorXd ci = s.a.row(i).transpose() - s.w + s.u.row(p).transpose();
      const Eigen::VectorXd cj =
          s.a.row(j).transpose() - s.w + s.u.row(static_cast<std::size_t>(q)).transpose();
      const Eigen::VectorXd mid = 0.5 * (ci + cj);
      const double dist = (ci - cj).norm();
      double theta = 0.0;
      if (dist > 0.0) theta = std::max(0.0, 1.0 - 2.0 * pair_beta / (rho * dist));
      s.z.row(p) = (theta * ci + (1.0 - theta) * mid).transpose();
      s.z.row(static_cast<std::size_t>(q)) = (theta * cj + (1.0 - theta) * mid).transpose();
    }
  });
}

void update_u(AdmmState& s, const PairSystem& ps) {
  for (long p = 0; p < ps.count(); ++p) {
    const long i = ps.pairs[static_cast<std::size_t>(p)].first;
    s.u.row(p) += s.a.row(i) - s.w.transpose() - s.z.row(p);
  }
}

double primal_residual(const AdmmState& s, const PairSystem& ps) {
  double sq = 0.0;
  for (long p = 0; p < ps.count(); ++p) {
    const long i = ps.pairs[static_cast<std::size_t>(p)].first;
    sq += (s.a.row(i) - s.w.transpose() - s.z.row(p)).squaredNorm();
  }
  return std::sqrt(sq);
}

DprrModel fit_dprr(const Dataset& ds, const SameTargetGroups& groups, const DprrConfig& cfg) {
  if (ds.n() < 1) throw DataError("fit: empty dataset");
  if (!ds.has_y) throw DataError("fit: dataset has no targets");
  if (cfg.alpha < 0 || cfg.beta < 0) throw ValidationError("alpha and beta must be >= 0");
  if (cfg.rho <= 0) throw ValidationError("rho must be > 0");
  if (cfg.tol_primal <= 0 || cfg.tol_dual <= 0) throw ValidationError("tolerances must be > 0");

  const long n = ds.n();
  const int d = ds.d();
  const Eigen::MatrixXd& X = ds.X;
  const Eigen::VectorXd& y = ds.y;

  PairSystem ps = build_pair_system(groups, n, cfg.group_pair_cap, cfg.seed);
  AdmmState st = make_admm_state(n, d, ps);
  // Warm start at the plain ridge solution. The fixed point is unaffected,
  // but the global parameter then carries the shared structure throughout
  // the run instead of acquiring it slowly from zero.
  if (!cfg.pin_global_to_zero) st.w = fit_ridge(X, y, cfg.alpha).w;

  const long P = ps.count();
  const double tol_scale = std::sqrt(static_cast<double>(std::max<long>(P * d, 1)));
  // The objective counts each unordered pair twice, so the per-pair weight in
  // the z subproblem is doubled to solve the same problem.
  const double pair_beta = 2.0 * cfg.beta;

  DprrModel model;
  model.config = cfg;
  model.diag.warnings = ps.warnings;

  Eigen::MatrixXd z_prev;
  long iter = 0;
  bool converged = false;
  double r_primal = 0.0, r_dual = 0.0;
  for (iter = 1; iter <= cfg.max_iterations; ++iter) {
    update_a(st, X, y, ps, cfg.rho, cfg.threads);
    if (!cfg.pin_global_to_zero) update_w(st, X, y, ps, cfg.alpha, cfg.rho);
    z_prev = st.z;
    update_z(st, ps, pair_beta, cfg.rho, cfg.threads);
    update_u(st, ps);

    if (!st.a.allFinite() || !st.w.allFinite() || !st.z.allFinite() || !st.u.allFinite())
      throw NumericError("non-finite ADMM iterate at iteration " + std::to_string(iter));

    r_primal = primal_residual(st, ps);
    r_dual = cfg.rho * (st.z - z_prev).norm();
    if (r_primal < cfg.tol_primal * tol_scale && r_dual < cfg.tol_dual * tol_scale) {
      converged = true;
      break;
    }
  }
  if (P == 0) converged = true;  // nothing iterative left: exact one-shot solve

  // Localized parameters: consensus of each row's copies; isolated rows carry
  // their exact-interpolation parameter.
  model.wtilde = Eigen::MatrixXd::Zero(n, d);
  for (long i = 0; i < n; ++i) {
    const auto& mine = ps.pairs_of_row[static_cast<std::size_t>(i)];
    if (mine.empty()) {
      model.wtilde.row(i) =
          isolated_row_parameter(X.row(i).transpose(), y[i], st.w).transpose();
    } else {
      Eigen::VectorXd acc = Eigen::VectorXd::Zero(d);
      for (const long p : mine) acc += st.z.row(p).transpose();
      model.wtilde.row(i) = (acc / static_cast<double>(mine.size())).transpose();
    }
  }

  model.w = cfg.pin_global_to_zero ? Eigen::VectorXd::Zero(d) : st.w;
  model.diag.iterations = std::min(iter, cfg.max_iterations);
  model.diag.converged = converged;
  model.diag.primal_residual = r_primal;
  model.diag.dual_residual = r_dual;
  model.diag.final_objective =
      dprr_objective(X, y, groups, cfg.pin_global_to_zero ? 0.0 : cfg.alpha, cfg.beta, model.w,
                     model.wtilde);

  // Per-target Weber points over that user's localized parameters.
  model.target_names.resize(groups.rows_of_group.size());
  model.weber_points.resize(groups.rows_of_group.size());
  for (std::size_t gid = 0; gid < groups.rows_of_group.size(); ++gid) {
    const auto& rows = groups.rows_of_group[gid];
    if (rows.empty()) throw DataError("empty target group " + std::to_string(gid));
    model.target_names[gid] = ds.meta[static_cast<std::size_t>(rows[0])].v;
    std::vector<Eigen::VectorXd> pts;
    pts.reserve(rows.size());
    for (const long i : rows) pts.push_back(model.wtilde.row(i).transpose());
    model.weber_points[gid] = weber_point(pts);
    model.group_by_target[model.target_names[gid]] = static_cast<int>(gid);
  }
  model.scaler = ds.scaler;
  return model;
}

Eigen::VectorXd weber_point(const std::vector<Eigen::VectorXd>& points, double tol,
                            long max_iterations) {
  if (points.empty()) throw ValidationError("weber point of an empty set");
  const std::size_t n = points.size();
  if (n == 1) return points[0];
  if (n == 2) return 0.5 * (points[0] + points[1]);

  const long d = points[0].size();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(d);
  for (const auto& p : points) {
    if (p.size() != d) throw DimensionError("weber point: mixed dimensions");
    x += p;
  }
  x /= static_cast<double>(n);

  for (long it = 0; it < max_iterations; ++it) {
    // Locate anchors coincident with the iterate.
    long at_anchor = -1;
    double multiplicity = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((x - points[i]).norm() == 0.0) {
        if (at_anchor < 0) at_anchor = static_cast<long>(i);
        multiplicity += 1.0;
      }
    }
    Eigen::VectorXd next(d);
    if (at_anchor >= 0) {
      // Modified step: R is the gradient of the distance sum over the
      // non-coincident anchors; if its pull is within the coincident mass,
      // the anchor is the minimizer.
      Eigen::VectorXd r_vec = Eigen::VectorXd::Zero(d);
      double inv_sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double dist = (x - points[i]).norm();
        if (dist == 0.0) continue;
        r_vec += (x - points[i]) / dist;
        inv_sum += 1.0 / dist;
      }
      const double r_norm = r_vec.norm();
      if (r_norm <= multiplicity || inv_sum == 0.0) return x;
      next = x - ((r_norm - multiplicity) / inv_sum) * (r_vec / r_norm);
    } else {
      double inv_sum = 0.0;
      next = Eigen::VectorXd::Zero(d);
      for (std::size_t i = 0; i < n; ++i) {
        const double dist = (x - points[i]).norm();
        const double wgt = 1.0 / dist;
        next += wgt * points[i];
        inv_sum += wgt;
      }
      next /= inv_sum;
    }
    const double step = (next - x).norm();
    x = next;
    // Weiszfeld converges linearly; stopping three orders below the target
    // keeps the returned point within tol of the limit even for slow rates.
    if (step <= 1e-3 * tol * (1.0 + x.norm())) break;
  }
  return x;
}

double predict_delay(const DprrModel& model, const Eigen::VectorXd& x,
                     const std::string& target_name) {
  if (x.size() != model.w.size()) throw DimensionError("predict: feature dimension mismatch");
  double raw;
  const auto it = model.group_by_target.find(target_name);
  if (it == model.group_by_target.end()) {
    raw = x.dot(model.w);
  } else {
    raw = x.dot(model.w + model.weber_points[static_cast<std::size_t>(it->second)]);
  }
  return raw < 0.0 ? 0.0 : raw;
}

}  // namespace recip
