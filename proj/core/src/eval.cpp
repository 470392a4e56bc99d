#include "recip/eval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "recip/baselines.hpp"
#include "recip/csv.hpp"
#include "recip/rng.hpp"
#include "recip/stats.hpp"

namespace recip {

const char* method_name(Method m) {
  switch (m) {
    case Method::kP1: return "p1";
    case Method::kPk: return "pk";
    case Method::kRG: return "rg";
    case Method::kLS: return "ls";
    case Method::kPD: return "pd";
    case Method::kDPRR: return "dprr";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  for (Method m : {Method::kP1, Method::kPk, Method::kRG, Method::kLS, Method::kPD,
                   Method::kDPRR}) {
    if (name == method_name(m)) return m;
  }
  throw ValidationError("unknown method: " + name);
}

std::vector<Method> parse_method_list(const std::string& csv_list) {
  std::vector<Method> out;
  for (const auto& part : split(csv_list, ',')) {
    if (!part.empty()) out.push_back(parse_method(part));
  }
  if (out.empty()) throw ValidationError("no methods given");
  return out;
}

SplitIndices sample_split(long n, long train_size, int test_ratio_percent, std::uint64_t seed) {
  if (train_size < 1) throw ValidationError("train size must be >= 1");
  if (test_ratio_percent < 0) throw ValidationError("test ratio must be >= 0");
  const long test_size =
      static_cast<long>(std::llround(static_cast<double>(train_size) *
                                     static_cast<double>(test_ratio_percent) / 100.0));
  if (train_size + test_size > n)
    throw DataError("dataset has " + std::to_string(n) + " rows; need " +
                    std::to_string(train_size + test_size));
  Rng rng(seed);
  const auto picks = rng.sample_without_replacement(static_cast<std::size_t>(n),
                                                    static_cast<std::size_t>(train_size + test_size));
  SplitIndices s;
  s.train.assign(picks.begin(), picks.begin() + train_size);
  s.test.assign(picks.begin() + train_size, picks.end());
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

Dataset subset_dataset(const Dataset& ds, const std::vector<long>& rows) {
  Dataset out;
  out.has_y = ds.has_y;
  out.X.resize(static_cast<long>(rows.size()), ds.X.cols());
  if (ds.has_y) out.y.resize(static_cast<long>(rows.size()));
  out.meta.resize(rows.size());
  std::unordered_map<std::string, int> group_of;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const long r = rows[i];
    if (r < 0 || r >= ds.n()) throw DataError("subset row out of range");
    out.X.row(static_cast<long>(i)) = ds.X.row(r);
    if (ds.has_y) out.y[static_cast<long>(i)] = ds.y[r];
    out.meta[i] = ds.meta[static_cast<std::size_t>(r)];
    auto [it, inserted] = group_of.emplace(out.meta[i].v, static_cast<int>(group_of.size()));
    (void)inserted;
    out.meta[i].group = it->second;
  }
  out.num_groups = static_cast<int>(group_of.size());
  out.scaler = ds.scaler;
  return out;
}

namespace {

// Completion-ordered delay history per target, reconstructed from dataset
// rows (t2 = t1 + y).
class NameHistory {
 public:
  explicit NameHistory(const Dataset& ds) {
    if (!ds.has_y) throw DataError("histories need known delays");
    struct Item {
      Day t2;
      Day t1;
      double delay;
      const std::string* v;
    };
    std::vector<Item> items;
    items.reserve(static_cast<std::size_t>(ds.n()));
    for (long i = 0; i < ds.n(); ++i) {
      const auto& m = ds.meta[static_cast<std::size_t>(i)];
      items.push_back({m.t1 + static_cast<Day>(ds.y[i]), m.t1, ds.y[i], &m.v});
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
      if (a.t2 != b.t2) return a.t2 < b.t2;
      return a.t1 < b.t1;
    });
    for (const auto& it : items) {
      auto node = ids_.emplace(*it.v, static_cast<NodeId>(ids_.size())).first->second;
      index_.add(node, it.t2, it.delay);
    }
  }

  // Mean of the last min(k, available) delays completed strictly before t1.
  double predict(const std::string& v, Day t1, int k, double fallback) const {
    auto it = ids_.find(v);
    if (it == ids_.end()) return fallback;
    const auto s = index_.stats_before(it->second, t1, k);
    return s.count == 0 ? fallback : s.avg_k;
  }

 private:
  std::unordered_map<std::string, NodeId> ids_;
  UserHistoryIndex index_;
};

double clamp0(double x) { return x < 0.0 ? 0.0 : x; }

struct TrialContext {
  const Dataset& raw;
  const EvalConfig& cfg;
  const NameHistory& history;
  Dataset train;  // standardized
  std::vector<long> test_rows;
  double train_mean = 0.0;
};

void score_method(const TrialContext& ctx, Method method, double ridge_alpha,
                  double lasso_lambda, double& out_mae, double& out_rmse) {
  const Dataset& raw = ctx.raw;
  const Standardization& scaler = *ctx.train.scaler;
  std::vector<double> truth, pred;
  truth.reserve(ctx.test_rows.size());
  pred.reserve(ctx.test_rows.size());

  switch (method) {
    case Method::kP1:
    case Method::kPk: {
      const int k = method == Method::kP1 ? 1 : ctx.cfg.k;
      for (const long r : ctx.test_rows) {
        const auto& m = raw.meta[static_cast<std::size_t>(r)];
        truth.push_back(raw.y[r]);
        pred.push_back(clamp0(ctx.history.predict(m.v, m.t1, k, ctx.train_mean)));
      }
      break;
    }
    case Method::kRG:
    case Method::kLS: {
      Eigen::VectorXd w;
      if (method == Method::kRG) {
        w = fit_ridge(ctx.train.X, ctx.train.y, ridge_alpha).w;
      } else {
        w = fit_lasso(ctx.train.X, ctx.train.y, lasso_lambda).w;
      }
      for (const long r : ctx.test_rows) {
        truth.push_back(raw.y[r]);
        const Eigen::VectorXd x = standardize_row(raw.X.row(r).transpose(), scaler);
        pred.push_back(clamp0(x.dot(w)));
      }
      break;
    }
    case Method::kPD:
    case Method::kDPRR: {
      DprrConfig dcfg = ctx.cfg.dprr;
      dcfg.threads = ctx.cfg.threads;
      dcfg.pin_global_to_zero = method == Method::kPD;
      const SameTargetGroups groups = build_same_target_groups(ctx.train);
      const DprrModel model = fit_dprr(ctx.train, groups, dcfg);
      for (const long r : ctx.test_rows) {
        const auto& m = raw.meta[static_cast<std::size_t>(r)];
        truth.push_back(raw.y[r]);
        const Eigen::VectorXd x = standardize_row(raw.X.row(r).transpose(), scaler);
        pred.push_back(predict_delay(model, x, m.v));
      }
      break;
    }
  }
  out_mae = mae(truth, pred);
  out_rmse = rmse(truth, pred);
}

}  // namespace

EvalReport run_benchmark(const Dataset& raw, const EvalConfig& cfg) {
  if (cfg.methods.empty()) throw ValidationError("need at least one method");
  if (cfg.trials < 1) throw ValidationError("need at least one trial");
  if (!raw.has_y) throw DataError("benchmark needs known delays");

  EvalReport report;
  report.config = cfg;
  const NameHistory history(raw);

  for (std::size_t ri = 0; ri < cfg.ratios.size(); ++ri) {
    const int ratio = cfg.ratios[ri];
    double ridge_alpha = cfg.ridge_alpha;
    double lasso_lambda = cfg.lasso_lambda;
    if (cfg.tune_linear) {
      const auto tune_split = sample_split(raw.n(), cfg.train_size, ratio,
                                           derive_seed(cfg.seed, 7000 + ri));
      const Dataset tune_ds = subset_dataset(raw, tune_split.train);
      ridge_alpha =
          cross_validate(tune_ds, Method::kRG, default_linear_grid(), 5, cfg.seed).best_param;
      lasso_lambda =
          cross_validate(tune_ds, Method::kLS, default_linear_grid(), 5, cfg.seed).best_param;
    }

    for (int trial = 0; trial < cfg.trials; ++trial) {
      const std::uint64_t split_seed =
          derive_seed(cfg.seed, 1000003ULL * static_cast<std::uint64_t>(ri) +
                                    static_cast<std::uint64_t>(trial));
      const SplitIndices split = sample_split(raw.n(), cfg.train_size, ratio, split_seed);

      TrialContext ctx{raw, cfg, history, subset_dataset(raw, split.train), split.test, 0.0};
      const Standardization scaler = compute_standardization(ctx.train.X);
      apply_standardization(ctx.train.X, scaler);
      ctx.train.scaler = scaler;
      ctx.train_mean = ctx.train.y.mean();

      for (const Method method : cfg.methods) {
        TrialRow row;
        row.ratio = ratio;
        row.trial = trial;
        row.method = method;
        try {
          score_method(ctx, method, ridge_alpha, lasso_lambda, row.mae, row.rmse);
        } catch (const std::exception& e) {
          row.failed = true;
          row.error = e.what();
        }
        report.trials.push_back(std::move(row));
      }
    }
  }

  // Per-ratio means and paired tests against DPRR.
  for (const int ratio : cfg.ratios) {
    std::vector<double> dprr_mae(static_cast<std::size_t>(cfg.trials), 0.0);
    std::vector<double> dprr_rmse(static_cast<std::size_t>(cfg.trials), 0.0);
    std::vector<bool> dprr_ok(static_cast<std::size_t>(cfg.trials), false);
    for (const auto& row : report.trials) {
      if (row.ratio == ratio && row.method == Method::kDPRR && !row.failed) {
        dprr_mae[static_cast<std::size_t>(row.trial)] = row.mae;
        dprr_rmse[static_cast<std::size_t>(row.trial)] = row.rmse;
        dprr_ok[static_cast<std::size_t>(row.trial)] = true;
      }
    }
    for (const Method method : cfg.methods) {
      SummaryRow s;
      s.ratio = ratio;
      s.method = method;
      double sum_mae = 0, sum_rmse = 0;
      long ok = 0;
      std::vector<double> m_mae, m_rmse, d_mae, d_rmse;
      for (const auto& row : report.trials) {
        if (row.ratio != ratio || row.method != method) continue;
        if (row.failed) {
          ++s.failures;
          continue;
        }
        sum_mae += row.mae;
        sum_rmse += row.rmse;
        ++ok;
        if (dprr_ok[static_cast<std::size_t>(row.trial)]) {
          m_mae.push_back(row.mae);
          m_rmse.push_back(row.rmse);
          d_mae.push_back(dprr_mae[static_cast<std::size_t>(row.trial)]);
          d_rmse.push_back(dprr_rmse[static_cast<std::size_t>(row.trial)]);
        }
      }
      s.mean_mae = ok ? sum_mae / static_cast<double>(ok) : 0.0;
      s.mean_rmse = ok ? sum_rmse / static_cast<double>(ok) : 0.0;
      if (method != Method::kDPRR && m_mae.size() >= 2) {
        s.p_mae_vs_dprr = paired_t_test(m_mae, d_mae).p;
        s.p_rmse_vs_dprr = paired_t_test(m_rmse, d_rmse).p;
      }
      report.summaries.push_back(s);
    }
  }
  return report;
}

void write_trials_csv(const std::string& path, const EvalReport& report) {
  CsvWriter out(path);
  out.header({"ratio", "trial", "method", "mae", "rmse", "failed", "error"});
  for (const auto& r : report.trials) {
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    out.row({std::to_string(r.ratio), std::to_string(r.trial), method_name(r.method),
             format_g6(r.mae), format_g6(r.rmse), r.failed ? "1" : "0", err});
  }
}

void write_summary_csv(const std::string& path, const EvalReport& report) {
  CsvWriter out(path);
  out.header({"ratio", "method", "mean_mae", "mean_rmse", "p_mae_vs_dprr", "p_rmse_vs_dprr",
              "failures", "train_size", "trials", "seed"});
  for (const auto& s : report.summaries) {
    out.row({std::to_string(s.ratio), method_name(s.method), format_g6(s.mean_mae),
             format_g6(s.mean_rmse), format_g6(s.p_mae_vs_dprr), format_g6(s.p_rmse_vs_dprr),
             std::to_string(s.failures), std::to_string(report.config.train_size),
             std::to_string(report.config.trials), std::to_string(report.config.seed)});
  }
}

std::string summary_table(const EvalReport& report) {
  std::ostringstream os;
  os << "ratio  method  mean_mae    mean_rmse   p_mae_vs_dprr\n";
  char buf[128];
  for (const auto& s : report.summaries) {
    std::snprintf(buf, sizeof(buf), "%5d  %-6s  %-10.4f  %-10.4f  %-10.4g\n", s.ratio,
                  method_name(s.method), s.mean_mae, s.mean_rmse, s.p_mae_vs_dprr);
    os << buf;
  }
  return os.str();
}

CrossValidationResult cross_validate(const Dataset& raw, Method method,
                                     const std::vector<double>& param_grid, int folds,
                                     std::uint64_t seed) {
  if (folds < 2) throw ValidationError("cross-validation needs >= 2 folds");
  if (param_grid.empty()) throw ValidationError("empty parameter grid");
  if (method != Method::kRG && method != Method::kLS)
    throw ValidationError("cross_validate supports rg and ls");
  if (raw.n() < folds) throw DataError("fewer rows than folds");

  std::vector<long> order(static_cast<std::size_t>(raw.n()));
  for (long i = 0; i < raw.n(); ++i) order[static_cast<std::size_t>(i)] = i;
  Rng rng(derive_seed(seed, 0xc5f01dULL));
  rng.shuffle(order);

  std::vector<double> grid = param_grid;
  std::sort(grid.begin(), grid.end());

  CrossValidationResult res;
  bool first = true;
  for (const double param : grid) {
    double total_mae = 0.0;
    for (int f = 0; f < folds; ++f) {
      std::vector<long> train_rows, val_rows;
      for (std::size_t i = 0; i < order.size(); ++i) {
        if (static_cast<int>(i % static_cast<std::size_t>(folds)) == f) {
          val_rows.push_back(order[i]);
        } else {
          train_rows.push_back(order[i]);
        }
      }
      Dataset train = subset_dataset(raw, train_rows);
      const Standardization scaler = compute_standardization(train.X);
      apply_standardization(train.X, scaler);
      Eigen::VectorXd w = method == Method::kRG ? fit_ridge(train.X, train.y, param).w
                                                : fit_lasso(train.X, train.y, param).w;
      std::vector<double> truth, pred;
      for (const long r : val_rows) {
        truth.push_back(raw.y[r]);
        const Eigen::VectorXd x = standardize_row(raw.X.row(r).transpose(), scaler);
        pred.push_back(clamp0(x.dot(w)));
      }
      total_mae += mae(truth, pred);
    }
    const double mean_mae = total_mae / folds;
    res.table.emplace_back(param, mean_mae);
    if (first || mean_mae < res.best_mae) {
      res.best_mae = mean_mae;
      res.best_param = param;
      first = false;
    }
  }
  return res;
}

std::vector<BetaSweepRow> beta_sweep(const Dataset& raw, const DprrConfig& base,
                                     const std::vector<double>& beta_grid, long train_size,
                                     int test_ratio_percent, std::uint64_t seed) {
  if (beta_grid.empty()) throw ValidationError("empty beta grid");
  const SplitIndices split = sample_split(raw.n(), train_size, test_ratio_percent,
                                          derive_seed(seed, 0xbe7a));
  Dataset train = subset_dataset(raw, split.train);
  const Standardization scaler = compute_standardization(train.X);
  apply_standardization(train.X, scaler);
  train.scaler = scaler;
  const SameTargetGroups groups = build_same_target_groups(train);

  std::vector<BetaSweepRow> rows;
  for (const double beta : beta_grid) {
    DprrConfig cfg = base;
    cfg.beta = beta;
    const DprrModel model = fit_dprr(train, groups, cfg);
    std::vector<double> truth, pred;
    for (const long r : split.test) {
      truth.push_back(raw.y[r]);
      const Eigen::VectorXd x = standardize_row(raw.X.row(r).transpose(), scaler);
      pred.push_back(predict_delay(model, x, raw.meta[static_cast<std::size_t>(r)].v));
    }
    rows.push_back({beta, mae(truth, pred), rmse(truth, pred)});
  }
  return rows;
}

}  // namespace recip
