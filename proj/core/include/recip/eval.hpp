#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "recip/dprr.hpp"
#include "recip/features.hpp"

namespace recip {

enum class Method { kP1, kPk, kRG, kLS, kPD, kDPRR };

const char* method_name(Method m);
Method parse_method(const std::string& name);
std::vector<Method> parse_method_list(const std::string& csv_list);

struct SplitIndices {
  std::vector<long> train;
  std::vector<long> test;
};

// Uniform sampling without replacement; train and test are disjoint.
// |test| = round(train_size * test_ratio_percent / 100).
SplitIndices sample_split(long n, long train_size, int test_ratio_percent, std::uint64_t seed);

// Copies the selected rows and re-labels groups densely by target user.
Dataset subset_dataset(const Dataset& ds, const std::vector<long>& rows);

struct EvalConfig {
  std::vector<Method> methods = {Method::kP1,  Method::kPk, Method::kRG,
                                 Method::kLS,  Method::kPD, Method::kDPRR};
  long train_size = 2000;
  std::vector<int> ratios = {50, 70, 90};
  int trials = 10;
  std::uint64_t seed = 7;
  int k = 4;  // window for Pk and the history features
  double ridge_alpha = 1.0;
  double lasso_lambda = 1.0;
  DprrConfig dprr;
  // When set, ridge alpha and lasso lambda are tuned by 5-fold
  // cross-validation on the first training split of each ratio.
  bool tune_linear = false;
  unsigned threads = 1;
};

struct TrialRow {
  int ratio = 0;
  int trial = 0;
  Method method = Method::kRG;
  double mae = 0.0;
  double rmse = 0.0;
  bool failed = false;
  std::string error;
};

struct SummaryRow {
  int ratio = 0;
  Method method = Method::kRG;
  double mean_mae = 0.0;
  double mean_rmse = 0.0;
  // Paired t-test of per-trial errors against DPRR; 1.0 for DPRR itself.
  double p_mae_vs_dprr = 1.0;
  double p_rmse_vs_dprr = 1.0;
  long failures = 0;
};

struct EvalReport {
  EvalConfig config;
  std::vector<TrialRow> trials;
  std::vector<SummaryRow> summaries;
};

// For each ratio and trial: one seeded split; every method is fit on the
// same training rows and scored on the same test rows. Method failures are
// recorded per trial and excluded from the means.
EvalReport run_benchmark(const Dataset& raw, const EvalConfig& cfg);

void write_trials_csv(const std::string& path, const EvalReport& report);
void write_summary_csv(const std::string& path, const EvalReport& report);
std::string summary_table(const EvalReport& report);

struct CrossValidationResult {
  double best_param = 0.0;
  double best_mae = 0.0;
  std::vector<std::pair<double, double>> table;  // (param, mean MAE)
};

// k-fold selection of the regularization weight, minimizing mean MAE; ties
// go to the smaller parameter. Supported methods: kRG (alpha), kLS (lambda).
CrossValidationResult cross_validate(const Dataset& raw, Method method,
                                     const std::vector<double>& param_grid, int folds,
                                     std::uint64_t seed);

inline const std::vector<double>& default_linear_grid() {
  static const std::vector<double> g = {1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3};
  return g;
}

struct BetaSweepRow {
  double beta = 0.0;
  double mae = 0.0;
  double rmse = 0.0;
};

inline const std::vector<double>& default_beta_grid() {
  static const std::vector<double> g = {0.001, 0.01, 0.05, 0.1, 0.5, 1.0, 10.0, 100.0, 1000.0};
  return g;
}

// One fixed seeded split, one DPRR fit per beta, scored on the test rows.
std::vector<BetaSweepRow> beta_sweep(const Dataset& raw, const DprrConfig& base,
                                     const std::vector<double>& beta_grid, long train_size,
                                     int test_ratio_percent, std::uint64_t seed);

}  // namespace recip
