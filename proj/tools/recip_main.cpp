// recip: temporal-graph reciprocity analytics and delay prediction.
//
// Subcommands: ingest-check, analyze, features, train, predict, evaluate,
// sweep-beta, synth. All outputs are CSV tables or versioned model files;
// every run is deterministic given its flags and seed (use --threads 1 for
// bit-exact reference runs).

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "recip/analytics.hpp"
#include "recip/baselines.hpp"
#include "recip/csv.hpp"
#include "recip/dprr.hpp"
#include "recip/eval.hpp"
#include "recip/features.hpp"
#include "recip/model_io.hpp"
#include "recip/parallel.hpp"
#include "recip/stats.hpp"
#include "recip/synth.hpp"
#include "recip/temporal_graph.hpp"

namespace fs = std::filesystem;
using namespace recip;

namespace {

constexpr const char* kVersion = "recip 0.1.0";
constexpr const char* kFormats =
    "model-format 1\nscaler-format 1\ndataset-schema u,v,t1,group,f1..f14[,y]\n"
    "edge-list-schema src<TAB>dst<TAB>day";

std::string resolve_out_dir(const std::string& flag) {
  std::string dir = flag;
  if (dir.empty()) {
    const char* env = std::getenv("RECIP_OUT_DIR");
    dir = env != nullptr && *env != '\0' ? env : ".";
  }
  fs::create_directories(dir);
  return dir;
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) {
    if (!part.empty()) out.push_back(parse_double(part));
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& part : split(text, ',')) {
    if (!part.empty()) out.push_back(static_cast<int>(parse_long(part)));
  }
  return out;
}

struct AnalyzeArgs {
  std::string edges;
  std::string out_dir;
  long cutoff = 50;
  long bucket_width = 50;
  int k_max = 8;
  std::string anchor = "wed";
  long degree_low = 10;
  long degree_high = 2000;
};

void run_analyze(const AnalyzeArgs& args) {
  const std::string dir = resolve_out_dir(args.out_dir);
  const int anchor = parse_weekday(args.anchor);
  const DynamicDigraph g = load_edge_list(args.edges);
  const auto relations = extract_reciprocal_relations(g);

  {
    CsvWriter out(join_path(dir, "growth.csv"));
    out.header({"t", "nodes", "edges", "reciprocal"});
    for (const auto& r : growth_series(g)) {
      out.row({std::to_string(r.t), std::to_string(r.nodes), std::to_string(r.edges),
               std::to_string(r.reciprocal)});
    }
  }
  {
    CsvWriter out(join_path(dir, "reciprocity_rate.csv"));
    out.header({"t", "rate"});
    for (const auto& r : reciprocity_rate_series(g)) {
      out.row({std::to_string(r.t), format_g6(r.rate)});
    }
  }
  {
    CsvWriter out(join_path(dir, "densification.csv"));
    out.header({"slope", "intercept", "t_min", "t_max", "points", "residual_rms"});
    try {
      const auto fit = densification_fit(g, 0, g.max_day());
      out.row({format_g6(fit.slope), format_g6(fit.intercept), std::to_string(fit.t_min),
               std::to_string(fit.t_max), std::to_string(fit.points),
               format_g6(fit.residual_rms)});
    } catch (const DataError& e) {
      std::cerr << "warning: densification fit skipped: " << e.what() << "\n";
    }
  }
  {
    CsvWriter out(join_path(dir, "delay_histogram.csv"));
    out.header({"delay", "count"});
    const auto h = delay_histogram(relations, args.cutoff);
    for (std::size_t d = 0; d < h.counts.size(); ++d) {
      out.row({std::to_string(d), std::to_string(h.counts[d])});
    }
    out.row({"-1", std::to_string(h.overflow)});  // overflow bin: delay > cutoff
  }
  {
    CsvWriter out(join_path(dir, "join_time.csv"));
    out.header({"role", "bucket_start", "mean_delay", "count"});
    for (const Role role : {Role::kSource, Role::kTarget}) {
      for (const auto& r : avg_delay_by_join_time(relations, g, role, args.bucket_width)) {
        out.row({role_name(role), std::to_string(r.bucket_start), format_g6(r.mean_delay),
                 std::to_string(r.count)});
      }
    }
  }
  {
    CsvWriter out(join_path(dir, "weekly.csv"));
    out.header({"weekday", "name", "avg_delay_initiated", "initiated_count", "completed_count"});
    const auto wp = weekly_patterns(relations, anchor);
    for (int w = 0; w < 7; ++w) {
      out.row({std::to_string(w), weekday_name(w),
               format_g6(wp.avg_delay_by_initiation_weekday[static_cast<std::size_t>(w)]),
               std::to_string(wp.initiation_counts[static_cast<std::size_t>(w)]),
               std::to_string(wp.completion_counts_by_weekday[static_cast<std::size_t>(w)])});
    }
  }
  {
    CsvWriter out(join_path(dir, "sequential_pk.csv"));
    out.header({"k", "mae", "rmse", "points"});
    std::vector<int> ks;
    for (int k = 1; k <= args.k_max; ++k) ks.push_back(k);
    for (const auto& r : sequential_pk_error(relations, ks, args.cutoff)) {
      out.row({std::to_string(r.k), format_g6(r.mae), format_g6(r.rmse),
               std::to_string(r.points)});
    }
  }
  {
    CsvWriter out(join_path(dir, "degree_buckets.csv"));
    out.header({"degree_kind", "role", "bucket", "mean_delay", "count"});
    for (const DegreeKind kind : {DegreeKind::kIn, DegreeKind::kOut}) {
      for (const Role role : {Role::kSource, Role::kTarget}) {
        for (const auto& r : avg_delay_by_degree_bucket(relations, g, kind, role,
                                                        args.degree_low, args.degree_high)) {
          out.row({degree_kind_name(kind), role_name(role), r.bucket, format_g6(r.mean_delay),
                   std::to_string(r.count)});
        }
      }
    }
  }
  {
    CsvWriter out(join_path(dir, "common_neighbors.csv"));
    out.header({"kind", "range_lo", "range_hi", "mean_delay", "count"});
    for (const NeighborKind kind : {NeighborKind::kFollowees, NeighborKind::kFollowers}) {
      for (const auto& r : avg_delay_by_common_neighbors(relations, g, kind)) {
        out.row({neighbor_kind_name(kind), std::to_string(r.lo), std::to_string(r.hi),
                 format_g6(r.mean_delay), std::to_string(r.count)});
      }
    }
  }
  std::cout << "analyze: " << relations.size() << " reciprocal relations, outputs in " << dir
            << "\n";
}

Eigen::VectorXd model_weights(const ModelFile& mf) { return mf.w; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal-graph reciprocity analytics and delay prediction"};
  app.require_subcommand(0, 1);
  app.fallthrough();  // global flags (--threads) may follow a subcommand
  unsigned threads = default_thread_count();
  app.add_option("--threads", threads, "Worker threads (1 = bit-exact reference runs)");
  bool show_version = false;
  app.add_flag("--version", show_version, "Print version and format tags");

  // ingest-check
  auto* cmd_check = app.add_subcommand("ingest-check", "Parse and validate an edge list");
  std::string check_edges;
  cmd_check->add_option("--edges", check_edges, "Edge-list file")->required();

  // analyze
  AnalyzeArgs an;
  auto* cmd_an = app.add_subcommand(
      "analyze", "Emit the full CSV bundle: growth, reciprocity_rate, densification, "
                 "delay_histogram, join_time, weekly, sequential_pk, degree_buckets, "
                 "common_neighbors");
  cmd_an->add_option("--edges", an.edges, "Edge-list file")->required();
  cmd_an->add_option("--out-dir", an.out_dir, "Output directory (default $RECIP_OUT_DIR or .)");
  cmd_an->add_option("--cutoff", an.cutoff, "Delay cutoff in days (histogram + pk filter)");
  cmd_an->add_option("--bucket-width", an.bucket_width, "Join-time bucket width in days");
  cmd_an->add_option("--k-max", an.k_max, "Largest k for the sequential predictor table");
  cmd_an->add_option("--anchor-weekday", an.anchor, "Weekday of day 0 (name or 0..6)");
  cmd_an->add_option("--degree-low", an.degree_low, "Strict low-degree threshold");
  cmd_an->add_option("--degree-high", an.degree_high, "Strict high-degree threshold");

  // features
  std::string ft_edges, ft_out, ft_scaler_out, ft_anchor = "wed";
  int ft_k = 4;
  long ft_cutoff = 50;
  bool ft_standardize = false, ft_no_y = false;
  double ft_fill = -1;
  auto* cmd_ft = app.add_subcommand("features", "Build the feature matrix CSV from an edge list");
  cmd_ft->add_option("--edges", ft_edges, "Edge-list file")->required();
  cmd_ft->add_option("--out", ft_out, "Output dataset CSV")->required();
  cmd_ft->add_option("--k", ft_k, "History window for avg-of-previous-k");
  cmd_ft->add_option("--cutoff", ft_cutoff, "Drop relations with delay > cutoff");
  cmd_ft->add_flag("--standardize", ft_standardize,
                   "Write z-scored features (training subcommands standardize internally)");
  cmd_ft->add_option("--scaler-out", ft_scaler_out, "Sidecar file for the scaler");
  cmd_ft->add_flag("--no-y", ft_no_y, "Omit the target column");
  cmd_ft->add_option("--fill", ft_fill, "Cold-start history fill (default: mean kept delay)");
  cmd_ft->add_option("--anchor-weekday", ft_anchor, "Weekday of day 0");

  // train
  std::string tr_data, tr_model, tr_method = "dprr";
  double tr_alpha = 1.0, tr_beta = 0.5, tr_rho = 1.0, tr_lambda = 1.0, tr_tol = 1e-4;
  long tr_max_iter = 500, tr_pair_cap = 200;
  std::uint64_t tr_seed = 0;
  auto* cmd_tr = app.add_subcommand("train", "Fit a model on a (raw) dataset CSV");
  cmd_tr->add_option("--data", tr_data, "Dataset CSV from `features`")->required();
  cmd_tr->add_option("--model", tr_model, "Output model file")->required();
  cmd_tr->add_option("--method", tr_method, "rg | ls | pd | dprr");
  cmd_tr->add_option("--alpha", tr_alpha, "Ridge weight (rg, dprr)");
  cmd_tr->add_option("--beta", tr_beta, "Network-lasso weight (pd, dprr)");
  cmd_tr->add_option("--rho", tr_rho, "ADMM penalty");
  cmd_tr->add_option("--lambda", tr_lambda, "Lasso weight (ls)");
  cmd_tr->add_option("--max-iter", tr_max_iter, "ADMM iteration cap");
  cmd_tr->add_option("--tol", tr_tol, "ADMM residual tolerance");
  cmd_tr->add_option("--pair-cap", tr_pair_cap, "Per-group pair subsampling cap");
  cmd_tr->add_option("--seed", tr_seed, "Seed (pair-cap subsampling)");

  // predict
  std::string pr_data, pr_model, pr_out;
  auto* cmd_pr = app.add_subcommand("predict", "Predict delays for dataset rows");
  cmd_pr->add_option("--data", pr_data, "Dataset CSV (y optional)")->required();
  cmd_pr->add_option("--model", pr_model, "Model file")->required();
  cmd_pr->add_option("--out", pr_out, "Output CSV: u,v,t1,prediction")->required();

  // evaluate
  std::string ev_data, ev_out_dir, ev_methods = "p1,pk,rg,ls,pd,dprr", ev_ratios = "50,70,90";
  long ev_train_size = 2000, ev_max_iter = 500, ev_pair_cap = 200;
  int ev_trials = 10, ev_k = 4;
  std::uint64_t ev_seed = 7;
  double ev_alpha = 1.0, ev_lambda = 1.0, ev_dprr_alpha = 1.0, ev_dprr_beta = 0.5,
         ev_rho = 1.0;
  bool ev_cv = false;
  auto* cmd_ev = app.add_subcommand("evaluate", "Benchmark methods over seeded splits");
  cmd_ev->add_option("--data", ev_data, "Dataset CSV")->required();
  cmd_ev->add_option("--out-dir", ev_out_dir, "Output directory for trials.csv, summary.csv");
  cmd_ev->add_option("--methods", ev_methods, "Comma list of p1,pk,rg,ls,pd,dprr");
  cmd_ev->add_option("--train-size", ev_train_size, "Training rows per trial");
  cmd_ev->add_option("--test-ratio", ev_ratios, "Comma list of test percentages");
  cmd_ev->add_option("--trials", ev_trials, "Trials per ratio");
  cmd_ev->add_option("--seed", ev_seed, "Root seed");
  cmd_ev->add_option("--k", ev_k, "Window for Pk");
  cmd_ev->add_option("--alpha", ev_alpha, "Ridge alpha");
  cmd_ev->add_option("--lambda", ev_lambda, "Lasso lambda");
  cmd_ev->add_option("--dprr-alpha", ev_dprr_alpha, "DPRR alpha");
  cmd_ev->add_option("--dprr-beta", ev_dprr_beta, "DPRR beta");
  cmd_ev->add_option("--rho", ev_rho, "ADMM penalty");
  cmd_ev->add_option("--max-iter", ev_max_iter, "ADMM iteration cap");
  cmd_ev->add_option("--pair-cap", ev_pair_cap, "Per-group pair cap");
  cmd_ev->add_flag("--cv", ev_cv, "Cross-validate ridge alpha and lasso lambda");

  // sweep-beta
  std::string sw_data, sw_out, sw_grid;
  long sw_train_size = 2000, sw_max_iter = 500, sw_pair_cap = 200;
  int sw_ratio = 50;
  std::uint64_t sw_seed = 7;
  double sw_alpha = 1.0, sw_rho = 1.0;
  auto* cmd_sw = app.add_subcommand("sweep-beta", "DPRR error as a function of beta");
  cmd_sw->add_option("--data", sw_data, "Dataset CSV")->required();
  cmd_sw->add_option("--out", sw_out, "Output CSV: beta,mae,rmse")->required();
  cmd_sw->add_option("--beta-grid", sw_grid, "Comma list (default 0.001..1000 grid)");
  cmd_sw->add_option("--train-size", sw_train_size, "Training rows");
  cmd_sw->add_option("--test-ratio", sw_ratio, "Test percentage");
  cmd_sw->add_option("--seed", sw_seed, "Seed");
  cmd_sw->add_option("--alpha", sw_alpha, "DPRR alpha");
  cmd_sw->add_option("--rho", sw_rho, "ADMM penalty");
  cmd_sw->add_option("--max-iter", sw_max_iter, "ADMM iteration cap");
  cmd_sw->add_option("--pair-cap", sw_pair_cap, "Per-group pair cap");

  // synth
  SynthConfig sy;
  std::string sy_out, sy_truth, sy_wstar, sy_anchor = "wed";
  double sy_power_law_a = -1.0;
  PowerLawGrowthConfig pl;
  auto* cmd_sy = app.add_subcommand("synth", "Generate a synthetic edge stream");
  cmd_sy->add_option("--out", sy_out, "Output edge-list file")->required();
  cmd_sy->add_option("--truth", sy_truth, "Ground-truth CSV (planted delays)");
  cmd_sy->add_option("--users", sy.users, "User count");
  cmd_sy->add_option("--days", sy.horizon_days, "Horizon in days");
  cmd_sy->add_option("--growth", sy.growth, "Arrival growth factor per day");
  cmd_sy->add_option("--edge-rate", sy.edge_rate, "Follows per present user per day");
  cmd_sy->add_option("--pa-uniform-mix", sy.pa_uniform_mix, "Uniform-target probability");
  cmd_sy->add_option("--recip-prob", sy.reciprocation_prob, "Follow-back probability");
  cmd_sy->add_option("--sigma-user", sy.user_offset_scale, "Per-user offset scale");
  cmd_sy->add_option("--sigma-noise", sy.noise_scale, "Per-relation noise scale");
  cmd_sy->add_option("--censor-horizon", sy.censoring_horizon,
                     "Drop completions after this day (-1: horizon end)");
  cmd_sy->add_option("--k", sy.k, "History window used when planting");
  cmd_sy->add_option("--fill", sy.fill_value, "Cold-start history fill used when planting");
  cmd_sy->add_option("--seed", sy.seed, "Seed");
  cmd_sy->add_option("--anchor-weekday", sy_anchor, "Weekday of day 0");
  cmd_sy->add_option("--wstar", sy_wstar, "Planted coefficients, 14 comma-separated values");
  cmd_sy->add_option("--power-law-a", sy_power_law_a,
                     "Emit a pure densification stream with this exponent instead");
  cmd_sy->add_option("--pl-days", pl.days, "Power-law stream: days");
  cmd_sy->add_option("--pl-initial-nodes", pl.initial_nodes, "Power-law stream: day-0 nodes");
  cmd_sy->add_option("--pl-nodes-per-day", pl.nodes_per_day, "Power-law stream: daily arrivals");
  cmd_sy->add_option("--pl-coefficient", pl.coefficient, "Power-law stream: coefficient c");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (show_version) {
      std::cout << kVersion << "\n" << kFormats << "\n";
      return 0;
    }
    if (app.get_subcommands().empty()) {
      std::cerr << app.help();
      return 1;
    }

    if (cmd_check->parsed()) {
      const DynamicDigraph g = load_edge_list(check_edges);
      const auto relations = extract_reciprocal_relations(g);
      std::cout << "nodes " << g.node_count() << "\nedges " << g.edge_count() << "\nmax_day "
                << g.max_day() << "\nreciprocal_relations " << relations.size() << "\n";
    } else if (cmd_an->parsed()) {
      run_analyze(an);
    } else if (cmd_ft->parsed()) {
      const DynamicDigraph g = load_edge_list(ft_edges);
      const auto relations = extract_reciprocal_relations(g);
      DatasetConfig cfg;
      cfg.k = ft_k;
      cfg.delay_cutoff = ft_cutoff;
      cfg.standardize = ft_standardize;
      cfg.anchor_weekday = parse_weekday(ft_anchor);
      if (ft_fill >= 0) cfg.fill_value = ft_fill;
      Dataset ds = build_dataset(g, relations, cfg);
      if (ft_no_y) {
        ds.has_y = false;
        ds.y.resize(0);
      }
      save_dataset(ft_out, ds);
      if (!ft_scaler_out.empty()) {
        if (!ds.scaler.has_value())
          throw ValidationError("--scaler-out needs --standardize");
        save_scaler(ft_scaler_out, *ds.scaler);
      }
      std::cout << "features: " << ds.n() << " rows, " << ds.num_groups << " target users -> "
                << ft_out << "\n";
    } else if (cmd_tr->parsed()) {
      Dataset ds = load_dataset(tr_data);
      if (!ds.has_y) throw DataError("training needs a y column");
      const Standardization scaler = compute_standardization(ds.X);
      apply_standardization(ds.X, scaler);
      ds.scaler = scaler;
      ModelFile mf;
      if (tr_method == "rg") {
        mf = to_model_file(fit_ridge(ds.X, ds.y, tr_alpha), scaler);
      } else if (tr_method == "ls") {
        mf = to_model_file(fit_lasso(ds.X, ds.y, tr_lambda), scaler);
      } else if (tr_method == "pd" || tr_method == "dprr") {
        DprrConfig cfg;
        cfg.alpha = tr_alpha;
        cfg.beta = tr_beta;
        cfg.rho = tr_rho;
        cfg.max_iterations = tr_max_iter;
        cfg.tol_primal = cfg.tol_dual = tr_tol;
        cfg.group_pair_cap = tr_pair_cap;
        cfg.seed = tr_seed;
        cfg.threads = threads;
        cfg.pin_global_to_zero = tr_method == "pd";
        const SameTargetGroups groups = build_same_target_groups(ds);
        const DprrModel model = fit_dprr(ds, groups, cfg);
        for (const auto& warning : model.diag.warnings)
          std::cerr << "warning: " << warning << "\n";
        std::cout << "objective " << format_g6(model.diag.final_objective) << " iterations "
                  << model.diag.iterations << " converged " << (model.diag.converged ? 1 : 0)
                  << "\n";
        mf = to_model_file(model);
      } else {
        throw ValidationError("unknown method: " + tr_method);
      }
      save_model(tr_model, mf);
      std::cout << "train: " << tr_method << " model on " << ds.n() << " rows -> " << tr_model
                << "\n";
    } else if (cmd_pr->parsed()) {
      const Dataset ds = load_dataset(pr_data);
      const ModelFile mf = load_model(pr_model);
      if (!mf.scaler.has_value()) throw DataError("model file has no scaler");
      CsvWriter out(pr_out);
      out.header({"u", "v", "t1", "prediction"});
      if (mf.kind == "dprr" || mf.kind == "pd") {
        const DprrModel model = dprr_from_model_file(mf);
        for (long i = 0; i < ds.n(); ++i) {
          const auto& m = ds.meta[static_cast<std::size_t>(i)];
          const Eigen::VectorXd x = standardize_row(ds.X.row(i).transpose(), *mf.scaler);
          out.row({m.u, m.v, std::to_string(m.t1),
                   format_g6(predict_delay(model, x, m.v))});
        }
      } else {
        const Eigen::VectorXd w = model_weights(mf);
        for (long i = 0; i < ds.n(); ++i) {
          const auto& m = ds.meta[static_cast<std::size_t>(i)];
          const Eigen::VectorXd x = standardize_row(ds.X.row(i).transpose(), *mf.scaler);
          const double raw = x.dot(w);
          out.row({m.u, m.v, std::to_string(m.t1), format_g6(raw < 0 ? 0.0 : raw)});
        }
      }
      std::cout << "predict: " << ds.n() << " rows -> " << pr_out << "\n";
    } else if (cmd_ev->parsed()) {
      const Dataset ds = load_dataset(ev_data);
      EvalConfig cfg;
      cfg.methods = parse_method_list(ev_methods);
      cfg.train_size = ev_train_size;
      cfg.ratios = parse_int_list(ev_ratios);
      cfg.trials = ev_trials;
      cfg.seed = ev_seed;
      cfg.k = ev_k;
      cfg.ridge_alpha = ev_alpha;
      cfg.lasso_lambda = ev_lambda;
      cfg.dprr.alpha = ev_dprr_alpha;
      cfg.dprr.beta = ev_dprr_beta;
      cfg.dprr.rho = ev_rho;
      cfg.dprr.max_iterations = ev_max_iter;
      cfg.dprr.group_pair_cap = ev_pair_cap;
      cfg.dprr.seed = ev_seed;
      cfg.tune_linear = ev_cv;
      cfg.threads = threads;
      const EvalReport report = run_benchmark(ds, cfg);
      const std::string dir = resolve_out_dir(ev_out_dir);
      write_trials_csv(join_path(dir, "trials.csv"), report);
      write_summary_csv(join_path(dir, "summary.csv"), report);
      std::cout << summary_table(report);
    } else if (cmd_sw->parsed()) {
      const Dataset ds = load_dataset(sw_data);
      DprrConfig cfg;
      cfg.alpha = sw_alpha;
      cfg.rho = sw_rho;
      cfg.max_iterations = sw_max_iter;
      cfg.group_pair_cap = sw_pair_cap;
      cfg.seed = sw_seed;
      cfg.threads = threads;
      const auto grid = sw_grid.empty() ? default_beta_grid() : parse_double_list(sw_grid);
      const auto rows = beta_sweep(ds, cfg, grid, sw_train_size, sw_ratio, sw_seed);
      CsvWriter out(sw_out);
      out.header({"beta", "mae", "rmse"});
      for (const auto& r : rows) {
        out.row({format_g6(r.beta), format_g6(r.mae), format_g6(r.rmse)});
      }
      std::cout << "sweep-beta: " << rows.size() << " rows -> " << sw_out << "\n";
    } else if (cmd_sy->parsed()) {
      if (sy_power_law_a > 0) {
        pl.exponent = sy_power_law_a;
        pl.seed = sy.seed;
        write_edge_stream(sy_out, plant_power_law_growth(pl));
        std::cout << "synth: power-law stream -> " << sy_out << "\n";
      } else {
        sy.anchor_weekday = parse_weekday(sy_anchor);
        if (!sy_wstar.empty()) {
          const auto vals = parse_double_list(sy_wstar);
          if (static_cast<int>(vals.size()) != kFeatureDim)
            throw ValidationError("--wstar needs exactly " + std::to_string(kFeatureDim) +
                                  " values");
          sy.true_w = Eigen::Map<const Eigen::VectorXd>(vals.data(),
                                                        static_cast<long>(vals.size()));
        }
        const SynthOutput out = generate(sy);
        write_edge_stream(sy_out, out.stream);
        if (!sy_truth.empty()) write_ground_truth(sy_truth, out.ground_truth);
        std::cout << "synth: " << out.stream.size() << " edges, " << out.ground_truth.size()
                  << " reciprocations -> " << sy_out << "\n";
      }
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
