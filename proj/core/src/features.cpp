#include "recip/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "recip/csv.hpp"

namespace recip {

const std::array<std::string, kFeatureDim>& feature_names() {
  static const std::array<std::string, kFeatureDim> names = {
      "src_join_day",        "dst_join_day",        "src_tenure_at_init",
      "dst_tenure_at_init",  "init_on_weekend",     "dst_avg_prev_k_delays",
      "dst_avg_all_delays",  "src_indegree",        "dst_indegree",
      "src_outdegree",       "dst_outdegree",       "common_followees",
      "common_followers",    "bias"};
  return names;
}

UserHistoryIndex::UserHistoryIndex(const std::vector<ReciprocalRelation>& relations) {
  std::vector<const ReciprocalRelation*> order;
  order.reserve(relations.size());
  for (const auto& r : relations) order.push_back(&r);
  std::sort(order.begin(), order.end(),
            [](const ReciprocalRelation* a, const ReciprocalRelation* b) {
              if (a->t2 != b->t2) return a->t2 < b->t2;
              return a->init_pos < b->init_pos;
            });
  for (const auto* r : order) add(r->v, r->t2, static_cast<double>(r->delay));
}

void UserHistoryIndex::add(NodeId v, Day t2, double delay) {
  auto& entries = per_user_[v];
  if (!entries.empty() && entries.back().t2 > t2)
    throw ValidationError("history entries must be appended in completion order");
  const double prev = entries.empty() ? 0.0 : entries.back().cumsum;
  entries.push_back({t2, delay, prev + delay});
}

UserHistoryIndex::Stats UserHistoryIndex::stats_before(NodeId v, Day t1, int k) const {
  if (k < 1) throw ValidationError("history window k must be >= 1");
  Stats s;
  auto it = per_user_.find(v);
  if (it == per_user_.end()) return s;
  const auto& entries = it->second;
  // First entry with t2 >= t1; everything before is usable history.
  const auto upper = std::lower_bound(entries.begin(), entries.end(), t1,
                                      [](const Entry& e, Day d) { return e.t2 < d; });
  const long m = static_cast<long>(upper - entries.begin());
  if (m == 0) return s;
  s.count = m;
  const double total = entries[static_cast<std::size_t>(m - 1)].cumsum;
  s.avg_all = total / static_cast<double>(m);
  const long kk = std::min<long>(k, m);
  const double before_window =
      m - kk == 0 ? 0.0 : entries[static_cast<std::size_t>(m - kk - 1)].cumsum;
  s.avg_k = (total - before_window) / static_cast<double>(kk);
  return s;
}

FeatureVector extract_features(const DynamicDigraph& g, const UserHistoryIndex& history,
                               NodeId u, NodeId v, Day t1, const FeatureConfig& cfg) {
  const Day t_u = g.join_day(u);
  const Day t_v = g.join_day(v);
  if (t1 < t_u || t1 < t_v)
    throw ValidationError("relation initiated before a participant joined");

  const auto h = history.stats_before(v, t1, cfg.k);
  FeatureVector x;
  x[0] = static_cast<double>(t_u);
  x[1] = static_cast<double>(t_v);
  x[2] = static_cast<double>(t1 - t_u);
  x[3] = static_cast<double>(t1 - t_v);
  x[4] = is_weekend(t1, cfg.anchor_weekday) ? 1.0 : 0.0;
  x[5] = h.count == 0 ? cfg.fill_value : h.avg_k;
  x[6] = h.count == 0 ? cfg.fill_value : h.avg_all;
  x[7] = static_cast<double>(g.indegree_at(u, t1));
  x[8] = static_cast<double>(g.indegree_at(v, t1));
  x[9] = static_cast<double>(g.outdegree_at(u, t1));
  x[10] = static_cast<double>(g.outdegree_at(v, t1));
  x[11] = static_cast<double>(g.common_followees_at(u, v, t1));
  x[12] = static_cast<double>(g.common_followers_at(u, v, t1));
  x[13] = 1.0;
  return x;
}

Dataset build_dataset(const DynamicDigraph& g, const std::vector<ReciprocalRelation>& relations,
                      const DatasetConfig& cfg) {
  std::vector<const ReciprocalRelation*> kept;
  kept.reserve(relations.size());
  for (const auto& r : relations) {
    if (r.delay <= cfg.delay_cutoff) kept.push_back(&r);
  }
  if (kept.empty()) throw DataError("no relations left after the delay cutoff");

  double fill = 0.0;
  if (cfg.fill_value.has_value()) {
    fill = *cfg.fill_value;
  } else {
    double sum = 0.0;
    for (const auto* r : kept) sum += static_cast<double>(r->delay);
    fill = sum / static_cast<double>(kept.size());
  }

  const UserHistoryIndex history(
      [&] {
        std::vector<ReciprocalRelation> filtered;
        filtered.reserve(kept.size());
        for (const auto* r : kept) filtered.push_back(*r);
        return filtered;
      }());

  FeatureConfig fcfg;
  fcfg.k = cfg.k;
  fcfg.fill_value = fill;
  fcfg.anchor_weekday = cfg.anchor_weekday;

  Dataset ds;
  const long n = static_cast<long>(kept.size());
  ds.X.resize(n, kFeatureDim);
  ds.y.resize(n);
  ds.has_y = true;
  ds.meta.resize(static_cast<std::size_t>(n));

  std::unordered_map<NodeId, int> group_of;
  for (long i = 0; i < n; ++i) {
    const ReciprocalRelation& r = *kept[static_cast<std::size_t>(i)];
    ds.X.row(i) = extract_features(g, history, r.u, r.v, r.t1, fcfg).transpose();
    ds.y[i] = static_cast<double>(r.delay);
    auto [it, inserted] = group_of.emplace(r.v, static_cast<int>(group_of.size()));
    (void)inserted;
    auto& meta = ds.meta[static_cast<std::size_t>(i)];
    meta.u = g.node_name(r.u);
    meta.v = g.node_name(r.v);
    meta.t1 = r.t1;
    meta.group = it->second;
  }
  ds.num_groups = static_cast<int>(group_of.size());

  if (cfg.standardize) {
    ds.scaler = compute_standardization(ds.X);
    apply_standardization(ds.X, *ds.scaler);
  }
  return ds;
}

Standardization compute_standardization(const Eigen::MatrixXd& X) {
  const long n = X.rows();
  if (n == 0) throw DataError("cannot standardize an empty matrix");
  Standardization s;
  s.mean.resize(X.cols());
  s.stdev.resize(X.cols());
  for (long j = 0; j < X.cols(); ++j) {
    const double mean = X.col(j).mean();
    const double var = (X.col(j).array() - mean).square().sum() / static_cast<double>(n);
    const double sd = std::sqrt(var);
    if (sd > 0.0) {
      s.mean[j] = mean;
      s.stdev[j] = sd;
    } else {
      // Constant columns (the bias in particular) pass through untouched.
      s.mean[j] = 0.0;
      s.stdev[j] = 1.0;
    }
  }
  return s;
}

void apply_standardization(Eigen::MatrixXd& X, const Standardization& s) {
  if (X.cols() != s.mean.size()) throw DimensionError("standardization dimension mismatch");
  for (long j = 0; j < X.cols(); ++j) {
    X.col(j) = (X.col(j).array() - s.mean[j]) / s.stdev[j];
  }
}

void invert_standardization(Eigen::MatrixXd& X, const Standardization& s) {
  if (X.cols() != s.mean.size()) throw DimensionError("standardization dimension mismatch");
  for (long j = 0; j < X.cols(); ++j) {
    X.col(j) = X.col(j).array() * s.stdev[j] + s.mean[j];
  }
}

Eigen::VectorXd standardize_row(const Eigen::VectorXd& x, const Standardization& s) {
  if (x.size() != s.mean.size()) throw DimensionError("standardization dimension mismatch");
  return ((x - s.mean).array() / s.stdev.array()).matrix();
}

void save_dataset(const std::string& path, const Dataset& ds) {
  CsvWriter out(path);
  std::vector<std::string> header = {"u", "v", "t1", "group"};
  for (int j = 1; j <= kFeatureDim; ++j) header.push_back("f" + std::to_string(j));
  if (ds.has_y) header.push_back("y");
  out.header(header);
  for (long i = 0; i < ds.n(); ++i) {
    const auto& m = ds.meta[static_cast<std::size_t>(i)];
    std::vector<std::string> row = {m.u, m.v, std::to_string(m.t1), std::to_string(m.group)};
    for (int j = 0; j < kFeatureDim; ++j) row.push_back(format_exact(ds.X(i, j)));
    if (ds.has_y) row.push_back(format_exact(ds.y[i]));
    out.row(row);
  }
}

Dataset load_dataset(const std::string& path) {
  const CsvTable t = read_csv(path);
  const std::size_t base = 4;
  bool has_y = false;
  if (t.header.size() == base + kFeatureDim + 1 && t.header.back() == "y") {
    has_y = true;
  } else if (t.header.size() != base + kFeatureDim) {
    throw ParseError("unexpected dataset header in " + path);
  }
  Dataset ds;
  ds.has_y = has_y;
  const long n = static_cast<long>(t.rows.size());
  ds.X.resize(n, kFeatureDim);
  ds.y.resize(has_y ? n : 0);
  ds.meta.resize(static_cast<std::size_t>(n));
  std::unordered_map<std::string, int> group_by_target;
  int max_group = -1;
  for (long i = 0; i < n; ++i) {
    const auto& cells = t.rows[static_cast<std::size_t>(i)];
    auto& m = ds.meta[static_cast<std::size_t>(i)];
    m.u = cells[0];
    m.v = cells[1];
    m.t1 = parse_long(cells[2], i + 2);
    m.group = static_cast<int>(parse_long(cells[3], i + 2));
    auto [it, inserted] = group_by_target.emplace(m.v, m.group);
    if (!inserted && it->second != m.group)
      throw ParseError("inconsistent group id for target " + m.v, i + 2);
    max_group = std::max(max_group, m.group);
    for (int j = 0; j < kFeatureDim; ++j)
      ds.X(i, j) = parse_double(cells[base + static_cast<std::size_t>(j)], i + 2);
    if (has_y) ds.y[i] = parse_double(cells.back(), i + 2);
  }
  ds.num_groups = max_group + 1;
  return ds;
}

void save_scaler(const std::string& path, const Standardization& s) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "recip-scaler 1\n";
  out << "d " << s.mean.size() << "\n";
  out << "mean";
  for (long j = 0; j < s.mean.size(); ++j) out << ' ' << format_exact(s.mean[j]);
  out << "\nstdev";
  for (long j = 0; j < s.stdev.size(); ++j) out << ' ' << format_exact(s.stdev[j]);
  out << "\n";
}

Standardization load_scaler(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "recip-scaler 1")
    throw ParseError("bad scaler header in " + path, 1);
  if (!std::getline(in, line)) throw ParseError("truncated scaler file", 2);
  auto fields = split(line, ' ');
  if (fields.size() != 2 || fields[0] != "d") throw ParseError("expected 'd <dim>'", 2);
  const long d = parse_long(fields[1], 2);
  Standardization s;
  s.mean.resize(d);
  s.stdev.resize(d);
  for (const std::string key : {"mean", "stdev"}) {
    if (!std::getline(in, line)) throw ParseError("truncated scaler file", 3);
    fields = split(line, ' ');
    if (fields.size() != static_cast<std::size_t>(d) + 1 || fields[0] != key)
      throw ParseError("expected '" + key + "' row with " + std::to_string(d) + " values", 3);
    for (long j = 0; j < d; ++j) {
      const double v = parse_double(fields[static_cast<std::size_t>(j) + 1]);
      (key == "mean" ? s.mean : s.stdev)[j] = v;
    }
  }
  return s;
}

}  // namespace recip
