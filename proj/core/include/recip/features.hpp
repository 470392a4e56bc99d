#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "recip/analytics.hpp"
#include "recip/calendar.hpp"
#include "recip/temporal_graph.hpp"

namespace recip {

// Feature layout, fixed order. Index 13 is the constant bias component.
inline constexpr int kNumBaseFeatures = 13;
inline constexpr int kFeatureDim = 14;

const std::array<std::string, kFeatureDim>& feature_names();

using FeatureVector = Eigen::Matrix<double, kFeatureDim, 1>;

struct FeatureConfig {
  int k = 4;                // window for "avg of previous k delays"
  double fill_value = 0.0;  // history features when the target has no history
  int anchor_weekday = kDefaultAnchorWeekday;
};

// Completed-delay history per target user, ordered by completion day.
// Queries see only delays with t2 strictly before the probe day, so a row's
// own delay (and anything completed on or after its initiation day) never
// leaks into its features.
class UserHistoryIndex {
 public:
  UserHistoryIndex() = default;
  explicit UserHistoryIndex(const std::vector<ReciprocalRelation>& relations);

  // Completion days must be appended in nondecreasing order per user.
  void add(NodeId v, Day t2, double delay);

  struct Stats {
    double avg_k = 0.0;
    double avg_all = 0.0;
    long count = 0;
  };
  Stats stats_before(NodeId v, Day t1, int k) const;

 private:
  struct Entry {
    Day t2;
    double delay;
    double cumsum;  // inclusive
  };
  std::unordered_map<NodeId, std::vector<Entry>> per_user_;
};

// All graph queries are evaluated at t1; history features use only delays
// completed strictly before t1. Unknown nodes raise NotFoundError.
FeatureVector extract_features(const DynamicDigraph& g, const UserHistoryIndex& history,
                               NodeId u, NodeId v, Day t1, const FeatureConfig& cfg);

struct Standardization {
  Eigen::VectorXd mean;  // size kFeatureDim; bias entry 0
  Eigen::VectorXd stdev;  // size kFeatureDim; bias entry 1
};

struct DatasetRowMeta {
  std::string u;
  std::string v;
  Day t1 = 0;
  int group = 0;  // rows sharing a target user share a group id
};

struct Dataset {
  Eigen::MatrixXd X;  // n x kFeatureDim
  Eigen::VectorXd y;  // n (empty when has_y is false)
  bool has_y = true;
  std::vector<DatasetRowMeta> meta;
  int num_groups = 0;
  std::optional<Standardization> scaler;  // set when the matrix is standardized

  long n() const { return X.rows(); }
  int d() const { return static_cast<int>(X.cols()); }
};

struct DatasetConfig {
  int k = 4;
  Day delay_cutoff = 50;
  bool standardize = true;
  int anchor_weekday = kDefaultAnchorWeekday;
  // When set, overrides the cold-start fill (otherwise the mean delay over
  // the kept rows is used).
  std::optional<double> fill_value;
};

// Drops relations with delay > delay_cutoff, builds the feature matrix and
// target vector, and (optionally) z-scores the non-bias columns in place.
// Throws DataError when nothing survives the filter.
Dataset build_dataset(const DynamicDigraph& g, const std::vector<ReciprocalRelation>& relations,
                      const DatasetConfig& cfg);

Standardization compute_standardization(const Eigen::MatrixXd& X);
void apply_standardization(Eigen::MatrixXd& X, const Standardization& s);
void invert_standardization(Eigen::MatrixXd& X, const Standardization& s);
Eigen::VectorXd standardize_row(const Eigen::VectorXd& x, const Standardization& s);

// CSV with header u,v,t1,group,f1..f14[,y]; numbers are written so a reload
// is bit-identical.
void save_dataset(const std::string& path, const Dataset& ds);
Dataset load_dataset(const std::string& path);

// Sidecar key-value file for standardization parameters.
void save_scaler(const std::string& path, const Standardization& s);
Standardization load_scaler(const std::string& path);

}  // namespace recip
