#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "recip/features.hpp"
#include "recip/temporal_graph.hpp"

namespace recip {

// Seeded dynamic-network generator with planted delay structure. Users
// arrive over time, follow by preferential attachment on indegree, and
// reciprocate with a delay drawn from a planted linear model over the same
// features the analysis pipeline extracts.
struct SynthConfig {
  long users = 400;
  long horizon_days = 180;
  double growth = 1.01;          // arrival-rate growth factor per day
  double edge_rate = 0.15;       // new follows per present user per day
  double pa_uniform_mix = 0.3;   // probability of a uniform target instead of PA
  double reciprocation_prob = 0.65;
  Eigen::VectorXd true_w;        // planted coefficients, size kFeatureDim
  double user_offset_scale = 4.0;  // sigma_u
  double noise_scale = 1.5;        // sigma_eps
  long censoring_horizon = -1;     // default: horizon_days - 1
  int k = 4;                       // history window used when planting features
  double fill_value = 5.0;         // cold-start history fill used when planting
  int anchor_weekday = kDefaultAnchorWeekday;
  std::uint64_t seed = 1;
};

// A sensible default planted model: weekday effect, mild history carryover,
// structural discounts, positive base delay.
Eigen::VectorXd default_true_w();

struct GroundTruthRow {
  std::string u;
  std::string v;
  Day t1 = 0;
  Day t2 = 0;
  long planted_delay = 0;
  double offset_v = 0.0;
};

struct SynthOutput {
  std::vector<TemporalEdge> stream;
  std::vector<GroundTruthRow> ground_truth;
};

// Deterministic for a fixed config. Reciprocations whose completion lands
// past the censoring horizon are dropped (natural right censoring).
SynthOutput generate(const SynthConfig& cfg);

// ground-truth CSV: u,v,t1,t2,planted_delay,offset_v
void write_ground_truth(const std::string& path, const std::vector<GroundTruthRow>& rows);
std::vector<GroundTruthRow> load_ground_truth(const std::string& path);

struct PowerLawGrowthConfig {
  double exponent = 1.3367;  // densification exponent a in [1, 2]
  double coefficient = 1.0;  // c in e(t) = c * n(t)^a
  long days = 120;
  long initial_nodes = 30;
  long nodes_per_day = 12;
  std::uint64_t seed = 1;
};

// Edge stream whose cumulative edge count tracks c * n(t)^exponent, so a
// log-log fit of e(t) versus n(t) recovers the exponent.
std::vector<TemporalEdge> plant_power_law_growth(const PowerLawGrowthConfig& cfg);

}  // namespace recip
