#include "recip/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "recip/csv.hpp"
#include "recip/rng.hpp"

namespace recip {

namespace {

std::string user_name(long i) { return "u" + std::to_string(i); }

// Largest-remainder rounding of users onto days with geometric growth.
std::vector<long> arrival_schedule(long users, long days, double growth) {
  if (days < 1) throw ValidationError("horizon must be >= 1 day");
  std::vector<double> weight(static_cast<std::size_t>(days));
  double total = 0.0;
  double w = 1.0;
  for (long t = 0; t < days; ++t) {
    weight[static_cast<std::size_t>(t)] = w;
    total += w;
    w *= growth;
  }
  std::vector<long> arrivals(static_cast<std::size_t>(days), 0);
  std::vector<std::pair<double, long>> remainders;
  long assigned = 0;
  for (long t = 0; t < days; ++t) {
    const double share = static_cast<double>(users) * weight[static_cast<std::size_t>(t)] / total;
    arrivals[static_cast<std::size_t>(t)] = static_cast<long>(std::floor(share));
    assigned += arrivals[static_cast<std::size_t>(t)];
    remainders.emplace_back(share - std::floor(share), t);
  }
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (long r = 0; r < users - assigned; ++r) {
    ++arrivals[static_cast<std::size_t>(remainders[static_cast<std::size_t>(r)].second)];
  }
  // Edges need two endpoints from day 0 on.
  while (arrivals[0] < 2) {
    for (long t = days - 1; t > 0; --t) {
      if (arrivals[static_cast<std::size_t>(t)] > 0) {
        --arrivals[static_cast<std::size_t>(t)];
        ++arrivals[0];
        break;
      }
    }
  }
  return arrivals;
}

std::uint64_t edge_key(long u, long v) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

}  // namespace

Eigen::VectorXd default_true_w() {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(kFeatureDim);
  w[2] = 0.010;    // longer source tenure, slower follow-back
  w[3] = 0.015;    // longer target tenure, slower follow-back
  w[4] = -2.0;     // weekend initiations complete faster
  w[5] = 0.25;     // recent history carries over
  w[8] = 0.004;    // busy targets respond slower
  w[10] = -0.002;  // active targets respond faster
  w[11] = -0.05;   // shared followees shorten the delay
  w[12] = -0.05;   // shared followers shorten the delay
  w[13] = 6.0;     // base delay
  return w;
}

SynthOutput generate(const SynthConfig& cfg) {
  if (cfg.users < 2) throw ValidationError("need at least 2 users");
  if (cfg.reciprocation_prob < 0.0 || cfg.reciprocation_prob > 1.0)
    throw ValidationError("reciprocation probability must be in [0,1]");
  if (cfg.user_offset_scale < 0.0 || cfg.noise_scale < 0.0)
    throw ValidationError("scales must be >= 0");
  Eigen::VectorXd true_w = cfg.true_w.size() == 0 ? default_true_w() : cfg.true_w;
  if (true_w.size() != kFeatureDim)
    throw ValidationError("true_w must have dimension " + std::to_string(kFeatureDim));
  const Day censor = cfg.censoring_horizon >= 0 ? cfg.censoring_horizon : cfg.horizon_days - 1;

  Rng rng(cfg.seed);
  const auto arrivals = arrival_schedule(cfg.users, cfg.horizon_days, cfg.growth);

  struct Pending {
    long u;  // initiator
    long v;  // follow-backer
    Day t1;
    long delay;
  };

  SynthOutput out;
  long present = 0;
  std::vector<double> offset;               // per user
  std::vector<long> pa_pool;                // targets repeated by indegree
  std::unordered_set<std::uint64_t> edges;  // ordered pairs already present
  std::map<Day, std::vector<Pending>> scheduled;
  UserHistoryIndex history;

  // Mirror of the interning the graph builder applies, so history entries
  // are keyed by the same node ids feature extraction will look up.
  std::unordered_map<long, NodeId> node_of_user;
  auto intern = [&node_of_user](long user) {
    node_of_user.emplace(user, static_cast<NodeId>(node_of_user.size()));
  };
  auto append_edge = [&](long src, long dst, Day day) {
    out.stream.push_back({user_name(src), user_name(dst), day});
    edges.insert(edge_key(src, dst));
    intern(src);
    intern(dst);
  };

  FeatureConfig fcfg;
  fcfg.k = cfg.k;
  fcfg.fill_value = cfg.fill_value;
  fcfg.anchor_weekday = cfg.anchor_weekday;

  for (Day t = 0; t < cfg.horizon_days; ++t) {
    for (long a = 0; a < arrivals[static_cast<std::size_t>(t)]; ++a) {
      offset.push_back(cfg.user_offset_scale == 0.0 ? 0.0
                                                    : rng.normal(0.0, cfg.user_offset_scale));
      pa_pool.push_back(present);  // one smoothing entry per user
      ++present;
    }
    if (present < 2) continue;

    // Follow-backs scheduled from earlier days land first. They are
    // materialized in scheduling order, which matches the completion order
    // the analysis reconstructs.
    if (auto due = scheduled.find(t); due != scheduled.end()) {
      for (const Pending& p : due->second) {
        append_edge(p.v, p.u, t);
        pa_pool.push_back(p.u);
        history.add(node_of_user.at(p.v), t, static_cast<double>(p.delay));
        out.ground_truth.push_back({user_name(p.u), user_name(p.v), p.t1, t, p.delay,
                                    offset[static_cast<std::size_t>(p.v)]});
      }
      scheduled.erase(due);
    }

    // New follows by preferential attachment on indegree.
    const long budget =
        static_cast<long>(std::llround(cfg.edge_rate * static_cast<double>(present)));
    std::vector<std::pair<long, long>> new_parasocial;
    for (long e = 0; e < budget; ++e) {
      for (int attempt = 0; attempt < 60; ++attempt) {
        const long src = static_cast<long>(rng.index(static_cast<std::size_t>(present)));
        long dst;
        if (rng.bernoulli(cfg.pa_uniform_mix) || pa_pool.empty()) {
          dst = static_cast<long>(rng.index(static_cast<std::size_t>(present)));
        } else {
          dst = pa_pool[rng.index(pa_pool.size())];
        }
        if (src == dst) continue;
        // No duplicate follows; no spontaneous follow-backs, so every
        // reciprocation comes from the planted mechanism.
        if (edges.count(edge_key(src, dst)) || edges.count(edge_key(dst, src))) continue;
        append_edge(src, dst, t);
        pa_pool.push_back(dst);
        new_parasocial.emplace_back(src, dst);
        break;
      }
    }
    if (new_parasocial.empty()) continue;

    // Features are evaluated on the graph as of end of day t, the same state
    // the analysis pipeline sees for day t.
    const DynamicDigraph g = ingest_edges(out.stream);
    std::vector<Pending> same_day;
    for (const auto& [src, dst] : new_parasocial) {
      if (!rng.bernoulli(cfg.reciprocation_prob)) continue;
      const FeatureVector x = extract_features(g, history, node_of_user.at(src),
                                               node_of_user.at(dst), t, fcfg);
      const double noise = cfg.noise_scale == 0.0 ? 0.0 : rng.normal(0.0, cfg.noise_scale);
      const double raw = x.dot(true_w) + offset[static_cast<std::size_t>(dst)] + noise;
      const long delay = static_cast<long>(std::llround(std::max(0.0, raw)));
      const Day t2 = t + delay;
      if (t2 > censor) continue;  // right-censored
      if (delay == 0) {
        same_day.push_back({src, dst, t, 0});
      } else {
        scheduled[t2].push_back({src, dst, t, delay});
      }
    }
    // Same-day follow-backs keep day t in the stream; their target's history
    // gains the completion after all of today's features were computed.
    for (const Pending& p : same_day) {
      append_edge(p.v, p.u, t);
      pa_pool.push_back(p.u);
      history.add(node_of_user.at(p.v), t, 0.0);
      out.ground_truth.push_back(
          {user_name(p.u), user_name(p.v), p.t1, t, 0, offset[static_cast<std::size_t>(p.v)]});
    }
  }
  return out;
}

void write_ground_truth(const std::string& path, const std::vector<GroundTruthRow>& rows) {
  CsvWriter out(path);
  out.header({"u", "v", "t1", "t2", "planted_delay", "offset_v"});
  for (const auto& r : rows) {
    out.row({r.u, r.v, std::to_string(r.t1), std::to_string(r.t2),
             std::to_string(r.planted_delay), format_exact(r.offset_v)});
  }
}

std::vector<GroundTruthRow> load_ground_truth(const std::string& path) {
  const CsvTable t = read_csv(path);
  if (t.header != std::vector<std::string>{"u", "v", "t1", "t2", "planted_delay", "offset_v"})
    throw ParseError("unexpected ground-truth header in " + path, 1);
  std::vector<GroundTruthRow> rows;
  rows.reserve(t.rows.size());
  long lineno = 1;
  for (const auto& cells : t.rows) {
    ++lineno;
    GroundTruthRow r;
    r.u = cells[0];
    r.v = cells[1];
    r.t1 = parse_long(cells[2], lineno);
    r.t2 = parse_long(cells[3], lineno);
    r.planted_delay = parse_long(cells[4], lineno);
    r.offset_v = parse_double(cells[5], lineno);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<TemporalEdge> plant_power_law_growth(const PowerLawGrowthConfig& cfg) {
  if (cfg.exponent < 1.0 || cfg.exponent > 2.0)
    throw ValidationError("densification exponent must be in [1, 2]");
  if (cfg.initial_nodes < 2) throw ValidationError("need at least 2 initial nodes");

  Rng rng(cfg.seed);
  std::vector<TemporalEdge> stream;
  std::unordered_set<std::uint64_t> used;
  long nodes = 0;
  long edges_total = 0;

  const auto target_edges = [&cfg](long n) {
    return static_cast<long>(
        std::llround(cfg.coefficient * std::pow(static_cast<double>(n), cfg.exponent)));
  };

  auto add_edge = [&](long u, long v, Day t) {
    stream.push_back({user_name(u), user_name(v), t});
    used.insert(edge_key(u, v));
    ++edges_total;
  };

  for (Day t = 0; t < cfg.days; ++t) {
    const long new_nodes = t == 0 ? cfg.initial_nodes : cfg.nodes_per_day;
    const long first_new = nodes;
    nodes += new_nodes;
    const long want = std::max(target_edges(nodes), edges_total);
    long budget = want - edges_total;
    if (budget < new_nodes)
      throw ValidationError("power-law growth: daily edge budget too small to join new nodes");

    // Every new node joins today through one edge.
    for (long v = first_new; v < nodes; ++v) {
      long partner = v;
      while (partner == v) {
        partner = (t == 0) ? (v == first_new ? v + 1
                                             : static_cast<long>(rng.index(
                                                   static_cast<std::size_t>(v))))
                           : static_cast<long>(rng.index(static_cast<std::size_t>(first_new)));
      }
      if (rng.bernoulli(0.5)) {
        add_edge(v, partner, t);
      } else {
        add_edge(partner, v, t);
      }
      --budget;
    }
    // Remaining budget: random distinct ordered pairs.
    while (budget > 0) {
      bool placed = false;
      for (int attempt = 0; attempt < 2000 && !placed; ++attempt) {
        const long u = static_cast<long>(rng.index(static_cast<std::size_t>(nodes)));
        const long v = static_cast<long>(rng.index(static_cast<std::size_t>(nodes)));
        if (u == v || used.count(edge_key(u, v))) continue;
        add_edge(u, v, t);
        placed = true;
      }
      if (!placed) break;  // graph saturated; the curve flattens harmlessly
      --budget;
    }
  }
  return stream;
}

}  // namespace recip
