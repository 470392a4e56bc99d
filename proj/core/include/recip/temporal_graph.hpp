#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "recip/error.hpp"

namespace recip {

using NodeId = std::int32_t;
using Day = std::int64_t;

// One timestamped follow event. Time granularity is one day.
struct TemporalEdge {
  std::string src;
  std::string dst;
  Day day = 0;
};

// Directed graph built from a stream of follow events. Immutable after
// ingest; every query is read-only and safe for concurrent use.
//
// Each ordered pair (src,dst) is stored once with the earliest day it was
// seen. The stream position of that earliest occurrence is retained; it only
// matters for breaking same-day ties when reciprocal relations are extracted.
class DynamicDigraph {
 public:
  struct Edge {
    NodeId src;
    NodeId dst;
    Day day;
    std::uint64_t pos;  // position in the ingest stream
  };

  std::size_t node_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  Day max_day() const { return max_day_; }

  bool has_node(const std::string& name) const { return ids_.count(name) > 0; }
  NodeId node_id(const std::string& name) const;
  const std::string& node_name(NodeId v) const;

  Day join_day(NodeId v) const;

  // Number of edges (·,v) with day <= t.
  long indegree_at(NodeId v, Day t) const;
  // Number of edges (v,·) with day <= t.
  long outdegree_at(NodeId v, Day t) const;
  // |{w : edge(u,w).day <= t and edge(v,w).day <= t}|
  long common_followees_at(NodeId u, NodeId v, Day t) const;
  // Same over in-neighbors.
  long common_followers_at(NodeId u, NodeId v, Day t) const;
  // (#nodes with join_day <= t, #edges with day <= t)
  std::pair<long, long> snapshot_counts(Day t) const;

  bool has_edge(NodeId u, NodeId v) const;
  // nullptr when the pair is absent.
  const Edge* find_edge(NodeId u, NodeId v) const;

  // All edges in stream order.
  const std::vector<Edge>& edges() const { return edges_; }

 private:
  friend DynamicDigraph ingest_edges(const std::vector<TemporalEdge>& stream);

  void check_node(NodeId v) const;
  void finalize();

  std::unordered_map<std::string, NodeId> ids_;
  std::vector<std::string> names_;
  std::unordered_map<std::uint64_t, std::uint32_t> edge_index_;  // (u,v) -> edges_ slot
  std::vector<Edge> edges_;                                      // sorted by pos
  std::vector<Day> join_days_;                                   // per node
  std::vector<std::vector<Day>> in_days_;                        // per node, sorted
  std::vector<std::vector<Day>> out_days_;                       // per node, sorted
  std::vector<std::vector<std::pair<NodeId, Day>>> in_nbrs_;     // sorted by neighbor id
  std::vector<std::vector<std::pair<NodeId, Day>>> out_nbrs_;    // sorted by neighbor id
  std::vector<Day> sorted_join_days_;
  std::vector<Day> sorted_edge_days_;
  Day max_day_ = -1;
};

// Builds the graph. Rejects self-follows and negative days with
// ValidationError. Duplicate (src,dst) pairs keep the earliest day.
DynamicDigraph ingest_edges(const std::vector<TemporalEdge>& stream);

// Edge-list file: UTF-8, one `src<TAB>dst<TAB>day` per line, `#` comments
// ignored. Node identifiers are opaque non-empty strings without whitespace.
std::vector<TemporalEdge> load_edge_stream(const std::string& path);
DynamicDigraph load_edge_list(const std::string& path);
void write_edge_stream(const std::string& path, const std::vector<TemporalEdge>& stream);

}  // namespace recip
