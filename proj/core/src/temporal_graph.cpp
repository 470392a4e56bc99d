#include "recip/temporal_graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "recip/csv.hpp"

namespace recip {

namespace {

std::uint64_t pair_key(NodeId u, NodeId v) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

long count_upto(const std::vector<Day>& sorted_days, Day t) {
  return static_cast<long>(
      std::upper_bound(sorted_days.begin(), sorted_days.end(), t) - sorted_days.begin());
}

}  // namespace

NodeId DynamicDigraph::node_id(const std::string& name) const {
  auto it = ids_.find(name);
  if (it == ids_.end()) throw NotFoundError("unknown node: " + name);
  return it->second;
}

const std::string& DynamicDigraph::node_name(NodeId v) const {
  check_node(v);
  return names_[static_cast<std::size_t>(v)];
}

void DynamicDigraph::check_node(NodeId v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= names_.size())
    throw NotFoundError("unknown node id: " + std::to_string(v));
}

Day DynamicDigraph::join_day(NodeId v) const {
  check_node(v);
  return join_days_[static_cast<std::size_t>(v)];
}

long DynamicDigraph::indegree_at(NodeId v, Day t) const {
  check_node(v);
  return count_upto(in_days_[static_cast<std::size_t>(v)], t);
}

long DynamicDigraph::outdegree_at(NodeId v, Day t) const {
  check_node(v);
  return count_upto(out_days_[static_cast<std::size_t>(v)], t);
}

namespace {

// Two-pointer intersection over neighbor-sorted adjacency, counting
// neighbors reached by both endpoints no later than t.
long common_at(const std::vector<std::pair<NodeId, Day>>& a,
               const std::vector<std::pair<NodeId, Day>>& b, Day t) {
  long count = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) {
      ++i;
    } else if (a[i].first > b[j].first) {
      ++j;
    } else {
      if (a[i].second <= t && b[j].second <= t) ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

}  // namespace

long DynamicDigraph::common_followees_at(NodeId u, NodeId v, Day t) const {
  check_node(u);
  check_node(v);
  return common_at(out_nbrs_[static_cast<std::size_t>(u)],
                   out_nbrs_[static_cast<std::size_t>(v)], t);
}

long DynamicDigraph::common_followers_at(NodeId u, NodeId v, Day t) const {
  check_node(u);
  check_node(v);
  return common_at(in_nbrs_[static_cast<std::size_t>(u)],
                   in_nbrs_[static_cast<std::size_t>(v)], t);
}

std::pair<long, long> DynamicDigraph::snapshot_counts(Day t) const {
  return {count_upto(sorted_join_days_, t), count_upto(sorted_edge_days_, t)};
}

bool DynamicDigraph::has_edge(NodeId u, NodeId v) const {
  return edge_index_.count(pair_key(u, v)) > 0;
}

const DynamicDigraph::Edge* DynamicDigraph::find_edge(NodeId u, NodeId v) const {
  auto it = edge_index_.find(pair_key(u, v));
  if (it == edge_index_.end()) return nullptr;
  return &edges_[it->second];
}

void DynamicDigraph::finalize() {
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return a.pos < b.pos; });
  edge_index_.clear();
  edge_index_.reserve(edges_.size());

  const std::size_t n = names_.size();
  join_days_.assign(n, -1);
  in_days_.assign(n, {});
  out_days_.assign(n, {});
  in_nbrs_.assign(n, {});
  out_nbrs_.assign(n, {});
  sorted_edge_days_.clear();
  max_day_ = -1;

  for (std::uint32_t slot = 0; slot < edges_.size(); ++slot) {
    const Edge& e = edges_[slot];
    edge_index_[pair_key(e.src, e.dst)] = slot;
    const auto s = static_cast<std::size_t>(e.src);
    const auto d = static_cast<std::size_t>(e.dst);
    out_days_[s].push_back(e.day);
    in_days_[d].push_back(e.day);
    out_nbrs_[s].emplace_back(e.dst, e.day);
    in_nbrs_[d].emplace_back(e.src, e.day);
    for (std::size_t v : {s, d}) {
      if (join_days_[v] < 0 || e.day < join_days_[v]) join_days_[v] = e.day;
    }
    sorted_edge_days_.push_back(e.day);
    if (e.day > max_day_) max_day_ = e.day;
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(in_days_[v].begin(), in_days_[v].end());
    std::sort(out_days_[v].begin(), out_days_[v].end());
    std::sort(in_nbrs_[v].begin(), in_nbrs_[v].end());
    std::sort(out_nbrs_[v].begin(), out_nbrs_[v].end());
  }
  sorted_join_days_ = join_days_;
  std::sort(sorted_join_days_.begin(), sorted_join_days_.end());
  std::sort(sorted_edge_days_.begin(), sorted_edge_days_.end());
}

DynamicDigraph ingest_edges(const std::vector<TemporalEdge>& stream) {
  DynamicDigraph g;
  std::unordered_map<std::uint64_t, std::size_t> first_slot;
  first_slot.reserve(stream.size());

  auto intern = [&g](const std::string& name) -> NodeId {
    auto it = g.ids_.find(name);
    if (it != g.ids_.end()) return it->second;
    const NodeId id = static_cast<NodeId>(g.names_.size());
    g.ids_.emplace(name, id);
    g.names_.push_back(name);
    return id;
  };

  for (std::uint64_t pos = 0; pos < stream.size(); ++pos) {
    const TemporalEdge& e = stream[pos];
    if (e.day < 0)
      throw ValidationError("negative day " + std::to_string(e.day) + " for edge " + e.src +
                            " -> " + e.dst);
    if (e.src == e.dst) throw ValidationError("self-follow rejected: " + e.src);
    if (e.src.empty() || e.dst.empty()) throw ValidationError("empty node identifier");
    const NodeId s = intern(e.src);
    const NodeId d = intern(e.dst);
    const std::uint64_t key = pair_key(s, d);
    auto it = first_slot.find(key);
    if (it == first_slot.end()) {
      first_slot.emplace(key, g.edges_.size());
      g.edges_.push_back({s, d, e.day, pos});
    } else {
      DynamicDigraph::Edge& prev = g.edges_[it->second];
      if (e.day < prev.day) {
        prev.day = e.day;
        prev.pos = pos;
      }
      // same or later day: earliest occurrence stands
    }
  }
  g.finalize();
  return g;
}

std::vector<TemporalEdge> load_edge_stream(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open edge list: " + path);
  std::vector<TemporalEdge> stream;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 3)
      throw ParseError("expected src<TAB>dst<TAB>day, got " + std::to_string(fields.size()) +
                           " fields",
                       lineno);
    for (int i = 0; i < 2; ++i) {
      if (fields[static_cast<std::size_t>(i)].empty())
        throw ParseError("empty node identifier", lineno);
      for (char c : fields[static_cast<std::size_t>(i)]) {
        if (std::isspace(static_cast<unsigned char>(c)))
          throw ParseError("node identifier contains whitespace", lineno);
      }
    }
    TemporalEdge e;
    e.src = fields[0];
    e.dst = fields[1];
    e.day = parse_long(fields[2], lineno);
    if (e.day < 0) throw ValidationError("negative day at line " + std::to_string(lineno));
    if (e.src == e.dst)
      throw ValidationError("self-follow rejected at line " + std::to_string(lineno));
    stream.push_back(std::move(e));
  }
  return stream;
}

DynamicDigraph load_edge_list(const std::string& path) {
  return ingest_edges(load_edge_stream(path));
}

void write_edge_stream(const std::string& path, const std::vector<TemporalEdge>& stream) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  for (const TemporalEdge& e : stream) {
    out << e.src << '\t' << e.dst << '\t' << e.day << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace recip
