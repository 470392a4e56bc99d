#include "recip/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "recip/calendar.hpp"

namespace recip {

std::vector<ReciprocalRelation> extract_reciprocal_relations(const DynamicDigraph& g) {
  std::vector<ReciprocalRelation> out;
  for (const auto& e : g.edges()) {
    const auto* rev = g.find_edge(e.dst, e.src);
    if (rev == nullptr) continue;  // parasocial link
    const bool initiates =
        e.day < rev->day || (e.day == rev->day && e.pos < rev->pos);
    if (!initiates) continue;
    out.push_back({e.src, e.dst, e.day, rev->day, rev->day - e.day, e.pos});
  }
  return out;
}

std::vector<GrowthRow> growth_series(const DynamicDigraph& g) {
  std::vector<GrowthRow> rows;
  if (g.max_day() < 0) return rows;
  auto relations = extract_reciprocal_relations(g);
  std::vector<Day> completions;
  completions.reserve(relations.size());
  for (const auto& r : relations) completions.push_back(r.t2);
  std::sort(completions.begin(), completions.end());

  rows.reserve(static_cast<std::size_t>(g.max_day()) + 1);
  for (Day t = 0; t <= g.max_day(); ++t) {
    const auto [n, e] = g.snapshot_counts(t);
    const long rec = static_cast<long>(
        std::upper_bound(completions.begin(), completions.end(), t) - completions.begin());
    rows.push_back({t, n, e, rec});
  }
  return rows;
}

std::vector<ReciprocityRateRow> reciprocity_rate_series(const DynamicDigraph& g) {
  std::vector<ReciprocityRateRow> rows;
  if (g.max_day() < 0) return rows;
  auto relations = extract_reciprocal_relations(g);
  // Both directed edges of a mutual pair count from the completion day on.
  std::vector<Day> completions;
  completions.reserve(relations.size());
  for (const auto& r : relations) completions.push_back(r.t2);
  std::sort(completions.begin(), completions.end());

  for (Day t = 0; t <= g.max_day(); ++t) {
    const auto [n, e] = g.snapshot_counts(t);
    (void)n;
    const long mutual_pairs = static_cast<long>(
        std::upper_bound(completions.begin(), completions.end(), t) - completions.begin());
    const double rate = e == 0 ? 0.0 : 2.0 * static_cast<double>(mutual_pairs) /
                                           static_cast<double>(e);
    rows.push_back({t, rate});
  }
  return rows;
}

DensificationFit densification_fit(const DynamicDigraph& g, Day t_lo, Day t_hi) {
  if (t_lo > t_hi) throw ValidationError("densification fit: empty day range");
  std::vector<double> xs, ys;
  for (Day t = std::max<Day>(t_lo, 0); t <= std::min(t_hi, g.max_day()); ++t) {
    const auto [n, e] = g.snapshot_counts(t);
    if (n >= 2 && e >= 1) {
      xs.push_back(std::log(static_cast<double>(n)));
      ys.push_back(std::log(static_cast<double>(e)));
    }
  }
  if (xs.size() < 3)
    throw DataError("densification fit needs at least 3 snapshots with n>=2, e>=1 (got " +
                    std::to_string(xs.size()) + ")");

  const double m = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = m * sxx - sx * sx;
  if (denom <= 0.0) throw DataError("densification fit: degenerate snapshots (constant n)");
  DensificationFit fit;
  fit.slope = (m * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / m;
  fit.t_min = t_lo;
  fit.t_max = t_hi;
  fit.points = static_cast<long>(xs.size());
  double rss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    rss += r * r;
  }
  fit.residual_rms = std::sqrt(rss / m);
  return fit;
}

DelayHistogram delay_histogram(const std::vector<ReciprocalRelation>& relations, Day cutoff) {
  if (cutoff < 1) throw ValidationError("histogram cutoff must be >= 1");
  DelayHistogram h;
  h.cutoff = cutoff;
  h.counts.assign(static_cast<std::size_t>(cutoff) + 1, 0);
  for (const auto& r : relations) {
    if (r.delay > cutoff) {
      ++h.overflow;
    } else {
      ++h.counts[static_cast<std::size_t>(r.delay)];
    }
    ++h.total;
  }
  return h;
}

std::vector<JoinTimeBucketRow> avg_delay_by_join_time(
    const std::vector<ReciprocalRelation>& relations, const DynamicDigraph& g, Role role,
    Day bucket_width) {
  if (bucket_width < 1) throw ValidationError("bucket width must be >= 1");
  std::map<Day, std::pair<double, long>> buckets;  // start -> (sum, count)
  for (const auto& r : relations) {
    const NodeId user = role == Role::kSource ? r.u : r.v;
    const Day join = g.join_day(user);
    const Day start = (join / bucket_width) * bucket_width;
    auto& [sum, count] = buckets[start];
    sum += static_cast<double>(r.delay);
    ++count;
  }
  std::vector<JoinTimeBucketRow> rows;
  rows.reserve(buckets.size());
  for (const auto& [start, agg] : buckets) {
    rows.push_back({start, agg.first / static_cast<double>(agg.second), agg.second});
  }
  return rows;
}

WeeklyPatterns weekly_patterns(const std::vector<ReciprocalRelation>& relations,
                               int anchor_weekday) {
  WeeklyPatterns p;
  std::array<double, 7> sums{};
  for (const auto& r : relations) {
    const int wi = day_of_week(r.t1, anchor_weekday);
    sums[static_cast<std::size_t>(wi)] += static_cast<double>(r.delay);
    ++p.initiation_counts[static_cast<std::size_t>(wi)];
    const int wc = day_of_week(r.t2, anchor_weekday);
    ++p.completion_counts_by_weekday[static_cast<std::size_t>(wc)];
  }
  for (std::size_t w = 0; w < 7; ++w) {
    p.avg_delay_by_initiation_weekday[w] =
        p.initiation_counts[w] == 0 ? 0.0 : sums[w] / static_cast<double>(p.initiation_counts[w]);
  }
  return p;
}

std::vector<PkErrorRow> sequential_pk_error(const std::vector<ReciprocalRelation>& relations,
                                            const std::vector<int>& k_values, Day delay_cutoff) {
  if (delay_cutoff <= 0) throw ValidationError("delay cutoff must be positive");
  // Per-target sequences in completion order (ties by initiating position).
  std::unordered_map<NodeId, std::vector<const ReciprocalRelation*>> by_target;
  for (const auto& r : relations) {
    if (r.delay <= delay_cutoff) by_target[r.v].push_back(&r);
  }
  std::vector<std::pair<NodeId, std::vector<double>>> sequences;
  sequences.reserve(by_target.size());
  for (auto& [v, list] : by_target) {
    std::sort(list.begin(), list.end(),
              [](const ReciprocalRelation* a, const ReciprocalRelation* b) {
                if (a->t2 != b->t2) return a->t2 < b->t2;
                return a->init_pos < b->init_pos;
              });
    std::vector<double> delays;
    delays.reserve(list.size());
    for (const auto* r : list) delays.push_back(static_cast<double>(r->delay));
    sequences.emplace_back(v, std::move(delays));
  }
  // Fixed summation order regardless of hash-map layout.
  std::sort(sequences.begin(), sequences.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<PkErrorRow> rows;
  for (int k : k_values) {
    if (k < 1) throw ValidationError("k must be >= 1");
    double abs_sum = 0, sq_sum = 0;
    long points = 0;
    for (const auto& [v, delays] : sequences) {
      (void)v;
      if (delays.size() <= static_cast<std::size_t>(k)) continue;
      double window = 0;
      for (int j = 0; j < k; ++j) window += delays[static_cast<std::size_t>(j)];
      for (std::size_t i = static_cast<std::size_t>(k); i < delays.size(); ++i) {
        const double pred = window / k;
        const double err = delays[i] - pred;
        abs_sum += std::abs(err);
        sq_sum += err * err;
        ++points;
        window += delays[i] - delays[i - static_cast<std::size_t>(k)];
      }
    }
    PkErrorRow row;
    row.k = k;
    row.points = points;
    row.mae = points == 0 ? 0.0 : abs_sum / static_cast<double>(points);
    row.rmse = points == 0 ? 0.0 : std::sqrt(sq_sum / static_cast<double>(points));
    rows.push_back(row);
  }
  return rows;
}

std::vector<DegreeBucketRow> avg_delay_by_degree_bucket(
    const std::vector<ReciprocalRelation>& relations, const DynamicDigraph& g, DegreeKind kind,
    Role role, long low, long high) {
  if (low >= high) throw ValidationError("degree thresholds must satisfy low < high");
  std::array<double, 3> sums{};
  std::array<long, 3> counts{};
  for (const auto& r : relations) {
    const NodeId user = role == Role::kSource ? r.u : r.v;
    const long deg = kind == DegreeKind::kIn ? g.indegree_at(user, r.t1)
                                             : g.outdegree_at(user, r.t1);
    const std::size_t b = deg < low ? 0 : (deg > high ? 2 : 1);
    sums[b] += static_cast<double>(r.delay);
    ++counts[b];
  }
  static const std::array<std::string, 3> names = {"low", "normal", "high"};
  std::vector<DegreeBucketRow> rows;
  for (std::size_t b = 0; b < 3; ++b) {
    rows.push_back({names[b], counts[b] == 0 ? 0.0 : sums[b] / static_cast<double>(counts[b]),
                    counts[b]});
  }
  return rows;
}

std::vector<CommonNeighborRangeRow> avg_delay_by_common_neighbors(
    const std::vector<ReciprocalRelation>& relations, const DynamicDigraph& g,
    NeighborKind kind) {
  static constexpr std::array<long, 6> kLo = {0, 20, 40, 60, 80, 100};
  std::array<double, 6> sums{};
  std::array<long, 6> counts{};
  for (const auto& r : relations) {
    const long c = kind == NeighborKind::kFollowees
                       ? g.common_followees_at(r.u, r.v, r.t1)
                       : g.common_followers_at(r.u, r.v, r.t1);
    std::size_t b = 5;
    for (std::size_t i = 0; i + 1 < kLo.size(); ++i) {
      if (c < kLo[i + 1]) {
        b = i;
        break;
      }
    }
    sums[b] += static_cast<double>(r.delay);
    ++counts[b];
  }
  std::vector<CommonNeighborRangeRow> rows;
  for (std::size_t b = 0; b < 6; ++b) {
    rows.push_back({kLo[b], b + 1 < 6 ? kLo[b + 1] : -1,
                    counts[b] == 0 ? 0.0 : sums[b] / static_cast<double>(counts[b]), counts[b]});
  }
  return rows;
}

}  // namespace recip
