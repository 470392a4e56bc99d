#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "recip/temporal_graph.hpp"

namespace recip {

// <u, v, t1, t2, t2-t1>: u followed v on day t1, v followed back on day t2.
struct ReciprocalRelation {
  NodeId u;
  NodeId v;
  Day t1;
  Day t2;
  Day delay;
  std::uint64_t init_pos;  // stream position of the initiating edge
};

// One relation per unordered mutual pair. The endpoint whose edge carries the
// smaller day is the initiator; same-day ties go to the smaller stream
// position. Output is ordered by initiating-edge stream position.
std::vector<ReciprocalRelation> extract_reciprocal_relations(const DynamicDigraph& g);

struct GrowthRow {
  Day t;
  long nodes;
  long edges;
  long reciprocal;  // relations completed by t
};
std::vector<GrowthRow> growth_series(const DynamicDigraph& g);

struct ReciprocityRateRow {
  Day t;
  double rate;  // directed edges whose reverse exists at t, over e(t)
};
std::vector<ReciprocityRateRow> reciprocity_rate_series(const DynamicDigraph& g);

struct DensificationFit {
  double slope = 0.0;
  double intercept = 0.0;  // in log space
  Day t_min = 0;
  Day t_max = 0;
  double residual_rms = 0.0;
  long points = 0;
};

// Least squares on (log n(t), log e(t)), one point per day in [t_lo, t_hi]
// with n(t) >= 2 and e(t) >= 1. Throws DataError with fewer than 3 points.
DensificationFit densification_fit(const DynamicDigraph& g, Day t_lo, Day t_hi);

struct DelayHistogram {
  std::vector<long> counts;  // index = delay in days, 0..cutoff
  long overflow = 0;         // delays > cutoff
  long total = 0;
  Day cutoff = 0;
};
DelayHistogram delay_histogram(const std::vector<ReciprocalRelation>& relations, Day cutoff);

enum class Role { kSource, kTarget };
enum class DegreeKind { kIn, kOut };
enum class NeighborKind { kFollowees, kFollowers };

inline const char* role_name(Role r) { return r == Role::kSource ? "source" : "target"; }
inline const char* degree_kind_name(DegreeKind k) { return k == DegreeKind::kIn ? "in" : "out"; }
inline const char* neighbor_kind_name(NeighborKind k) {
  return k == NeighborKind::kFollowees ? "followees" : "followers";
}

struct JoinTimeBucketRow {
  Day bucket_start;  // [bucket_start, bucket_start + width)
  double mean_delay;
  long count;
};
// Buckets relations by the join day of the source (role=kSource) or target
// user. Empty buckets are omitted.
std::vector<JoinTimeBucketRow> avg_delay_by_join_time(
    const std::vector<ReciprocalRelation>& relations, const DynamicDigraph& g, Role role,
    Day bucket_width);

struct WeeklyPatterns {
  std::array<double, 7> avg_delay_by_initiation_weekday{};  // 0 when no data
  std::array<long, 7> initiation_counts{};
  std::array<long, 7> completion_counts_by_weekday{};
};
WeeklyPatterns weekly_patterns(const std::vector<ReciprocalRelation>& relations,
                               int anchor_weekday);

struct PkErrorRow {
  int k;
  double mae;
  double rmse;
  long points;
};
// Per target user, delays ordered by completion time; the i-th delay
// (i >= k) is predicted as the mean of the previous k. Relations with
// delay > delay_cutoff are dropped first.
std::vector<PkErrorRow> sequential_pk_error(const std::vector<ReciprocalRelation>& relations,
                                            const std::vector<int>& k_values, Day delay_cutoff);

struct DegreeBucketRow {
  std::string bucket;  // "low", "normal", "high"
  double mean_delay;
  long count;
};
// Degrees are evaluated at t1. degree < low -> "low"; degree > high ->
// "high"; everything else "normal" (both comparisons strict).
std::vector<DegreeBucketRow> avg_delay_by_degree_bucket(
    const std::vector<ReciprocalRelation>& relations, const DynamicDigraph& g, DegreeKind kind,
    Role role, long low = 10, long high = 2000);

struct CommonNeighborRangeRow {
  long lo;
  long hi;  // exclusive; -1 means unbounded
  double mean_delay;
  long count;
};
// Fixed ranges [0,20),[20,40),[40,60),[60,80),[80,100),[100,inf); counts
// evaluated at t1.
std::vector<CommonNeighborRangeRow> avg_delay_by_common_neighbors(
    const std::vector<ReciprocalRelation>& relations, const DynamicDigraph& g,
    NeighborKind kind);

}  // namespace recip
