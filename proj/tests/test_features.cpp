#include <doctest.h>

#include <cstdio>

#include "recip/csv.hpp"
#include "recip/features.hpp"
#include "test_support.hpp"

using namespace recip;
using recip::test::node;
using recip::test::random_stream;

namespace {

std::vector<TemporalEdge> history_fixture() {
  // Target v completes delays 2, 4, 6 (in that completion order) before a
  // probe relation initiated at day 40.
  return {
      {"a", "v", 0},  {"v", "a", 2},   // delay 2, done day 2
      {"b", "v", 6},  {"v", "b", 10},  // delay 4, done day 10
      {"c", "v", 14}, {"v", "c", 20},  // delay 6, done day 20
      {"u", "v", 40}, {"v", "u", 45},
  };
}

}  // namespace

TEST_CASE("history features average completed delays only") {
  const auto g = ingest_edges(history_fixture());
  const auto rels = extract_reciprocal_relations(g);
  const UserHistoryIndex hist(rels);
  const NodeId v = g.node_id("v");

  const auto s = hist.stats_before(v, 40, 2);
  CHECK(s.count == 3);
  CHECK(s.avg_k == doctest::Approx(5.0));   // last two: 4, 6
  CHECK(s.avg_all == doctest::Approx(4.0));  // all three

  // A completion on the probe day itself stays invisible.
  CHECK(hist.stats_before(v, 20, 2).count == 2);
  CHECK(hist.stats_before(v, 21, 2).count == 3);
  CHECK(hist.stats_before(v, 0, 4).count == 0);
  CHECK(hist.stats_before(g.node_id("a"), 40, 4).count == 0);
}

TEST_CASE("feature vector layout") {
  const auto g = ingest_edges(history_fixture());
  const auto rels = extract_reciprocal_relations(g);
  const UserHistoryIndex hist(rels);
  FeatureConfig cfg;
  cfg.k = 2;
  cfg.fill_value = 3.2;

  const NodeId u = g.node_id("u");
  const NodeId v = g.node_id("v");
  const FeatureVector x = extract_features(g, hist, u, v, 40, cfg);
  CHECK(x[0] == 40);  // u joined with the probe edge
  CHECK(x[1] == 0);
  CHECK(x[2] == 0);   // initiated on u's join day
  CHECK(x[3] == 40);
  CHECK(x[4] == (is_weekend(40, cfg.anchor_weekday) ? 1.0 : 0.0));
  CHECK(x[5] == doctest::Approx(5.0));
  CHECK(x[6] == doctest::Approx(4.0));
  CHECK(x[7] == 0);                       // nobody follows u yet
  CHECK(x[8] == g.indegree_at(v, 40));
  CHECK(x[9] == 1);
  CHECK(x[13] == 1.0);

  // Cold start: no completed history for target a.
  const FeatureVector xa = extract_features(g, hist, v, g.node_id("a"), 40, cfg);
  CHECK(xa[5] == doctest::Approx(3.2));
  CHECK(xa[6] == doctest::Approx(3.2));
}

TEST_CASE("no leakage: features depend only on history observable at t1") {
  Rng rng(77);
  const auto stream = random_stream(rng, 40, 1500, 60);
  const auto g = ingest_edges(stream);
  const auto rels = extract_reciprocal_relations(g);
  REQUIRE(rels.size() > 30);
  const UserHistoryIndex hist(rels);
  FeatureConfig cfg;
  cfg.fill_value = 1.25;

  int probes = 0;
  for (const auto& r : rels) {
    if (probes >= 25) break;
    ++probes;
    const FeatureVector full = extract_features(g, hist, r.u, r.v, r.t1, cfg);

    // Rebuild the world truncated to what was observable at t1: edges dated
    // <= t1 and relations completed before t1.
    std::vector<TemporalEdge> truncated;
    for (const auto& e : g.edges()) {
      if (e.day <= r.t1)
        truncated.push_back({g.node_name(e.src), g.node_name(e.dst), e.day});
    }
    const auto g2 = ingest_edges(truncated);
    std::vector<ReciprocalRelation> past;
    for (const auto& rr : rels) {
      if (rr.t2 < r.t1)
        past.push_back({g2.node_id(g.node_name(rr.u)), g2.node_id(g.node_name(rr.v)), rr.t1,
                        rr.t2, rr.delay, rr.init_pos});
    }
    const UserHistoryIndex hist2(past);
    const FeatureVector trunc = extract_features(g2, hist2, g2.node_id(g.node_name(r.u)),
                                                 g2.node_id(g.node_name(r.v)), r.t1, cfg);
    for (int j = 0; j < kFeatureDim; ++j) CHECK(full[j] == trunc[j]);
  }
}

TEST_CASE("build_dataset filters, fills, and groups") {
  const auto g = ingest_edges({
      {"a", "v", 0},  {"v", "a", 2},
      {"b", "v", 10}, {"v", "b", 14},
      {"c", "w", 5},  {"w", "c", 65},  // delay 60: dropped at cutoff 50
  });
  const auto rels = extract_reciprocal_relations(g);
  REQUIRE(rels.size() == 3);
  DatasetConfig cfg;
  cfg.standardize = false;
  const Dataset ds = build_dataset(g, rels, cfg);
  CHECK(ds.n() == 2);
  CHECK(ds.num_groups == 1);
  CHECK(ds.meta[0].group == ds.meta[1].group);
  // Cold-start fill is the mean kept delay: (2 + 4) / 2 = 3.
  CHECK(ds.X(0, 5) == doctest::Approx(3.0));
  CHECK(ds.y[0] == doctest::Approx(2.0));

  DatasetConfig empty_cfg;
  empty_cfg.delay_cutoff = 1;
  CHECK_THROWS_AS(build_dataset(g, rels, empty_cfg), DataError);
}

TEST_CASE("standardization is a round trip and z-scores training columns") {
  Rng rng(13);
  const auto stream = random_stream(rng, 50, 3000, 90);
  const auto g = ingest_edges(stream);
  const auto rels = extract_reciprocal_relations(g);
  DatasetConfig cfg;
  cfg.standardize = true;
  const Dataset ds = build_dataset(g, rels, cfg);
  REQUIRE(ds.scaler.has_value());

  for (int j = 0; j < kFeatureDim - 1; ++j) {
    const double mean = ds.X.col(j).mean();
    CHECK(mean == doctest::Approx(0.0).epsilon(1e-9));
    const double var = (ds.X.col(j).array() - mean).square().mean();
    if (ds.scaler->stdev[j] != 1.0 || var > 0.5) {
      CHECK(std::sqrt(var) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  // The bias column stays 1.
  CHECK(ds.X.col(kFeatureDim - 1).minCoeff() == 1.0);
  CHECK(ds.X.col(kFeatureDim - 1).maxCoeff() == 1.0);

  Eigen::MatrixXd copy = ds.X;
  invert_standardization(copy, *ds.scaler);
  Eigen::MatrixXd back = copy;
  apply_standardization(back, *ds.scaler);
  CHECK((back - ds.X).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("dataset and scaler files reload bit-identically") {
  Rng rng(21);
  const auto stream = random_stream(rng, 40, 1200, 50);
  const auto g = ingest_edges(stream);
  const auto rels = extract_reciprocal_relations(g);
  DatasetConfig cfg;
  cfg.standardize = true;
  const Dataset ds = build_dataset(g, rels, cfg);

  const std::string path = "features_roundtrip_test.csv";
  save_dataset(path, ds);
  const Dataset back = load_dataset(path);
  REQUIRE(back.n() == ds.n());
  REQUIRE(back.has_y);
  CHECK(back.num_groups == ds.num_groups);
  for (long i = 0; i < ds.n(); ++i) {
    for (int j = 0; j < kFeatureDim; ++j) {
      CHECK(back.X(i, j) == ds.X(i, j));  // exact, not approximate
    }
    CHECK(back.y[i] == ds.y[i]);
    CHECK(back.meta[static_cast<std::size_t>(i)].u == ds.meta[static_cast<std::size_t>(i)].u);
    CHECK(back.meta[static_cast<std::size_t>(i)].group ==
          ds.meta[static_cast<std::size_t>(i)].group);
  }
  std::remove(path.c_str());

  const std::string spath = "scaler_roundtrip_test.txt";
  save_scaler(spath, *ds.scaler);
  const Standardization s = load_scaler(spath);
  for (long j = 0; j < s.mean.size(); ++j) {
    CHECK(s.mean[j] == ds.scaler->mean[j]);
    CHECK(s.stdev[j] == ds.scaler->stdev[j]);
  }
  std::remove(spath.c_str());
}

TEST_CASE("y column is optional in dataset files") {
  Rng rng(29);
  const auto stream = random_stream(rng, 30, 800, 40);
  const auto g = ingest_edges(stream);
  DatasetConfig cfg;
  cfg.standardize = false;
  Dataset ds = build_dataset(g, extract_reciprocal_relations(g), cfg);
  ds.has_y = false;
  ds.y.resize(0);
  const std::string path = "features_noy_test.csv";
  save_dataset(path, ds);
  const Dataset back = load_dataset(path);
  CHECK_FALSE(back.has_y);
  CHECK(back.n() == ds.n());
  std::remove(path.c_str());
}

TEST_CASE("weekend feature matches the calendar") {
  CHECK_FALSE(is_weekend(0, kDefaultAnchorWeekday));  // Wednesday
  CHECK(is_weekend(3, kDefaultAnchorWeekday));        // Saturday
  CHECK(is_weekend(4, kDefaultAnchorWeekday));        // Sunday
  CHECK_FALSE(is_weekend(5, kDefaultAnchorWeekday));  // Monday
  for (Day t = 0; t < 50; ++t) {
    CHECK(is_weekend(t, 2) == is_weekend(t + 7, 2));
  }
  CHECK(parse_weekday("wed") == 2);
  CHECK(parse_weekday("Sunday") == 6);
  CHECK(parse_weekday("4") == 4);
  CHECK_THROWS_AS(parse_weekday("noday"), ValidationError);
}
