#include <benchmark/benchmark.h>

#include "recip/analytics.hpp"
#include "recip/dprr.hpp"
#include "recip/eval.hpp"
#include "recip/features.hpp"
#include "recip/rng.hpp"
#include "recip/synth.hpp"

using namespace recip;

namespace {

const SynthOutput& corpus() {
  static const SynthOutput out = [] {
    SynthConfig cfg;
    cfg.users = 200;
    cfg.horizon_days = 180;
    cfg.edge_rate = 0.4;
    cfg.user_offset_scale = 6.0;
    cfg.seed = 3;
    return generate(cfg);
  }();
  return out;
}

const DynamicDigraph& graph() {
  static const DynamicDigraph g = ingest_edges(corpus().stream);
  return g;
}

const Dataset& dataset() {
  static const Dataset ds = [] {
    DatasetConfig cfg;
    cfg.standardize = false;
    return build_dataset(graph(), extract_reciprocal_relations(graph()), cfg);
  }();
  return ds;
}

}  // namespace

static void BM_Ingest(benchmark::State& state) {
  const auto& stream = corpus().stream;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ingest_edges(stream));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(stream.size()));
}
BENCHMARK(BM_Ingest);

static void BM_ExtractRelations(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_reciprocal_relations(graph()));
  }
}
BENCHMARK(BM_ExtractRelations);

static void BM_BuildDataset(benchmark::State& state) {
  const auto rels = extract_reciprocal_relations(graph());
  DatasetConfig cfg;
  cfg.standardize = true;
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_dataset(graph(), rels, cfg));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(rels.size()));
}
BENCHMARK(BM_BuildDataset);

static void BM_DegreeQueries(benchmark::State& state) {
  const auto& g = graph();
  Rng rng(1);
  std::vector<std::pair<NodeId, Day>> probes;
  for (int i = 0; i < 1024; ++i) {
    probes.emplace_back(static_cast<NodeId>(rng.index(g.node_count())),
                        static_cast<Day>(rng.index(180)));
  }
  for (auto _ : state) {
    long acc = 0;
    for (const auto& [v, t] : probes) acc += g.indegree_at(v, t) + g.outdegree_at(v, t);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * 2048);
}
BENCHMARK(BM_DegreeQueries);

static void BM_AdmmIteration(benchmark::State& state) {
  Dataset train = dataset();
  const Standardization scaler = compute_standardization(train.X);
  apply_standardization(train.X, scaler);
  const auto groups = build_same_target_groups(train);
  const auto ps = build_pair_system(groups, train.n(), 200, 0);
  auto st = make_admm_state(train.n(), train.d(), ps);
  const unsigned threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    update_a(st, train.X, train.y, ps, 1.0, threads);
    update_w(st, train.X, train.y, ps, 1.0, 1.0);
    update_z(st, ps, 0.2, 1.0, threads);
    update_u(st, ps);
  }
  state.SetItemsProcessed(state.iterations() * ps.count());
}
BENCHMARK(BM_AdmmIteration)->Arg(1)->Arg(4);

static void BM_FitDprr(benchmark::State& state) {
  Dataset train = dataset();
  const Standardization scaler = compute_standardization(train.X);
  apply_standardization(train.X, scaler);
  const auto groups = build_same_target_groups(train);
  DprrConfig cfg;
  cfg.beta = 0.1;
  cfg.rho = 5.0;
  cfg.max_iterations = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_dprr(train, groups, cfg));
  }
}
BENCHMARK(BM_FitDprr)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_WeberPoint(benchmark::State& state) {
  Rng rng(5);
  std::vector<Eigen::VectorXd> pts;
  for (long i = 0; i < state.range(0); ++i) {
    Eigen::VectorXd p(14);
    for (long j = 0; j < 14; ++j) p[j] = rng.normal();
    pts.push_back(p);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(weber_point(pts));
  }
}
BENCHMARK(BM_WeberPoint)->Arg(8)->Arg(64);

BENCHMARK_MAIN();
