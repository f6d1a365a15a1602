// Micro-benchmarks for the hot kernels on synthetic power-law data.

#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>
#include <numeric>

#include "recbench/common/random.hpp"
#include "recbench/data/interaction_matrix.hpp"
#include "recbench/data/split.hpp"
#include "recbench/metrics/evaluate.hpp"
#include "recbench/metrics/ranking_metrics.hpp"
#include "recbench/models/ease.hpp"
#include "recbench/models/model.hpp"
#include "recbench/models/similarity.hpp"

namespace {

using namespace recbench;

// Item popularity roughly Zipf(1), users draw `per_user` items each.
std::shared_ptr<const InteractionMatrix> synthetic(std::size_t n_users, std::size_t n_items,
                                                   std::size_t per_user) {
  Rng rng(derive_seed(7, n_users * 31 + n_items));
  std::vector<double> cdf(n_items);
  double acc = 0.0;
  for (std::size_t i = 0; i < n_items; ++i) cdf[i] = acc += 1.0 / static_cast<double>(i + 1);
  std::vector<Interaction> t;
  t.reserve(n_users * per_user);
  for (std::size_t u = 0; u < n_users; ++u) {
    for (std::size_t k = 0; k < per_user; ++k) {
      const double r = rng.uniform() * acc;
      const auto i = static_cast<Index>(std::lower_bound(cdf.begin(), cdf.end(), r) - cdf.begin());
      t.push_back({static_cast<Index>(u), std::min<Index>(i, static_cast<Index>(n_items - 1)), 1.0});
    }
  }
  return std::make_shared<const InteractionMatrix>(
      InteractionMatrix::from_triplets(n_users, n_items, std::move(t), true));
}

void BM_CosineSimilarity(benchmark::State& state) {
  const auto m = synthetic(2000, static_cast<std::size_t>(state.range(0)), 40);
  const CsrMatrix docs = m->transposed();
  for (auto _ : state) benchmark::DoNotOptimize(cosine_similarity(docs, 10.0, 100));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m->n_items()));
}
BENCHMARK(BM_CosineSimilarity)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_WalkSimilarity(benchmark::State& state) {
  const auto m = synthetic(2000, static_cast<std::size_t>(state.range(0)), 40);
  for (auto _ : state) benchmark::DoNotOptimize(walk_similarity(*m, 0.8, 0.3, 100));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m->n_items()));
}
BENCHMARK(BM_WalkSimilarity)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_EaseWeights(benchmark::State& state) {
  const auto m = synthetic(2000, static_cast<std::size_t>(state.range(0)), 40);
  for (auto _ : state) benchmark::DoNotOptimize(ease_weights(*m, 100.0));
}
BENCHMARK(BM_EaseWeights)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_RecommendAllUsers(benchmark::State& state) {
  const auto m = synthetic(2000, 1500, 40);
  const ModelKind kind = static_cast<ModelKind>(state.range(0));
  const FittedModel model = fit(ModelSpec{kind, default_params(kind)}, m);
  for (auto _ : state) {
    for (std::size_t u = 0; u < m->n_users(); ++u) benchmark::DoNotOptimize(model.recommend(u, 20));
  }
  state.SetLabel(std::string(to_string(kind)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m->n_users()));
}
BENCHMARK(BM_RecommendAllUsers)
    ->Arg(static_cast<int>(ModelKind::TopPop))
    ->Arg(static_cast<int>(ModelKind::ItemKNN))
    ->Arg(static_cast<int>(ModelKind::EASE))
    ->Unit(benchmark::kMillisecond);

void BM_NdcgAtK(benchmark::State& state) {
  Rng rng(3);
  std::vector<Index> ranked(100), relevant(30);
  std::iota(ranked.begin(), ranked.end(), 0);
  rng.shuffle(std::span<Index>(ranked));
  for (auto& r : relevant) r = static_cast<Index>(rng.below(300));
  std::sort(relevant.begin(), relevant.end());
  relevant.erase(std::unique(relevant.begin(), relevant.end()), relevant.end());
  for (auto _ : state) benchmark::DoNotOptimize(ndcg_at_k(ranked, relevant, 20));
}
BENCHMARK(BM_NdcgAtK);

void BM_Evaluate(benchmark::State& state) {
  const auto m = synthetic(2000, 1500, 40);
  const SplitPair s = split_user_holdout(*m, 0.8, 1);
  const FittedModel model = fit(ModelSpec{ModelKind::TopPop, {}}, s.train);
  MetricSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(model, s.test, spec));
}
BENCHMARK(BM_Evaluate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
