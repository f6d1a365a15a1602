#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "recbench/common/error.hpp"
#include "recbench/metrics/evaluate.hpp"
#include "recbench/metrics/ranking_metrics.hpp"
#include "recbench/metrics/report.hpp"
#include "recbench/data/split.hpp"
#include "recbench/models/model.hpp"
#include "oracles.hpp"

namespace recbench {
namespace {

using namespace recbench::testing;

std::vector<Index> sorted_vec(const std::set<Index>& s) { return {s.begin(), s.end()}; }

TEST(Recall, HandCases) {
  const std::vector<Index> rel{0};
  EXPECT_EQ(recall_at_k(std::vector<Index>{0, 1, 2}, rel, 1), 1.0);
  EXPECT_EQ(recall_at_k(std::vector<Index>{1, 2, 0}, rel, 2), 0.0);
}

TEST(Ndcg, HandCase) {
  const std::vector<Index> ranked{4, 9, 7};
  const std::vector<Index> rel{4, 7};
  const double expect = (1.0 + 1.0 / std::log2(4.0)) / (1.0 + 1.0 / std::log2(3.0));
  EXPECT_NEAR(ndcg_at_k(ranked, rel, 3), expect, 1e-12);
  EXPECT_NEAR(expect, 0.9197, 1e-4);
  EXPECT_EQ(ndcg_at_k(std::vector<Index>{7, 4, 1}, rel, 3), 1.0);
  EXPECT_EQ(ndcg_at_k(std::vector<Index>{1, 2, 3}, rel, 3), 0.0);
}

TEST(Coverage, HandCases) {
  std::vector<std::vector<Index>> same(4, std::vector<Index>{0, 1, 2, 3, 4});
  EXPECT_DOUBLE_EQ(coverage_at_k(same, 100, 5), 0.05);
  std::vector<std::vector<Index>> all{{0, 1}, {2, 3}};
  EXPECT_EQ(coverage_at_k(all, 4, 2), 1.0);
}

TEST(Novelty, HandCases) {
  const std::vector<std::size_t> pop{10, 1, 0};
  std::vector<std::vector<Index>> top{{0}, {0}};
  EXPECT_EQ(novelty_at_k(top, pop, 10, 1), 0.0);
  std::vector<std::vector<Index>> rare{{1}};
  EXPECT_DOUBLE_EQ(novelty_at_k(rare, pop, 10, 1), 1.0);
  std::vector<std::vector<Index>> unseen{{2}};
  EXPECT_DOUBLE_EQ(novelty_at_k(unseen, pop, 10, 1), 1.0);
}

TEST(F1Composite, Cases) {
  EXPECT_EQ(f1_composite(1, 1, 1), 1.0);
  EXPECT_DOUBLE_EQ(f1_composite(0.5, 0.5, 0.5), 0.5);
  EXPECT_NEAR(f1_composite(0.119, 0.179, 0.025), 3.0 / (1 / 0.119 + 1 / 0.179 + 1 / 0.025), 1e-15);
  EXPECT_NEAR(f1_composite(0.119, 0.179, 0.025), 0.0557, 2e-4);  // 0.05557 exactly
  EXPECT_EQ(f1_composite(0.0, 0.5, 0.5), 0.0);
}

TEST(Metrics, FuzzAgainstNaiveOracles) {
  Rng rng(77);
  for (int c = 0; c < 1000; ++c) {
    const std::size_t catalog = 5 + rng.below(40);
    std::vector<Index> perm(catalog);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(std::span<Index>(perm));
    std::vector<Index> ranked(perm.begin(), perm.begin() + 1 + rng.below(catalog));
    std::set<Index> rel;
    const std::size_t n_rel = 1 + rng.below(catalog / 2 + 1);
    while (rel.size() < n_rel) rel.insert(static_cast<Index>(rng.below(catalog)));
    const auto rel_vec = sorted_vec(rel);
    for (const std::size_t k : {1u, 3u, 5u, 10u, 20u, 50u}) {
      ASSERT_EQ(recall_at_k(ranked, rel_vec, k), naive_recall(ranked, rel, k));
      ASSERT_EQ(ndcg_at_k(ranked, rel_vec, k), naive_ndcg(ranked, rel, k));
    }
    // List-level metrics on a bundle of random rankings.
    std::vector<std::vector<Index>> bundle;
    for (std::size_t u = 0; u < 1 + rng.below(6); ++u) {
      rng.shuffle(std::span<Index>(perm));
      bundle.emplace_back(perm.begin(), perm.begin() + 1 + rng.below(catalog));
    }
    const std::size_t n_users = 2 + rng.below(50);
    std::vector<std::size_t> pop(catalog);
    for (auto& p : pop) p = rng.below(n_users + 1);
    for (const std::size_t k : {1u, 5u, 20u}) {
      ASSERT_EQ(coverage_at_k(bundle, catalog, k), naive_coverage(bundle, catalog, k));
      ASSERT_EQ(novelty_at_k(bundle, pop, n_users, k), naive_novelty(bundle, pop, n_users, k));
    }
  }
}

TEST(Metrics, MonotoneInK) {
  Rng rng(78);
  for (int c = 0; c < 200; ++c) {
    std::vector<Index> perm(30);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(std::span<Index>(perm));
    std::set<Index> rel;
    while (rel.size() < 4) rel.insert(static_cast<Index>(rng.below(30)));
    const auto rv = sorted_vec(rel);
    double prev_recall = -1;
    std::vector<std::vector<Index>> one{perm};
    double prev_cov = -1;
    for (std::size_t k = 1; k <= 30; ++k) {
      const double r = recall_at_k(perm, rv, k);
      const double n = ndcg_at_k(perm, rv, k);
      const double cov = coverage_at_k(one, 30, k);
      EXPECT_GE(r, prev_recall);
      EXPECT_GE(cov, prev_cov);
      EXPECT_GE(n, 0.0);
      EXPECT_LE(n, 1.0 + 1e-15);
      prev_recall = r;
      prev_cov = cov;
    }
  }
}

TEST(Evaluate, TopPopHandComputed) {
  // Popularity: item0 = 2, item1 = 1, items 2 and 3 unseen.
  const auto train = InteractionMatrix::from_triplets(3, 4, {{0, 0}, {1, 0}, {1, 1}});
  const auto test = InteractionMatrix::from_triplets(3, 4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
  const auto m = fit(ModelSpec{ModelKind::TopPop, {}}, train);
  MetricSpec spec;
  spec.cutoffs = {1, 2};
  spec.metrics = {Metric::Recall, Metric::Coverage};
  const auto r = evaluate(m, test, spec, "TopPop", "toy");
  // user0 ranks [1, 2, ...], user1 ranks [2, 3], user2 ranks [0, 1]
  EXPECT_EQ(r.n_evaluated_users, 3u);
  EXPECT_DOUBLE_EQ(*r.value(Metric::Recall, 1), (1.0 + 1.0 + 0.5) / 3.0);
  EXPECT_DOUBLE_EQ(*r.value(Metric::Recall, 2), (1.0 + 1.0 + 0.5) / 3.0);
  EXPECT_DOUBLE_EQ(*r.value(Metric::Coverage, 1), 3.0 / 4.0);
  EXPECT_DOUBLE_EQ(*r.value(Metric::Coverage, 2), 1.0);
}

TEST(Evaluate, PerfectRankerHasFullRecall) {
  // Item 0 is the most popular item no test user has seen; each user's only
  // held-out item is item 0, so TopPop ranks it first for everyone.
  std::vector<Interaction> train_t, test_t;
  for (Index u = 0; u < 10; ++u) {
    train_t.push_back({u, static_cast<Index>(1 + u)});
    test_t.push_back({u, 0});
  }
  for (Index u = 10; u < 15; ++u) train_t.push_back({u, 0});
  const auto train = InteractionMatrix::from_triplets(15, 12, train_t);
  const auto test = InteractionMatrix::from_triplets(15, 12, test_t);
  const auto m = fit(ModelSpec{ModelKind::TopPop, {}}, train);
  MetricSpec spec;
  spec.cutoffs = {1, 2};
  const auto r = evaluate(m, test, spec);
  EXPECT_EQ(r.n_evaluated_users, 10u);
  EXPECT_EQ(*r.value(Metric::Recall, 1), 1.0);
  EXPECT_EQ(*r.value(Metric::Ndcg, 2), 1.0);
}

TEST(Evaluate, DeterministicSkipsEmptyRowsAndRejectsNoUsers) {
  Rng rng(80);
  const auto data = random_matrix(rng, 30, 25, 0.25, 2);
  const auto split = split_user_holdout(data, 0.7, 3);
  const auto m = fit(ModelSpec{ModelKind::ItemKNN, default_params(ModelKind::ItemKNN)}, split.train);
  MetricSpec spec;
  spec.metrics = {Metric::Recall, Metric::Ndcg, Metric::Coverage, Metric::Novelty, Metric::F1};
  const auto a = evaluate(m, split, spec);
  const auto b = evaluate(m, split, spec);
  ASSERT_EQ(a.values.size(), 15u);
  for (std::size_t i = 0; i < a.values.size(); ++i) EXPECT_EQ(a.values[i].value, b.values[i].value);
  std::size_t nonempty = 0;
  for (std::size_t u = 0; u < 30; ++u) nonempty += split.test.row_size(u) > 0;
  EXPECT_EQ(a.n_evaluated_users, nonempty);
  for (const auto& v : a.values) {
    if (v.metric != Metric::Novelty) {
      EXPECT_GE(v.value, 0.0);
      EXPECT_LE(v.value, 1.0);
    }
  }
  EXPECT_DOUBLE_EQ(*a.value(Metric::F1, 10),
                   f1_composite(*a.value(Metric::Recall, 10), *a.value(Metric::Coverage, 10),
                                *a.value(Metric::Novelty, 10)));
  const auto empty = InteractionMatrix::from_triplets(30, 25, {});
  EXPECT_THROW(evaluate(m, empty, spec), EmptyDatasetError);
}

TEST(MetricSpec, ValidateAndParse) {
  MetricSpec s;
  s.cutoffs = {10, 5};
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.cutoffs = {0};
  EXPECT_THROW(s.validate(), std::invalid_argument);
  const auto m = parse_metric_at_k("ndcg@20");
  EXPECT_EQ(m.metric, Metric::Ndcg);
  EXPECT_EQ(m.cutoff, 20u);
  EXPECT_EQ(to_string(m), "ndcg@20");
  EXPECT_THROW(parse_metric_at_k("ndcg"), std::invalid_argument);
  EXPECT_THROW(parse_metric("hitrate"), std::invalid_argument);
}

EvalReport report_of(std::string name, double r5) {
  EvalReport r;
  r.model = std::move(name);
  r.dataset = "toy";
  r.n_evaluated_users = 3;
  r.values = {{Metric::Recall, 5, r5}};
  return r;
}

TEST(Report, CsvShape) {
  const std::vector<EvalReport> reports{report_of("EASE", 0.1234567)};
  EXPECT_EQ(format_report_csv(reports),
            "model,dataset,metric,cutoff,value,n_users\nEASE,toy,recall,5,0.123457,3\n");
}

TEST(Report, MarkdownBoldRule) {
  MetricSpec spec;
  spec.cutoffs = {5};
  spec.metrics = {Metric::Recall};
  const std::vector<EvalReport> reports{report_of("TopPop", 0.052), report_of("EASE", 0.1194)};
  // Baselines only: the best is bold.
  const auto plain = format_report_markdown(reports, spec);
  EXPECT_NE(plain.find("| EASE | **0.119** |"), std::string::npos);
  EXPECT_NE(plain.find("| TopPop | 0.052 |"), std::string::npos);
  // A baseline tying the proposed model after rounding is bold; the proposed
  // model is bold only when strictly better than every baseline.
  const auto ext = parse_comparison_csv("model,metric,cutoff,value\nKGIN,recall,5,0.1186\n");
  const auto tied = format_report_markdown(reports, spec, ext, "MovieLens");
  EXPECT_EQ(tied.rfind("### MovieLens\n\n| Methods | R@5 |", 0), 0u);
  EXPECT_NE(tied.find("| EASE | **0.119** |"), std::string::npos);
  EXPECT_NE(tied.find("| KGIN | 0.119 |"), std::string::npos);
  const auto better = parse_comparison_csv("model,metric,cutoff,value\nKGIN,recall,5,0.2\n");
  const auto lost = format_report_markdown(reports, spec, better);
  EXPECT_NE(lost.find("| EASE | 0.119 |"), std::string::npos);
  EXPECT_NE(lost.find("| KGIN | **0.200** |"), std::string::npos);
  EXPECT_THROW(parse_comparison_csv("name,value\nx,1\n"), ParseError);
}

}  // namespace
}  // namespace recbench
