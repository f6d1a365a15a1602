#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "recbench/common/error.hpp"
#include "recbench/models/ease.hpp"
#include "recbench/models/model.hpp"
#include "recbench/models/serialize.hpp"
#include "recbench/models/similarity.hpp"
#include "oracles.hpp"

namespace recbench {
namespace {

using namespace recbench::testing;

std::vector<double> unmasked(const FittedModel& m, std::size_t u) { return m.score_user(u, false).scores; }

ModelSpec spec_of(ModelKind kind) { return {kind, default_params(kind)}; }

// --------------------------------------------------------------- TopPop

TEST(TopPop, CountsAndNonPersonalized) {
  const auto train = InteractionMatrix::from_triplets(2, 2, {{0, 0}, {1, 0}, {1, 1}});
  const auto m = fit(spec_of(ModelKind::TopPop), train);
  EXPECT_EQ(unmasked(m, 0), (std::vector<double>{2.0, 1.0}));
  EXPECT_EQ(unmasked(m, 0), unmasked(m, 1));
}

TEST(TopPop, RankingIsDescendingCountWithIndexTieBreak) {
  Rng rng(4);
  const auto train = random_matrix(rng, 30, 25, 0.2);
  const auto m = fit(spec_of(ModelKind::TopPop), train);
  const auto deg = train.item_degrees();
  const auto ranked = top_k(unmasked(m, 0), 25);
  for (std::size_t p = 1; p < ranked.size(); ++p) {
    const auto a = ranked[p - 1], b = ranked[p];
    EXPECT_TRUE(deg[a] > deg[b] || (deg[a] == deg[b] && a < b));
  }
}

// ------------------------------------------------------------ ranking util

TEST(TopK, TieBreakByIndex) {
  const std::vector<double> s{0.5, 0.9, 0.5};
  EXPECT_EQ(top_k(s, 2), (std::vector<Index>{1, 0}));
  EXPECT_EQ(top_k(s, 10), (std::vector<Index>{1, 0, 2}));
  const double inf = std::numeric_limits<double>::infinity();
  const std::vector<double> masked{-inf, 0.0, -inf, 3.0};
  EXPECT_EQ(top_k(masked, 10), (std::vector<Index>{3, 1}));
}

TEST(Masking, SeenItemsScoreMinusInfinity) {
  Rng rng(6);
  const auto train = random_matrix(rng, 12, 15, 0.3);
  for (const ModelKind kind : kAllModelKinds) {
    const auto m = fit(spec_of(kind), train);
    for (std::size_t u = 0; u < train.n_users(); ++u) {
      const auto s = m.score_user(u).scores;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (train.contains(u, static_cast<Index>(i))) {
          EXPECT_EQ(s[i], -std::numeric_limits<double>::infinity());
        } else {
          EXPECT_TRUE(std::isfinite(s[i]));
        }
      }
      for (const Index i : m.recommend(u, 100)) EXPECT_FALSE(train.contains(u, i));
    }
  }
}

// ------------------------------------------------------------------- KNN

TEST(ItemKnn, FullNeighborhoodMatchesBruteForceCosine) {
  Rng rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n_users = 4 + rng.below(12), n_items = 5 + rng.below(16);
    const auto train = random_matrix(rng, n_users, n_items, 0.35);
    ModelSpec spec{ModelKind::ItemKNN, default_params(ModelKind::ItemKNN)};
    spec.params.topk = n_items;
    spec.params.shrink = 0.0;
    const auto m = fit(spec, train);
    const Dense x = dense(train);
    const Dense sim = brute_cosine(transpose(x), 0.0);
    const Dense expect = matmul(x, sim);
    for (std::size_t u = 0; u < n_users; ++u) {
      const auto s = unmasked(m, u);
      for (std::size_t j = 0; j < n_items; ++j) EXPECT_NEAR(s[j], expect[u][j], 1e-10);
    }
  }
}

TEST(ItemKnn, ToySimilarityEqualsPairwiseCosine) {
  const auto train = InteractionMatrix::from_triplets(
      4, 5, {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {1, 4}, {2, 0}, {2, 2}, {2, 3}, {3, 1}, {3, 3}, {3, 4}});
  const CsrMatrix s = cosine_similarity(train.transposed(), 0.0, 5);
  const Dense ref = brute_cosine(transpose(dense(train)), 0.0);
  const auto d = s.to_dense();
  for (std::size_t a = 0; a < 5; ++a) {
    for (std::size_t b = 0; b < 5; ++b) EXPECT_NEAR(d[a * 5 + b], ref[a][b], 1e-12);
  }
}

TEST(ItemKnn, SymmetricBeforePruningAndShrinkReduces) {
  Rng rng(12);
  const auto train = random_matrix(rng, 25, 18, 0.25);
  const auto items = train.transposed();
  const auto plain = cosine_similarity(items, 0.0, 18).to_dense();
  const auto shrunk = cosine_similarity(items, 5.0, 18).to_dense();
  const Dense x = transpose(dense(train));
  for (std::size_t a = 0; a < 18; ++a) {
    for (std::size_t b = 0; b < 18; ++b) {
      EXPECT_EQ(plain[a * 18 + b], plain[b * 18 + a]);
      double overlap = 0.0;
      for (std::size_t u = 0; u < 25; ++u) overlap += x[a][u] * x[b][u];
      if (a != b && overlap > 0.0) EXPECT_LT(shrunk[a * 18 + b], plain[a * 18 + b]);
    }
  }
}

TEST(ItemKnn, PruningKeepsTopkPerRowWithIndexTieBreak) {
  Rng rng(13);
  const auto train = random_matrix(rng, 30, 20, 0.3);
  const auto full = cosine_similarity(train.transposed(), 2.0, 20);
  const auto pruned = cosine_similarity(train.transposed(), 2.0, 3);
  for (std::size_t r = 0; r < 20; ++r) {
    ASSERT_LE(pruned.row_size(r), 3u);
    std::vector<std::pair<double, Index>> cand;
    for (std::size_t k = 0; k < full.row_size(r); ++k) cand.push_back({-full.row_values(r)[k], full.row_indices(r)[k]});
    std::sort(cand.begin(), cand.end());
    std::vector<Index> expect;
    for (std::size_t k = 0; k < std::min<std::size_t>(3, cand.size()); ++k) expect.push_back(cand[k].second);
    std::sort(expect.begin(), expect.end());
    EXPECT_EQ(std::vector<Index>(pruned.row_indices(r).begin(), pruned.row_indices(r).end()), expect);
  }
}

TEST(ItemKnn, TfIdfWeightingMatchesDenseReference) {
  Rng rng(14);
  const auto train = random_matrix(rng, 20, 12, 0.3);
  ModelSpec spec{ModelKind::ItemKNN, default_params(ModelKind::ItemKNN)};
  spec.params.topk = 12;
  spec.params.shrink = 1.5;
  spec.params.weighting = Weighting::TfIdf;
  const auto m = fit(spec, train);
  // Documents are items, terms are users: weight = sqrt(tf) * ln(N / (1 + df)).
  Dense docs = transpose(dense(train));
  std::vector<double> df(20, 0.0);
  for (const auto& d : docs) {
    for (std::size_t u = 0; u < 20; ++u) df[u] += d[u];
  }
  for (auto& d : docs) {
    for (std::size_t u = 0; u < 20; ++u) d[u] *= std::log(12.0 / (1.0 + df[u]));
  }
  const Dense expect = matmul(dense(train), brute_cosine(docs, 1.5));
  for (std::size_t u = 0; u < 20; ++u) {
    const auto s = unmasked(m, u);
    for (std::size_t j = 0; j < 12; ++j) EXPECT_NEAR(s[j], expect[u][j], 1e-10);
  }
}

TEST(ItemKnn, Bm25WeightingMatchesDenseReference) {
  Rng rng(15);
  const auto train = random_matrix(rng, 18, 10, 0.35);
  const CsrMatrix weighted = apply_weighting(train.transposed(), Weighting::Bm25);
  Dense docs = transpose(dense(train));
  std::vector<double> df(18, 0.0), len(10, 0.0);
  double avg = 0.0;
  for (std::size_t i = 0; i < 10; ++i) {
    for (std::size_t u = 0; u < 18; ++u) {
      df[u] += docs[i][u];
      len[i] += docs[i][u];
    }
    avg += len[i] / 10.0;
  }
  const auto w = weighted.to_dense();
  for (std::size_t i = 0; i < 10; ++i) {
    for (std::size_t u = 0; u < 18; ++u) {
      const double tf = docs[i][u];
      const double expect = tf == 0.0 ? 0.0
                                      : tf * 2.2 / (1.2 * (0.25 + 0.75 * len[i] / avg) + tf) *
                                            std::log(10.0 / (1.0 + df[u]));
      EXPECT_NEAR(w[i * 18 + u], expect, 1e-12);
    }
  }
}

TEST(UserKnn, MatchesBruteForce) {
  Rng rng(16);
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t n_users = 4 + rng.below(12), n_items = 4 + rng.below(12);
    const auto train = random_matrix(rng, n_users, n_items, 0.35);
    ModelSpec spec{ModelKind::UserKNN, default_params(ModelKind::UserKNN)};
    spec.params.topk = n_users;
    spec.params.shrink = 0.5;
    const auto m = fit(spec, train);
    const Dense x = dense(train);
    const Dense expect = matmul(brute_cosine(x, 0.5), x);
    for (std::size_t u = 0; u < n_users; ++u) {
      const auto s = unmasked(m, u);
      for (std::size_t j = 0; j < n_items; ++j) EXPECT_NEAR(s[j], expect[u][j], 1e-10);
    }
  }
}

// ------------------------------------------------------------ walk models

TEST(P3Alpha, TwoUserToyIsProportionalToWalk) {
  const auto train = InteractionMatrix::from_triplets(2, 2, {{0, 0}, {0, 1}, {1, 0}});
  ModelSpec spec{ModelKind::P3Alpha, default_params(ModelKind::P3Alpha)};
  const auto m = fit(spec, train);
  const Dense x = dense(train);
  for (std::size_t u = 0; u < 2; ++u) EXPECT_GT(cosine_of(unmasked(m, u), three_step(x, u, 1.0)), 1.0 - 1e-12);
}

TEST(P3Alpha, DenseMarkovOracle) {
  Rng rng(41);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n_users = 2 + rng.below(9), n_items = 2 + rng.below(9);
    const auto train = random_matrix(rng, n_users, n_items, 0.4);
    const double alpha = 2.0 * rng.uniform();
    ModelSpec spec{ModelKind::P3Alpha, {}};
    spec.params.topk = n_items;
    spec.params.alpha = alpha;
    const auto m = fit(spec, train);
    const Dense x = dense(train);
    for (std::size_t u = 0; u < n_users; ++u) {
      EXPECT_GT(cosine_of(unmasked(m, u), three_step(x, u, alpha)), 1.0 - 1e-10);
    }
  }
}

TEST(RP3Beta, PopularityRescaledWalk) {
  Rng rng(42);
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t n_users = 3 + rng.below(8), n_items = 3 + rng.below(8);
    const auto train = random_matrix(rng, n_users, n_items, 0.4);
    ModelSpec spec{ModelKind::RP3Beta, {}};
    spec.params.topk = n_items;
    spec.params.alpha = 0.8;
    spec.params.beta = 0.6;
    const auto m = fit(spec, train);
    const Dense x = dense(train);
    const auto deg = train.item_degrees();
    for (std::size_t u = 0; u < n_users; ++u) {
      auto ref = three_step(x, u, 0.8);
      for (std::size_t j = 0; j < n_items; ++j) ref[j] = deg[j] ? ref[j] / std::pow(double(deg[j]), 0.6) : 0.0;
      EXPECT_GT(cosine_of(unmasked(m, u), ref), 1.0 - 1e-10);
    }
  }
}

TEST(RP3Beta, BetaZeroRanksLikeP3Alpha) {
  Rng rng(43);
  const auto train = random_matrix(rng, 50, 80, 0.1);
  for (const std::size_t topk : {10u, 80u}) {
    ModelSpec p3{ModelKind::P3Alpha, {}};
    p3.params.topk = topk;
    p3.params.alpha = 0.7;
    ModelSpec rp3{ModelKind::RP3Beta, p3.params};
    rp3.params.beta = 0.0;
    const auto a = fit(p3, train);
    const auto b = fit(rp3, train);
    for (std::size_t u = 0; u < 50; ++u) EXPECT_EQ(a.recommend(u, 80), b.recommend(u, 80));
  }
}

// ------------------------------------------------------------------- EASE

TEST(Ease, MatchesConstrainedLeastSquares) {
  Rng rng(51);
  for (int rep = 0; rep < 5; ++rep) {
    const auto train = random_matrix(rng, 30, 20, 0.3);
    for (const double l2 : {1.0, 10.0, 100.0}) {
      const auto w = ease_weights(train, l2);
      const Dense ref = ease_reference(dense(train), l2);
      double worst = 0.0;
      for (std::size_t i = 0; i < 20; ++i) {
        EXPECT_EQ(w[i * 20 + i], 0.0);
        for (std::size_t j = 0; j < 20; ++j) worst = std::max(worst, std::abs(w[i * 20 + j] - ref[i][j]));
      }
      EXPECT_LT(worst, 1e-8);
    }
  }
}

TEST(Ease, LargeLambdaShrinksToZero) {
  Rng rng(52);
  const auto train = random_matrix(rng, 15, 10, 0.4);
  double prev = std::numeric_limits<double>::infinity();
  for (const double l2 : {1e2, 1e4, 1e6, 1e8}) {
    const auto w = ease_weights(train, l2);
    double worst = 0.0;
    for (const double v : w) worst = std::max(worst, std::abs(v));
    EXPECT_LT(worst, prev);
    prev = worst;
  }
  EXPECT_LT(prev, 1e-6);
}

TEST(Ease, ScoresAreUserRowTimesB) {
  Rng rng(53);
  const auto train = random_matrix(rng, 12, 9, 0.3);
  const auto m = fit(ModelSpec{ModelKind::EASE, {.l2 = 3.0}}, train);
  const auto w = ease_weights(train, 3.0);
  for (std::size_t u = 0; u < 12; ++u) {
    const auto s = unmasked(m, u);
    for (std::size_t j = 0; j < 9; ++j) {
      double e = 0.0;
      for (const Index i : train.row(u)) e += w[i * 9 + j];
      EXPECT_NEAR(s[j], e, 1e-12);
    }
  }
}

TEST(Ease, ItemCapRaisesResourceLimit) {
  Rng rng(54);
  const auto train = random_matrix(rng, 5, 12, 0.4);
  FitOptions options;
  options.ease_item_cap = 10;
  try {
    fit(spec_of(ModelKind::EASE), train, options);
    FAIL() << "expected ResourceLimitError";
  } catch (const ResourceLimitError& e) {
    EXPECT_NE(std::string(e.what()).find("10"), std::string::npos);
  }
}

// ------------------------------------------------------- params, determinism

TEST(HyperParams, ValidationAndFormatting) {
  ModelSpec bad{ModelKind::EASE, {.l2 = 0.0}};
  EXPECT_THROW(validate(bad), std::invalid_argument);
  ModelSpec extra{ModelKind::TopPop, {.topk = 5}};
  EXPECT_THROW(validate(extra), std::invalid_argument);
  HyperParams p;
  set_param(p, "weighting", "bm25");
  set_param(p, "topk", "50");
  set_param(p, "shrink", "2.5");
  EXPECT_EQ(format_params({ModelKind::ItemKNN, p}), "topk=50 shrink=2.5 weighting=bm25");
  EXPECT_THROW(set_param(p, "topk", "1.5"), std::invalid_argument);
  EXPECT_EQ(parse_model_kind("RP3Beta"), ModelKind::RP3Beta);
  EXPECT_THROW(parse_model_kind("ALS"), std::invalid_argument);
}

TEST(Models, FitAndScoreAreBitIdentical) {
  Rng rng(61);
  const auto train = random_matrix(rng, 40, 30, 0.2);
  for (const ModelKind kind : kAllModelKinds) {
    const auto a = fit(spec_of(kind), train);
    const auto b = fit(spec_of(kind), train);
    for (std::size_t u = 0; u < 40; ++u) EXPECT_EQ(unmasked(a, u), unmasked(b, u));
  }
}

TEST(Models, SimilarityRowsBoundedByTopk) {
  Rng rng(62);
  const auto train = random_matrix(rng, 40, 30, 0.3);
  for (const ModelKind kind : {ModelKind::ItemKNN, ModelKind::UserKNN, ModelKind::P3Alpha, ModelKind::RP3Beta}) {
    ModelSpec spec = spec_of(kind);
    spec.params.topk = 4;
    const auto m = fit(spec, train);
    const CsrMatrix& w = std::visit(
        [](const auto& s) -> const CsrMatrix& {
          if constexpr (requires { s.weights.indptr; }) return s.weights;
          throw std::logic_error("no similarity");
        },
        m.state());
    for (std::size_t r = 0; r < w.rows; ++r) EXPECT_LE(w.row_size(r), 4u);
    for (const double v : w.values) EXPECT_TRUE(std::isfinite(v));
  }
}

// ---------------------------------------------------------- serialization

TEST(Serialize, RoundTripPreservesScores) {
  Rng rng(71);
  const auto train = random_matrix(rng, 20, 15, 0.3);
  for (const ModelKind kind : kAllModelKinds) {
    const auto m = fit(spec_of(kind), train);
    std::stringstream buf;
    save_model(m, buf);
    const auto back = load_model(buf);
    EXPECT_EQ(back.spec(), m.spec());
    EXPECT_EQ(back.train(), m.train());
    for (std::size_t u = 0; u < 20; ++u) EXPECT_EQ(unmasked(back, u), unmasked(m, u));
  }
}

TEST(Serialize, RejectsCorruptInput) {
  std::stringstream junk("NOPE....");
  EXPECT_THROW(load_model(junk), Error);
  const auto train = InteractionMatrix::from_triplets(2, 2, {{0, 0}, {1, 1}});
  std::stringstream buf;
  save_model(fit(spec_of(ModelKind::ItemKNN), train), buf);
  const std::string bytes = buf.str();
  std::stringstream truncated(bytes.substr(0, bytes.size() - 3));
  EXPECT_THROW(load_model(truncated), Error);
}

}  // namespace
}  // namespace recbench
