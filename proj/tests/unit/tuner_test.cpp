#include <gtest/gtest.h>

#include <cmath>

#include "recbench/common/error.hpp"
#include "recbench/data/split.hpp"
#include "recbench/models/ease.hpp"
#include "recbench/tuner/gaussian_process.hpp"
#include "recbench/tuner/param_space.hpp"
#include "recbench/tuner/trial_io.hpp"
#include "recbench/tuner/tuner.hpp"
#include "test_support.hpp"

namespace recbench {
namespace {

using testing::random_matrix;

std::vector<std::string> names(const ParamSpace& s) {
  std::vector<std::string> out;
  for (const auto& p : s.params()) out.push_back(p.name);
  return out;
}

TEST(ParamSpace, DefaultSpaces) {
  EXPECT_EQ(default_space(ModelKind::EASE).size(), 1u);
  EXPECT_TRUE(default_space(ModelKind::TopPop).empty());
  EXPECT_EQ(names(default_space(ModelKind::RP3Beta)), (std::vector<std::string>{"topk", "alpha", "beta"}));
  EXPECT_EQ(names(default_space(ModelKind::P3Alpha)), (std::vector<std::string>{"topk", "alpha"}));
  EXPECT_EQ(names(default_space(ModelKind::ItemKNN)), (std::vector<std::string>{"topk", "shrink", "weighting"}));
  EXPECT_EQ(names(default_space(ModelKind::UserKNN)), names(default_space(ModelKind::ItemKNN)));
}

TEST(ParamSpace, BudgetRule) {
  EXPECT_EQ(default_budget(default_space(ModelKind::EASE)), 35u);
  EXPECT_EQ(default_budget(default_space(ModelKind::P3Alpha)), 35u);
  EXPECT_EQ(default_budget(default_space(ModelKind::RP3Beta)), 50u);
  EXPECT_EQ(default_budget(default_space(ModelKind::ItemKNN)), 50u);
  EXPECT_EQ(default_budget(default_space(ModelKind::UserKNN)), 50u);
}

TEST(ParamSpace, SamplesStayInRangeAndRoundTrip) {
  Rng rng(3);
  for (const ModelKind kind : kAllModelKinds) {
    const auto space = default_space(kind);
    for (int i = 0; i < 200; ++i) {
      const auto point = space.sample(rng);
      ASSERT_EQ(point.size(), space.encoded_dims());
      const HyperParams p = space.decode(point);
      ModelSpec spec{kind, p};
      EXPECT_NO_THROW(validate(spec));
      if (p.topk) {
        EXPECT_GE(*p.topk, 5u);
        EXPECT_LE(*p.topk, 1000u);
      }
      if (p.shrink) EXPECT_LE(*p.shrink, 1000.0);
      if (p.alpha) EXPECT_LE(*p.alpha, 2.0);
      if (p.l2) {
        EXPECT_GE(*p.l2, 1.0);
        EXPECT_LE(*p.l2, 1e5);
      }
      EXPECT_EQ(space.decode(space.encode(p)), p);
      EXPECT_EQ(space.canonical(space.canonical(point)), space.canonical(point));
    }
  }
}

TEST(ParamSpace, RejectsBadDefinitions) {
  EXPECT_THROW(ParamSpace({{"l2", RealRange{0.0, 1.0}, Scale::Log}}), std::invalid_argument);
  EXPECT_THROW(ParamSpace({{"l2", RealRange{2.0, 1.0}, Scale::Linear}}), std::invalid_argument);
}

TEST(GaussianProcess, InterpolatesAndQuantifiesUncertainty) {
  GaussianProcess gp;
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  for (int i = 0; i <= 10; ++i) {
    x.push_back({i / 10.0});
    y.push_back(std::sin(3.0 * i / 10.0));
  }
  gp.fit(x, y);
  const std::vector<double> mid{0.55};
  const auto p = gp.predict(mid);
  EXPECT_NEAR(p.mean, std::sin(1.65), 0.05);
  const std::vector<double> far{3.0};
  EXPECT_GT(gp.predict(far).stddev, p.stddev);
}

TEST(ExpectedImprovement, Basics) {
  EXPECT_EQ(expected_improvement(0.0, 0.0, 1.0), 0.0);
  EXPECT_NEAR(expected_improvement(2.0, 0.0, 1.0), 1.0, 1e-12);
  // EI(mu = best, sigma) = sigma * phi(0)
  EXPECT_NEAR(expected_improvement(1.0, 0.5, 1.0), 0.5 / std::sqrt(2.0 * M_PI), 1e-12);
  EXPECT_GT(expected_improvement(0.0, 1.0, 0.5), expected_improvement(0.0, 0.5, 0.5));
}

ParamSpace lambda_space() { return ParamSpace({{"l2", RealRange{1.0, 1e5}, Scale::Log}}); }

double synthetic(const HyperParams& p) { return -std::pow(std::log(*p.l2) - 3.0, 2.0); }

TEST(Optimize, HistoryShapeAndBest) {
  TuneOptions options;
  options.budget = 35;
  options.n_random = 5;
  options.seed = 9;
  const auto r = optimize(lambda_space(), synthetic, options);
  ASSERT_EQ(r.history.size(), 35u);
  for (std::size_t t = 0; t < 35; ++t) {
    EXPECT_EQ(r.history[t].index, t);
    EXPECT_EQ(r.history[t].source, t < 5 ? TrialSource::Random : TrialSource::Surrogate);
    EXPECT_LE(r.history[t].objective, r.best.objective);
  }
  EXPECT_NEAR(std::log(*r.best.params.l2), 3.0, 0.1);
  EXPECT_EQ(r.strategy, kSearchStrategy);
}

TEST(Optimize, DeterministicAndResumable) {
  TuneOptions options;
  options.budget = 20;
  options.seed = 5;
  const auto a = optimize(default_space(ModelKind::RP3Beta),
                          [](const HyperParams& p) { return -std::abs(*p.alpha - 0.7) - *p.beta + std::log(double(*p.topk)); },
                          options);
  const auto b = optimize(default_space(ModelKind::RP3Beta),
                          [](const HyperParams& p) { return -std::abs(*p.alpha - 0.7) - *p.beta + std::log(double(*p.topk)); },
                          options);
  ASSERT_EQ(a.history.size(), b.history.size());
  for (std::size_t t = 0; t < a.history.size(); ++t) {
    EXPECT_EQ(a.history[t].params, b.history[t].params);
    EXPECT_EQ(a.history[t].objective, b.history[t].objective);
  }
  // Resume from a prefix recovered through the CSV format.
  TuneResult tagged = a;
  tagged.kind = ModelKind::RP3Beta;
  const std::string csv = format_history_csv(tagged);
  auto prefix = parse_history_csv(csv, ModelKind::RP3Beta);
  prefix.resize(8);
  TuneOptions resumed = options;
  resumed.resume = prefix;
  std::size_t fresh = 0;
  resumed.on_trial = [&](const Trial&) { ++fresh; };
  const auto c = optimize(default_space(ModelKind::RP3Beta),
                          [](const HyperParams& p) { return -std::abs(*p.alpha - 0.7) - *p.beta + std::log(double(*p.topk)); },
                          resumed);
  EXPECT_EQ(fresh, 12u);
  for (std::size_t t = 0; t < a.history.size(); ++t) {
    EXPECT_EQ(c.history[t].params, a.history[t].params);
    EXPECT_EQ(c.history[t].objective, a.history[t].objective);
  }
}

TEST(Optimize, EmptySpaceRunsOneTrial) {
  TuneOptions options;
  options.budget = 35;
  int calls = 0;
  const auto r = optimize(ParamSpace{}, [&](const HyperParams&) { return ++calls, 0.5; }, options);
  EXPECT_EQ(calls, 1);
  EXPECT_EQ(r.history.size(), 1u);
  EXPECT_EQ(r.best.objective, 0.5);
}

TEST(Optimize, FailedTrialsConsumeBudget) {
  TuneOptions options;
  options.budget = 12;
  options.seed = 2;
  const auto r = optimize(lambda_space(),
                          [](const HyperParams& p) {
                            if (*p.l2 > 1000.0) throw ResourceLimitError("too large");
                            return synthetic(p);
                          },
                          options);
  EXPECT_EQ(r.history.size(), 12u);
  std::size_t failed = 0;
  for (const auto& t : r.history) {
    if (!t.ok()) {
      ++failed;
      EXPECT_EQ(t.failure, "too large");
    }
  }
  EXPECT_GT(failed, 0u);
  EXPECT_TRUE(r.best.ok());
  EXPECT_LE(*r.best.params.l2, 1000.0);

  EXPECT_THROW(optimize(lambda_space(), [](const HyperParams&) -> double { throw Error("nope"); }, options),
               TuningError);
}

TEST(Tune, EaseOnToyDataAndRefit) {
  Rng rng(19);
  const auto data = random_matrix(rng, 40, 30, 0.2, 3);
  const auto loo = split_leave_one_out(data, 4);
  auto train = std::make_shared<const InteractionMatrix>(loo.train);
  TuneOptions options;
  options.budget = 8;
  options.seed = 1;
  const auto r = tune(ModelKind::EASE, default_space(ModelKind::EASE), train, loo.test, options);
  EXPECT_EQ(r.kind, ModelKind::EASE);
  EXPECT_EQ(r.history.size(), 8u);
  const auto full = std::make_shared<const InteractionMatrix>(data);
  const auto m = refit_best(r, full);
  const auto& w = std::get<DenseItemWeightsState>(m.state()).weights;
  for (std::size_t i = 0; i < 30; ++i) EXPECT_EQ(w[i * 30 + i], 0.0);
  const auto spec = parse_best_params(format_best_params(r));
  EXPECT_EQ(spec, (ModelSpec{ModelKind::EASE, r.best.params}));
}

TEST(Tune, RejectsOverlappingValidation) {
  Rng rng(20);
  const auto data = random_matrix(rng, 10, 10, 0.4, 2);
  auto train = std::make_shared<const InteractionMatrix>(data);
  EXPECT_THROW(tune(ModelKind::TopPop, ParamSpace{}, train, data, TuneOptions{}), std::invalid_argument);
}

TEST(TrialIo, HistoryCsvRoundTripAndTruncation) {
  TuneResult r;
  r.kind = ModelKind::ItemKNN;
  Trial ok;
  ok.index = 0;
  ok.params = {.topk = 50, .shrink = 12.5, .weighting = Weighting::Bm25};
  ok.objective = 0.1234567890123;
  ok.fit_seconds = 0.25;
  Trial bad = ok;
  bad.index = 1;
  bad.status = TrialStatus::Failed;
  bad.failure = "cap, exceeded";
  bad.source = TrialSource::Surrogate;
  r.history = {ok, bad};
  r.best = ok;
  const std::string csv = format_history_csv(r, "comment line");
  EXPECT_EQ(csv.rfind("# comment line\ntrial,topk,shrink,weighting,objective,seconds,status,source\n", 0), 0u);
  const auto back = parse_history_csv(csv, ModelKind::ItemKNN);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].params, ok.params);
  EXPECT_EQ(back[0].objective, ok.objective);
  EXPECT_FALSE(back[1].ok());
  EXPECT_EQ(back[1].source, TrialSource::Surrogate);
  // A partially written final line is dropped.
  const auto cut = parse_history_csv(csv.substr(0, csv.size() - 5), ModelKind::ItemKNN);
  EXPECT_EQ(cut.size(), 1u);
}

TEST(TrialIo, BestParamsFormat) {
  TuneResult r;
  r.kind = ModelKind::RP3Beta;
  r.objective = {Metric::Ndcg, 20};
  r.best.index = 7;
  r.best.objective = 0.25;
  r.best.params = {.topk = 120, .alpha = 0.5, .beta = 0.25};
  const std::string text = format_best_params(r);
  EXPECT_NE(text.find("model = RP3Beta\n"), std::string::npos);
  EXPECT_NE(text.find("objective = ndcg@20\n"), std::string::npos);
  EXPECT_NE(text.find("topk = 120\n"), std::string::npos);
  EXPECT_EQ(parse_best_params(text), (ModelSpec{ModelKind::RP3Beta, r.best.params}));
  EXPECT_THROW(parse_best_params("objective = ndcg@20\n"), Error);
}

}  // namespace
}  // namespace recbench
