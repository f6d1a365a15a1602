#include "recbench/tuner/tuner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "recbench/common/error.hpp"
#include "recbench/data/leakage.hpp"

namespace recbench {

BayesianOptimizer::BayesianOptimizer(ParamSpace space, std::size_t n_random, std::uint64_t seed)
    : space_(std::move(space)), n_random_(n_random), seed_(seed) {}

void BayesianOptimizer::observe(const HyperParams& params, double objective) {
  points_.push_back(space_.encode(params));
  targets_.push_back(objective);
  dirty_ = true;
}

void BayesianOptimizer::refit() const {
  if (!dirty_) return;
  gp_.fit(points_, targets_);
  dirty_ = false;
}

BayesianOptimizer::Proposal BayesianOptimizer::propose(std::size_t trial_index) const {
  Rng rng(derive_seed(seed_, trial_index));
  if (space_.empty()) return {HyperParams{}, TrialSource::Random};
  if (trial_index < n_random_ || targets_.size() < 2) {
    return {space_.decode(space_.sample(rng)), TrialSource::Random};
  }
  refit();
  // Incumbent is the best posterior mean at an observed point, not the best
  // raw (noisy) observation.
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : points_) best = std::max(best, gp_.predict(p).mean);
  const auto seen = [&](const std::vector<double>& x) {
    return std::find(points_.begin(), points_.end(), x) != points_.end();
  };
  const auto acquisition = [&](const std::vector<double>& x) {
    const auto pred = gp_.predict(x);
    return expected_improvement(pred.mean, pred.stddev, best);
  };

  struct Candidate {
    std::vector<double> x;
    double ei;
  };
  std::vector<Candidate> pool;
  pool.reserve(static_cast<std::size_t>(random_candidates) + points_.size());
  for (int c = 0; c < random_candidates; ++c) {
    auto x = space_.canonical(space_.sample(rng));
    const double ei = acquisition(x);
    pool.push_back({std::move(x), ei});
  }
  // Also start from the incumbents: EI is often maximized next to them.
  for (const auto& p : points_) pool.push_back({p, acquisition(p)});

  std::stable_sort(pool.begin(), pool.end(),
                   [](const Candidate& a, const Candidate& b) { return a.ei > b.ei; });
  const std::size_t starts = std::min<std::size_t>(static_cast<std::size_t>(local_starts), pool.size());

  std::vector<Candidate> refined;
  for (std::size_t s = 0; s < starts; ++s) {
    Candidate cur = pool[s];
    double step = 0.1;
    for (int it = 0; it < local_steps; ++it) {
      std::vector<double> x = cur.x;
      for (auto& v : x) v = std::clamp(v + step * rng.normal(), 0.0, 1.0);
      x = space_.canonical(x);
      const double ei = acquisition(x);
      if (ei > cur.ei) {
        cur = {std::move(x), ei};
      } else {
        step = std::max(step * 0.85, 1e-4);
      }
    }
    refined.push_back(std::move(cur));
  }
  refined.insert(refined.end(), pool.begin(), pool.end());
  std::stable_sort(refined.begin(), refined.end(),
                   [](const Candidate& a, const Candidate& b) { return a.ei > b.ei; });
  for (const auto& c : refined) {
    if (!seen(c.x)) return {space_.decode(c.x), TrialSource::Surrogate};
  }
  return {space_.decode(space_.sample(rng)), TrialSource::Random};
}

TuneResult optimize(const ParamSpace& space,
                    const std::function<double(const HyperParams&)>& objective,
                    const TuneOptions& options) {
  const std::size_t budget = space.empty() ? 1
                             : options.budget == 0 ? default_budget(space)
                                                   : options.budget;
  const std::size_t n_random = std::clamp<std::size_t>(options.n_random, 1, budget);
  if (options.resume.size() > budget) {
    throw std::invalid_argument("resume history is longer than the budget");
  }

  BayesianOptimizer optimizer(space, n_random, options.seed);
  TuneResult result;
  result.objective = options.objective;
  result.seed = options.seed;
  result.strategy = kSearchStrategy;

  for (std::size_t t = 0; t < budget; ++t) {
    Trial trial;
    if (t < options.resume.size()) {
      trial = options.resume[t];
      if (trial.index != t) throw std::invalid_argument("resume history is not contiguous");
    } else {
      const auto proposal = optimizer.propose(t);
      trial.index = t;
      trial.params = proposal.params;
      trial.source = proposal.source;
      const auto start = std::chrono::steady_clock::now();
      try {
        trial.objective = objective(trial.params);
        if (!std::isfinite(trial.objective)) throw Error("objective is not finite");
        trial.status = TrialStatus::Ok;
      } catch (const std::exception& e) {
        trial.status = TrialStatus::Failed;
        trial.failure = e.what();
        trial.objective = 0.0;
      }
      trial.fit_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (options.on_trial) options.on_trial(trial);
    }
    if (trial.ok()) optimizer.observe(trial.params, trial.objective);
    result.history.push_back(std::move(trial));
  }

  const Trial* best = nullptr;
  for (const auto& t : result.history) {
    if (t.ok() && (!best || t.objective > best->objective)) best = &t;
  }
  if (!best) {
    std::string reasons;
    for (const auto& t : result.history) {
      reasons += "\n  trial " + std::to_string(t.index) + ": " + t.failure;
    }
    throw TuningError("every trial failed:" + reasons);
  }
  result.best = *best;
  return result;
}

TuneResult tune(ModelKind kind, const ParamSpace& space,
                std::shared_ptr<const InteractionMatrix> train, const InteractionMatrix& valid,
                const TuneOptions& options) {
  if (!train) throw std::invalid_argument("tune: null training matrix");
  SplitPair check;
  check.train = *train;
  check.test = valid;
  if (!audit_leakage(check).clean()) {
    throw std::invalid_argument("tune: validation interactions overlap the training data");
  }
  MetricSpec spec;
  spec.cutoffs = {options.objective.cutoff};
  spec.metrics = {options.objective.metric};
  const auto objective = [&](const HyperParams& params) {
    const FittedModel model = fit(ModelSpec{kind, params}, train, options.fit_options);
    return evaluate(model, valid, spec).values.front().value;
  };
  TuneResult result = optimize(space, objective, options);
  result.kind = kind;
  return result;
}

FittedModel refit_best(const TuneResult& result, std::shared_ptr<const InteractionMatrix> full_train,
                       const FitOptions& options) {
  if (!result.best.ok()) throw TuningError("refit_best: no successful trial");
  return fit(ModelSpec{result.kind, result.best.params}, std::move(full_train), options);
}

}  // namespace recbench
