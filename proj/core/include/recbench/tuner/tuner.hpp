#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "recbench/metrics/evaluate.hpp"
#include "recbench/models/model.hpp"
#include "recbench/tuner/gaussian_process.hpp"
#include "recbench/tuner/param_space.hpp"

namespace recbench {

enum class TrialStatus { Ok, Failed };
enum class TrialSource { Random, Surrogate };

struct Trial {
  std::size_t index = 0;
  HyperParams params;
  double objective = 0.0;  ///< meaningful when status == Ok
  double fit_seconds = 0.0;
  TrialStatus status = TrialStatus::Ok;
  std::string failure;  ///< reason when status == Failed
  TrialSource source = TrialSource::Random;

  bool ok() const noexcept { return status == TrialStatus::Ok; }
};

/// Sequential GP-EI proposer over a ParamSpace.
///
/// Proposal t < n_random (or while fewer than two successful observations
/// exist) is a uniform draw; later proposals maximize expected improvement by
/// random multi-start search followed by local perturbation. Every proposal
/// draws from Rng(derive_seed(seed, t)), so replaying the same observations
/// reproduces the same proposals.
class BayesianOptimizer {
 public:
  BayesianOptimizer(ParamSpace space, std::size_t n_random, std::uint64_t seed);

  struct Proposal {
    HyperParams params;
    TrialSource source;
  };

  Proposal propose(std::size_t trial_index) const;

  /// Records a successful evaluation; the surrogate is refit lazily.
  void observe(const HyperParams& params, double objective);

  std::size_t observations() const noexcept { return targets_.size(); }
  const ParamSpace& space() const noexcept { return space_; }

  int random_candidates = 2000;
  int local_starts = 8;
  int local_steps = 40;

 private:
  void refit() const;

  ParamSpace space_;
  std::size_t n_random_;
  std::uint64_t seed_;
  std::vector<std::vector<double>> points_;
  std::vector<double> targets_;
  mutable GaussianProcess gp_;
  mutable bool dirty_ = true;
};

struct TuneResult {
  ModelKind kind = ModelKind::TopPop;
  Trial best;
  std::vector<Trial> history;
  MetricAtK objective;
  std::uint64_t seed = 0;
  /// Human-readable description of the search strategy, written into every
  /// history file.
  std::string strategy;
};

struct TuneOptions {
  std::size_t budget = 0;    ///< 0 = default_budget(space)
  std::size_t n_random = 5;  ///< clamped to the budget
  std::uint64_t seed = 0;
  MetricAtK objective{Metric::Ndcg, 20};
  FitOptions fit_options;
  /// Trials from an interrupted run; they are replayed instead of re-run.
  std::vector<Trial> resume;
  /// Called after every new trial (not for replayed ones).
  std::function<void(const Trial&)> on_trial;
};

/// Objective-agnostic search loop: evaluates `objective` (which may throw to
/// mark a trial failed) for budget trials and returns the history. Throws
/// TuningError when every trial failed.
TuneResult optimize(const ParamSpace& space,
                    const std::function<double(const HyperParams&)>& objective,
                    const TuneOptions& options);

/// Fits `kind` on `train` and scores the objective on `valid` for every
/// proposal. Only train and validation data are visible to the search.
/// Throws std::invalid_argument when valid overlaps train.
TuneResult tune(ModelKind kind, const ParamSpace& space,
                std::shared_ptr<const InteractionMatrix> train, const InteractionMatrix& valid,
                const TuneOptions& options);

/// Fits the best configuration on `full_train` (typically train + valid).
FittedModel refit_best(const TuneResult& result, std::shared_ptr<const InteractionMatrix> full_train,
                       const FitOptions& options = {});

inline constexpr const char* kSearchStrategy =
    "gp-matern52 (grid-ML lengthscale/noise) + expected-improvement over posterior-mean incumbent, random multi-start";

}  // namespace recbench
