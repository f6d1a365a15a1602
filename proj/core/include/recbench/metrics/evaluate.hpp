#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "recbench/data/split.hpp"
#include "recbench/models/model.hpp"

namespace recbench {

enum class Metric { Recall, Ndcg, Coverage, Novelty, F1 };

std::string_view to_string(Metric m);
Metric parse_metric(std::string_view name);
/// Column label used in tables: R, N, Cov, Nov, F1.
std::string_view short_label(Metric m);

struct MetricSpec {
  std::vector<std::size_t> cutoffs{5, 10, 20};
  std::vector<Metric> metrics{Metric::Recall, Metric::Ndcg};

  /// Throws std::invalid_argument unless cutoffs are positive and strictly
  /// increasing and both lists are nonempty.
  void validate() const;
};

/// A (metric, cutoff) objective such as ndcg@20.
struct MetricAtK {
  Metric metric = Metric::Ndcg;
  std::size_t cutoff = 20;

  friend bool operator==(const MetricAtK&, const MetricAtK&) = default;
};

/// "ndcg@20", "recall@10", ...
MetricAtK parse_metric_at_k(std::string_view text);
std::string to_string(const MetricAtK& m);

struct MetricValue {
  Metric metric;
  std::size_t cutoff;
  double value;
};

struct EvalReport {
  std::string model;
  std::string dataset;
  std::size_t n_evaluated_users = 0;
  std::vector<MetricValue> values;  ///< metric-major, cutoff-minor

  std::optional<double> value(Metric metric, std::size_t cutoff) const;
};

/// Scores every user with a nonempty row in `heldout`, ranks with training
/// items masked, averages recall/ndcg over those users and computes
/// coverage/novelty over their lists. Item popularity for novelty is taken
/// from the model's training matrix. Throws EmptyDatasetError when no user
/// has held-out items.
EvalReport evaluate(const FittedModel& model, const InteractionMatrix& heldout,
                    const MetricSpec& spec, std::string model_label = {},
                    std::string dataset_label = {});

EvalReport evaluate(const FittedModel& model, const SplitPair& split, const MetricSpec& spec,
                    std::string model_label = {}, std::string dataset_label = {});

/// Top-`k` masked ranking for every user with a nonempty `heldout` row (empty
/// lists elsewhere).
std::vector<std::vector<Index>> rank_users(const FittedModel& model,
                                           const InteractionMatrix& heldout, std::size_t k);

}  // namespace recbench
