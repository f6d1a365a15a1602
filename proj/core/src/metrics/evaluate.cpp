#include "recbench/metrics/evaluate.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

#include "recbench/common/error.hpp"
#include "recbench/common/parallel.hpp"
#include "recbench/metrics/ranking_metrics.hpp"

namespace recbench {

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::Recall: return "recall";
    case Metric::Ndcg: return "ndcg";
    case Metric::Coverage: return "coverage";
    case Metric::Novelty: return "novelty";
    case Metric::F1: return "f1";
  }
  return "?";
}

std::string_view short_label(Metric m) {
  switch (m) {
    case Metric::Recall: return "R";
    case Metric::Ndcg: return "N";
    case Metric::Coverage: return "Cov";
    case Metric::Novelty: return "Nov";
    case Metric::F1: return "F1";
  }
  return "?";
}

Metric parse_metric(std::string_view name) {
  std::string n(name);
  std::transform(n.begin(), n.end(), n.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (n == "recall" || n == "r") return Metric::Recall;
  if (n == "ndcg" || n == "n") return Metric::Ndcg;
  if (n == "coverage" || n == "cov") return Metric::Coverage;
  if (n == "novelty" || n == "nov") return Metric::Novelty;
  if (n == "f1") return Metric::F1;
  throw std::invalid_argument("unknown metric '" + std::string(name) + "'");
}

void MetricSpec::validate() const {
  if (cutoffs.empty()) throw std::invalid_argument("MetricSpec: no cutoffs");
  if (metrics.empty()) throw std::invalid_argument("MetricSpec: no metrics");
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    if (cutoffs[i] == 0) throw std::invalid_argument("MetricSpec: cutoffs must be positive");
    if (i > 0 && cutoffs[i] <= cutoffs[i - 1]) {
      throw std::invalid_argument("MetricSpec: cutoffs must be strictly increasing");
    }
  }
}

MetricAtK parse_metric_at_k(std::string_view text) {
  const auto at = text.find('@');
  if (at == std::string_view::npos) {
    throw std::invalid_argument("expected metric@cutoff, got '" + std::string(text) + "'");
  }
  MetricAtK m;
  m.metric = parse_metric(text.substr(0, at));
  const auto digits = text.substr(at + 1);
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), m.cutoff);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || m.cutoff == 0) {
    throw std::invalid_argument("bad cutoff in '" + std::string(text) + "'");
  }
  return m;
}

std::string to_string(const MetricAtK& m) {
  return std::string(to_string(m.metric)) + "@" + std::to_string(m.cutoff);
}

std::optional<double> EvalReport::value(Metric metric, std::size_t cutoff) const {
  for (const auto& v : values) {
    if (v.metric == metric && v.cutoff == cutoff) return v.value;
  }
  return std::nullopt;
}

std::vector<std::vector<Index>> rank_users(const FittedModel& model,
                                           const InteractionMatrix& heldout, std::size_t k) {
  if (heldout.n_users() != model.n_users() || heldout.n_items() != model.n_items()) {
    throw DimensionMismatchError("evaluate: held-out matrix does not match the model dimensions");
  }
  std::vector<std::vector<Index>> rankings(heldout.n_users());
  parallel_chunks(heldout.n_users(), [&](std::size_t begin, std::size_t end) {
    std::vector<double> scores(model.n_items());
    for (std::size_t u = begin; u < end; ++u) {
      if (heldout.row_size(u) == 0) continue;
      model.score_into(u, scores, /*mask_seen=*/true);
      rankings[u] = top_k(scores, k);
    }
  });
  return rankings;
}

EvalReport evaluate(const FittedModel& model, const InteractionMatrix& heldout,
                    const MetricSpec& spec, std::string model_label, std::string dataset_label) {
  spec.validate();
  const std::size_t max_k = spec.cutoffs.back();
  auto all_rankings = rank_users(model, heldout, max_k);

  std::vector<std::size_t> users;
  for (std::size_t u = 0; u < heldout.n_users(); ++u) {
    if (heldout.row_size(u) > 0) users.push_back(u);
  }
  if (users.empty()) throw EmptyDatasetError("evaluate: no user has held-out interactions");

  std::vector<std::vector<Index>> rankings;
  rankings.reserve(users.size());
  for (const std::size_t u : users) rankings.push_back(std::move(all_rankings[u]));

  const auto popularity = model.train().item_degrees();
  const auto n_train_users = model.n_users();
  const auto n = static_cast<double>(users.size());

  EvalReport report;
  report.model = std::move(model_label);
  report.dataset = std::move(dataset_label);
  report.n_evaluated_users = users.size();

  for (const Metric metric : spec.metrics) {
    for (const std::size_t k : spec.cutoffs) {
      double value = 0.0;
      // Sums run in ascending user order so results are independent of the
      // number of worker threads.
      const auto mean_over_users = [&](auto per_user) {
        double total = 0.0;
        for (std::size_t idx = 0; idx < users.size(); ++idx) {
          total += per_user(rankings[idx], heldout.row(users[idx]));
        }
        return total / n;
      };
      switch (metric) {
        case Metric::Recall:
          value = mean_over_users([&](const auto& r, auto rel) { return recall_at_k(r, rel, k); });
          break;
        case Metric::Ndcg:
          value = mean_over_users([&](const auto& r, auto rel) { return ndcg_at_k(r, rel, k); });
          break;
        case Metric::Coverage: value = coverage_at_k(rankings, model.n_items(), k); break;
        case Metric::Novelty:
          value = novelty_at_k(rankings, popularity, n_train_users, k);
          break;
        case Metric::F1: {
          const double r =
              mean_over_users([&](const auto& rk, auto rel) { return recall_at_k(rk, rel, k); });
          value = f1_composite(r, coverage_at_k(rankings, model.n_items(), k),
                               novelty_at_k(rankings, popularity, n_train_users, k));
          break;
        }
      }
      report.values.push_back({metric, k, value});
    }
  }
  return report;
}

EvalReport evaluate(const FittedModel& model, const SplitPair& split, const MetricSpec& spec,
                    std::string model_label, std::string dataset_label) {
  return evaluate(model, split.test, spec, std::move(model_label), std::move(dataset_label));
}

}  // namespace recbench
