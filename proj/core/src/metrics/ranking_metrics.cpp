#include "recbench/metrics/ranking_metrics.hpp"

#include <algorithm>
#include <cmath>

namespace recbench {
namespace {

bool is_relevant(std::span<const Index> relevant, Index item) {
  return std::binary_search(relevant.begin(), relevant.end(), item);
}

std::size_t cut(std::span<const Index> ranked, std::size_t k) { return std::min(k, ranked.size()); }

}  // namespace

double recall_at_k(std::span<const Index> ranked, std::span<const Index> relevant, std::size_t k) {
  if (relevant.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t p = 0; p < cut(ranked, k); ++p) hits += is_relevant(relevant, ranked[p]) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(relevant.size());
}

double ndcg_at_k(std::span<const Index> ranked, std::span<const Index> relevant, std::size_t k) {
  if (relevant.empty() || k == 0) return 0.0;
  double dcg = 0.0;
  for (std::size_t p = 0; p < cut(ranked, k); ++p) {
    if (is_relevant(relevant, ranked[p])) dcg += 1.0 / std::log2(static_cast<double>(p) + 2.0);
  }
  double ideal = 0.0;
  const std::size_t n_ideal = std::min(k, relevant.size());
  for (std::size_t p = 0; p < n_ideal; ++p) ideal += 1.0 / std::log2(static_cast<double>(p) + 2.0);
  return dcg / ideal;
}

double coverage_at_k(std::span<const std::vector<Index>> rankings, std::size_t catalog_size,
                     std::size_t k) {
  if (catalog_size == 0) return 0.0;
  std::vector<char> hit(catalog_size, 0);
  std::size_t distinct = 0;
  for (const auto& ranking : rankings) {
    for (std::size_t p = 0; p < cut(ranking, k); ++p) {
      char& h = hit.at(ranking[p]);
      if (!h) {
        h = 1;
        ++distinct;
      }
    }
  }
  return static_cast<double>(distinct) / static_cast<double>(catalog_size);
}

double novelty_at_k(std::span<const std::vector<Index>> rankings,
                    std::span<const std::size_t> item_popularity, std::size_t n_users,
                    std::size_t k) {
  if (n_users <= 1) return 0.0;
  const double log_users = std::log2(static_cast<double>(n_users));
  double total = 0.0;
  std::size_t slots = 0;
  for (const auto& ranking : rankings) {
    for (std::size_t p = 0; p < cut(ranking, k); ++p) {
      const std::size_t pop = std::max<std::size_t>(item_popularity[ranking[p]], 1);
      total += -std::log2(static_cast<double>(pop) / static_cast<double>(n_users)) / log_users;
      ++slots;
    }
  }
  return slots == 0 ? 0.0 : total / static_cast<double>(slots);
}

double f1_composite(double recall, double coverage, double novelty) {
  if (recall <= 0.0 || coverage <= 0.0 || novelty <= 0.0) return 0.0;
  return 3.0 / (1.0 / recall + 1.0 / coverage + 1.0 / novelty);
}

}  // namespace recbench
