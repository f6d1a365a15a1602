#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "recbench/common/csr.hpp"
#include "recbench/data/interaction_matrix.hpp"
#include "recbench/models/hyper_params.hpp"

namespace recbench {

inline constexpr std::size_t kDefaultEaseItemCap = 40'000;

struct FitOptions {
  /// EASE allocates two dense n_items^2 matrices; larger catalogs are refused.
  std::size_t ease_item_cap = kDefaultEaseItemCap;
};

struct ScoreVector {
  Index user = 0;
  std::vector<double> scores;
};

/// Learned state of the six baselines. Scoring rules:
///
///   Popularity       score(j) = training degree of j
///   ItemSimilarity   score = x_u * W       (ItemKNN, P3Alpha, RP3Beta)
///   UserSimilarity   score = S_u * X       (UserKNN)
///   DenseItemWeights score = x_u * B       (EASE)
struct PopularityState {
  std::vector<double> popularity;
};
struct ItemSimilarityState {
  CsrMatrix weights;  ///< items x items, <= topk entries per row
};
struct UserSimilarityState {
  CsrMatrix weights;  ///< users x users, <= topk entries per row
};
struct DenseItemWeightsState {
  std::vector<double> weights;  ///< items x items row-major, zero diagonal
};

using ModelState =
    std::variant<PopularityState, ItemSimilarityState, UserSimilarityState, DenseItemWeightsState>;

/// A trained recommender. Immutable after construction; scoring is safe from
/// many threads at once.
class FittedModel {
 public:
  FittedModel(ModelSpec spec, std::shared_ptr<const InteractionMatrix> train, ModelState state);

  const ModelSpec& spec() const noexcept { return spec_; }
  ModelKind kind() const noexcept { return spec_.kind; }
  const InteractionMatrix& train() const noexcept { return *train_; }
  const std::shared_ptr<const InteractionMatrix>& train_ptr() const noexcept { return train_; }
  const ModelState& state() const noexcept { return state_; }
  std::size_t n_users() const noexcept { return train_->n_users(); }
  std::size_t n_items() const noexcept { return train_->n_items(); }

  /// Writes n_items scores into `out`. With `mask_seen`, the user's training
  /// items get -infinity.
  void score_into(std::size_t user, std::span<double> out, bool mask_seen = true) const;
  ScoreVector score_user(std::size_t user, bool mask_seen = true) const;

  /// Top-k items by masked score (ties to the smaller index), at most as many
  /// as there are finite scores.
  std::vector<Index> recommend(std::size_t user, std::size_t k) const;

 private:
  ModelSpec spec_;
  std::shared_ptr<const InteractionMatrix> train_;
  ModelState state_;
};

/// Deterministic fit of any baseline. `train` is shared, never modified.
/// Throws std::invalid_argument for bad parameters, EmptyDatasetError for an
/// empty matrix and ResourceLimitError when EASE exceeds the item cap.
FittedModel fit(const ModelSpec& spec, std::shared_ptr<const InteractionMatrix> train,
                const FitOptions& options = {});
FittedModel fit(const ModelSpec& spec, const InteractionMatrix& train,
                const FitOptions& options = {});

/// Indices of the k best finite scores, descending, ties by ascending index.
std::vector<Index> top_k(std::span<const double> scores, std::size_t k);

}  // namespace recbench
