#include "recbench/models/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "recbench/common/error.hpp"
#include "recbench/models/ease.hpp"
#include "recbench/models/similarity.hpp"

namespace recbench {

FittedModel::FittedModel(ModelSpec spec, std::shared_ptr<const InteractionMatrix> train,
                         ModelState state)
    : spec_(std::move(spec)), train_(std::move(train)), state_(std::move(state)) {
  if (!train_) throw std::invalid_argument("FittedModel: null training matrix");
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void add_scaled_row(const CsrMatrix& m, std::size_t row, double scale, std::span<double> out) {
  const auto idx = m.row_indices(row);
  const auto val = m.row_values(row);
  for (std::size_t k = 0; k < idx.size(); ++k) out[idx[k]] += scale * val[k];
}

}  // namespace

void FittedModel::score_into(std::size_t user, std::span<double> out, bool mask_seen) const {
  if (user >= n_users()) throw std::out_of_range("score_user: user index out of range");
  if (out.size() != n_items()) throw std::invalid_argument("score_user: output size mismatch");
  const auto seen = train_->row(user);
  const auto seen_w = train_->row_weights(user);

  std::visit(
      Overloaded{
          [&](const PopularityState& s) {
            std::copy(s.popularity.begin(), s.popularity.end(), out.begin());
          },
          [&](const ItemSimilarityState& s) {
            std::fill(out.begin(), out.end(), 0.0);
            for (std::size_t k = 0; k < seen.size(); ++k) {
              add_scaled_row(s.weights, seen[k], seen_w[k], out);
            }
          },
          [&](const UserSimilarityState& s) {
            std::fill(out.begin(), out.end(), 0.0);
            const auto neighbours = s.weights.row_indices(user);
            const auto sims = s.weights.row_values(user);
            for (std::size_t k = 0; k < neighbours.size(); ++k) {
              add_scaled_row(train_->csr(), neighbours[k], sims[k], out);
            }
          },
          [&](const DenseItemWeightsState& s) {
            std::fill(out.begin(), out.end(), 0.0);
            const std::size_t n = n_items();
            for (std::size_t k = 0; k < seen.size(); ++k) {
              const double* row = s.weights.data() + static_cast<std::size_t>(seen[k]) * n;
              const double w = seen_w[k];
              for (std::size_t j = 0; j < n; ++j) out[j] += w * row[j];
            }
          },
      },
      state_);

  if (mask_seen) {
    for (const Index i : seen) out[i] = -std::numeric_limits<double>::infinity();
  }
}

ScoreVector FittedModel::score_user(std::size_t user, bool mask_seen) const {
  ScoreVector v;
  v.user = static_cast<Index>(user);
  v.scores.resize(n_items());
  score_into(user, v.scores, mask_seen);
  return v;
}

std::vector<Index> FittedModel::recommend(std::size_t user, std::size_t k) const {
  std::vector<double> scores(n_items());
  score_into(user, scores, /*mask_seen=*/true);
  return top_k(scores, k);
}

std::vector<Index> top_k(std::span<const double> scores, std::size_t k) {
  std::vector<Index> order;
  order.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (std::isfinite(scores[i])) order.push_back(static_cast<Index>(i));
  }
  const auto better = [&](Index a, Index b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  };
  const std::size_t n = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n), order.end(),
                    better);
  order.resize(n);
  return order;
}

FittedModel fit(const ModelSpec& spec, std::shared_ptr<const InteractionMatrix> train,
                const FitOptions& options) {
  if (!train) throw std::invalid_argument("fit: null training matrix");
  validate(spec);
  if (train->empty()) throw EmptyDatasetError("fit: training matrix is empty");
  const HyperParams& p = spec.params;

  ModelState state;
  switch (spec.kind) {
    case ModelKind::TopPop: {
      const auto degree = train->item_degrees();
      state = PopularityState{std::vector<double>(degree.begin(), degree.end())};
      break;
    }
    case ModelKind::ItemKNN: {
      const CsrMatrix items = apply_weighting(train->transposed(), *p.weighting);
      state = ItemSimilarityState{cosine_similarity(items, *p.shrink, *p.topk)};
      break;
    }
    case ModelKind::UserKNN: {
      const CsrMatrix users = apply_weighting(train->csr(), *p.weighting);
      state = UserSimilarityState{cosine_similarity(users, *p.shrink, *p.topk)};
      break;
    }
    case ModelKind::P3Alpha:
      state = ItemSimilarityState{walk_similarity(*train, *p.alpha, 0.0, *p.topk)};
      break;
    case ModelKind::RP3Beta:
      state = ItemSimilarityState{walk_similarity(*train, *p.alpha, *p.beta, *p.topk)};
      break;
    case ModelKind::EASE: {
      if (train->n_items() > options.ease_item_cap) {
        throw ResourceLimitError("EASE: " + std::to_string(train->n_items()) +
                                 " items exceed the dense item cap of " +
                                 std::to_string(options.ease_item_cap));
      }
      state = DenseItemWeightsState{ease_weights(*train, *p.l2)};
      break;
    }
  }
  return FittedModel(spec, std::move(train), std::move(state));
}

FittedModel fit(const ModelSpec& spec, const InteractionMatrix& train, const FitOptions& options) {
  return fit(spec, std::make_shared<const InteractionMatrix>(train), options);
}

}  // namespace recbench
