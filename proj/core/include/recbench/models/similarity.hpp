#pragma once

#include <cstddef>
#include <limits>

#include "recbench/common/csr.hpp"
#include "recbench/data/interaction_matrix.hpp"
#include "recbench/models/hyper_params.hpp"

namespace recbench {

/// BM25 constants used by Weighting::Bm25.
inline constexpr double kBm25K1 = 1.2;
inline constexpr double kBm25B = 0.75;

/// Re-weights a documents x terms matrix.
///
///   idf(t)  = ln(n_docs / (1 + df(t)))
///   tf-idf: w = sqrt(x) * idf(t)
///   bm25:   w = x * (k1 + 1) / (k1 * ((1 - b) + b * len(d) / avg_len) + x) * idf(t)
///
/// where len(d) is the row sum. Entries whose weight becomes exactly 0 are
/// dropped; weights may be negative for terms present in nearly every
/// document.
CsrMatrix apply_weighting(const CsrMatrix& docs, Weighting weighting);

/// Keeps the `topk` largest values of a dense candidate row. Exact zeros are
/// never kept; ties at the cut-off go to the smaller column index. Output is
/// sorted by column.
void prune_row(std::span<const Index> candidates, std::span<const double> values,
               std::size_t topk, std::vector<Index>& out_idx, std::vector<double>& out_val);

/// Shrunk cosine similarity between the rows of `docs`:
///   sim(a, b) = <x_a, x_b> / (|x_a| |x_b| + shrink)
/// Self-similarity is excluded, each row is pruned to its `topk` largest
/// entries. Result is rows x rows.
CsrMatrix cosine_similarity(const CsrMatrix& docs, double shrink, std::size_t topk);

/// Item x item random-walk similarity on the bipartite user-item graph:
///   W = (P_iu)^alpha (P_ui)^alpha,  then W[:, j] *= degree(j)^-beta
/// where P_ui / P_iu are the row-normalized user->item and item->user
/// transition matrices and ^alpha is applied to each nonzero probability.
/// Each row is pruned to `topk`. Self-transitions are kept; they only touch
/// items the user already has. beta = 0 gives P3alpha.
CsrMatrix walk_similarity(const InteractionMatrix& train, double alpha, double beta,
                          std::size_t topk);

/// Row-normalized user->item transition matrix with each entry raised to
/// alpha.
CsrMatrix transition_matrix(const CsrMatrix& x, double alpha);

}  // namespace recbench
