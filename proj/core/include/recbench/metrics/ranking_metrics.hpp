#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "recbench/common/csr.hpp"

namespace recbench {

// `relevant` is always a strictly ascending list of item indices and must be
// nonempty; rankings are ordered best-first. Only the first k entries of a
// ranking are considered.

/// |top-k ∩ relevant| / |relevant|
double recall_at_k(std::span<const Index> ranked, std::span<const Index> relevant, std::size_t k);

/// Binary-gain DCG with discount 1/log2(position + 1), positions from 1,
/// divided by the ideal DCG over min(k, |relevant|) positions.
double ndcg_at_k(std::span<const Index> ranked, std::span<const Index> relevant, std::size_t k);

/// |union of every top-k list| / catalog_size
double coverage_at_k(std::span<const std::vector<Index>> rankings, std::size_t catalog_size,
                     std::size_t k);

/// Mean normalized self-information over every recommended slot:
///   -log2(pop(i) / n_users) / log2(n_users)
/// with pop(i) = 0 treated as 1. Returns 0 when there are no slots or
/// n_users <= 1.
double novelty_at_k(std::span<const std::vector<Index>> rankings,
                    std::span<const std::size_t> item_popularity, std::size_t n_users,
                    std::size_t k);

/// Harmonic mean of three values; 0 if any of them is 0.
double f1_composite(double recall, double coverage, double novelty);

}  // namespace recbench
