#pragma once

// Shared generators and dense reference helpers for the test suites.

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "recbench/common/random.hpp"
#include "recbench/data/interaction_matrix.hpp"

namespace recbench::testing {

/// Random binary matrix where each cell is set with probability `density`.
/// Every user gets at least `min_row` items (when the catalog allows it).
inline InteractionMatrix random_matrix(Rng& rng, std::size_t n_users, std::size_t n_items,
                                       double density, std::size_t min_row = 1) {
  std::vector<std::vector<Index>> rows(n_users);
  for (std::size_t u = 0; u < n_users; ++u) {
    std::set<Index> items;
    for (std::size_t i = 0; i < n_items; ++i) {
      if (rng.uniform() < density) items.insert(static_cast<Index>(i));
    }
    while (items.size() < std::min(min_row, n_items)) {
      items.insert(static_cast<Index>(rng.below(n_items)));
    }
    rows[u].assign(items.begin(), items.end());
  }
  return InteractionMatrix::from_rows(n_items, rows);
}

/// Row-major dense copy of a binary interaction matrix.
inline std::vector<std::vector<double>> dense(const InteractionMatrix& m) {
  std::vector<std::vector<double>> d(m.n_users(), std::vector<double>(m.n_items(), 0.0));
  for (std::size_t u = 0; u < m.n_users(); ++u) {
    for (const Index i : m.row(u)) d[u][i] = 1.0;
  }
  return d;
}

inline double cosine_of(const std::vector<double>& a, const std::vector<double>& b) {
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  if (aa == 0.0 && bb == 0.0) return 1.0;
  return ab / std::sqrt(aa * bb);
}

}  // namespace recbench::testing
