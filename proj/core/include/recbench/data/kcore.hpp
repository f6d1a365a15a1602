#pragma once

#include <cstddef>
#include <vector>

#include "recbench/data/interaction_matrix.hpp"

namespace recbench {

struct KcoreResult {
  InteractionMatrix matrix;
  std::vector<Index> user_old_index;  ///< new user index -> input index
  std::vector<Index> item_old_index;  ///< new item index -> input index
};

/// Iterative k-core: repeatedly drops users with fewer than `min_user` and
/// items with fewer than `min_item` interactions until nothing changes, then
/// re-indexes the survivors densely (preserving relative order). Users and
/// items left without interactions are dropped.
/// Throws EmptyDatasetError when nothing survives.
KcoreResult kcore_filter(const InteractionMatrix& m, std::size_t min_user, std::size_t min_item);

}  // namespace recbench
