#include "recbench/data/kcore.hpp"

#include "recbench/common/error.hpp"

namespace recbench {

KcoreResult kcore_filter(const InteractionMatrix& m, std::size_t min_user, std::size_t min_item) {
  const std::size_t n_users = m.n_users();
  const std::size_t n_items = m.n_items();
  const CsrMatrix by_item = m.transposed();

  std::vector<std::size_t> user_deg(n_users);
  std::vector<std::size_t> item_deg = m.item_degrees();
  for (std::size_t u = 0; u < n_users; ++u) user_deg[u] = m.row_size(u);

  // Users/items are removed through a worklist; each removal decrements the
  // degrees of surviving neighbours and may enqueue them.
  std::vector<char> user_alive(n_users, 1);
  std::vector<char> item_alive(n_items, 1);
  std::vector<std::size_t> user_queue;
  std::vector<std::size_t> item_queue;
  const std::size_t u_min = std::max<std::size_t>(min_user, 1);
  const std::size_t i_min = std::max<std::size_t>(min_item, 1);
  for (std::size_t u = 0; u < n_users; ++u) {
    if (user_deg[u] < u_min) {
      user_alive[u] = 0;
      user_queue.push_back(u);
    }
  }
  for (std::size_t i = 0; i < n_items; ++i) {
    if (item_deg[i] < i_min) {
      item_alive[i] = 0;
      item_queue.push_back(i);
    }
  }
  while (!user_queue.empty() || !item_queue.empty()) {
    while (!user_queue.empty()) {
      const std::size_t u = user_queue.back();
      user_queue.pop_back();
      for (const Index i : m.row(u)) {
        if (item_alive[i] && --item_deg[i] < i_min) {
          item_alive[i] = 0;
          item_queue.push_back(i);
        }
      }
    }
    while (!item_queue.empty()) {
      const std::size_t i = item_queue.back();
      item_queue.pop_back();
      for (const Index u : by_item.row_indices(i)) {
        if (user_alive[u] && --user_deg[u] < u_min) {
          user_alive[u] = 0;
          user_queue.push_back(u);
        }
      }
    }
  }

  KcoreResult result;
  std::vector<Index> new_item(n_items, 0);
  for (std::size_t i = 0; i < n_items; ++i) {
    if (item_alive[i]) {
      new_item[i] = static_cast<Index>(result.item_old_index.size());
      result.item_old_index.push_back(static_cast<Index>(i));
    }
  }
  std::vector<std::vector<Index>> rows;
  for (std::size_t u = 0; u < n_users; ++u) {
    if (!user_alive[u]) continue;
    result.user_old_index.push_back(static_cast<Index>(u));
    auto& row = rows.emplace_back();
    for (const Index i : m.row(u)) {
      if (item_alive[i]) row.push_back(new_item[i]);
    }
  }
  if (rows.empty()) throw EmptyDatasetError("k-core filter removed every interaction");
  result.matrix = InteractionMatrix::from_rows(result.item_old_index.size(), rows);
  return result;
}

}  // namespace recbench
