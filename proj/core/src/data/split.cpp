#include "recbench/data/split.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "recbench/common/error.hpp"
#include "recbench/common/random.hpp"

namespace recbench {

std::size_t holdout_train_count(std::size_t n, double train_ratio) {
  if (n == 0) return 0;
  const auto rounded = static_cast<std::size_t>(std::llround(train_ratio * static_cast<double>(n)));
  return std::clamp<std::size_t>(rounded, 1, n);
}

namespace {

struct RowPartition {
  std::vector<Index> train;
  std::vector<Index> held;
};

template <typename ChooseHeld>
SplitPair partition_rows(const InteractionMatrix& m, ChooseHeld choose) {
  if (m.empty()) throw EmptyDatasetError("cannot split an empty matrix");
  CsrBuilder train(m.n_users(), m.n_items());
  CsrBuilder held(m.n_users(), m.n_items());
  train.reserve(m.nnz());
  std::vector<double> ones;
  std::vector<std::size_t> order;
  std::vector<char> is_held;
  RowPartition part;
  for (std::size_t u = 0; u < m.n_users(); ++u) {
    const auto row = m.row(u);
    is_held.assign(row.size(), 0);
    choose(u, row.size(), is_held);
    part.train.clear();
    part.held.clear();
    for (std::size_t k = 0; k < row.size(); ++k) {
      (is_held[k] ? part.held : part.train).push_back(row[k]);
    }
    ones.assign(part.train.size(), 1.0);
    train.append_row(part.train, ones);
    ones.assign(part.held.size(), 1.0);
    held.append_row(part.held, ones);
  }
  SplitPair s;
  s.train = InteractionMatrix::from_csr(std::move(train).finish());
  s.test = InteractionMatrix::from_csr(std::move(held).finish());
  return s;
}

}  // namespace

SplitPair split_user_holdout(const InteractionMatrix& m, double train_ratio, std::uint64_t seed) {
  if (!(train_ratio > 0.0 && train_ratio < 1.0)) {
    throw std::invalid_argument("train_ratio must lie in (0, 1)");
  }
  std::vector<std::size_t> perm;
  auto s = partition_rows(m, [&](std::size_t u, std::size_t n, std::vector<char>& held) {
    const std::size_t n_train = holdout_train_count(n, train_ratio);
    if (n_train == n) return;
    perm.resize(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Rng rng(derive_seed(seed, u));
    rng.shuffle(std::span<std::size_t>(perm));
    for (std::size_t k = n_train; k < n; ++k) held[perm[k]] = 1;
  });
  s.seed = seed;
  s.protocol = SplitProtocol::UserHoldout;
  s.train_ratio = train_ratio;
  return s;
}

SplitPair split_leave_one_out(const InteractionMatrix& m, std::uint64_t seed) {
  auto s = partition_rows(m, [&](std::size_t u, std::size_t n, std::vector<char>& held) {
    if (n < 2) return;
    Rng rng(derive_seed(seed, u));
    held[rng.below(n)] = 1;
  });
  s.seed = seed;
  s.protocol = SplitProtocol::LeaveOneOut;
  return s;
}

}  // namespace recbench
