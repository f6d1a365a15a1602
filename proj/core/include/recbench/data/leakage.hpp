#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "recbench/data/id_maps.hpp"
#include "recbench/data/split.hpp"

namespace recbench {

struct LeakageReport {
  std::size_t leaked_users = 0;
  std::size_t total_users = 0;
  std::size_t leaked_pairs = 0;
  /// (user index, |train row ∩ test row|) for every user with overlap > 0,
  /// ascending by user.
  std::vector<std::pair<Index, std::size_t>> per_user_overlap;

  bool clean() const noexcept { return leaked_pairs == 0; }
};

/// Exact per-user intersection of train with test (and with validation when
/// present). Throws DimensionMismatchError when shapes differ.
LeakageReport audit_leakage(const SplitPair& split);

/// Deduplicated union of train and test, then split_user_holdout.
SplitPair resplit_union(const SplitPair& split, double train_ratio, std::uint64_t seed);

/// `user,overlap` header plus one row per leaked user. External ids are used
/// when `users` is given.
std::string format_leakage_csv(const LeakageReport& report, const IdBijection* users = nullptr);

/// `leaked_users/total_users leaked_pairs`
std::string format_leakage_summary(const LeakageReport& report);

}  // namespace recbench
