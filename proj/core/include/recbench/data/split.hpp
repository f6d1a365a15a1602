#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "recbench/data/interaction_matrix.hpp"

namespace recbench {

enum class SplitProtocol { UserHoldout, LeaveOneOut };

struct SplitPair {
  InteractionMatrix train;
  InteractionMatrix test;
  std::optional<InteractionMatrix> validation;
  std::uint64_t seed = 0;
  SplitProtocol protocol = SplitProtocol::UserHoldout;
  double train_ratio = 0.0;  ///< meaningful for UserHoldout only
};

/// Per user, a seeded uniformly random subset of round(ratio * n) interactions
/// (clamped to [1, n]) goes to train and the rest to test. A user with one
/// interaction therefore stays entirely in train.
///
/// The permutation for user u is drawn from Rng(derive_seed(seed, u)), so the
/// split of one user does not depend on any other row.
SplitPair split_user_holdout(const InteractionMatrix& m, double train_ratio, std::uint64_t seed);

/// Moves one seeded random interaction of every user with >= 2 interactions
/// into `test`; users with a single interaction keep it in train.
SplitPair split_leave_one_out(const InteractionMatrix& m, std::uint64_t seed);

/// Number of training interactions kept for a row of size n.
std::size_t holdout_train_count(std::size_t n, double train_ratio);

}  // namespace recbench
