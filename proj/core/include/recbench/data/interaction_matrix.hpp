#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "recbench/common/csr.hpp"

namespace recbench {

struct Interaction {
  Index user;
  Index item;
  double weight = 1.0;
};

/// Immutable sparse user x item implicit-feedback matrix.
///
/// Rows hold strictly ascending item indices with strictly positive weights.
/// Every constructor validates these invariants and throws
/// std::invalid_argument when they are violated.
class InteractionMatrix {
 public:
  InteractionMatrix() = default;

  /// Builds from unordered triplets. Duplicate (user, item) pairs collapse to
  /// a single entry; with `binarize` every stored weight is 1.
  static InteractionMatrix from_triplets(std::size_t n_users, std::size_t n_items,
                                         std::vector<Interaction> triplets,
                                         bool binarize = true);

  /// Builds from per-user item lists (any order, duplicates collapsed), all
  /// weights 1.
  static InteractionMatrix from_rows(std::size_t n_items,
                                     std::span<const std::vector<Index>> rows);

  static InteractionMatrix from_csr(CsrMatrix csr);

  std::size_t n_users() const noexcept { return csr_.rows; }
  std::size_t n_items() const noexcept { return csr_.cols; }
  std::size_t nnz() const noexcept { return csr_.nnz(); }
  bool empty() const noexcept { return csr_.nnz() == 0; }

  std::span<const Index> row(std::size_t user) const noexcept { return csr_.row_indices(user); }
  std::span<const double> row_weights(std::size_t user) const noexcept {
    return csr_.row_values(user);
  }
  std::size_t row_size(std::size_t user) const noexcept { return csr_.row_size(user); }

  bool contains(std::size_t user, Index item) const noexcept;

  /// Training interaction count per item.
  std::vector<std::size_t> item_degrees() const;

  /// Same interactions in a larger (or equal) index space.
  InteractionMatrix resized(std::size_t n_users, std::size_t n_items) const;

  /// Item x user view with identical weights.
  CsrMatrix transposed() const { return csr_.transpose(); }

  const CsrMatrix& csr() const noexcept { return csr_; }

  std::vector<Interaction> triplets() const;

  friend bool operator==(const InteractionMatrix&, const InteractionMatrix&) = default;

 private:
  explicit InteractionMatrix(CsrMatrix csr);
  void validate() const;

  CsrMatrix csr_;
};

/// Per-user union (duplicates removed). Dimensions must match.
InteractionMatrix union_of(const InteractionMatrix& a, const InteractionMatrix& b);

/// Entries of `a` whose (user, item) pair is absent from `b`.
InteractionMatrix difference(const InteractionMatrix& a, const InteractionMatrix& b);

}  // namespace recbench
