#include "recbench/data/interaction_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "recbench/common/error.hpp"

namespace recbench {

InteractionMatrix::InteractionMatrix(CsrMatrix csr) : csr_(std::move(csr)) { validate(); }

void InteractionMatrix::validate() const {
  if (csr_.indptr.size() != csr_.rows + 1 || csr_.indptr.front() != 0 ||
      csr_.indptr.back() != csr_.indices.size() || csr_.values.size() != csr_.indices.size()) {
    throw std::invalid_argument("InteractionMatrix: inconsistent CSR layout");
  }
  for (std::size_t u = 0; u < csr_.rows; ++u) {
    if (csr_.indptr[u] > csr_.indptr[u + 1]) {
      throw std::invalid_argument("InteractionMatrix: decreasing row pointer");
    }
    const auto items = csr_.row_indices(u);
    const auto weights = csr_.row_values(u);
    for (std::size_t k = 0; k < items.size(); ++k) {
      if (items[k] >= csr_.cols) {
        throw std::invalid_argument("InteractionMatrix: item index out of range in row " +
                                    std::to_string(u));
      }
      if (k > 0 && items[k] <= items[k - 1]) {
        throw std::invalid_argument("InteractionMatrix: row " + std::to_string(u) +
                                    " not strictly ascending");
      }
      if (!(weights[k] > 0.0) || !std::isfinite(weights[k])) {
        throw std::invalid_argument("InteractionMatrix: non-positive weight in row " +
                                    std::to_string(u));
      }
    }
  }
}

InteractionMatrix InteractionMatrix::from_triplets(std::size_t n_users, std::size_t n_items,
                                                   std::vector<Interaction> triplets,
                                                   bool binarize) {
  for (const auto& t : triplets) {
    if (t.user >= n_users || t.item >= n_items) {
      throw std::invalid_argument("InteractionMatrix: triplet index out of range");
    }
  }
  std::sort(triplets.begin(), triplets.end(), [](const Interaction& a, const Interaction& b) {
    return a.user != b.user ? a.user < b.user : a.item < b.item;
  });
  CsrMatrix csr;
  csr.rows = n_users;
  csr.cols = n_items;
  csr.indptr.assign(n_users + 1, 0);
  csr.indices.reserve(triplets.size());
  csr.values.reserve(triplets.size());
  for (std::size_t k = 0; k < triplets.size(); ++k) {
    const auto& t = triplets[k];
    const bool duplicate = k > 0 && triplets[k - 1].user == t.user && triplets[k - 1].item == t.item;
    if (duplicate) {
      // Non-binarized duplicates keep the largest weight.
      if (!binarize) csr.values.back() = std::max(csr.values.back(), t.weight);
      continue;
    }
    csr.indices.push_back(t.item);
    csr.values.push_back(binarize ? 1.0 : t.weight);
    ++csr.indptr[t.user + 1];
  }
  for (std::size_t u = 0; u < n_users; ++u) csr.indptr[u + 1] += csr.indptr[u];
  return InteractionMatrix(std::move(csr));
}

InteractionMatrix InteractionMatrix::from_rows(std::size_t n_items,
                                               std::span<const std::vector<Index>> rows) {
  CsrBuilder builder(rows.size(), n_items);
  std::vector<Index> sorted;
  std::vector<double> ones;
  for (const auto& row : rows) {
    sorted.assign(row.begin(), row.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    ones.assign(sorted.size(), 1.0);
    builder.append_row(sorted, ones);
  }
  return InteractionMatrix(std::move(builder).finish());
}

InteractionMatrix InteractionMatrix::from_csr(CsrMatrix csr) { return InteractionMatrix(std::move(csr)); }

bool InteractionMatrix::contains(std::size_t user, Index item) const noexcept {
  const auto r = row(user);
  return std::binary_search(r.begin(), r.end(), item);
}

std::vector<std::size_t> InteractionMatrix::item_degrees() const {
  std::vector<std::size_t> degrees(n_items(), 0);
  for (const Index i : csr_.indices) ++degrees[i];
  return degrees;
}

InteractionMatrix InteractionMatrix::resized(std::size_t n_users, std::size_t n_items) const {
  if (n_users < this->n_users() || n_items < this->n_items()) {
    throw std::invalid_argument("InteractionMatrix::resized: cannot shrink");
  }
  CsrMatrix csr = csr_;
  csr.cols = n_items;
  csr.indptr.resize(n_users + 1, csr.indptr.back());
  csr.rows = n_users;
  return InteractionMatrix(std::move(csr));
}

std::vector<Interaction> InteractionMatrix::triplets() const {
  std::vector<Interaction> out;
  out.reserve(nnz());
  for (std::size_t u = 0; u < n_users(); ++u) {
    const auto items = row(u);
    const auto weights = row_weights(u);
    for (std::size_t k = 0; k < items.size(); ++k) {
      out.push_back({static_cast<Index>(u), items[k], weights[k]});
    }
  }
  return out;
}

namespace {

void require_same_shape(const InteractionMatrix& a, const InteractionMatrix& b) {
  if (a.n_users() != b.n_users() || a.n_items() != b.n_items()) {
    throw DimensionMismatchError("matrix dimensions differ: " + std::to_string(a.n_users()) + "x" +
                                 std::to_string(a.n_items()) + " vs " +
                                 std::to_string(b.n_users()) + "x" + std::to_string(b.n_items()));
  }
}

}  // namespace

InteractionMatrix union_of(const InteractionMatrix& a, const InteractionMatrix& b) {
  require_same_shape(a, b);
  CsrBuilder builder(a.n_users(), a.n_items());
  builder.reserve(a.nnz() + b.nnz());
  std::vector<Index> merged;
  std::vector<double> ones;
  for (std::size_t u = 0; u < a.n_users(); ++u) {
    const auto ra = a.row(u);
    const auto rb = b.row(u);
    merged.clear();
    std::set_union(ra.begin(), ra.end(), rb.begin(), rb.end(), std::back_inserter(merged));
    ones.assign(merged.size(), 1.0);
    builder.append_row(merged, ones);
  }
  return InteractionMatrix::from_csr(std::move(builder).finish());
}

InteractionMatrix difference(const InteractionMatrix& a, const InteractionMatrix& b) {
  require_same_shape(a, b);
  CsrBuilder builder(a.n_users(), a.n_items());
  std::vector<Index> kept;
  std::vector<double> weights;
  for (std::size_t u = 0; u < a.n_users(); ++u) {
    const auto ra = a.row(u);
    const auto wa = a.row_weights(u);
    kept.clear();
    weights.clear();
    for (std::size_t k = 0; k < ra.size(); ++k) {
      if (!b.contains(u, ra[k])) {
        kept.push_back(ra[k]);
        weights.push_back(wa[k]);
      }
    }
    builder.append_row(kept, weights);
  }
  return InteractionMatrix::from_csr(std::move(builder).finish());
}

}  // namespace recbench
