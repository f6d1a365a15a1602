#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace recbench {

using Index = std::uint32_t;

/// Compressed sparse row matrix of doubles. Column indices within a row are
/// kept strictly ascending by every routine that produces one.
struct CsrMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> indptr{0};
  std::vector<Index> indices;
  std::vector<double> values;

  std::size_t nnz() const noexcept { return indices.size(); }
  std::size_t row_size(std::size_t r) const noexcept { return indptr[r + 1] - indptr[r]; }

  std::span<const Index> row_indices(std::size_t r) const noexcept {
    return {indices.data() + indptr[r], row_size(r)};
  }
  std::span<const double> row_values(std::size_t r) const noexcept {
    return {values.data() + indptr[r], row_size(r)};
  }

  CsrMatrix transpose() const;

  /// Dense copy, row-major. Intended for small matrices and tests.
  std::vector<double> to_dense() const;

  friend bool operator==(const CsrMatrix&, const CsrMatrix&) = default;
};

/// Accumulates rows one at a time; each appended row must already be sorted.
class CsrBuilder {
 public:
  CsrBuilder(std::size_t rows, std::size_t cols);

  void reserve(std::size_t nnz);
  void append_row(std::span<const Index> indices, std::span<const double> values);
  CsrMatrix finish() &&;

 private:
  CsrMatrix m_;
};

}  // namespace recbench
