#include "recbench/common/csr.hpp"

#include <cassert>
#include <stdexcept>

namespace recbench {

CsrMatrix CsrMatrix::transpose() const {
  CsrMatrix t;
  t.rows = cols;
  t.cols = rows;
  t.indptr.assign(cols + 1, 0);
  t.indices.resize(nnz());
  t.values.resize(nnz());
  for (const Index c : indices) ++t.indptr[c + 1];
  for (std::size_t c = 0; c < cols; ++c) t.indptr[c + 1] += t.indptr[c];
  std::vector<std::size_t> cursor(t.indptr.begin(), t.indptr.end() - 1);
  // Rows are visited in ascending order, so each output row comes out sorted.
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = indptr[r]; k < indptr[r + 1]; ++k) {
      const std::size_t dst = cursor[indices[k]]++;
      t.indices[dst] = static_cast<Index>(r);
      t.values[dst] = values[k];
    }
  }
  return t;
}

std::vector<double> CsrMatrix::to_dense() const {
  std::vector<double> dense(rows * cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = indptr[r]; k < indptr[r + 1]; ++k) {
      dense[r * cols + indices[k]] = values[k];
    }
  }
  return dense;
}

CsrBuilder::CsrBuilder(std::size_t rows, std::size_t cols) {
  m_.rows = rows;
  m_.cols = cols;
  m_.indptr.reserve(rows + 1);
}

void CsrBuilder::reserve(std::size_t nnz) {
  m_.indices.reserve(nnz);
  m_.values.reserve(nnz);
}

void CsrBuilder::append_row(std::span<const Index> indices, std::span<const double> values) {
  if (indices.size() != values.size()) throw std::invalid_argument("CsrBuilder: size mismatch");
  if (m_.indptr.size() > m_.rows) throw std::logic_error("CsrBuilder: too many rows");
  m_.indices.insert(m_.indices.end(), indices.begin(), indices.end());
  m_.values.insert(m_.values.end(), values.begin(), values.end());
  m_.indptr.push_back(m_.indices.size());
}

CsrMatrix CsrBuilder::finish() && {
  while (m_.indptr.size() < m_.rows + 1) m_.indptr.push_back(m_.indices.size());
  return std::move(m_);
}

}  // namespace recbench
