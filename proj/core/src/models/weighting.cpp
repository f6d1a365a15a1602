#include <cmath>
#include <vector>

#include "recbench/models/similarity.hpp"

namespace recbench {

CsrMatrix apply_weighting(const CsrMatrix& docs, Weighting weighting) {
  if (weighting == Weighting::None) return docs;

  const auto n_docs = static_cast<double>(docs.rows);
  std::vector<double> idf(docs.cols, 0.0);
  {
    std::vector<std::size_t> df(docs.cols, 0);
    for (const Index t : docs.indices) ++df[t];
    for (std::size_t t = 0; t < docs.cols; ++t) {
      idf[t] = std::log(n_docs / (1.0 + static_cast<double>(df[t])));
    }
  }

  std::vector<double> length_norm(docs.rows, 1.0);
  if (weighting == Weighting::Bm25) {
    double total = 0.0;
    std::vector<double> row_sum(docs.rows, 0.0);
    for (std::size_t d = 0; d < docs.rows; ++d) {
      for (const double v : docs.row_values(d)) row_sum[d] += v;
      total += row_sum[d];
    }
    const double avg = docs.rows > 0 ? total / n_docs : 0.0;
    for (std::size_t d = 0; d < docs.rows; ++d) {
      length_norm[d] = avg > 0.0 ? (1.0 - kBm25B) + kBm25B * row_sum[d] / avg : 1.0;
    }
  }

  CsrBuilder out(docs.rows, docs.cols);
  out.reserve(docs.nnz());
  std::vector<Index> idx;
  std::vector<double> val;
  for (std::size_t d = 0; d < docs.rows; ++d) {
    idx.clear();
    val.clear();
    const auto terms = docs.row_indices(d);
    const auto tf = docs.row_values(d);
    for (std::size_t k = 0; k < terms.size(); ++k) {
      double w = 0.0;
      if (weighting == Weighting::TfIdf) {
        w = std::sqrt(tf[k]) * idf[terms[k]];
      } else {
        w = tf[k] * (kBm25K1 + 1.0) / (kBm25K1 * length_norm[d] + tf[k]) * idf[terms[k]];
      }
      if (w != 0.0) {
        idx.push_back(terms[k]);
        val.push_back(w);
      }
    }
    out.append_row(idx, val);
  }
  return std::move(out).finish();
}

}  // namespace recbench
