#include "recbench/models/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "recbench/common/parallel.hpp"

namespace recbench {

void prune_row(std::span<const Index> candidates, std::span<const double> values,
               std::size_t topk, std::vector<Index>& out_idx, std::vector<double>& out_val) {
  out_idx.clear();
  out_val.clear();
  std::vector<std::size_t> order;
  order.reserve(candidates.size());
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (values[k] != 0.0) order.push_back(k);
  }
  const auto better = [&](std::size_t a, std::size_t b) {
    if (values[a] != values[b]) return values[a] > values[b];
    return candidates[a] < candidates[b];
  };
  if (order.size() > topk) {
    std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(topk), order.end(),
                     better);
    order.resize(topk);
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return candidates[a] < candidates[b]; });
  for (const std::size_t k : order) {
    out_idx.push_back(candidates[k]);
    out_val.push_back(values[k]);
  }
}

namespace {

struct Candidate {
  double value;
  Index index;
};

bool ranks_before(const Candidate& a, const Candidate& b) {
  if (a.value != b.value) return a.value > b.value;
  return a.index < b.index;
}

/// Row-by-row sparse product left * right with a per-entry transform and
/// top-k pruning. finalize(row, col, dot) returns the stored value.
template <typename Finalize>
CsrMatrix pruned_product(const CsrMatrix& left, const CsrMatrix& right, std::size_t topk,
                         Finalize finalize) {
  const std::size_t n_rows = left.rows;
  const std::size_t n_cols = right.cols;
  std::vector<std::vector<Index>> row_idx(n_rows);
  std::vector<std::vector<double>> row_val(n_rows);

  // Rows of `right` holding a single repeated value (binary data, uniform
  // transition rows) take a loop without the per-entry value load.
  std::vector<double> row_constant(right.rows, 0.0);
  bool uniform_rows = true;
  for (std::size_t m = 0; m < right.rows && uniform_rows; ++m) {
    const auto rv = right.row_values(m);
    if (rv.empty()) continue;
    row_constant[m] = rv[0];
    for (const double v : rv) {
      if (v != rv[0]) {
        uniform_rows = false;
        break;
      }
    }
  }

  parallel_chunks(n_rows, [&](std::size_t begin, std::size_t end) {
    std::vector<double> acc(n_cols, 0.0);
    std::vector<char> touched_mark(n_cols, 0);
    std::vector<Index> touched;
    std::vector<Candidate> candidates;
    for (std::size_t r = begin; r < end; ++r) {
      const auto mids = left.row_indices(r);
      const auto lv = left.row_values(r);
      std::size_t work = 0;
      for (const Index m : mids) work += right.row_size(m);
      // Dense rows: skip touched-column bookkeeping and scan acc afterwards.
      const bool dense = work >= n_cols;
      touched.clear();
      for (std::size_t a = 0; a < mids.size(); ++a) {
        const auto cols = right.row_indices(mids[a]);
        if (uniform_rows) {
          const double w = lv[a] * row_constant[mids[a]];
          if (dense) {
            for (const Index c : cols) acc[c] += w;
            continue;
          }
          for (const Index c : cols) {
            if (!touched_mark[c]) {
              touched_mark[c] = 1;
              touched.push_back(c);
            }
            acc[c] += w;
          }
          continue;
        }
        const auto rv = right.row_values(mids[a]);
        if (dense) {
          for (std::size_t b = 0; b < cols.size(); ++b) acc[cols[b]] += lv[a] * rv[b];
          continue;
        }
        for (std::size_t b = 0; b < cols.size(); ++b) {
          const Index c = cols[b];
          if (!touched_mark[c]) {
            touched_mark[c] = 1;
            touched.push_back(c);
          }
          acc[c] += lv[a] * rv[b];
        }
      }
      candidates.clear();
      const auto take = [&](Index c) {
        if (acc[c] == 0.0) return;
        const double v = finalize(r, c, acc[c]);
        acc[c] = 0.0;
        if (v != 0.0) candidates.push_back({v, c});
      };
      if (dense) {
        for (std::size_t c = 0; c < n_cols; ++c) take(static_cast<Index>(c));
      } else {
        for (const Index c : touched) {
          touched_mark[c] = 0;
          take(c);
        }
      }
      if (candidates.size() > topk) {
        std::nth_element(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(topk),
                         candidates.end(), ranks_before);
        candidates.resize(topk);
      }
      std::sort(candidates.begin(), candidates.end(),
                [](const Candidate& a, const Candidate& b) { return a.index < b.index; });
      row_idx[r].reserve(candidates.size());
      row_val[r].reserve(candidates.size());
      for (const auto& cand : candidates) {
        row_idx[r].push_back(cand.index);
        row_val[r].push_back(cand.value);
      }
    }
  });

  CsrBuilder out(n_rows, n_cols);
  std::size_t nnz = 0;
  for (const auto& r : row_idx) nnz += r.size();
  out.reserve(nnz);
  for (std::size_t r = 0; r < n_rows; ++r) out.append_row(row_idx[r], row_val[r]);
  return std::move(out).finish();
}

}  // namespace

CsrMatrix cosine_similarity(const CsrMatrix& docs, double shrink, std::size_t topk) {
  std::vector<double> norm(docs.rows, 0.0);
  for (std::size_t d = 0; d < docs.rows; ++d) {
    double s = 0.0;
    for (const double v : docs.row_values(d)) s += v * v;
    norm[d] = std::sqrt(s);
  }
  const CsrMatrix by_term = docs.transpose();
  return pruned_product(docs, by_term, topk, [&](std::size_t a, std::size_t b, double dot) {
    if (a == b) return 0.0;
    const double denom = norm[a] * norm[b] + shrink;
    return denom > 0.0 ? dot / denom : 0.0;
  });
}

CsrMatrix transition_matrix(const CsrMatrix& x, double alpha) {
  CsrMatrix p = x;
  for (std::size_t r = 0; r < p.rows; ++r) {
    double total = 0.0;
    for (const double v : x.row_values(r)) total += v;
    if (total <= 0.0) continue;
    double last_in = 0.0;
    double last_out = 0.0;
    for (std::size_t k = p.indptr[r]; k < p.indptr[r + 1]; ++k) {
      // Binary rows repeat one value; pow once per run.
      if (k == p.indptr[r] || p.values[k] != last_in) {
        last_in = p.values[k];
        last_out = std::pow(last_in / total, alpha);
      }
      p.values[k] = last_out;
    }
  }
  return p;
}

CsrMatrix walk_similarity(const InteractionMatrix& train, double alpha, double beta,
                          std::size_t topk) {
  const CsrMatrix user_to_item = transition_matrix(train.csr(), alpha);
  const CsrMatrix item_to_user = transition_matrix(train.transposed(), alpha);
  const auto degree = train.item_degrees();
  std::vector<double> popularity_scale(train.n_items(), 0.0);
  for (std::size_t j = 0; j < degree.size(); ++j) {
    if (degree[j] > 0) popularity_scale[j] = std::pow(static_cast<double>(degree[j]), -beta);
  }
  return pruned_product(item_to_user, user_to_item, topk,
                        [&](std::size_t, std::size_t j, double p) { return p * popularity_scale[j]; });
}

}  // namespace recbench
