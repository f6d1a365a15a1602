#include "recbench/models/ease.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "recbench/common/error.hpp"

namespace recbench {

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::vector<double> gram_matrix(const InteractionMatrix& train) {
  const std::size_t n = train.n_items();
  std::vector<double> g(n * n, 0.0);
  for (std::size_t u = 0; u < train.n_users(); ++u) {
    const auto items = train.row(u);
    const auto w = train.row_weights(u);
    for (std::size_t a = 0; a < items.size(); ++a) {
      double* row = g.data() + static_cast<std::size_t>(items[a]) * n;
      for (std::size_t b = 0; b < items.size(); ++b) row[items[b]] += w[a] * w[b];
    }
  }
  return g;
}

std::vector<double> ease_weights(const InteractionMatrix& train, double l2) {
  const auto n = static_cast<Eigen::Index>(train.n_items());
  std::vector<double> g = gram_matrix(train);
  Eigen::Map<RowMajorMatrix> gram(g.data(), n, n);
  gram.diagonal().array() += l2;

  Eigen::LLT<RowMajorMatrix> llt(gram);
  if (llt.info() != Eigen::Success) throw Error("EASE: Gram matrix is not positive definite");
  RowMajorMatrix p = llt.solve(RowMajorMatrix::Identity(n, n));

  std::vector<double> b(g.size());
  Eigen::Map<RowMajorMatrix> weights(b.data(), n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    weights.col(j) = -p.col(j) / p(j, j);
    weights(j, j) = 0.0;
  }
  return b;
}

}  // namespace recbench
