#pragma once

#include <cstddef>
#include <vector>

#include "recbench/data/interaction_matrix.hpp"

namespace recbench {

/// Dense item x item EASE weights, row-major.
///
/// With G = X^T X + l2 I and P = G^-1 (Cholesky), B = I - P diag(1/diag(P)),
/// i.e. B[i][j] = -P[i][j] / P[j][j] off the diagonal; the diagonal is set to
/// exactly 0.
std::vector<double> ease_weights(const InteractionMatrix& train, double l2);

/// X^T X as a dense row-major n_items x n_items matrix.
std::vector<double> gram_matrix(const InteractionMatrix& train);

}  // namespace recbench
