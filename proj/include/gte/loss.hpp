#ifndef GTE_LOSS_HPP
#define GTE_LOSS_HPP

#include "gte/tensor.hpp"

namespace gte {

struct LossBreakdown {
  double total = 0.0;
  double vertex_ce = 0.0;
  double edge_ce = 0.0;
  double vector_l2 = 0.0;
  std::size_t cells = 0;
  std::size_t masked_cells = 0;  // cells with ground-truth vertexness 1
};

// Masked tensor loss: per cell, binary cross-entropy on vertexness plus,
// only where the ground truth has a vertex, cross-entropy on each
// edgeness channel and squared L2 on each edge vector. Truth probability
// channels must be exactly 0 or 1; predictions are clamped to
// [1e-7, 1-1e-7] inside the logs.
LossBreakdown gte_loss(const GteTensor& predicted, const GteTensor& truth);

}  // namespace gte

#endif
