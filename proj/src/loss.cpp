#include "gte/loss.hpp"

#include <cmath>

#include "gte/error.hpp"

namespace gte {

namespace {

constexpr double kEps = 1e-7;

// Binary cross-entropy with the prediction clamped inside the log.
// Exact agreement contributes exactly zero.
double bce(float truth, float pred) {
  double p = pred;
  if (truth == 1.0f) return -std::log(std::max(p, kEps));
  return -std::log(std::max(1.0 - p, kEps));
}

void check_binary(float v, const char* what) {
  if (v != 0.0f && v != 1.0f) {
    throw ValidationError(std::string("gte_loss: non-binary truth ") + what);
  }
}

}  // namespace

LossBreakdown gte_loss(const GteTensor& predicted, const GteTensor& truth) {
  if (!predicted.same_shape(truth)) {
    throw ValidationError("gte_loss: tensor dimension mismatch");
  }
  LossBreakdown out;
  out.cells = static_cast<std::size_t>(truth.grid_width()) * truth.grid_height();
  for (std::uint32_t y = 0; y < truth.grid_height(); ++y) {
    for (std::uint32_t x = 0; x < truth.grid_width(); ++x) {
      float tv = truth.vertexness(x, y);
      check_binary(tv, "vertexness");
      out.vertex_ce += bce(tv, predicted.vertexness(x, y));
      if (tv != 1.0f) continue;
      ++out.masked_cells;
      for (std::uint32_t s = 1; s <= truth.d_max(); ++s) {
        float te = truth.edgeness(x, y, s);
        check_binary(te, "edgeness");
        out.edge_ce += bce(te, predicted.edgeness(x, y, s));
        double ddx = static_cast<double>(truth.edge_dx(x, y, s)) -
                     predicted.edge_dx(x, y, s);
        double ddy = static_cast<double>(truth.edge_dy(x, y, s)) -
                     predicted.edge_dy(x, y, s);
        out.vector_l2 += ddx * ddx + ddy * ddy;
      }
    }
  }
  out.total = out.vertex_ce + out.edge_ce + out.vector_l2;
  return out;
}

}  // namespace gte
