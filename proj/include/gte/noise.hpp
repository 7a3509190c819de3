#ifndef GTE_NOISE_HPP
#define GTE_NOISE_HPP

#include <cstdint>

#include "gte/tensor.hpp"

namespace gte {

// Synthetic corruption standing in for model prediction noise.
struct NoiseConfig {
  double sigma_p = 0.0;    // Gaussian std on probability channels
  double sigma_vec = 0.0;  // Gaussian std on vector channels (meters)
  int blur_radius = 0;     // box blur radius on probability channels (cells)
  double drop_rate = 0.0;  // fraction of true-vertex cells suppressed
  std::uint64_t seed = 0;

  void validate() const;
};

// Deterministic for a fixed seed. Probability channels: additive noise,
// optional box blur, clamp to [0,1]. Vector channels: additive noise.
// A drop_rate fraction of cells with input vertexness > 0.5 get p_v = 0.
GteTensor perturb(const GteTensor& t, const NoiseConfig& cfg);

}  // namespace gte

#endif
