#include "gte/noise.hpp"

#include <algorithm>
#include <cmath>

#include "gte/error.hpp"
#include "gte/rng.hpp"

namespace gte {

void NoiseConfig::validate() const {
  if (sigma_p < 0.0 || sigma_vec < 0.0) throw ConfigError("noise std must be >= 0");
  if (drop_rate < 0.0 || drop_rate > 1.0) {
    throw ConfigError("drop_rate must be in [0,1]");
  }
  if (blur_radius < 0) throw ConfigError("blur_radius must be >= 0");
}

namespace {

// Separable box blur of one channel, truncated at the grid border.
void box_blur_channel(GteTensor& t, std::uint32_t c, int radius) {
  std::uint32_t wg = t.grid_width();
  std::uint32_t hg = t.grid_height();
  std::vector<float> tmp(static_cast<std::size_t>(wg) * hg);
  for (std::uint32_t y = 0; y < hg; ++y) {
    for (std::uint32_t x = 0; x < wg; ++x) {
      double sum = 0.0;
      int n = 0;
      for (int dx = -radius; dx <= radius; ++dx) {
        std::int64_t nx = static_cast<std::int64_t>(x) + dx;
        if (nx < 0 || nx >= wg) continue;
        sum += t.at(static_cast<std::uint32_t>(nx), y, c);
        ++n;
      }
      tmp[static_cast<std::size_t>(y) * wg + x] = static_cast<float>(sum / n);
    }
  }
  for (std::uint32_t y = 0; y < hg; ++y) {
    for (std::uint32_t x = 0; x < wg; ++x) {
      double sum = 0.0;
      int n = 0;
      for (int dy = -radius; dy <= radius; ++dy) {
        std::int64_t ny = static_cast<std::int64_t>(y) + dy;
        if (ny < 0 || ny >= hg) continue;
        sum += tmp[static_cast<std::size_t>(ny) * wg + x];
        ++n;
      }
      t.set(x, y, c, static_cast<float>(sum / n));
    }
  }
}

}  // namespace

GteTensor perturb(const GteTensor& t, const NoiseConfig& cfg) {
  cfg.validate();
  GteTensor out = t;
  Rng rng(cfg.seed);

  if (cfg.sigma_p > 0.0 || cfg.sigma_vec > 0.0) {
    for (std::uint32_t y = 0; y < t.grid_height(); ++y) {
      for (std::uint32_t x = 0; x < t.grid_width(); ++x) {
        for (std::uint32_t c = 0; c < t.channels(); ++c) {
          bool prob = c == 0 || (c - 1) % 3 == 0;
          double sigma = prob ? cfg.sigma_p : cfg.sigma_vec;
          if (sigma > 0.0) {
            out.set(x, y, c,
                    static_cast<float>(out.at(x, y, c) + sigma * rng.gaussian()));
          }
        }
      }
    }
  }

  if (cfg.blur_radius > 0) {
    box_blur_channel(out, 0, cfg.blur_radius);
    for (std::uint32_t s = 1; s <= t.d_max(); ++s) {
      box_blur_channel(out, 3 * s - 2, cfg.blur_radius);
    }
  }

  for (std::uint32_t y = 0; y < t.grid_height(); ++y) {
    for (std::uint32_t x = 0; x < t.grid_width(); ++x) {
      for (std::uint32_t c = 0; c < t.channels(); ++c) {
        if (c == 0 || (c - 1) % 3 == 0) {
          out.set(x, y, c, std::clamp(out.at(x, y, c), 0.0f, 1.0f));
        }
      }
    }
  }

  if (cfg.drop_rate > 0.0) {
    for (std::uint32_t y = 0; y < t.grid_height(); ++y) {
      for (std::uint32_t x = 0; x < t.grid_width(); ++x) {
        if (t.vertexness(x, y) > 0.5f && rng.uniform() < cfg.drop_rate) {
          out.set(x, y, 0, 0.0f);
        }
      }
    }
  }
  return out;
}

}  // namespace gte
