#ifndef GTE_SPATIAL_HASH_HPP
#define GTE_SPATIAL_HASH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "gte/geometry.hpp"

namespace gte {

namespace detail {
inline std::int64_t cell_key(std::int64_t cx, std::int64_t cy) {
  return (cx << 32) ^ (cy & 0xffffffffll);
}
}  // namespace detail

// Uniform grid over points, used for radius queries during decoding and
// marker matching.
class PointHash {
 public:
  explicit PointHash(double cell_size) : cell_(cell_size > 0 ? cell_size : 1.0) {}

  void insert(int id, const Vec2& p) {
    buckets_[key_of(p)].push_back({id, p});
  }

  // Ids of points within `radius` of `p`, in insertion order per bucket.
  void query_radius(const Vec2& p, double radius, std::vector<int>& out) const {
    out.clear();
    std::int64_t cx0 = coord(p.x - radius), cx1 = coord(p.x + radius);
    std::int64_t cy0 = coord(p.y - radius), cy1 = coord(p.y + radius);
    for (std::int64_t cy = cy0; cy <= cy1; ++cy) {
      for (std::int64_t cx = cx0; cx <= cx1; ++cx) {
        auto it = buckets_.find(detail::cell_key(cx, cy));
        if (it == buckets_.end()) continue;
        for (const auto& e : it->second) {
          if (distance(e.second, p) <= radius) out.push_back(e.first);
        }
      }
    }
    std::sort(out.begin(), out.end());
  }

 private:
  std::int64_t coord(double v) const {
    return static_cast<std::int64_t>(std::floor(v / cell_));
  }
  std::int64_t key_of(const Vec2& p) const {
    return detail::cell_key(coord(p.x), coord(p.y));
  }

  double cell_;
  std::unordered_map<std::int64_t, std::vector<std::pair<int, Vec2>>> buckets_;
};

// Uniform grid over segments keyed by covered cells of the bounding box.
class SegmentHash {
 public:
  explicit SegmentHash(double cell_size) : cell_(cell_size > 0 ? cell_size : 1.0) {}

  void insert(int id, const Vec2& a, const Vec2& b) {
    for_cells(a, b, 0.0, [&](std::int64_t key) { buckets_[key].push_back(id); });
  }

  // Ids of segments whose cells overlap the query segment's bounding box
  // inflated by `pad`. Output is sorted and deduplicated.
  void query(const Vec2& a, const Vec2& b, double pad, std::vector<int>& out) const {
    out.clear();
    for_cells(a, b, pad, [&](std::int64_t key) {
      auto it = buckets_.find(key);
      if (it == buckets_.end()) return;
      out.insert(out.end(), it->second.begin(), it->second.end());
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }

 private:
  template <typename F>
  void for_cells(const Vec2& a, const Vec2& b, double pad, F&& f) const {
    std::int64_t cx0 = coord(std::min(a.x, b.x) - pad);
    std::int64_t cx1 = coord(std::max(a.x, b.x) + pad);
    std::int64_t cy0 = coord(std::min(a.y, b.y) - pad);
    std::int64_t cy1 = coord(std::max(a.y, b.y) + pad);
    for (std::int64_t cy = cy0; cy <= cy1; ++cy) {
      for (std::int64_t cx = cx0; cx <= cx1; ++cx) f(detail::cell_key(cx, cy));
    }
  }
  std::int64_t coord(double v) const {
    return static_cast<std::int64_t>(std::floor(v / cell_));
  }

  double cell_;
  std::unordered_map<std::int64_t, std::vector<int>> buckets_;
};

}  // namespace gte

#endif
