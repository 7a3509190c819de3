#include "gte/decoder.hpp"

#include <algorithm>
#include <set>

#include "gte/error.hpp"
#include "gte/spatial_hash.hpp"

namespace gte {

void DecodeConfig::validate() const {
  if (!(p_thr > 0.0 && p_thr < 1.0)) throw ConfigError("p_thr must be in (0,1)");
  if (!(edge_thr > 0.0 && edge_thr < 1.0)) {
    throw ConfigError("edge_thr must be in (0,1)");
  }
  if (w < 0.0) throw ConfigError("w must be non-negative");
  if (max_connect_dist <= 0.0) throw ConfigError("max_connect_dist must be positive");
  if (candidate_radius < max_connect_dist) {
    throw ConfigError("candidate_radius must be >= max_connect_dist");
  }
  if (nms_window < 1 || nms_window % 2 == 0) {
    throw ConfigError("nms_window must be odd and positive");
  }
}

std::vector<Candidate> extract_vertices(const GteTensor& t, const DecodeConfig& cfg) {
  cfg.validate();
  std::vector<Candidate> out;
  int half = cfg.nms_window / 2;
  std::int64_t wg = t.grid_width();
  std::int64_t hg = t.grid_height();
  for (std::int64_t y = 0; y < hg; ++y) {
    for (std::int64_t x = 0; x < wg; ++x) {
      float pv = t.vertexness(static_cast<std::uint32_t>(x),
                              static_cast<std::uint32_t>(y));
      if (!(pv > cfg.p_thr)) continue;
      bool keep = true;
      for (std::int64_t ny = std::max<std::int64_t>(0, y - half);
           keep && ny <= std::min(hg - 1, y + half); ++ny) {
        for (std::int64_t nx = std::max<std::int64_t>(0, x - half);
             nx <= std::min(wg - 1, x + half); ++nx) {
          if (nx == x && ny == y) continue;
          float q = t.vertexness(static_cast<std::uint32_t>(nx),
                                 static_cast<std::uint32_t>(ny));
          // Plateau tie-break: the lexicographically smaller (y,x) wins.
          if (q > pv || (q == pv && std::tie(ny, nx) < std::tie(y, x))) {
            keep = false;
            break;
          }
        }
      }
      if (keep) {
        out.push_back({{x * t.lambda(), y * t.lambda()},
                       static_cast<double>(pv),
                       static_cast<std::uint32_t>(x),
                       static_cast<std::uint32_t>(y)});
      }
    }
  }
  return out;
}

double edge_distance(const Vec2& v, const Vec2& dvec, const Vec2& u, double w) {
  return distance(v + dvec, u) + w * cosine_distance(dvec, u - v);
}

std::optional<std::size_t> select_edge_target(
    const Vec2& v, const Vec2& dvec, const std::vector<Candidate>& candidates,
    const std::vector<std::size_t>& pool, std::size_t self, const DecodeConfig& cfg) {
  std::optional<std::size_t> best;
  double best_score = 0.0;
  for (std::size_t i : pool) {
    if (i == self) continue;
    double score = edge_distance(v, dvec, candidates[i].pos, cfg.w);
    if (!best || score < best_score ||
        (score == best_score &&
         std::tie(candidates[i].cy, candidates[i].cx) <
             std::tie(candidates[*best].cy, candidates[*best].cx))) {
      best = i;
      best_score = score;
    }
  }
  if (!best) return std::nullopt;
  if (distance(v + dvec, candidates[*best].pos) > cfg.max_connect_dist) {
    return std::nullopt;
  }
  return best;
}

DecodeResult connect_edges(const std::vector<Candidate>& candidates,
                           const GteTensor& t, const DecodeConfig& cfg) {
  cfg.validate();
  DecodeReport report;
  report.vertices = candidates.size();

  PointHash hash(cfg.candidate_radius);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    hash.insert(static_cast<int>(i), candidates[i].pos);
  }

  std::set<std::pair<int, int>> edge_set;
  std::vector<int> pool_ids;
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Candidate& c = candidates[i];
    for (std::uint32_t s = 1; s <= t.d_max(); ++s) {
      if (!(t.edgeness(c.cx, c.cy, s) > cfg.edge_thr)) continue;
      ++report.slot_total;
      Vec2 dvec{t.edge_dx(c.cx, c.cy, s), t.edge_dy(c.cx, c.cy, s)};
      if (dvec.x == 0.0 && dvec.y == 0.0) {
        ++report.slot_degenerate;
        continue;
      }
      hash.query_radius(c.pos, cfg.candidate_radius, pool_ids);
      pool.assign(pool_ids.begin(), pool_ids.end());
      auto target = select_edge_target(c.pos, dvec, candidates, pool, i, cfg);
      if (!target) {
        ++report.slot_unmatched;
        continue;
      }
      ++report.slot_connected;
      int a = static_cast<int>(i);
      int b = static_cast<int>(*target);
      if (a > b) std::swap(a, b);
      edge_set.emplace(a, b);  // duplicates proposed from both ends merge here
    }
  }

  std::vector<Vertex> vertices;
  vertices.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    vertices.push_back({static_cast<int>(i), candidates[i].pos});
  }
  std::vector<Edge> edges;
  edges.reserve(edge_set.size());
  for (const auto& [a, b] : edge_set) edges.push_back({a, b});
  report.edges = edges.size();
  return {SpatialGraph(t.width(), t.height(), std::move(vertices), std::move(edges)),
          report};
}

DecodeResult decode(const GteTensor& t, const DecodeConfig& cfg) {
  return connect_edges(extract_vertices(t, cfg), t, cfg);
}

}  // namespace gte
