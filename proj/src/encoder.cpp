#include "gte/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "gte/error.hpp"

namespace gte {

void EncodeConfig::validate() const {
  if (lambda <= 0.0) throw ConfigError("lambda must be positive");
  if (d_max < 3) throw ConfigError("D_max must be at least 3");
  if (!(d > min_sep && min_sep > 0.0)) {
    throw ConfigError("require d > min_sep > 0");
  }
}

int sector_of(double dx, double dy, int d_max) {
  if (dx == 0.0 && dy == 0.0) {
    throw ConfigError("sector_of: zero direction vector");
  }
  double a = angle_deg({dx, dy});
  int s = static_cast<int>(std::floor(a / (360.0 / d_max))) + 1;
  return std::min(s, d_max);
}

namespace {

std::uint64_t sector_bit(int sector) { return std::uint64_t{1} << (sector - 1); }

}  // namespace

OrientationResult orient_edges(const SpatialGraph& g, int d_max,
                               double snap_lambda) {
  if (d_max < 3) throw ConfigError("D_max must be at least 3");

  std::vector<Vertex> vertices = g.vertices();
  std::unordered_map<int, std::size_t> index;
  for (std::size_t i = 0; i < vertices.size(); ++i) index.emplace(vertices[i].id, i);
  auto pos = [&](int id) { return vertices[index.at(id)].pos; };

  struct Item {
    Edge e;
    double angle;
  };
  std::vector<Item> items;
  items.reserve(g.edges().size());
  for (const Edge& e : g.edges()) {
    items.push_back({e, angle_deg(pos(e.b) - pos(e.a))});
  }
  std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
    return std::tie(x.e.a, x.angle, x.e.b) < std::tie(y.e.a, y.angle, y.e.b);
  });

  OrientationResult out;
  out.report.total_edges = items.size();
  std::unordered_map<int, std::uint64_t> occupied;
  std::vector<Edge> final_edges;
  final_edges.reserve(items.size());
  int next_id = g.max_id() + 1;

  auto try_take = [&](int tail, int head) -> bool {
    Vec2 d = pos(head) - pos(tail);
    int s = sector_of(d.x, d.y, d_max);
    std::uint64_t& mask = occupied[tail];
    if (mask & sector_bit(s)) return false;
    mask |= sector_bit(s);
    out.edges.push_back({tail, head, s});
    return true;
  };

  for (const Item& it : items) {
    const Edge& e = it.e;
    if (try_take(e.a, e.b)) {
      final_edges.push_back(e);
      continue;
    }
    if (try_take(e.b, e.a)) {
      final_edges.push_back(e);
      ++out.report.undirected_fixed;
      continue;
    }
    // Both endpoints have the relevant sector taken: split at the
    // midpoint and orient both halves outward from the fresh vertex.
    Vec2 m = lerp(pos(e.a), pos(e.b), 0.5);
    if (snap_lambda > 0.0) {
      m.x = std::llround(m.x / snap_lambda) * snap_lambda;
      m.y = std::llround(m.y / snap_lambda) * snap_lambda;
    }
    if (m == pos(e.a) || m == pos(e.b)) {
      throw ValidationError("orient_edges: midpoint split of edge (" +
                            std::to_string(e.a) + "," + std::to_string(e.b) +
                            ") collapses onto an endpoint");
    }
    int mid = next_id++;
    vertices.push_back({mid, m});
    index.emplace(mid, vertices.size() - 1);
    if (!try_take(mid, e.a) || !try_take(mid, e.b)) {
      throw ValidationError("orient_edges: vertex " + std::to_string(e.a) +
                            " remains unplaceable after midpoint split");
    }
    final_edges.push_back({e.a, mid});
    final_edges.push_back({mid, e.b});
    ++out.report.interpolation_fixed;
  }

  out.graph = SpatialGraph(g.width(), g.height(), std::move(vertices),
                           std::move(final_edges));
  return out;
}

GteTensor encode(const SpatialGraph& g, const EncodeConfig& cfg, FixReport* fixes) {
  cfg.validate();
  std::uint32_t wg = static_cast<std::uint32_t>(std::llround(g.width() / cfg.lambda)) + 1;
  std::uint32_t hg = static_cast<std::uint32_t>(std::llround(g.height() / cfg.lambda)) + 1;

  auto cell_of = [&](const Vec2& p) -> std::pair<std::int64_t, std::int64_t> {
    std::int64_t cx = std::llround(p.x / cfg.lambda);
    std::int64_t cy = std::llround(p.y / cfg.lambda);
    cx = std::clamp<std::int64_t>(cx, 0, wg - 1);
    cy = std::clamp<std::int64_t>(cy, 0, hg - 1);
    return {cx, cy};
  };

  // Quantize vertices to cell centers before orientation so stored edge
  // vectors match decoded candidate positions exactly.
  std::vector<Vertex> snapped;
  snapped.reserve(g.vertices().size());
  std::unordered_map<std::int64_t, int> cell_owner;
  auto claim_cell = [&](int id, std::int64_t cx, std::int64_t cy) {
    std::int64_t key = cy * wg + cx;
    auto [it, fresh] = cell_owner.emplace(key, id);
    if (!fresh) {
      throw ValidationError("encoding collision: vertices " +
                            std::to_string(it->second) + " and " +
                            std::to_string(id) + " map to cell (" +
                            std::to_string(cx) + "," + std::to_string(cy) + ")");
    }
  };
  for (const Vertex& v : g.vertices()) {
    auto [cx, cy] = cell_of(v.pos);
    claim_cell(v.id, cx, cy);
    snapped.push_back({v.id, {cx * cfg.lambda, cy * cfg.lambda}});
  }
  SpatialGraph snapped_graph(g.width(), g.height(), std::move(snapped), g.edges());

  OrientationResult oriented = orient_edges(snapped_graph, cfg.d_max, cfg.lambda);
  if (fixes) *fixes = oriented.report;
  // Midpoints inserted by the orientation pass need cells of their own.
  for (const Vertex& v : oriented.graph.vertices()) {
    if (v.id > g.max_id()) {
      auto [cx, cy] = cell_of(v.pos);
      claim_cell(v.id, cx, cy);
    }
  }

  GteTensor t(wg, hg, static_cast<std::uint32_t>(cfg.d_max), cfg.lambda);
  for (const Vertex& v : oriented.graph.vertices()) {
    auto [cx, cy] = cell_of(v.pos);
    t.set(static_cast<std::uint32_t>(cx), static_cast<std::uint32_t>(cy), 0, 1.0f);
  }
  for (const OrientedEdge& e : oriented.edges) {
    Vec2 tail = oriented.graph.position(e.tail);
    Vec2 head = oriented.graph.position(e.head);
    auto [cx, cy] = cell_of(tail);
    std::uint32_t x = static_cast<std::uint32_t>(cx);
    std::uint32_t y = static_cast<std::uint32_t>(cy);
    Vec2 d = head - tail;
    t.set(x, y, 3 * e.sector - 2, 1.0f);
    t.set(x, y, 3 * e.sector - 1, static_cast<float>(d.x));
    t.set(x, y, 3 * e.sector, static_cast<float>(d.y));
  }
  return t;
}

}  // namespace gte
