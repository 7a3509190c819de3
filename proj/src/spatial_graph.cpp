#include "gte/spatial_graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <unordered_set>

#include "gte/error.hpp"
#include "gte/spatial_hash.hpp"

namespace gte {

SpatialGraph::SpatialGraph(double width, double height,
                           std::vector<Vertex> vertices, std::vector<Edge> edges)
    : width_(width), height_(height), vertices_(std::move(vertices)) {
  edges_.reserve(edges.size());
  for (Edge e : edges) {
    if (e.a > e.b) std::swap(e.a, e.b);
    edges_.push_back(e);
  }
  index_.reserve(vertices_.size());
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    index_.emplace(vertices_[i].id, i);
    max_id_ = std::max(max_id_, vertices_[i].id);
  }
  validate();
  adjacency_.assign(vertices_.size(), {});
  for (const Edge& e : edges_) {
    adjacency_[index_.at(e.a)].push_back(e.b);
    adjacency_[index_.at(e.b)].push_back(e.a);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

void SpatialGraph::validate() const {
  if (width_ < 0.0 || height_ < 0.0) {
    throw ValidationError("negative extent");
  }
  if (index_.size() != vertices_.size()) {
    throw ValidationError("duplicate vertex id");
  }
  for (const Vertex& v : vertices_) {
    if (!std::isfinite(v.pos.x) || !std::isfinite(v.pos.y)) {
      throw ValidationError("non-finite position at vertex " + std::to_string(v.id));
    }
    if (v.pos.x < 0.0 || v.pos.x > width_ || v.pos.y < 0.0 || v.pos.y > height_) {
      throw ValidationError("vertex " + std::to_string(v.id) + " outside extent");
    }
  }
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : edges_) {
    if (e.a == e.b) {
      throw ValidationError("self-loop at vertex " + std::to_string(e.a));
    }
    auto ia = index_.find(e.a);
    auto ib = index_.find(e.b);
    if (ia == index_.end() || ib == index_.end()) {
      throw ValidationError("edge (" + std::to_string(e.a) + "," +
                            std::to_string(e.b) + ") references missing vertex");
    }
    if (!seen.emplace(e.a, e.b).second) {
      throw ValidationError("duplicate edge (" + std::to_string(e.a) + "," +
                            std::to_string(e.b) + ")");
    }
    if (vertices_[ia->second].pos == vertices_[ib->second].pos) {
      throw ValidationError("zero-length edge (" + std::to_string(e.a) + "," +
                            std::to_string(e.b) + ")");
    }
  }
}

std::size_t SpatialGraph::index_of(int id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw ValidationError("unknown vertex id " + std::to_string(id));
  }
  return it->second;
}

const std::vector<int>& SpatialGraph::neighbors(int id) const {
  return adjacency_[index_of(id)];
}

double SpatialGraph::total_arc_length() const {
  double total = 0.0;
  for (const Edge& e : edges_) total += edge_length(e);
  return total;
}

GraphStats compute_stats(const SpatialGraph& g, int d_max, double separation) {
  GraphStats s;
  s.vertex_count = g.vertices().size();
  s.edge_count = g.edges().size();
  for (const Vertex& v : g.vertices()) {
    int deg = g.degree(v.id);
    if (static_cast<std::size_t>(deg) >= s.degree_histogram.size()) {
      s.degree_histogram.resize(deg + 1, 0);
    }
    ++s.degree_histogram[deg];
    if (deg > d_max) ++s.over_degree_count;
  }
  SegmentHash hash(std::max(separation, 16.0));
  const auto& edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    hash.insert(static_cast<int>(i), g.position(edges[i].a), g.position(edges[i].b));
  }
  std::vector<int> cand;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    Vec2 a = g.position(edges[i].a), b = g.position(edges[i].b);
    hash.query(a, b, separation, cand);
    for (int j : cand) {
      if (static_cast<std::size_t>(j) <= i) continue;
      const Edge& e1 = edges[i];
      const Edge& e2 = edges[j];
      if (e1.a == e2.a || e1.a == e2.b || e1.b == e2.a || e1.b == e2.b) continue;
      if (segment_segment_distance(a, b, g.position(e2.a), g.position(e2.b)) <
          separation) {
        ++s.close_edge_pairs;
      }
    }
  }
  return s;
}

SpatialGraph interpolate(const SpatialGraph& g, double d) {
  if (d <= 0.0) throw ConfigError("interpolation distance must be positive");
  std::vector<Vertex> vertices = g.vertices();
  std::vector<Edge> edges;
  int next_id = g.max_id() + 1;
  for (const Edge& e : g.edges()) {
    Vec2 a = g.position(e.a);
    Vec2 b = g.position(e.b);
    double len = distance(a, b);
    int k = len < d ? 1 : static_cast<int>(std::ceil(len / d));
    while (len / k >= d) ++k;  // exact multiples must still end below d
    int prev = e.a;
    for (int i = 1; i < k; ++i) {
      int id = next_id++;
      vertices.push_back({id, lerp(a, b, static_cast<double>(i) / k)});
      edges.push_back({prev, id});
      prev = id;
    }
    edges.push_back({prev, e.b});
  }
  return SpatialGraph(g.width(), g.height(), std::move(vertices), std::move(edges));
}

namespace {

struct Conflict {
  int u = 0;  // vertex of edge i
  int v = 0;  // vertex of edge j
  Vec2 pivot;  // point both vertices should move away from
};

// Offending vertex pairs: endpoints of non-adjacent edges that overlap
// (cross or pass within min_sep) and sit closer than min_sep.
std::vector<Conflict> find_conflicts(const std::vector<Vertex>& vertices,
                                     const std::unordered_map<int, std::size_t>& index,
                                     const std::vector<Edge>& edges,
                                     double min_sep) {
  auto pos = [&](int id) { return vertices[index.at(id)].pos; };
  SegmentHash hash(32.0);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    hash.insert(static_cast<int>(i), pos(edges[i].a), pos(edges[i].b));
  }
  std::vector<Conflict> out;
  std::vector<int> cand;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e1 = edges[i];
    Vec2 a1 = pos(e1.a), a2 = pos(e1.b);
    hash.query(a1, a2, min_sep, cand);
    for (int jj : cand) {
      std::size_t j = static_cast<std::size_t>(jj);
      if (j <= i) continue;
      const Edge& e2 = edges[j];
      if (e1.a == e2.a || e1.a == e2.b || e1.b == e2.a || e1.b == e2.b) continue;
      Vec2 b1 = pos(e2.a), b2 = pos(e2.b);
      if (segment_segment_distance(a1, a2, b1, b2) >= min_sep) continue;
      Vec2 pivot;
      if (auto x = segment_intersection(a1, a2, b1, b2)) {
        pivot = *x;
      } else {
        // Closest approach midpoint stands in for the crossing point.
        double best = 1e300;
        for (Vec2 p : {a1, a2}) {
          double t = closest_point_param(b1, b2, p);
          Vec2 q = lerp(b1, b2, t);
          if (double dd = distance(p, q); dd < best) {
            best = dd;
            pivot = lerp(p, q, 0.5);
          }
        }
        for (Vec2 p : {b1, b2}) {
          double t = closest_point_param(a1, a2, p);
          Vec2 q = lerp(a1, a2, t);
          if (double dd = distance(p, q); dd < best) {
            best = dd;
            pivot = lerp(p, q, 0.5);
          }
        }
      }
      for (int u : {e1.a, e1.b}) {
        for (int v : {e2.a, e2.b}) {
          if (u == v) continue;
          if (distance(pos(u), pos(v)) < min_sep) out.push_back({u, v, pivot});
        }
      }
    }
  }
  return out;
}

}  // namespace

ConflictResolution resolve_conflicts(const SpatialGraph& g, double min_sep,
                                     int max_iter) {
  if (min_sep <= 0.0) throw ConfigError("min_sep must be positive");
  if (max_iter < 1) throw ConfigError("max_iter must be at least 1");
  constexpr double kStep = 0.5;

  std::vector<Vertex> vertices = g.vertices();
  std::unordered_map<int, std::size_t> index;
  for (std::size_t i = 0; i < vertices.size(); ++i) index.emplace(vertices[i].id, i);
  const std::vector<Edge>& edges = g.edges();

  // Moving a vertex is only safe when all its incident edges share one
  // line; otherwise the shift would bend the surrounding geometry.
  auto move_dir = [&](int id) -> std::optional<Vec2> {
    const auto& nbrs = g.neighbors(id);
    if (nbrs.empty() || nbrs.size() > 2) return std::nullopt;
    Vec2 p = vertices[index.at(id)].pos;
    Vec2 d0 = normalized(vertices[index.at(nbrs[0])].pos - p);
    if (nbrs.size() == 2) {
      Vec2 d1 = normalized(vertices[index.at(nbrs[1])].pos - p);
      if (std::abs(cross(d0, d1)) > 0.05) return std::nullopt;  // not collinear
    }
    return d0;
  };

  ConflictReport report;
  std::vector<Conflict> conflicts;
  for (int iter = 0; iter < max_iter; ++iter) {
    conflicts = find_conflicts(vertices, index, edges, min_sep);
    report.iterations = iter + 1;
    if (conflicts.empty()) break;
    std::unordered_set<int> moved;  // one move per vertex per iteration
    for (const Conflict& c : conflicts) {
      for (int id : {c.u, c.v}) {
        if (moved.count(id)) continue;
        auto dir = move_dir(id);
        if (!dir) continue;
        Vec2& p = vertices[index.at(id)].pos;
        double sign = dot(p - c.pivot, *dir) >= 0.0 ? 1.0 : -1.0;
        Vec2 np = p + *dir * (sign * kStep);
        if (np.x < 0.0 || np.x > g.width() || np.y < 0.0 || np.y > g.height()) {
          np = p + *dir * (-sign * kStep);  // bounce inward at the border
          if (np.x < 0.0 || np.x > g.width() || np.y < 0.0 || np.y > g.height()) {
            continue;
          }
        }
        // Never crowd the neighbors on the same chain; an unresolved
        // conflict is better than folding the polyline onto itself.
        bool crowds = false;
        for (int n : g.neighbors(id)) {
          if (distance(np, vertices[index.at(n)].pos) < 4.0) crowds = true;
        }
        if (crowds) continue;
        report.max_displacement =
            std::max(report.max_displacement, distance(np, g.position(id)));
        p = np;
        moved.insert(id);
      }
    }
    if (moved.empty()) break;  // stuck; report what is left
  }
  report.remaining_conflicts =
      static_cast<int>(find_conflicts(vertices, index, edges, min_sep).size());
  return {SpatialGraph(g.width(), g.height(), std::move(vertices), edges), report};
}

SpatialGraph simplify(const SpatialGraph& g, double angle_tol_deg) {
  std::unordered_map<int, Vec2> pos;
  std::unordered_map<int, std::vector<int>> adj;
  for (const Vertex& v : g.vertices()) pos.emplace(v.id, v.pos);
  for (const Edge& e : g.edges()) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  double cos_tol = std::cos(deg_to_rad(angle_tol_deg));

  std::vector<int> order;
  for (const Vertex& v : g.vertices()) order.push_back(v.id);
  std::sort(order.begin(), order.end());

  bool changed = true;
  while (changed) {
    changed = false;
    for (int id : order) {
      auto it = adj.find(id);
      if (it == adj.end() || it->second.size() != 2) continue;
      int n1 = it->second[0];
      int n2 = it->second[1];
      if (n1 == n2) continue;
      Vec2 in = pos.at(id) - pos.at(n1);
      Vec2 out = pos.at(n2) - pos.at(id);
      double nin = norm(in), nout = norm(out);
      if (nin == 0.0 || nout == 0.0) continue;
      if (dot(in, out) / (nin * nout) < cos_tol) continue;  // real corner
      auto& a1 = adj.at(n1);
      auto& a2 = adj.at(n2);
      if (std::find(a1.begin(), a1.end(), n2) != a1.end()) continue;  // would duplicate
      std::replace(a1.begin(), a1.end(), id, n2);
      std::replace(a2.begin(), a2.end(), id, n1);
      adj.erase(id);
      pos.erase(id);
      changed = true;
    }
  }

  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  for (const Vertex& v : g.vertices()) {
    auto it = pos.find(v.id);
    if (it != pos.end()) vertices.push_back({v.id, it->second});
  }
  for (const auto& [id, nbrs] : adj) {
    for (int n : nbrs) {
      if (id < n) edges.push_back({id, n});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  return SpatialGraph(g.width(), g.height(), std::move(vertices), std::move(edges));
}

std::optional<double> shortest_path_length(const SpatialGraph& g, int a, int b) {
  std::size_t src = g.index_of(a);
  std::size_t dst = g.index_of(b);
  if (src == dst) return 0.0;
  std::vector<double> dist(g.vertices().size(), -1.0);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  heap.push({0.0, src});
  while (!heap.empty()) {
    auto [d, i] = heap.top();
    heap.pop();
    if (dist[i] >= 0.0) continue;
    dist[i] = d;
    if (i == dst) return d;
    int id = g.vertices()[i].id;
    Vec2 p = g.vertices()[i].pos;
    for (int n : g.neighbors(id)) {
      std::size_t j = g.index_of(n);
      if (dist[j] >= 0.0) continue;
      heap.push({d + distance(p, g.position(n)), j});
    }
  }
  return std::nullopt;
}

bool structurally_equivalent(const SpatialGraph& a, const SpatialGraph& b,
                             double pos_tol) {
  if (a.vertices().size() != b.vertices().size()) return false;
  if (a.edges().size() != b.edges().size()) return false;
  PointHash hash(std::max(pos_tol, 1.0));
  for (const Vertex& v : b.vertices()) hash.insert(v.id, v.pos);
  std::unordered_map<int, int> a_to_b;
  std::unordered_set<int> used;
  std::vector<int> cand;
  for (const Vertex& v : a.vertices()) {
    hash.query_radius(v.pos, pos_tol, cand);
    int match = -1;
    double best = pos_tol + 1.0;
    for (int id : cand) {
      if (used.count(id)) continue;
      double d = distance(v.pos, b.position(id));
      if (d < best) {
        best = d;
        match = id;
      }
    }
    if (match < 0) return false;
    a_to_b.emplace(v.id, match);
    used.insert(match);
  }
  std::set<std::pair<int, int>> be;
  for (const Edge& e : b.edges()) be.emplace(e.a, e.b);
  for (const Edge& e : a.edges()) {
    int x = a_to_b.at(e.a);
    int y = a_to_b.at(e.b);
    if (x > y) std::swap(x, y);
    if (!be.count({x, y})) return false;
  }
  return true;
}

}  // namespace gte
