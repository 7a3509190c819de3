#include "gte/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <unordered_map>

#include "gte/error.hpp"
#include "gte/rng.hpp"
#include "gte/spatial_hash.hpp"

namespace gte {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLengthTol = 1e-6;  // path lengths match at file precision

struct EdgeGeom {
  Vec2 a, b;    // canonical direction: a is the lexicographically smaller end
  double len = 0.0;
  std::size_t ia = 0, ib = 0;  // vertex indices matching a and b
};

// Index-based adjacency plus canonical edge geometry for one graph.
struct GraphView {
  std::vector<Vec2> pos;
  std::vector<std::vector<std::pair<std::size_t, double>>> adj;
  std::vector<EdgeGeom> geoms;
  SegmentHash hash{32.0};

  explicit GraphView(const SpatialGraph& g) {
    const auto& vs = g.vertices();
    pos.reserve(vs.size());
    for (const Vertex& v : vs) pos.push_back(v.pos);
    adj.assign(vs.size(), {});
    std::vector<Edge> edges = g.edges();
    std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
      return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    geoms.reserve(edges.size());
    for (const Edge& e : edges) {
      EdgeGeom ge;
      ge.ia = g.index_of(e.a);
      ge.ib = g.index_of(e.b);
      ge.a = pos[ge.ia];
      ge.b = pos[ge.ib];
      if (std::tie(ge.b.x, ge.b.y) < std::tie(ge.a.x, ge.a.y)) {
        std::swap(ge.a, ge.b);
        std::swap(ge.ia, ge.ib);
      }
      ge.len = distance(ge.a, ge.b);
      adj[ge.ia].push_back({ge.ib, ge.len});
      adj[ge.ib].push_back({ge.ia, ge.len});
      hash.insert(static_cast<int>(geoms.size()), ge.a, ge.b);
      geoms.push_back(ge);
    }
  }
};

struct ArcPoint {
  std::size_t edge = 0;
  double t = 0.0;
  Vec2 pos;
};

// Points every `spacing` meters of accumulated arc length, starting at
// spacing/2, walking edges in canonical order.
std::vector<ArcPoint> arc_points(const GraphView& v, double spacing) {
  std::vector<ArcPoint> out;
  double next = spacing / 2.0;
  double walked = 0.0;
  for (std::size_t i = 0; i < v.geoms.size(); ++i) {
    const EdgeGeom& ge = v.geoms[i];
    while (next - walked <= ge.len) {
      double t = (next - walked) / ge.len;
      out.push_back({i, t, lerp(ge.a, ge.b, t)});
      next += spacing;
    }
    walked += ge.len;
  }
  return out;
}

struct Snap {
  std::size_t edge = 0;
  double t = 0.0;
  Vec2 pos;
  double dist = 0.0;
};

std::optional<Snap> snap_point(const GraphView& v, const Vec2& p, double max_dist) {
  std::vector<int> cand;
  v.hash.query(p, p, max_dist, cand);
  std::optional<Snap> best;
  for (int i : cand) {
    const EdgeGeom& ge = v.geoms[static_cast<std::size_t>(i)];
    double t = closest_point_param(ge.a, ge.b, p);
    Vec2 q = lerp(ge.a, ge.b, t);
    double d = distance(p, q);
    if (d <= max_dist && (!best || d < best->dist)) {
      best = Snap{static_cast<std::size_t>(i), t, q, d};
    }
  }
  return best;
}

// Dijkstra from a point on an edge, bounded by `radius`.
std::vector<double> dist_from(const GraphView& v, const Snap& s, double radius) {
  std::vector<double> dist(v.pos.size(), kInf);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  const EdgeGeom& ge = v.geoms[s.edge];
  heap.push({s.t * ge.len, ge.ia});
  heap.push({(1.0 - s.t) * ge.len, ge.ib});
  while (!heap.empty()) {
    auto [d, i] = heap.top();
    heap.pop();
    if (d > radius || dist[i] <= d) continue;
    dist[i] = d;
    for (auto [j, w] : v.adj[i]) {
      if (d + w < dist[j]) heap.push({d + w, j});
    }
  }
  return dist;
}

// Markers every marker_spacing along edges whose endpoints both lie
// within the radius-bounded subgraph.
std::vector<Vec2> subgraph_markers(const GraphView& v, const std::vector<double>& dist,
                                   double radius, double spacing) {
  std::vector<Vec2> out;
  for (const EdgeGeom& ge : v.geoms) {
    if (dist[ge.ia] > radius || dist[ge.ib] > radius) continue;
    for (double t = spacing * 0.5; t < ge.len; t += spacing) {
      out.push_back(lerp(ge.a, ge.b, t / ge.len));
    }
  }
  return out;
}

// Greedy one-to-one nearest-first matching; returns the match count.
std::size_t greedy_match(const std::vector<Vec2>& proposed,
                         const std::vector<Vec2>& truth, double match_dist) {
  if (proposed.empty() || truth.empty()) return 0;
  PointHash hash(std::max(match_dist, 4.0));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    hash.insert(static_cast<int>(i), truth[i]);
  }
  struct Pair {
    double d;
    std::size_t p, t;
  };
  std::vector<Pair> pairs;
  std::vector<int> cand;
  for (std::size_t p = 0; p < proposed.size(); ++p) {
    hash.query_radius(proposed[p], match_dist, cand);
    for (int t : cand) {
      pairs.push_back({distance(proposed[p], truth[static_cast<std::size_t>(t)]),
                       p, static_cast<std::size_t>(t)});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
    return std::tie(x.d, x.p, x.t) < std::tie(y.d, y.p, y.t);
  });
  std::vector<char> pu(proposed.size(), 0), tu(truth.size(), 0);
  std::size_t matched = 0;
  for (const Pair& pr : pairs) {
    if (pu[pr.p] || tu[pr.t]) continue;
    pu[pr.p] = tu[pr.t] = 1;
    ++matched;
  }
  return matched;
}

}  // namespace

void TopoConfig::validate() const {
  if (subgraph_radius <= 0.0 || seed_spacing <= 0.0 || marker_spacing <= 0.0 ||
      match_dist <= 0.0 || seed_match_dist <= 0.0) {
    throw ConfigError("TOPO parameters must be positive");
  }
  if (marker_spacing >= subgraph_radius) {
    throw ConfigError("marker_spacing must be below subgraph_radius");
  }
}

TopoResult topo(const SpatialGraph& truth, const SpatialGraph& proposal,
                const TopoConfig& cfg) {
  cfg.validate();
  if (truth.empty() || truth.edges().empty()) {
    throw ValidationError("topo: empty truth graph");
  }
  GraphView tv(truth);
  GraphView pv(proposal);

  TopoResult out;
  std::size_t total_m = 0, total_p = 0, total_t = 0;
  for (const ArcPoint& seed : arc_points(tv, cfg.seed_spacing)) {
    TopoSeedRecord rec;
    rec.seed = seed.pos;
    Snap ts{seed.edge, seed.t, seed.pos, 0.0};
    auto tdist = dist_from(tv, ts, cfg.subgraph_radius);
    auto tmarkers = subgraph_markers(tv, tdist, cfg.subgraph_radius,
                                     cfg.marker_spacing);
    rec.truth = tmarkers.size();
    if (!pv.geoms.empty()) {
      if (auto ps = snap_point(pv, seed.pos, cfg.seed_match_dist)) {
        auto pdist = dist_from(pv, *ps, cfg.subgraph_radius);
        auto pmarkers = subgraph_markers(pv, pdist, cfg.subgraph_radius,
                                         cfg.marker_spacing);
        rec.proposed = pmarkers.size();
        rec.matched = greedy_match(pmarkers, tmarkers, cfg.match_dist);
      }
    }
    total_m += rec.matched;
    total_p += rec.proposed;
    total_t += rec.truth;
    out.seeds.push_back(rec);
  }
  out.precision = total_p > 0 ? static_cast<double>(total_m) / total_p : 1.0;
  out.recall = total_t > 0 ? static_cast<double>(total_m) / total_t : 1.0;
  out.f1 = (out.precision + out.recall) > 0.0
               ? 2.0 * out.precision * out.recall / (out.precision + out.recall)
               : 0.0;
  return out;
}

void AplsConfig::validate() const {
  if (snap_dist <= 0.0 || control_spacing <= 0.0) {
    throw ConfigError("APLS parameters must be positive");
  }
  if (max_pairs == 0) throw ConfigError("max_pairs must be positive");
}

namespace {

// Graph with extra nodes spliced into edges at given parameters.
struct AugGraph {
  std::vector<Vec2> pos;
  std::vector<std::vector<std::pair<std::size_t, double>>> adj;

  void add_edge(std::size_t i, std::size_t j, double w) {
    adj[i].push_back({j, w});
    adj[j].push_back({i, w});
  }
};

// Builds the augmented graph; `nodes[k]` is the node of insertion k.
AugGraph build_augmented(const GraphView& v,
                         const std::vector<std::pair<std::size_t, double>>& points,
                         std::vector<std::size_t>& nodes) {
  AugGraph a;
  a.pos = v.pos;
  a.adj.assign(v.pos.size(), {});
  nodes.assign(points.size(), 0);

  std::unordered_map<std::size_t, std::vector<std::pair<double, std::size_t>>> per_edge;
  for (std::size_t k = 0; k < points.size(); ++k) {
    auto [ei, t] = points[k];
    const EdgeGeom& ge = v.geoms[ei];
    if (t * ge.len <= kLengthTol) {
      nodes[k] = ge.ia;
    } else if ((1.0 - t) * ge.len <= kLengthTol) {
      nodes[k] = ge.ib;
    } else {
      per_edge[ei].push_back({t, k});
    }
  }
  std::vector<char> split(v.geoms.size(), 0);
  for (auto& [ei, list] : per_edge) {
    split[ei] = 1;
    std::sort(list.begin(), list.end());
    const EdgeGeom& ge = v.geoms[ei];
    std::size_t prev_node = ge.ia;
    double prev_t = 0.0;
    for (std::size_t q = 0; q < list.size(); ++q) {
      auto [t, k] = list[q];
      if (q > 0 && (t - prev_t) * ge.len <= kLengthTol) {
        nodes[k] = prev_node;  // coincident insertions share a node
        continue;
      }
      std::size_t node = a.pos.size();
      a.pos.push_back(lerp(ge.a, ge.b, t));
      a.adj.emplace_back();
      a.add_edge(prev_node, node, (t - prev_t) * ge.len);
      nodes[k] = node;
      prev_node = node;
      prev_t = t;
    }
    a.add_edge(prev_node, ge.ib, (1.0 - prev_t) * ge.len);
  }
  for (std::size_t ei = 0; ei < v.geoms.size(); ++ei) {
    if (!split[ei]) a.add_edge(v.geoms[ei].ia, v.geoms[ei].ib, v.geoms[ei].len);
  }
  return a;
}

std::vector<double> dijkstra(const AugGraph& a, std::size_t src) {
  std::vector<double> dist(a.pos.size(), kInf);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  heap.push({0.0, src});
  while (!heap.empty()) {
    auto [d, i] = heap.top();
    heap.pop();
    if (dist[i] <= d) continue;
    dist[i] = d;
    for (auto [j, w] : a.adj[i]) {
      if (d + w < dist[j]) heap.push({d + w, j});
    }
  }
  return dist;
}

// One APLS direction: control points from `src`, snapped onto `dst`.
void apls_direction(const SpatialGraph& src_g, const SpatialGraph& dst_g,
                    const AplsConfig& cfg, std::uint64_t rng_seed,
                    std::vector<AplsPairRecord>& out) {
  if (src_g.edges().empty()) return;
  GraphView src(src_g);
  GraphView dst(dst_g);

  // Control points: vertices of degree != 2 plus evenly spaced arc points.
  std::vector<Vec2> control_pos;
  std::vector<std::pair<std::size_t, double>> arc_insertions;
  std::vector<int> control_kind;  // vertex index, or -1 for arc insertions
  for (const Vertex& v : src_g.vertices()) {
    if (src_g.degree(v.id) != 2 && src_g.degree(v.id) > 0) {
      control_pos.push_back(v.pos);
      control_kind.push_back(static_cast<int>(src_g.index_of(v.id)));
    }
  }
  for (const ArcPoint& p : arc_points(src, cfg.control_spacing)) {
    control_pos.push_back(p.pos);
    control_kind.push_back(-1);
    arc_insertions.push_back({p.edge, p.t});
  }

  std::vector<std::size_t> arc_nodes;
  AugGraph src_aug = build_augmented(src, arc_insertions, arc_nodes);
  std::vector<std::size_t> src_node(control_pos.size());
  {
    std::size_t arc_i = 0;
    for (std::size_t k = 0; k < control_pos.size(); ++k) {
      src_node[k] = control_kind[k] >= 0 ? static_cast<std::size_t>(control_kind[k])
                                         : arc_nodes[arc_i++];
    }
  }

  // Drop controls that collapse onto the same source node.
  {
    std::set<std::size_t> seen;
    std::vector<Vec2> cp;
    std::vector<std::size_t> sn;
    for (std::size_t k = 0; k < control_pos.size(); ++k) {
      if (seen.insert(src_node[k]).second) {
        cp.push_back(control_pos[k]);
        sn.push_back(src_node[k]);
      }
    }
    control_pos.swap(cp);
    src_node.swap(sn);
  }

  // Snap each control onto the destination graph.
  std::vector<std::pair<std::size_t, double>> dst_insertions;
  std::vector<std::ptrdiff_t> dst_ins_index(control_pos.size(), -1);
  if (!dst.geoms.empty()) {
    for (std::size_t k = 0; k < control_pos.size(); ++k) {
      if (auto s = snap_point(dst, control_pos[k], cfg.snap_dist)) {
        dst_ins_index[k] = static_cast<std::ptrdiff_t>(dst_insertions.size());
        dst_insertions.push_back({s->edge, s->t});
      }
    }
  }
  std::vector<std::size_t> dst_nodes;
  AugGraph dst_aug = build_augmented(dst, dst_insertions, dst_nodes);

  // Pair selection, capped at max_pairs with seeded sampling.
  std::size_t n = control_pos.size();
  if (n < 2) return;
  std::vector<std::pair<std::size_t, std::size_t>> sel;
  std::size_t all = n * (n - 1) / 2;
  if (all <= cfg.max_pairs) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) sel.push_back({i, j});
    }
  } else {
    Rng rng(rng_seed);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::size_t attempts = 0;
    while (seen.size() < cfg.max_pairs && attempts < cfg.max_pairs * 20) {
      ++attempts;
      std::size_t i = rng.uniform_int(n);
      std::size_t j = rng.uniform_int(n);
      if (i == j) continue;
      if (i > j) std::swap(i, j);
      seen.insert({i, j});
    }
    sel.assign(seen.begin(), seen.end());
  }

  // Group by source so one Dijkstra serves every pair from that control.
  std::unordered_map<std::size_t, std::vector<std::size_t>> by_src;
  for (auto [i, j] : sel) by_src[i].push_back(j);
  std::vector<std::size_t> sources;
  for (const auto& [i, _] : by_src) sources.push_back(i);
  std::sort(sources.begin(), sources.end());

  for (std::size_t i : sources) {
    auto d_src = dijkstra(src_aug, src_node[i]);
    std::vector<double> d_dst;
    if (dst_ins_index[i] >= 0) {
      d_dst = dijkstra(dst_aug, dst_nodes[static_cast<std::size_t>(dst_ins_index[i])]);
    }
    for (std::size_t j : by_src[i]) {
      double l_src = d_src[src_node[j]];
      if (l_src == kInf) continue;  // unreachable on the source side: skipped
      AplsPairRecord rec;
      rec.a = control_pos[i];
      rec.b = control_pos[j];
      rec.l_truth = l_src;
      rec.l_prop = -1.0;
      rec.score = 0.0;
      if (dst_ins_index[i] >= 0 && dst_ins_index[j] >= 0) {
        double l_dst =
            d_dst[dst_nodes[static_cast<std::size_t>(dst_ins_index[j])]];
        if (l_dst != kInf) {
          rec.l_prop = l_dst;
          double diff = std::abs(l_src - l_dst);
          if (diff <= kLengthTol) {
            rec.score = 1.0;
          } else if (l_src > 0.0) {
            rec.score = 1.0 - std::min(1.0, diff / l_src);
          }
        }
      }
      out.push_back(rec);
    }
  }
}

}  // namespace

AplsResult apls(const SpatialGraph& truth, const SpatialGraph& proposal,
                const AplsConfig& cfg) {
  cfg.validate();
  if (truth.empty() || truth.edges().empty()) {
    throw ValidationError("apls: empty truth graph");
  }
  AplsResult out;
  apls_direction(truth, proposal, cfg, cfg.seed, out.pairs);
  apls_direction(proposal, truth, cfg, cfg.seed + 1, out.pairs);
  if (!out.pairs.empty()) {
    double sum = 0.0;
    for (const AplsPairRecord& r : out.pairs) sum += r.score;
    out.score = sum / static_cast<double>(out.pairs.size());
  }
  return out;
}

std::vector<CrossingPoint> crossing_points(const SpatialGraph& g) {
  const auto& edges = g.edges();
  SegmentHash hash(32.0);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    hash.insert(static_cast<int>(i), g.position(edges[i].a), g.position(edges[i].b));
  }
  std::vector<CrossingPoint> out;
  std::vector<int> cand;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    Vec2 a1 = g.position(edges[i].a), a2 = g.position(edges[i].b);
    hash.query(a1, a2, 0.0, cand);
    for (int jj : cand) {
      std::size_t j = static_cast<std::size_t>(jj);
      if (j <= i) continue;
      const Edge& e1 = edges[i];
      const Edge& e2 = edges[j];
      if (e1.a == e2.a || e1.a == e2.b || e1.b == e2.a || e1.b == e2.b) continue;
      if (auto x = segment_intersection(a1, a2, g.position(e2.a), g.position(e2.b))) {
        out.push_back({*x, e1, e2});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const CrossingPoint& x, const CrossingPoint& y) {
    return std::tie(x.pos.x, x.pos.y, x.first.a, x.first.b) <
           std::tie(y.pos.x, y.pos.y, y.first.a, y.first.b);
  });
  return out;
}

CrossingMatch crossing_match(const SpatialGraph& truth, const SpatialGraph& proposal,
                             double match_dist) {
  if (match_dist <= 0.0) throw ConfigError("match_dist must be positive");
  auto tc = crossing_points(truth);
  auto pc = crossing_points(proposal);
  std::vector<Vec2> tp, pp;
  for (const auto& c : tc) tp.push_back(c.pos);
  for (const auto& c : pc) pp.push_back(c.pos);
  CrossingMatch m;
  m.truth = tp.size();
  m.proposed = pp.size();
  m.matched = greedy_match(pp, tp, match_dist);
  m.precision = m.proposed > 0 ? static_cast<double>(m.matched) / m.proposed : 1.0;
  m.recall = m.truth > 0 ? static_cast<double>(m.matched) / m.truth : 1.0;
  return m;
}

}  // namespace gte
