#include "gte/synth.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "gte/metrics.hpp"
#include "gte/rng.hpp"
#include "gte/spatial_hash.hpp"

namespace gte {

SynthKind parse_synth_kind(const std::string& name) {
  if (name == "grid") return SynthKind::kGrid;
  if (name == "radial") return SynthKind::kRadial;
  if (name == "organic") return SynthKind::kOrganic;
  if (name == "stacked") return SynthKind::kStacked;
  throw ConfigError("unknown synth kind '" + name + "'");
}

std::string to_string(SynthKind kind) {
  switch (kind) {
    case SynthKind::kGrid: return "grid";
    case SynthKind::kRadial: return "radial";
    case SynthKind::kOrganic: return "organic";
    case SynthKind::kStacked: return "stacked";
  }
  return "?";
}

void SynthSpec::validate() const {
  if (extent <= 0.0) throw ConfigError("extent must be positive");
  if (spacing <= 0.0 || spacing > extent) {
    throw ConfigError("spacing must be in (0, extent]");
  }
  if (curviness < 0.0 || curviness > 1.0) {
    throw ConfigError("curviness must be in [0,1]");
  }
  if (kind == SynthKind::kStacked && overpasses < 1) {
    throw ConfigError("stacked kind needs at least one overpass");
  }
}

namespace {

Vec2 round_pos(const Vec2& p) {
  return {static_cast<double>(std::llround(p.x)),
          static_cast<double>(std::llround(p.y))};
}

Vec2 clamp_pos(const Vec2& p, double extent) {
  return {std::clamp(p.x, 0.0, extent), std::clamp(p.y, 0.0, extent)};
}

SpatialGraph make_grid(const SynthSpec& spec, Rng& rng) {
  int n = static_cast<int>(std::floor(spec.extent / spec.spacing)) + 1;
  long long amp = std::llround(spec.curviness * spec.spacing * 0.2);
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  auto id_of = [n](int i, int j) { return j * n + i; };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      Vec2 p{i * spec.spacing, j * spec.spacing};
      if (amp > 0) {
        p.x += static_cast<double>(
            static_cast<long long>(rng.uniform_int(2 * amp + 1)) - amp);
        p.y += static_cast<double>(
            static_cast<long long>(rng.uniform_int(2 * amp + 1)) - amp);
      }
      vertices.push_back({id_of(i, j), clamp_pos(round_pos(p), spec.extent)});
      if (i > 0) edges.push_back({id_of(i - 1, j), id_of(i, j)});
      if (j > 0) edges.push_back({id_of(i, j - 1), id_of(i, j)});
    }
  }
  return SpatialGraph(spec.extent, spec.extent, std::move(vertices), std::move(edges));
}

SpatialGraph make_radial(const SynthSpec& spec, Rng& rng) {
  constexpr int kSpokes = 8;
  Vec2 center = round_pos({spec.extent / 2.0, spec.extent / 2.0});
  int rings = static_cast<int>(std::floor((spec.extent / 2.0 - spec.spacing / 2.0) /
                                          spec.spacing));
  if (rings < 1) throw GenerationError("radial: extent too small for one ring");
  long long amp = std::llround(spec.curviness * spec.spacing * 0.1);

  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  vertices.push_back({0, center});
  auto id_of = [&](int ring, int s) { return 1 + (ring - 1) * kSpokes + s; };
  for (int ring = 1; ring <= rings; ++ring) {
    for (int s = 0; s < kSpokes; ++s) {
      double r = ring * spec.spacing;
      if (amp > 0) {
        r += static_cast<double>(
            static_cast<long long>(rng.uniform_int(2 * amp + 1)) - amp);
      }
      double a = deg_to_rad(s * 360.0 / kSpokes);
      Vec2 p = center + Vec2{r * std::cos(a), r * std::sin(a)};
      vertices.push_back({id_of(ring, s), clamp_pos(round_pos(p), spec.extent)});
      edges.push_back({ring == 1 ? 0 : id_of(ring - 1, s), id_of(ring, s)});
      if (s > 0) edges.push_back({id_of(ring, s - 1), id_of(ring, s)});
    }
    edges.push_back({id_of(ring, kSpokes - 1), id_of(ring, 0)});
  }
  return SpatialGraph(spec.extent, spec.extent, std::move(vertices), std::move(edges));
}

// Random curvy road growth. Every interior vertex turns at least 20
// degrees so simplification decisions stay stable after quantization.
SpatialGraph make_organic(const SynthSpec& spec, Rng& rng) {
  double margin = 10.0;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::unordered_map<int, int> degree;
  PointHash vhash(spec.spacing);
  SegmentHash ehash(std::max(spec.spacing, 32.0));
  std::vector<std::pair<Vec2, Vec2>> segments;

  auto vertex_clear = [&](const Vec2& p, double min_d) {
    std::vector<int> cand;
    vhash.query_radius(p, min_d, cand);
    return cand.empty();
  };
  // New segments must stay clear of existing roads except around the
  // shared junction, keeping the graph planar by construction.
  auto segment_clear = [&](const Vec2& a, const Vec2& b) {
    std::vector<int> cand;
    ehash.query(a, b, 6.0, cand);
    for (int i : cand) {
      const auto& [sa, sb] = segments[static_cast<std::size_t>(i)];
      if (sa == a || sb == a) continue;  // incident at the walker's tail
      if (segment_segment_distance(a, b, sa, sb) < 6.0) return false;
    }
    return true;
  };
  std::unordered_map<int, std::vector<int>> adj;
  auto add_vertex = [&](const Vec2& p) {
    int id = static_cast<int>(vertices.size());
    vertices.push_back({id, p});
    vhash.insert(id, p);
    return id;
  };
  auto add_edge = [&](int a, int b) {
    edges.push_back({a, b});
    const Vec2 pa = vertices[a].pos, pb = vertices[b].pos;
    ehash.insert(static_cast<int>(segments.size()), pa, pb);
    segments.push_back({pa, pb});
    ++degree[a];
    ++degree[b];
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  // Edges meeting at a junction must be at least 18 degrees apart so
  // their interpolated vertices land in well-separated tensor cells.
  auto angle_clear = [&](int at, const Vec2& toward) {
    Vec2 p = vertices[at].pos;
    for (int n : adj[at]) {
      if (cosine_distance(toward - p, vertices[n].pos - p) <
          1.0 - std::cos(deg_to_rad(18.0))) {
        return false;
      }
    }
    return true;
  };

  struct Walker {
    int vertex;
    double heading_deg;
    int steps_left;
  };
  std::deque<Walker> queue;
  double turn_scale = 1.0 + 1.5 * spec.curviness;
  int n_roots = std::max(2, static_cast<int>(spec.extent / (spec.spacing * 3.0)));
  int max_steps = static_cast<int>(4.0 * spec.extent / spec.spacing);

  for (int r = 0; r < n_roots; ++r) {
    for (int attempt = 0; attempt < 50; ++attempt) {
      Vec2 p = round_pos({rng.uniform(margin, spec.extent - margin),
                          rng.uniform(margin, spec.extent - margin)});
      if (!vertex_clear(p, spec.spacing * 1.5)) continue;
      int id = add_vertex(p);
      queue.push_back({id, rng.uniform(0.0, 360.0), max_steps});
      break;
    }
  }
  if (queue.empty()) throw GenerationError("organic: no room for road roots");

  while (!queue.empty()) {
    Walker w = queue.front();
    queue.pop_front();
    if (w.steps_left <= 0) continue;
    double turn = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(20.0, 45.0) *
                  std::min(turn_scale, 2.0);
    double heading = w.heading_deg + std::clamp(turn, -60.0, 60.0);
    double len = spec.spacing * rng.uniform(0.7, 1.3);
    Vec2 cur = vertices[w.vertex].pos;
    Vec2 next = round_pos(cur + Vec2{len * std::cos(deg_to_rad(heading)),
                                     len * std::sin(deg_to_rad(heading))});
    if (next.x < margin || next.x > spec.extent - margin || next.y < margin ||
        next.y > spec.extent - margin) {
      continue;  // walker leaves the tile
    }
    if (!vertex_clear(next, 8.0) || !segment_clear(cur, next) ||
        !angle_clear(w.vertex, next)) {
      continue;
    }
    int nid = add_vertex(next);
    add_edge(w.vertex, nid);
    queue.push_back({nid, heading, w.steps_left - 1});
    if (degree[nid] < 4 && rng.uniform() < 0.12) {
      double side = rng.uniform() < 0.5 ? -1.0 : 1.0;
      queue.push_back({nid, heading + side * rng.uniform(35.0, 145.0),
                       w.steps_left / 2});
    }
  }

  // Drop isolated roots that never grew an edge.
  std::vector<Vertex> kept;
  for (const Vertex& v : vertices) {
    if (degree.count(v.id)) kept.push_back(v);
  }
  if (edges.empty()) throw GenerationError("organic: produced no roads");
  return SpatialGraph(spec.extent, spec.extent, std::move(kept), std::move(edges));
}

SpatialGraph make_stacked(const SynthSpec& spec, Rng& rng) {
  // Tame the base-grid jitter: conflict resolution near a crossing needs
  // a healthy angle between the highway and the street it crosses.
  SynthSpec base_spec = spec;
  base_spec.curviness = std::min(spec.curviness * 0.5, 0.25);
  SpatialGraph base = make_grid(base_spec, rng);
  std::vector<Vertex> vertices = base.vertices();
  std::vector<Edge> edges = base.edges();
  int next_id = base.max_id() + 1;

  double inset = std::max(10.0, spec.spacing * 0.13);
  double lo = inset, hi = spec.extent - inset;

  auto clear_of_vertices = [&](const Vec2& a, const Vec2& b) {
    for (const Vertex& v : base.vertices()) {
      if (point_segment_distance(v.pos, a, b) < 6.0) return false;
    }
    return true;
  };
  auto endpoint_clear = [&](const Vec2& p) {
    for (const Vertex& v : vertices) {
      if (distance(p, v.pos) < 8.0) return false;
    }
    for (const Edge& e : base.edges()) {
      if (point_segment_distance(p, base.position(e.a), base.position(e.b)) < 6.0) {
        return false;
      }
    }
    return true;
  };

  std::vector<std::pair<Vec2, Vec2>> highways;
  int placed = 0;
  for (int k = 0; k < spec.overpasses; ++k) {
    bool ok = false;
    for (int attempt = 0; attempt < 1000 && !ok; ++attempt) {
      double angle = rng.uniform(15.0, 75.0) + (rng.uniform() < 0.5 ? 0.0 : 90.0);
      Vec2 c{rng.uniform(spec.extent * 0.3, spec.extent * 0.7),
             rng.uniform(spec.extent * 0.3, spec.extent * 0.7)};
      Vec2 dir{std::cos(deg_to_rad(angle)), std::sin(deg_to_rad(angle))};
      // Clip the line through c to the inset square.
      double tmin = -1e18, tmax = 1e18;
      auto clip = [&](double p0, double d, double a, double b) {
        if (d == 0.0) return;
        double t0 = (a - p0) / d, t1 = (b - p0) / d;
        if (t0 > t1) std::swap(t0, t1);
        tmin = std::max(tmin, t0);
        tmax = std::min(tmax, t1);
      };
      clip(c.x, dir.x, lo, hi);
      clip(c.y, dir.y, lo, hi);
      if (tmax - tmin < spec.extent * 0.4) continue;
      Vec2 a = round_pos(c + dir * tmin);
      Vec2 b = round_pos(c + dir * tmax);
      if (!clear_of_vertices(a, b)) continue;
      if (!endpoint_clear(a) || !endpoint_clear(b)) continue;
      int crossings = 0;
      bool shallow = false;
      for (const Edge& e : base.edges()) {
        Vec2 p1 = base.position(e.a), p2 = base.position(e.b);
        if (segment_intersection(a, b, p1, p2)) {
          ++crossings;
          // Shallow crossings force long vertex displacements later.
          double ea = rad_to_deg(std::atan2(p2.y - p1.y, p2.x - p1.x));
          if (std::abs(std::remainder(angle - ea, 180.0)) < 30.0) shallow = true;
        }
      }
      if (shallow || crossings < 1) continue;
      // Earlier highways: crossings must be steep too, and near-parallel
      // lines that never cross must keep their distance.
      bool clash = false;
      for (const auto& h : highways) {
        if (segment_intersection(a, b, h.first, h.second)) {
          double ha = rad_to_deg(
              std::atan2(h.second.y - h.first.y, h.second.x - h.first.x));
          if (std::abs(std::remainder(angle - ha, 180.0)) < 30.0) clash = true;
        } else if (segment_segment_distance(a, b, h.first, h.second) < 12.0) {
          clash = true;
        }
      }
      if (clash) continue;
      int ia = next_id++;
      int ib = next_id++;
      vertices.push_back({ia, a});
      vertices.push_back({ib, b});
      edges.push_back({ia, ib});
      highways.emplace_back(a, b);
      ++placed;
      ok = true;
    }
    if (!ok) {
      throw GenerationError("stacked: could not place overpass " +
                            std::to_string(placed + 1) + " of " +
                            std::to_string(spec.overpasses));
    }
  }

  SpatialGraph g(spec.extent, spec.extent, std::move(vertices), std::move(edges));
  if (crossing_points(g).size() < static_cast<std::size_t>(spec.overpasses)) {
    throw GenerationError("stacked: fewer crossings than requested overpasses");
  }
  return g;
}

}  // namespace

SpatialGraph generate(const SynthSpec& spec) {
  spec.validate();
  Rng rng(spec.seed ^ (static_cast<std::uint64_t>(spec.kind) << 56));
  switch (spec.kind) {
    case SynthKind::kGrid: return make_grid(spec, rng);
    case SynthKind::kRadial: return make_radial(spec, rng);
    case SynthKind::kOrganic:
      // An unlucky stream can reject every walker step; redraw a few
      // times (still deterministic in the seed) before giving up.
      for (int attempt = 0;; ++attempt) {
        Rng r(spec.seed ^ (static_cast<std::uint64_t>(spec.kind) << 56) ^
              (static_cast<std::uint64_t>(attempt) * 0x9e3779b97f4a7c15ULL));
        try {
          return make_organic(spec, r);
        } catch (const GenerationError&) {
          if (attempt >= 9) throw;
        }
      }
    case SynthKind::kStacked: return make_stacked(spec, rng);
  }
  throw ConfigError("unknown synth kind");
}

}  // namespace gte
