#ifndef GTE_METRICS_HPP
#define GTE_METRICS_HPP

#include <cstdint>
#include <vector>

#include "gte/spatial_graph.hpp"

namespace gte {

struct TopoConfig {
  double subgraph_radius = 300.0;  // graph-distance bound from a seed (meters)
  double seed_spacing = 50.0;      // seeds per meters of truth arc length
  double marker_spacing = 5.0;     // markers along subgraph edges (meters)
  double match_dist = 10.0;        // marker-to-marker matching distance
  double seed_match_dist = 15.0;   // seed-to-graph snapping distance
  std::uint64_t seed = 0;

  void validate() const;
};

struct TopoSeedRecord {
  Vec2 seed;
  std::size_t matched = 0;
  std::size_t proposed = 0;
  std::size_t truth = 0;
};

struct TopoResult {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::vector<TopoSeedRecord> seeds;
};

// Subgraph-sampling similarity: seeds along truth arcs, radius-bounded
// subgraphs on both sides, greedy one-to-one marker matching.
TopoResult topo(const SpatialGraph& truth, const SpatialGraph& proposal,
                const TopoConfig& cfg);

struct AplsConfig {
  double snap_dist = 15.0;         // control-point snap distance (meters)
  double control_spacing = 50.0;   // arc spacing of extra control points
  std::size_t max_pairs = 500;     // per direction; sampled with `seed`
  std::uint64_t seed = 0;

  void validate() const;
};

struct AplsPairRecord {
  Vec2 a, b;
  double l_truth = 0.0;
  double l_prop = 0.0;  // negative when unreachable or unsnapped
  double score = 0.0;
};

struct AplsResult {
  double score = 0.0;
  std::vector<AplsPairRecord> pairs;  // both directions
};

// Shortest-path length similarity over control-point pairs, aggregated
// symmetrically over truth->proposal and proposal->truth directions.
AplsResult apls(const SpatialGraph& truth, const SpatialGraph& proposal,
                const AplsConfig& cfg);

struct CrossingPoint {
  Vec2 pos;
  Edge first;
  Edge second;
};

// Interior intersections of non-adjacent edge pairs. Planar junctions
// share a vertex and are excluded, so these are stacked crossings.
std::vector<CrossingPoint> crossing_points(const SpatialGraph& g);

struct CrossingMatch {
  double precision = 1.0;
  double recall = 1.0;
  std::size_t matched = 0;
  std::size_t proposed = 0;
  std::size_t truth = 0;
};

CrossingMatch crossing_match(const SpatialGraph& truth, const SpatialGraph& proposal,
                             double match_dist = 15.0);

}  // namespace gte

#endif
