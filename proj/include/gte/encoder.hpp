#ifndef GTE_ENCODER_HPP
#define GTE_ENCODER_HPP

#include <vector>

#include "gte/spatial_graph.hpp"
#include "gte/tensor.hpp"

namespace gte {

struct EncodeConfig {
  double lambda = 1.0;   // meters per grid cell
  int d_max = 6;         // angular sectors / max outgoing edges per cell
  double d = 20.0;       // interpolation spacing (meters)
  double min_sep = 5.0;  // conflict-resolution separation (meters)

  void validate() const;
};

// Sector index in 1..d_max of direction (dx,dy): sector i covers angles
// [(i-1)*360/d_max, i*360/d_max) measured from +x toward +y. Throws on
// the zero vector.
int sector_of(double dx, double dy, int d_max);

struct OrientedEdge {
  int tail = 0;
  int head = 0;
  int sector = 0;
};

struct FixReport {
  std::size_t total_edges = 0;
  std::size_t undirected_fixed = 0;     // encoded in the reverse direction
  std::size_t interpolation_fixed = 0;  // split at a midpoint vertex
};

struct OrientationResult {
  SpatialGraph graph;  // input graph plus any inserted midpoint vertices
  std::vector<OrientedEdge> edges;
  FixReport report;
};

// Choose one encoded direction per undirected edge so that every tail
// vertex has at most one outgoing edge per sector. Greedy over edges
// sorted by (lower endpoint id, angle): forward direction first, then
// reverse, then a midpoint split oriented outward from the new vertex.
// When snap_lambda > 0 inserted midpoints are snapped to that grid.
OrientationResult orient_edges(const SpatialGraph& g, int d_max,
                               double snap_lambda = 0.0);

// Encode a preprocessed graph (interpolated and conflict-resolved) into
// the tensor. Vertices are quantized to the nearest cell center; two
// vertices in one cell is an error. When `fixes` is non-null it receives
// the orientation fix counts.
GteTensor encode(const SpatialGraph& g, const EncodeConfig& cfg,
                 FixReport* fixes = nullptr);

}  // namespace gte

#endif
