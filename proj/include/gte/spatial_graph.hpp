#ifndef GTE_SPATIAL_GRAPH_HPP
#define GTE_SPATIAL_GRAPH_HPP

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gte/geometry.hpp"

namespace gte {

struct Vertex {
  int id = 0;
  Vec2 pos;
};

// Undirected edge, stored with a < b.
struct Edge {
  int a = 0;
  int b = 0;
};

// Undirected spatial graph over a [0,W] x [0,H] extent (meters).
// Immutable after construction; all operations below return new graphs.
class SpatialGraph {
 public:
  SpatialGraph() = default;
  SpatialGraph(double width, double height, std::vector<Vertex> vertices,
               std::vector<Edge> edges);

  double width() const { return width_; }
  double height() const { return height_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool empty() const { return vertices_.empty(); }

  bool has_vertex(int id) const { return index_.count(id) > 0; }
  std::size_t index_of(int id) const;
  Vec2 position(int id) const { return vertices_[index_of(id)].pos; }
  // Neighbor vertex ids, ascending.
  const std::vector<int>& neighbors(int id) const;
  int degree(int id) const { return static_cast<int>(neighbors(id).size()); }
  int max_id() const { return max_id_; }

  double edge_length(const Edge& e) const {
    return distance(position(e.a), position(e.b));
  }
  double total_arc_length() const;

 private:
  void validate() const;

  double width_ = 0.0;
  double height_ = 0.0;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<int, std::size_t> index_;
  std::vector<std::vector<int>> adjacency_;
  int max_id_ = -1;
};

struct GraphStats {
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  std::vector<std::size_t> degree_histogram;  // index = degree
  std::size_t over_degree_count = 0;          // vertices with degree > d_max
  std::size_t close_edge_pairs = 0;           // non-adjacent pairs nearer than sep
};

GraphStats compute_stats(const SpatialGraph& g, int d_max, double separation);

// --- file I/O (GRAPH1 text format) ---
SpatialGraph load_graph(const std::string& text);
std::string save_graph(const SpatialGraph& g);
SpatialGraph load_graph_file(const std::string& path);
void save_graph_file(const SpatialGraph& g, const std::string& path);

// --- preprocessing ---

// Split every edge of length >= d into equal collinear segments so that
// all resulting edges are strictly shorter than d.
SpatialGraph interpolate(const SpatialGraph& g, double d);

struct ConflictReport {
  int iterations = 0;
  int remaining_conflicts = 0;
  double max_displacement = 0.0;
};

struct ConflictResolution {
  SpatialGraph graph;
  ConflictReport report;
};

// Push apart vertices of overlapping non-adjacent edges until every such
// vertex pair is at least min_sep meters apart. Vertices move in 0.5 m
// steps along their own edge line, so straight interpolated chains stay
// collinear. Non-convergence is reported, not thrown.
ConflictResolution resolve_conflicts(const SpatialGraph& g, double min_sep = 5.0,
                                     int max_iter = 100);

// Remove degree-2 vertices whose incident edges are within angle_tol
// degrees of collinear, merging the edges; repeats to fixpoint.
SpatialGraph simplify(const SpatialGraph& g, double angle_tol_deg);

// Euclidean-weighted shortest path length; nullopt when unreachable.
std::optional<double> shortest_path_length(const SpatialGraph& g, int a, int b);

// Structural equality up to vertex id relabeling: vertices match by
// position within pos_tol and the edge sets coincide under that matching.
bool structurally_equivalent(const SpatialGraph& a, const SpatialGraph& b,
                             double pos_tol);

}  // namespace gte

#endif
