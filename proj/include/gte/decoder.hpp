#ifndef GTE_DECODER_HPP
#define GTE_DECODER_HPP

#include <optional>
#include <vector>

#include "gte/spatial_graph.hpp"
#include "gte/tensor.hpp"

namespace gte {

struct DecodeConfig {
  double p_thr = 0.5;              // vertexness threshold
  double edge_thr = 0.5;           // edgeness threshold
  double w = 100.0;                // cosine-distance weight in the edge score
  double max_connect_dist = 15.0;  // cap on the Euclidean term (meters)
  double candidate_radius = 30.0;  // search radius around a vertex (meters)
  int nms_window = 3;              // odd window size for local maxima (cells)

  void validate() const;
};

struct Candidate {
  Vec2 pos;               // cell center, meters
  double vertexness = 0;
  std::uint32_t cx = 0;
  std::uint32_t cy = 0;
};

// Local maxima of the vertexness channel above p_thr, in (y,x) scan
// order. Plateau ties keep the lexicographically smallest (y,x) cell.
std::vector<Candidate> extract_vertices(const GteTensor& t, const DecodeConfig& cfg);

// Score of connecting the edge slot (v, dvec) to candidate u:
// ||v + dvec - u|| + w * cos_dist(dvec, u - v).
double edge_distance(const Vec2& v, const Vec2& dvec, const Vec2& u, double w);

// Index into `candidates` of the slot's best match, or nullopt when the
// argmin violates the max_connect_dist cap. `self` is excluded.
std::optional<std::size_t> select_edge_target(
    const Vec2& v, const Vec2& dvec, const std::vector<Candidate>& candidates,
    const std::vector<std::size_t>& pool, std::size_t self, const DecodeConfig& cfg);

struct DecodeReport {
  std::size_t slot_total = 0;      // edge slots above edge_thr
  std::size_t slot_connected = 0;
  std::size_t slot_unmatched = 0;  // no candidate within the cap
  std::size_t slot_degenerate = 0; // zero direction vector, skipped
  std::size_t vertices = 0;
  std::size_t edges = 0;
};

struct DecodeResult {
  SpatialGraph graph;
  DecodeReport report;
};

DecodeResult connect_edges(const std::vector<Candidate>& candidates,
                           const GteTensor& t, const DecodeConfig& cfg);

DecodeResult decode(const GteTensor& t, const DecodeConfig& cfg);

}  // namespace gte

#endif
