#ifndef GTE_HARNESS_HPP
#define GTE_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gte/decoder.hpp"
#include "gte/encoder.hpp"
#include "gte/metrics.hpp"
#include "gte/noise.hpp"
#include "gte/spatial_graph.hpp"
#include "gte/synth.hpp"

namespace gte {

struct RoundtripConfig {
  EncodeConfig encode;
  DecodeConfig decode;
  NoiseConfig noise;
  TopoConfig topo;
  AplsConfig apls;
  double simplify_tol_deg = 10.0;
  double crossing_match_dist = 15.0;

  void validate() const;
};

// Stable 64-bit hash of the full configuration (FNV-1a over a canonical
// textual form), used to group report rows that share settings.
std::uint64_t config_hash(const RoundtripConfig& cfg);

struct RoundtripRow {
  std::uint64_t cfg_hash = 0;
  std::uint64_t seed = 0;
  std::string axis;          // sweep axis name, empty for a single run
  double axis_value = 0.0;
  double topo_precision = 0.0;
  double topo_recall = 0.0;
  double topo_f1 = 0.0;
  double apls = 0.0;
  double crossing_precision = 0.0;
  double crossing_recall = 0.0;
  double undirected_fix_ratio = 0.0;
  double interpolation_fix_ratio = 0.0;
  DecodeReport decode_report;
  ConflictReport conflict_report;
  double wall_ms = 0.0;
  std::string error;  // non-empty when a pipeline stage threw
};

// Full pipeline on one ground-truth graph: interpolate, resolve
// conflicts, encode, perturb, decode, simplify both sides, then score.
RoundtripRow roundtrip(const SpatialGraph& truth, const RoundtripConfig& cfg);

std::string report_header();
std::string to_csv(const RoundtripRow& row);

struct SweepSpec {
  SynthSpec corpus;
  std::string axis;  // p_thr, edge_thr, w, sigma_p, sigma_vec, d_max, d
  std::vector<double> values;
  int replicates = 1;
  RoundtripConfig base;
};

// One row per (axis value, replicate). Replicate i generates its graph
// and noise with seed = corpus.seed + i. Failed runs produce rows with
// the error field set rather than aborting the sweep.
std::vector<RoundtripRow> sweep(const SweepSpec& spec);

}  // namespace gte

#endif
