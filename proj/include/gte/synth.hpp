#ifndef GTE_SYNTH_HPP
#define GTE_SYNTH_HPP

#include <cstdint>
#include <string>

#include "gte/error.hpp"
#include "gte/spatial_graph.hpp"

namespace gte {

// Infeasible synthesis specs (e.g. no room for the requested overpasses).
struct GenerationError : Error {
  using Error::Error;
};

enum class SynthKind { kGrid, kRadial, kOrganic, kStacked };

SynthKind parse_synth_kind(const std::string& name);
std::string to_string(SynthKind kind);

// All generated coordinates are whole meters, vertices stay well
// separated, and only the stacked kind produces edge crossings.
struct SynthSpec {
  SynthKind kind = SynthKind::kGrid;
  double extent = 2000.0;   // square tile side (meters)
  double spacing = 100.0;   // block size / road spacing (meters)
  double curviness = 0.0;   // jitter / turn scale, 0..1
  int overpasses = 3;       // stacked kind only
  std::uint64_t seed = 0;

  void validate() const;
};

SpatialGraph generate(const SynthSpec& spec);

}  // namespace gte

#endif
