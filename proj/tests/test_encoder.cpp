#include <cmath>
#include <set>

#include "doctest.h"
#include "gte/encoder.hpp"
#include "gte/error.hpp"
#include "gte/rng.hpp"
#include "gte/synth.hpp"

using namespace gte;

namespace {

// Reference binning: walk the sector boundaries and pick the one whose
// angular interval contains the direction.
int sector_oracle(double dx, double dy, int d_max) {
  double a = std::atan2(dy, dx) * 180.0 / 3.14159265358979323846;
  if (a < 0) a += 360.0;
  if (a >= 360.0) a = 0.0;
  double step = 360.0 / d_max;
  for (int i = 1; i <= d_max; ++i) {
    if (a >= (i - 1) * step && a < i * step) return i;
  }
  return d_max;
}

}  // namespace

TEST_CASE("sector_of axis directions") {
  CHECK(sector_of(1, 0, 6) == 1);
  CHECK(sector_of(0, 1, 6) == 2);
  CHECK(sector_of(-1, 0, 6) == 4);
  CHECK(sector_of(0, -1, 6) == 5);
  CHECK_THROWS_AS(sector_of(0, 0, 6), ConfigError);
}

TEST_CASE("sector_of matches the angle-bin oracle") {
  Rng rng(2024);
  for (int k = 0; k < 10000; ++k) {
    double a = rng.uniform(0.0, 2 * 3.14159265358979323846);
    double dx = std::cos(a), dy = std::sin(a);
    int d_max = 3 + static_cast<int>(rng.uniform_int(10));
    CHECK(sector_of(dx, dy, d_max) == sector_oracle(dx, dy, d_max));
  }
}

TEST_CASE("orient_edges reverses a same-sector collision") {
  // two edges leaving vertex 0 at 10 and 20 degrees: same sector for d_max=6
  SpatialGraph g(200, 200,
                 {{0, {0, 0}},
                  {1, {100.0 * std::cos(10 * 3.14159265 / 180), 100.0 * std::sin(10 * 3.14159265 / 180)}},
                  {2, {100.0 * std::cos(20 * 3.14159265 / 180), 100.0 * std::sin(20 * 3.14159265 / 180)}}},
                 {{0, 1}, {0, 2}});
  OrientationResult r = orient_edges(g, 6);
  CHECK(r.report.total_edges == 2);
  CHECK(r.report.undirected_fixed == 1);
  CHECK(r.report.interpolation_fixed == 0);
  int out_of_0 = 0;
  for (const OrientedEdge& e : r.edges) {
    if (e.tail == 0) ++out_of_0;
  }
  CHECK(out_of_0 == 1);
}

TEST_CASE("orient_edges splits when both directions are blocked") {
  // d_max=3: sectors are [0,120), [120,240), [240,360). The A-B edge
  // (ids 1-2) is blocked in both directions: A's sector 1 is taken by
  // A->C, and B's sector 2 is taken by the reversed D-B edge. D's own
  // sector 3 is taken first by D->E, which forces that reversal.
  SpatialGraph g(400, 400,
                 {{0, {170, 275}},   // D
                  {1, {200, 200}},   // A
                  {2, {300, 205}},   // B
                  {3, {360, 203}},   // C
                  {4, {277, 185}}},  // E
                 {{0, 2}, {0, 4}, {1, 2}, {1, 3}});
  OrientationResult r = orient_edges(g, 3);
  CHECK(r.report.total_edges == 4);
  CHECK(r.report.undirected_fixed == 1);
  CHECK(r.report.interpolation_fixed == 1);
  CHECK(r.graph.vertices().size() == 6);  // one midpoint inserted
  // sector uniqueness holds for the final assignment
  std::set<std::pair<int, int>> used;
  for (const OrientedEdge& e : r.edges) {
    CHECK(used.emplace(e.tail, e.sector).second);
    CHECK(e.sector >= 1);
    CHECK(e.sector <= 3);
  }
}

TEST_CASE("orient_edges needs no fixes on an axis-aligned grid") {
  SynthSpec spec;
  spec.kind = SynthKind::kGrid;
  spec.extent = 1000;
  spec.spacing = 100;
  spec.seed = 1;
  OrientationResult r = orient_edges(generate(spec), 6);
  CHECK(r.report.undirected_fixed == 0);
  CHECK(r.report.interpolation_fixed == 0);
}

TEST_CASE("encode empty and single-vertex graphs") {
  EncodeConfig cfg;
  GteTensor empty = encode(SpatialGraph(10, 10, {}, {}), cfg);
  for (float v : empty.data()) CHECK(v == 0.0f);

  GteTensor one = encode(SpatialGraph(10, 10, {{0, {5.4, 7.6}}}, {}), cfg);
  for (std::uint32_t y = 0; y < one.grid_height(); ++y) {
    for (std::uint32_t x = 0; x < one.grid_width(); ++x) {
      float want = (x == 5 && y == 8) ? 1.0f : 0.0f;
      CHECK(one.vertexness(x, y) == want);
    }
  }
}

TEST_CASE("encode rejects two vertices in one cell") {
  EncodeConfig cfg;
  SpatialGraph g(10, 10, {{0, {5.1, 5.0}}, {1, {5.3, 5.2}}}, {});
  CHECK_THROWS_AS(encode(g, cfg), ValidationError);
}

TEST_CASE("encoded edge vectors point at the neighbor cell") {
  SynthSpec spec;
  spec.kind = SynthKind::kGrid;
  spec.extent = 300;
  spec.spacing = 100;
  spec.seed = 3;
  SpatialGraph g = interpolate(generate(spec), 20.0);
  EncodeConfig cfg;
  GteTensor t = encode(g, cfg);
  for (std::uint32_t y = 0; y < t.grid_height(); ++y) {
    for (std::uint32_t x = 0; x < t.grid_width(); ++x) {
      for (std::uint32_t s = 1; s <= t.d_max(); ++s) {
        if (t.edgeness(x, y, s) <= 0.5f) continue;
        double tx = x * cfg.lambda + t.edge_dx(x, y, s);
        double ty = y * cfg.lambda + t.edge_dy(x, y, s);
        // target lands exactly on another vertex cell center
        std::uint32_t cx = static_cast<std::uint32_t>(std::llround(tx / cfg.lambda));
        std::uint32_t cy = static_cast<std::uint32_t>(std::llround(ty / cfg.lambda));
        CHECK(t.vertexness(cx, cy) == 1.0f);
        CHECK(sector_of(t.edge_dx(x, y, s), t.edge_dy(x, y, s),
                        static_cast<int>(t.d_max())) == static_cast<int>(s));
      }
    }
  }
}

TEST_CASE("tensor file format round-trips") {
  GteTensor zero(4, 4, 6, 1.0);
  CHECK(zero.size() == 4 * 4 * 19);
  std::string bytes = save_tensor(zero);
  CHECK(bytes.size() == 4 + 3 * 4 + 8 + 304 * 4);
  GteTensor back = load_tensor(bytes);
  CHECK(back.same_shape(zero));
  CHECK(back.data() == zero.data());

  SynthSpec spec;
  spec.kind = SynthKind::kGrid;
  spec.extent = 400;
  spec.spacing = 100;
  spec.seed = 8;
  GteTensor t = encode(interpolate(generate(spec), 20.0), EncodeConfig{});
  CHECK(save_tensor(load_tensor(save_tensor(t))) == save_tensor(t));
}

TEST_CASE("tensor loader rejects bad input") {
  GteTensor t(2, 2, 6, 1.0);
  std::string bytes = save_tensor(t);
  std::string bad = bytes;
  bad[0] = 'X';  // magic XTE1
  CHECK_THROWS_AS(load_tensor(bad), ParseError);
  CHECK_THROWS_AS(load_tensor(bytes.substr(0, bytes.size() - 1)), ParseError);
}
