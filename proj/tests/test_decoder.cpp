#include <cmath>
#include <vector>

#include "doctest.h"
#include "gte/decoder.hpp"
#include "gte/encoder.hpp"
#include "gte/rng.hpp"
#include "gte/spatial_graph.hpp"
#include "gte/synth.hpp"

using namespace gte;

TEST_CASE("extract_vertices on clean and empty tensors") {
  DecodeConfig cfg;
  GteTensor zero(20, 20, 6, 1.0);
  CHECK(extract_vertices(zero, cfg).empty());

  SpatialGraph g(15, 15, {{0, {3, 4}}, {1, {10, 12}}}, {});
  GteTensor t = encode(g, EncodeConfig{});
  auto cands = extract_vertices(t, cfg);
  REQUIRE(cands.size() == 2);
  CHECK(cands[0].pos == Vec2{3, 4});
  CHECK(cands[1].pos == Vec2{10, 12});
}

TEST_CASE("extract_vertices finds the peak of a blurred impulse") {
  GteTensor t(21, 21, 6, 1.0);
  for (int y = 0; y < 21; ++y) {
    for (int x = 0; x < 21; ++x) {
      double r2 = sq(x - 10.0) + sq(y - 10.0);
      t.set(x, y, 0, static_cast<float>(std::exp(-r2 / 2.0)));
    }
  }
  DecodeConfig cfg;
  auto cands = extract_vertices(t, cfg);
  REQUIRE(cands.size() == 1);
  CHECK(cands[0].cx == 10);
  CHECK(cands[0].cy == 10);
}

TEST_CASE("edge_distance fixed points") {
  Vec2 v{10, 10}, dvec{3, 4};
  CHECK(edge_distance(v, dvec, v + dvec, 100.0) == doctest::Approx(0.0));
  // candidate diametrically opposite: cosine distance 2, offset 2|dvec|
  CHECK(edge_distance(v, dvec, v - dvec, 100.0) ==
        doctest::Approx(2 * 100.0 + 2 * 5.0));
}

TEST_CASE("select_edge_target matches a brute-force scoring oracle") {
  Rng rng(31337);
  DecodeConfig cfg;
  int checked = 0;
  for (int iter = 0; iter < 2000; ++iter) {
    Vec2 v{rng.uniform(0, 100), rng.uniform(0, 100)};
    double a = rng.uniform(0, 2 * 3.14159265358979323846);
    double len = rng.uniform(1.0, 20.0);
    Vec2 dvec{len * std::cos(a), len * std::sin(a)};
    std::vector<Candidate> cands;
    std::vector<std::size_t> pool;
    std::size_t n = 2 + rng.uniform_int(8);
    for (std::size_t i = 0; i < n; ++i) {
      double ca = rng.uniform(0, 2 * 3.14159265358979323846);
      double cr = rng.uniform(0.0, cfg.candidate_radius);
      Candidate c;
      c.pos = v + Vec2{cr * std::cos(ca), cr * std::sin(ca)};
      cands.push_back(c);
      pool.push_back(i);
    }
    cands.push_back({v, 1.0, 0, 0});  // the slot's own vertex, excluded
    std::size_t self = cands.size() - 1;
    pool.push_back(self);

    // oracle: full scan, then apply the Euclidean cap to the winner
    std::size_t best = self;
    double best_score = 0;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (i == self) continue;
      double s = edge_distance(v, dvec, cands[i].pos, cfg.w);
      if (best == self || s < best_score) { best = i; best_score = s; }
    }
    std::optional<std::size_t> want;
    if (best != self &&
        distance(v + dvec, cands[best].pos) <= cfg.max_connect_dist) {
      want = best;
    }
    auto got = select_edge_target(v, dvec, cands, pool, self, cfg);
    CHECK(got == want);
    ++checked;
  }
  CHECK(checked == 2000);
}

TEST_CASE("unreachable slots add no edge") {
  // two vertices 40m apart with an edge vector pointing nowhere near
  GteTensor t(50, 50, 6, 1.0);
  t.set(5, 5, 0, 1.0f);
  t.set(45, 5, 0, 1.0f);
  int s = sector_of(10, 0, 6);
  t.set(5, 5, 3 * s - 2, 1.0f);
  t.set(5, 5, 3 * s - 1, 10.0f);  // points at (15,5): no candidate within 15m
  t.set(5, 5, 3 * s, 0.0f);
  DecodeConfig cfg;
  DecodeResult r = decode(t, cfg);
  CHECK(r.report.slot_total == 1);
  CHECK(r.report.slot_unmatched == 1);
  CHECK(r.graph.edges().empty());
  CHECK(r.graph.vertices().size() == 2);
}

TEST_CASE("decode of a clean path tensor restores the exact edges") {
  SpatialGraph path(100, 100,
                    {{0, {10, 10}}, {1, {25, 10}}, {2, {40, 22}}},
                    {{0, 1}, {1, 2}});
  GteTensor t = encode(path, EncodeConfig{});
  DecodeResult r = decode(t, DecodeConfig{});
  CHECK(structurally_equivalent(path, r.graph, 1e-6));
  CHECK(r.report.slot_unmatched == 0);
  CHECK(r.report.slot_degenerate == 0);
}

TEST_CASE("decode round-trip on a synthetic city") {
  SynthSpec spec;
  spec.kind = SynthKind::kGrid;
  spec.extent = 2100;
  spec.spacing = 100;
  spec.curviness = 0.4;
  spec.seed = 21;
  SpatialGraph g = generate(spec);
  SpatialGraph dense = resolve_conflicts(interpolate(g, 20.0)).graph;
  GteTensor t = encode(dense, EncodeConfig{});
  DecodeResult r = decode(t, DecodeConfig{});
  CHECK(structurally_equivalent(simplify(g, 10.0), simplify(r.graph, 10.0), 1.0));
}

TEST_CASE("decoded graph is invariant in the cosine weight on clean tensors") {
  SynthSpec spec;
  spec.kind = SynthKind::kStacked;
  spec.extent = 800;
  spec.spacing = 100;
  spec.seed = 17;
  SpatialGraph dense = resolve_conflicts(interpolate(generate(spec), 20.0)).graph;
  GteTensor t = encode(dense, EncodeConfig{});
  DecodeConfig cfg;
  DecodeResult base = decode(t, cfg);
  for (double w : {5.0, 10.0, 25.0, 75.0}) {
    cfg.w = w;
    DecodeResult r = decode(t, cfg);
    CHECK(r.graph.vertices().size() == base.graph.vertices().size());
    CHECK(r.graph.edges().size() == base.graph.edges().size());
    CHECK(structurally_equivalent(base.graph, r.graph, 1e-9));
  }
}

TEST_CASE("vertexness threshold is monotone in the candidate count") {
  GteTensor t(30, 30, 6, 1.0);
  Rng rng(5);
  for (int k = 0; k < 60; ++k) {
    t.set(rng.uniform_int(30), rng.uniform_int(30), 0,
          static_cast<float>(rng.uniform()));
  }
  DecodeConfig cfg;
  cfg.p_thr = 0.1;
  std::size_t prev = extract_vertices(t, cfg).size();
  for (double thr : {0.3, 0.5, 0.7, 0.9}) {
    cfg.p_thr = thr;
    std::size_t n = extract_vertices(t, cfg).size();
    CHECK(n <= prev);
    prev = n;
  }
}
