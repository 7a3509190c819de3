#include <cmath>

#include "doctest.h"
#include "gte/geometry.hpp"

using namespace gte;

TEST_CASE("angle_deg covers the four axis directions") {
  CHECK(angle_deg({1, 0}) == doctest::Approx(0.0));
  CHECK(angle_deg({0, 1}) == doctest::Approx(90.0));
  CHECK(angle_deg({-1, 0}) == doctest::Approx(180.0));
  CHECK(angle_deg({0, -1}) == doctest::Approx(270.0));
  CHECK(angle_deg({1, -1e-12}) < 360.0);
}

TEST_CASE("cosine_distance") {
  CHECK(cosine_distance({1, 0}, {2, 0}) == doctest::Approx(0.0));
  CHECK(cosine_distance({1, 0}, {0, 3}) == doctest::Approx(1.0));
  CHECK(cosine_distance({1, 0}, {-5, 0}) == doctest::Approx(2.0));
}

TEST_CASE("point_segment_distance") {
  CHECK(point_segment_distance({5, 3}, {0, 0}, {10, 0}) == doctest::Approx(3.0));
  // beyond the endpoint the distance is to the endpoint itself
  CHECK(point_segment_distance({13, 4}, {0, 0}, {10, 0}) == doctest::Approx(5.0));
  // degenerate segment
  CHECK(point_segment_distance({3, 4}, {0, 0}, {0, 0}) == doctest::Approx(5.0));
}

TEST_CASE("segment_intersection finds interior crossings only") {
  auto hit = segment_intersection({0, 0}, {10, 10}, {0, 10}, {10, 0});
  REQUIRE(hit.has_value());
  CHECK(hit->x == doctest::Approx(5.0));
  CHECK(hit->y == doctest::Approx(5.0));

  // shared endpoint is not an interior crossing
  CHECK(!segment_intersection({0, 0}, {10, 0}, {10, 0}, {10, 10}).has_value());
  // parallel
  CHECK(!segment_intersection({0, 0}, {10, 0}, {0, 1}, {10, 1}).has_value());
  // disjoint
  CHECK(!segment_intersection({0, 0}, {1, 0}, {5, -1}, {5, 1}).has_value());
}

TEST_CASE("segment_segment_distance") {
  CHECK(segment_segment_distance({0, 0}, {10, 0}, {0, 5}, {10, 5}) ==
        doctest::Approx(5.0));
  // crossing segments have distance 0
  CHECK(segment_segment_distance({0, 0}, {10, 10}, {0, 10}, {10, 0}) ==
        doctest::Approx(0.0));
}
