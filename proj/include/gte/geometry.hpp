#ifndef GTE_GEOMETRY_HPP
#define GTE_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <optional>

namespace gte {

// Coordinates are meters, origin at the top-left corner, x rightward,
// y downward (image-space convention shared with the tensor grid).
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
inline double distance(const Vec2& a, const Vec2& b) { return norm(a - b); }

inline Vec2 normalized(const Vec2& a) {
  double n = norm(a);
  return n > 0.0 ? Vec2{a.x / n, a.y / n} : Vec2{0.0, 0.0};
}

inline Vec2 lerp(const Vec2& a, const Vec2& b, double t) {
  return {a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t};
}

// cos_dist(a, b) = 1 - cos(angle between a and b), range [0, 2].
inline double cosine_distance(const Vec2& a, const Vec2& b) {
  double na = norm(a), nb = norm(b);
  if (na == 0.0 || nb == 0.0) return 2.0;
  double c = dot(a, b) / (na * nb);
  return 1.0 - std::clamp(c, -1.0, 1.0);
}

// Parameter t in [0,1] of the point on segment [a,b] closest to p.
inline double closest_point_param(const Vec2& a, const Vec2& b, const Vec2& p) {
  Vec2 ab = b - a;
  double len2 = dot(ab, ab);
  if (len2 == 0.0) return 0.0;
  return std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
}

inline double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  return distance(p, lerp(a, b, closest_point_param(a, b, p)));
}

// Interior crossing of two segments; touching at an endpoint does not
// count. Returns the intersection point when the segments properly cross.
inline std::optional<Vec2> segment_intersection(const Vec2& a1, const Vec2& a2,
                                                const Vec2& b1, const Vec2& b2) {
  Vec2 r = a2 - a1;
  Vec2 s = b2 - b1;
  double denom = cross(r, s);
  if (denom == 0.0) return std::nullopt;  // parallel or collinear
  double t = cross(b1 - a1, s) / denom;
  double u = cross(b1 - a1, r) / denom;
  if (t <= 0.0 || t >= 1.0 || u <= 0.0 || u >= 1.0) return std::nullopt;
  return a1 + r * t;
}

inline double segment_segment_distance(const Vec2& a1, const Vec2& a2,
                                       const Vec2& b1, const Vec2& b2) {
  if (segment_intersection(a1, a2, b1, b2)) return 0.0;
  double d = point_segment_distance(a1, b1, b2);
  d = std::min(d, point_segment_distance(a2, b1, b2));
  d = std::min(d, point_segment_distance(b1, a1, a2));
  d = std::min(d, point_segment_distance(b2, a1, a2));
  return d;
}

inline double deg_to_rad(double d) { return d * 3.14159265358979323846 / 180.0; }
inline double rad_to_deg(double r) { return r * 180.0 / 3.14159265358979323846; }

// Angle of (dx,dy) in degrees in [0, 360), measured from +x toward +y.
inline double angle_deg(const Vec2& v) {
  double a = rad_to_deg(std::atan2(v.y, v.x));
  if (a < 0.0) a += 360.0;
  if (a >= 360.0) a = 0.0;
  return a;
}

inline double sq(double v) { return v * v; }

}  // namespace gte

#endif
