#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace cdtplan {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
inline bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
inline bool operator!=(Point a, Point b) { return !(a == b); }

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point p) { return std::sqrt(p.x * p.x + p.y * p.y); }
inline double distance(Point a, Point b) { return norm(b - a); }
inline double distance_sq(Point a, Point b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  return dx * dx + dy * dy;
}

struct Segment {
  Point a;
  Point b;

  Point at(double t) const {
    return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
  }
  double length() const { return distance(a, b); }
};

/// A path as an ordered vertex list. One vertex is a valid (constant) path.
using Polyline = std::vector<Point>;

/// Absolute tolerance used by all predicates. One knob relative to the
/// environment diagonal keeps collinearity, on-segment and point-equality
/// tests mutually consistent.
constexpr double kEpsDiagonalFactor = 1e-9;
inline double geometry_epsilon(double environment_diagonal) {
  return kEpsDiagonalFactor * environment_diagonal;
}

/// Sign of the cross product (b-a)x(c-a). Returns 0 when c is within eps
/// (a distance) of the line through a,b.
int orient(Point a, Point b, Point c, double eps = 1e-9);

enum class IntersectKind : std::uint8_t { none, point, overlap };

struct SegmentIntersection {
  IntersectKind kind = IntersectKind::none;
  Point p;           // intersection point, or start of the overlap span
  Point q;           // end of the overlap span (overlap only)
  double t1 = 0.0;   // parameter of p along the first segment
  double t2 = 0.0;   // parameter of p along the second segment
};

/// Closed-segment intersection. Collinear segments sharing a span of
/// positive length are reported as IntersectKind::overlap.
SegmentIntersection segment_intersection(const Segment& s1, const Segment& s2,
                                         double eps = 1e-9);

double polyline_length(std::span<const Point> pts);

/// Closed containment test for a convex CCW polygon (boundary inclusive,
/// with an eps band).
bool point_in_convex_polygon(Point p, std::span<const Point> ccw_vertices,
                             double eps = 1e-9);

/// Closed containment test for an arbitrary simple polygon (any orientation).
bool point_in_simple_polygon(Point p, std::span<const Point> vertices,
                             double eps = 1e-9);

double point_segment_distance(Point p, const Segment& s);

/// argmin over x in seg of |a-x| + |x-b|, assuming a and b lie in the two
/// closed half-planes bounded by seg's supporting line. If segment a-b
/// crosses seg the crossing point is returned; otherwise the endpoint of seg
/// with the smaller sum (ties toward seg.a).
Point min_sum_on_segment(Point a, Point b, const Segment& seg,
                         double eps = 1e-9);

/// Positive for CCW vertex order.
double signed_area(std::span<const Point> polygon);

struct BBox {
  Point lo{std::numeric_limits<double>::max(),
           std::numeric_limits<double>::max()};
  Point hi{std::numeric_limits<double>::lowest(),
           std::numeric_limits<double>::lowest()};
  void expand(Point p) {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
  }
  double diagonal() const { return distance(lo, hi); }
  bool contains(Point p) const {
    return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
  }
};

BBox bounding_box(std::span<const Point> pts);

}  // namespace cdtplan
