#include "cdtplan/geometry.hpp"

#include <algorithm>
#include <limits>

#include "cdtplan/error.hpp"

namespace cdtplan {

int orient(Point a, Point b, Point c, double eps) {
  const double v = cross(b - a, c - a);
  // |v| / |b-a| is the distance from c to the line; compare against eps in
  // distance units so the predicate matches the on-segment tests.
  const double band = eps * distance(a, b);
  if (v > band) return 1;
  if (v < -band) return -1;
  return 0;
}

SegmentIntersection segment_intersection(const Segment& s1, const Segment& s2,
                                         double eps) {
  SegmentIntersection out;
  const Point r = s1.b - s1.a;
  const Point s = s2.b - s2.a;
  const double len1 = norm(r), len2 = norm(s);
  const double denom = cross(r, s);
  const Point qp = s2.a - s1.a;

  if (std::abs(denom) <= eps * len1 * len2) {
    // Parallel. Collinear iff s2.a sits on s1's supporting line.
    if (len1 == 0.0 || std::abs(cross(qp, r)) > eps * len1) {
      return out;
    }
    // Project s2 endpoints onto s1's parameterization.
    const double inv = 1.0 / (len1 * len1);
    double ta = dot(qp, r) * inv;
    double tb = dot(s2.b - s1.a, r) * inv;
    if (ta > tb) std::swap(ta, tb);
    const double teps = eps / std::max(len1, eps);
    const double lo = std::max(0.0, ta);
    const double hi = std::min(1.0, tb);
    if (hi < lo - teps) return out;
    if (hi - lo <= teps) {
      out.kind = IntersectKind::point;
      out.t1 = std::clamp(0.5 * (lo + hi), 0.0, 1.0);
      out.p = s1.at(out.t1);
      out.t2 = len2 > 0 ? dot(out.p - s2.a, s) / (len2 * len2) : 0.0;
      return out;
    }
    out.kind = IntersectKind::overlap;
    out.t1 = lo;
    out.p = s1.at(lo);
    out.q = s1.at(hi);
    out.t2 = len2 > 0 ? dot(out.p - s2.a, s) / (len2 * len2) : 0.0;
    return out;
  }

  const double t = cross(qp, s) / denom;
  const double u = cross(qp, r) / denom;
  const double teps1 = eps / std::max(len1, eps);
  const double teps2 = eps / std::max(len2, eps);
  if (t < -teps1 || t > 1.0 + teps1 || u < -teps2 || u > 1.0 + teps2) {
    return out;
  }
  out.kind = IntersectKind::point;
  out.t1 = std::clamp(t, 0.0, 1.0);
  out.t2 = std::clamp(u, 0.0, 1.0);
  out.p = s1.at(out.t1);
  return out;
}

double polyline_length(std::span<const Point> pts) {
  double len = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    len += distance(pts[i - 1], pts[i]);
  }
  return len;
}

bool point_in_convex_polygon(Point p, std::span<const Point> ccw_vertices,
                             double eps) {
  const std::size_t n = ccw_vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = ccw_vertices[i];
    const Point b = ccw_vertices[(i + 1) % n];
    // signed distance of p from edge a->b, negative means outside
    if (cross(b - a, p - a) < -eps * distance(a, b)) return false;
  }
  return true;
}

bool point_in_simple_polygon(Point p, std::span<const Point> vertices,
                             double eps) {
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Segment e{vertices[i], vertices[(i + 1) % n]};
    if (point_segment_distance(p, e) <= eps) return true;
  }
  // Crossing-number test with a horizontal ray toward +x.
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = vertices[i];
    const Point b = vertices[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double xint = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (p.x < xint) inside = !inside;
    }
  }
  return inside;
}

double point_segment_distance(Point p, const Segment& s) {
  const Point d = s.b - s.a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return distance(p, s.a);
  const double t = std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
  return distance(p, s.at(t));
}

Point min_sum_on_segment(Point a, Point b, const Segment& seg, double eps) {
  const Point dir = seg.b - seg.a;
  const double seg_len = norm(dir);
  if (seg_len <= eps) {
    throw ContractError("min_sum_on_segment: degenerate segment");
  }
  // Signed offsets of a and b from seg's supporting line (scaled by seg_len).
  const double da = cross(dir, a - seg.a);
  const double db = cross(dir, b - seg.a);
  const double band = eps * seg_len;

  const auto param_of = [&](Point p) {
    return dot(p - seg.a, dir) / (seg_len * seg_len);
  };

  if (std::abs(da) <= band && std::abs(db) <= band) {
    // Both points on the line: every point of seg between them is optimal.
    double lo = param_of(a);
    double hi = param_of(b);
    if (lo > hi) std::swap(lo, hi);
    lo = std::max(lo, 0.0);
    hi = std::min(hi, 1.0);
    if (lo <= hi) return seg.at(lo);  // minimizer closest to seg.a
    const double sum_a = distance(a, seg.a) + distance(seg.a, b);
    const double sum_b = distance(a, seg.b) + distance(seg.b, b);
    return sum_a <= sum_b ? seg.a : seg.b;
  }
  if (da * db > 0.0 && std::abs(da) > band && std::abs(db) > band) {
    throw ContractError(
        "min_sum_on_segment: endpoints on the same open side of the segment");
  }

  // Crossing parameter of segment a-b with seg's supporting line.
  const double denom = da - db;
  double s_param;
  if (denom == 0.0) {
    s_param = param_of(a);
  } else {
    const double t = da / denom;  // position along a->b
    const Point crossing = a + t * (b - a);
    s_param = param_of(crossing);
  }
  const double peps = eps / seg_len;
  if (s_param <= peps) {
    if (s_param >= -peps) return seg.at(std::max(s_param, 0.0));
    // crossing lies before seg.a
  } else if (s_param < 1.0 - peps) {
    return seg.at(s_param);
  } else if (s_param <= 1.0 + peps) {
    return seg.at(std::min(s_param, 1.0));
  }
  const double sum_a = distance(a, seg.a) + distance(seg.a, b);
  const double sum_b = distance(a, seg.b) + distance(seg.b, b);
  return sum_a <= sum_b ? seg.a : seg.b;
}

double signed_area(std::span<const Point> polygon) {
  double acc = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = polygon[i];
    const Point b = polygon[(i + 1) % n];
    acc += cross(a, b);
  }
  return 0.5 * acc;
}

BBox bounding_box(std::span<const Point> pts) {
  BBox box;
  for (const Point p : pts) box.expand(p);
  return box;
}

}  // namespace cdtplan
