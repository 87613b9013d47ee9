#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cdtplan/environment.hpp"
#include "cdtplan/geometry.hpp"

namespace cdtplan {

/// One convex cell of the dissection. Vertices are CCW with collinear runs
/// merged; cutline_ids lists incident cutlines in ascending order.
struct ConvexPolygon {
  int id = -1;
  std::vector<Point> vertices;
  std::vector<int> cutline_ids;
};

/// Shared edge between two adjacent convex polygons. The segment is the full
/// shared boundary of the pair.
struct Cutline {
  int id = -1;
  Segment seg;
  int left = -1;
  int right = -1;

  Point at(double t) const { return seg.at(t); }
  double length() const { return seg.length(); }
  int other(int polygon) const { return polygon == left ? right : left; }
  bool incident(int polygon) const {
    return polygon == left || polygon == right;
  }
};

/// Adjacency structure over polygon nodes and cutline edges.
struct TopologyGraph {
  struct Edge {
    int cutline;
    int a;
    int b;
  };
  int nodes = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<std::pair<int, int>>> adjacency;  // (cutline, other)

  int component_count() const;
  std::vector<int> components() const;  // node -> component id
  /// E - V + C: equals the number of independent obstacles for a dissection
  /// of a connected free space.
  int independent_cycles() const;
};

struct DissectionValidation {
  int samples = 0;
  int coverage_violations = 0;   // free samples covered by != 1 polygon
  int convexity_violations = 0;  // reflex corners
  int pairing_violations = 0;    // cutlines not shared full edges
  double covered_fraction = 1.0;

  bool pass() const {
    return coverage_violations == 0 && convexity_violations == 0 &&
           pairing_violations == 0;
  }
  std::string summary() const;
};

/// Validation over explicit parts, so tests can probe mutated copies.
DissectionValidation validate_dissection_parts(
    const Environment& env, std::span<const ConvexPolygon> polygons,
    std::span<const Cutline> cutlines, int samples, std::uint64_t seed = 1);

/// Exact convex cover of the free space: constrained Delaunay triangles
/// greedily merged into convex polygons, shared edges kept as cutlines.
class ConvexDissection {
 public:
  static ConvexDissection build(const Environment& env);

  const Environment& env() const { return env_; }
  double epsilon() const { return eps_; }
  const std::vector<ConvexPolygon>& polygons() const { return polygons_; }
  const std::vector<Cutline>& cutlines() const { return cutlines_; }
  const TopologyGraph& graph() const { return graph_; }
  const ConvexPolygon& polygon(int id) const { return polygons_[id]; }
  const Cutline& cutline(int id) const { return cutlines_[id]; }

  /// Smallest polygon id whose closure contains p; throws NotInFreeSpaceError
  /// for points in obstacles or outside the boundary.
  int locate(Point p) const;
  std::optional<int> try_locate(Point p) const;
  /// All polygon ids whose closure contains p (>1 on shared boundaries).
  std::vector<int> locate_all(Point p) const;

  bool point_in(Point p, int polygon_id) const;

  /// Cutlines adjacent to a point: all cutlines of the containing polygon;
  /// for a point on shared boundary, the union over all containing polygons.
  std::vector<int> cutlines_at_point(Point p) const;
  /// Cutlines of both polygons incident to cutline c, excluding c.
  std::vector<int> adjacent_cutlines(int cutline_id) const;
  /// Deduplicated union over a set of cutlines, ascending ids.
  std::vector<int> adjacent_cutlines(std::span<const int> cutline_ids) const;

  DissectionValidation validate(int samples, std::uint64_t seed = 1) const;

  std::string to_snapshot_json() const;
  static ConvexDissection from_snapshot_json(std::string_view text);

 private:
  ConvexDissection() = default;
  void build_locator();

  Environment env_;
  double eps_ = 1e-9;
  std::vector<ConvexPolygon> polygons_;
  std::vector<Cutline> cutlines_;
  TopologyGraph graph_;

  // uniform grid over polygon bounding boxes
  BBox bounds_;
  int grid_dim_ = 1;
  double cell_w_ = 1.0, cell_h_ = 1.0;
  std::vector<std::vector<int>> buckets_;
};

}  // namespace cdtplan
