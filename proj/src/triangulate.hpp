#pragma once

#include <array>
#include <cstdint>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cdtplan/geometry.hpp"

namespace cdtplan::detail {

/// Triangle mesh with adjacency. nbr[k] is the triangle across edge
/// (v[k], v[(k+1)%3]), -1 on the hull. All triangles are CCW.
struct TriMesh {
  struct Triangle {
    std::array<int, 3> v;
    std::array<int, 3> nbr;
  };

  std::vector<Point> verts;
  std::vector<Triangle> tris;
  std::unordered_set<std::uint64_t> constrained;

  static std::uint64_t edge_key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) |
           static_cast<std::uint32_t>(v);
  }
  bool is_constrained(int u, int v) const {
    return constrained.count(edge_key(u, v)) != 0;
  }
};

/// Delaunay triangulation of `points` with the given edges forced into the
/// mesh. Requirements: no duplicate points, no constraint crossing another
/// constraint, no point strictly inside a constraint segment (split such
/// segments beforehand).
TriMesh constrained_delaunay(const std::vector<Point>& points,
                             const std::vector<std::pair<int, int>>& edges);

}  // namespace cdtplan::detail
