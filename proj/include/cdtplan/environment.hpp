#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cdtplan/geometry.hpp"

namespace cdtplan {

/// Binary occupancy raster. Row 0 is the top image row; a cell (col,row)
/// covers [col,col+1]x[row,row+1] in map units scaled by cell_size.
struct OccupancyGrid {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> cells;  // row-major, 1 = occupied
  double cell_size = 1.0;

  bool occupied(int col, int row) const {
    if (col < 0 || row < 0 || col >= width || row >= height) return true;
    return cells[static_cast<std::size_t>(row) * width + col] != 0;
  }
  std::size_t occupied_count() const;
};

/// Bounded 2D world: one CCW outer boundary plus CW obstacle polygons.
/// Free space is the closed boundary interior minus open obstacle interiors.
struct Environment {
  std::vector<Point> boundary;
  std::vector<std::vector<Point>> obstacles;
  std::optional<std::pair<int, int>> source_resolution;

  BBox bbox() const { return bounding_box(boundary); }
  double diagonal() const { return bbox().diagonal(); }
  double epsilon() const { return geometry_epsilon(diagonal()); }

  /// Closed free-space membership (boundary points count as free).
  bool in_free_space(Point p, double eps) const;
  bool in_free_space(Point p) const { return in_free_space(p, epsilon()); }
};

enum class GridFormat { auto_detect, pgm };

/// Parses a grayscale raster into an occupancy grid. Pixels darker than
/// `threshold` are occupied (inverted when `invert` is set). Binary PGM (P5,
/// maxval <= 255) is the supported encoding.
OccupancyGrid load_occupancy_grid(std::span<const std::uint8_t> bytes,
                                  GridFormat format = GridFormat::auto_detect,
                                  int threshold = 128, bool invert = false);

OccupancyGrid load_occupancy_grid_file(const std::string& path,
                                       int threshold = 128,
                                       bool invert = false);

/// Traces occupied regions into polygons and simplifies them with
/// Douglas-Peucker at `simplify_tol` (map units). Occupied regions touching
/// the border reshape the boundary polygon instead of becoming obstacles.
Environment grid_to_environment(const OccupancyGrid& grid,
                                double simplify_tol = 1.5);

/// Parses the JSON environment format:
///   {"boundary": [[x,y],...], "obstacles": [[[x,y],...], ...]}
/// Orientation is normalized (boundary CCW, obstacles CW); all structural
/// invariants are checked.
Environment load_polygon_env(std::string_view json_text);

std::string serialize_env(const Environment& env);

/// Validates invariants of an already-built Environment (simple polygons,
/// obstacles inside the boundary, pairwise interior-disjoint). Throws
/// ValidationError naming the offending polygon (index 0 = boundary,
/// 1 + k = obstacle k).
void validate_environment(const Environment& env);

/// Obstacles fully surrounded by free space, counted per contact-connected
/// component (obstacles touching each other or the boundary merge for the
/// purposes of this count).
int count_independent_obstacles(const Environment& env);

/// Stable content hash of the environment geometry.
std::uint64_t environment_hash(const Environment& env);

/// Ramer-Douglas-Peucker on an open vertex chain.
std::vector<Point> douglas_peucker(std::span<const Point> pts, double tol);

}  // namespace cdtplan
