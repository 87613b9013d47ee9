#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "cdtplan/environment.hpp"
#include "cdtplan/error.hpp"

using namespace cdtplan;

namespace {

std::vector<std::uint8_t> make_pgm(int w, int h,
                                   const std::vector<std::uint8_t>& pixels) {
  std::string header =
      "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  std::vector<std::uint8_t> bytes(header.begin(), header.end());
  bytes.insert(bytes.end(), pixels.begin(), pixels.end());
  return bytes;
}

OccupancyGrid grid_with_block(int w, int h, int c0, int r0, int c1, int r1) {
  OccupancyGrid g;
  g.width = w;
  g.height = h;
  g.cell_size = 1.0;
  g.cells.assign(static_cast<std::size_t>(w) * h, 0);
  for (int r = r0; r < r1; ++r) {
    for (int c = c0; c < c1; ++c) {
      g.cells[static_cast<std::size_t>(r) * w + c] = 1;
    }
  }
  return g;
}

}  // namespace

TEST_CASE("pgm threshold classification") {
  const auto bytes = make_pgm(2, 2, {0, 255, 255, 0});
  const auto grid = load_occupancy_grid(bytes);
  CHECK(grid.width == 2);
  CHECK(grid.height == 2);
  CHECK(grid.occupied(0, 0));
  CHECK_FALSE(grid.occupied(1, 0));
  CHECK_FALSE(grid.occupied(0, 1));
  CHECK(grid.occupied(1, 1));
}

TEST_CASE("pgm truncated data") {
  auto bytes = make_pgm(2, 2, {0, 255, 255});
  CHECK_THROWS_AS(load_occupancy_grid(bytes), ParseError);
}

TEST_CASE("pgm bad magic") {
  const std::string text = "P6\n2 2\n255\nxxxx";
  std::vector<std::uint8_t> bytes(text.begin(), text.end());
  CHECK_THROWS_AS(load_occupancy_grid(bytes), ParseError);
}

TEST_CASE("pgm header comments are skipped") {
  const std::string header = "P5\n# a comment\n2 1\n255\n";
  std::vector<std::uint8_t> bytes(header.begin(), header.end());
  bytes.push_back(10);
  bytes.push_back(200);
  const auto grid = load_occupancy_grid(bytes);
  CHECK(grid.occupied(0, 0));
  CHECK_FALSE(grid.occupied(1, 0));
}

TEST_CASE("all-white grid has no occupied cells") {
  const auto bytes = make_pgm(100, 100, std::vector<std::uint8_t>(10000, 255));
  const auto grid = load_occupancy_grid(bytes);
  CHECK(grid.occupied_count() == 0);
}

TEST_CASE("grid_to_environment centered block") {
  const auto grid = grid_with_block(10, 10, 4, 4, 6, 6);
  const auto env = grid_to_environment(grid, 1.5);
  REQUIRE(env.obstacles.size() == 1);
  CHECK(env.obstacles[0].size() >= 4);
  CHECK(env.obstacles[0].size() <= 8);
  CHECK(env.boundary.size() == 4);
  CHECK(count_independent_obstacles(env) == 1);
  // the block interior must not be free
  CHECK_FALSE(env.in_free_space({5.0, 5.0}));
  CHECK(env.in_free_space({1.0, 1.0}));
}

TEST_CASE("grid_to_environment empty grid") {
  const auto grid = grid_with_block(10, 10, 0, 0, 0, 0);
  const auto env = grid_to_environment(grid, 1.5);
  CHECK(env.obstacles.empty());
  CHECK(env.boundary.size() == 4);
  CHECK(count_independent_obstacles(env) == 0);
}

TEST_CASE("grid_to_environment fully occupied") {
  const auto grid = grid_with_block(8, 8, 0, 0, 8, 8);
  CHECK_THROWS_AS(grid_to_environment(grid, 1.5), ValidationError);
}

TEST_CASE("grid_to_environment border-touching block folds into boundary") {
  const auto grid = grid_with_block(10, 10, 0, 3, 4, 6);
  const auto env = grid_to_environment(grid, 1.5);
  CHECK(env.obstacles.empty());
  CHECK(count_independent_obstacles(env) == 0);
  CHECK_FALSE(env.in_free_space({2.0, 4.5}));
}

TEST_CASE("load_polygon_env valid input") {
  const std::string text =
      R"({"boundary": [[0,0],[10,0],[10,10],[0,10]],)"
      R"( "obstacles": [[[4,4],[6,4],[6,6],[4,6]]]})";
  const auto env = load_polygon_env(text);
  CHECK(env.boundary.size() == 4);
  REQUIRE(env.obstacles.size() == 1);
  CHECK(signed_area(env.boundary) > 0);
  CHECK(signed_area(env.obstacles[0]) < 0);
  CHECK(count_independent_obstacles(env) == 1);
}

TEST_CASE("load_polygon_env obstacle outside boundary") {
  const std::string text =
      R"({"boundary": [[0,0],[10,0],[10,10],[0,10]],)"
      R"( "obstacles": [[[4,4],[20,5],[6,6]]]})";
  CHECK_THROWS_AS(load_polygon_env(text), ValidationError);
}

TEST_CASE("load_polygon_env clockwise boundary is reoriented") {
  const std::string text = R"({"boundary": [[0,0],[0,10],[10,10],[10,0]]})";
  const auto env = load_polygon_env(text);
  CHECK(signed_area(env.boundary) > 0);
}

TEST_CASE("load_polygon_env self-intersecting polygon") {
  const std::string text =
      R"({"boundary": [[0,0],[10,10],[10,0],[0,10]]})";
  CHECK_THROWS_AS(load_polygon_env(text), ValidationError);
}

TEST_CASE("load_polygon_env overlapping obstacles") {
  const std::string text =
      R"({"boundary": [[0,0],[10,0],[10,10],[0,10]],)"
      R"( "obstacles": [[[2,2],[6,2],[6,6],[2,6]],[[4,4],[8,4],[8,8],[4,8]]]})";
  CHECK_THROWS_AS(load_polygon_env(text), ValidationError);
}

TEST_CASE("serialize then load is identity up to rotation/orientation") {
  const std::string text =
      R"({"boundary": [[0,0],[10,0],[10,10],[0,10]],)"
      R"( "obstacles": [[[4,4],[6,4],[6,6],[4,6]]]})";
  const auto env = load_polygon_env(text);
  const auto env2 = load_polygon_env(serialize_env(env));
  CHECK(environment_hash(env) == environment_hash(env2));
}

TEST_CASE("count_independent_obstacles many blocks") {
  // 14 disjoint blocks on a 100x100 map.
  Environment env;
  env.boundary = {{0, 0}, {100, 0}, {100, 100}, {0, 100}};
  int placed = 0;
  for (int gy = 0; gy < 4 && placed < 14; ++gy) {
    for (int gx = 0; gx < 4 && placed < 14; ++gx) {
      const double x = 10.0 + gx * 22.0;
      const double y = 10.0 + gy * 22.0;
      env.obstacles.push_back(
          {{x, y}, {x, y + 8}, {x + 8, y + 8}, {x + 8, y}});
      ++placed;
    }
  }
  validate_environment(env);
  CHECK(count_independent_obstacles(env) == 14);
}

TEST_CASE("touching obstacle chain counts as one independent group") {
  Environment env;
  env.boundary = {{0, 0}, {20, 0}, {20, 20}, {0, 20}};
  env.obstacles.push_back({{4, 4}, {4, 8}, {8, 8}, {8, 4}});
  env.obstacles.push_back({{8, 4}, {8, 8}, {12, 8}, {12, 4}});
  for (auto& obs : env.obstacles) {
    if (signed_area(obs) > 0) std::reverse(obs.begin(), obs.end());
  }
  validate_environment(env);
  CHECK(count_independent_obstacles(env) == 1);
}

TEST_CASE("raster round trip classification") {
  // Environment from a grid, rasterized back: cells away from contours keep
  // their free/occupied label.
  const int w = 40, h = 30;
  OccupancyGrid grid = grid_with_block(w, h, 8, 6, 16, 14);
  for (int r = 20; r < 26; ++r) {
    for (int c = 24; c < 36; ++c) {
      grid.cells[static_cast<std::size_t>(r) * w + c] = 1;
    }
  }
  const double tol = 1.5;
  const auto env = grid_to_environment(grid, tol);

  int checked = 0, agree = 0;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const Point center{c + 0.5, r + 0.5};
      double min_contour_dist = std::numeric_limits<double>::max();
      const auto account = [&](const std::vector<Point>& poly) {
        for (std::size_t i = 0; i < poly.size(); ++i) {
          const Segment e{poly[i], poly[(i + 1) % poly.size()]};
          min_contour_dist =
              std::min(min_contour_dist, point_segment_distance(center, e));
        }
      };
      account(env.boundary);
      for (const auto& obs : env.obstacles) account(obs);
      if (min_contour_dist <= tol) continue;
      ++checked;
      const bool env_free = env.in_free_space(center);
      const bool grid_free = !grid.occupied(c, r);
      if (env_free == grid_free) ++agree;
    }
  }
  REQUIRE(checked > 100);
  CHECK(static_cast<double>(agree) / checked >= 0.99);
}
