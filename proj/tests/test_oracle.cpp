#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cdtplan/error.hpp"
#include "cdtplan/mapgen.hpp"
#include "cdtplan/oracle.hpp"
#include "cdtplan/shortest_path.hpp"

using namespace cdtplan;

namespace {

Environment center_obstacle_env() {
  Environment env;
  env.boundary = {{0, 0}, {10, 0}, {10, 10}, {0, 10}};
  env.obstacles.push_back({{4, 4}, {4, 6}, {6, 6}, {6, 4}});
  return env;
}

Environment sealed_chamber_env() {
  Environment env = center_obstacle_env();
  env.obstacles.clear();
  std::vector<Point> u_shape{{3, 3}, {7, 3}, {7, 7}, {6, 7},
                             {6, 4}, {4, 4}, {4, 7}, {3, 7}};
  std::vector<Point> cap{{4, 6}, {6, 6}, {6, 7}, {4, 7}};
  for (auto* ring : {&u_shape, &cap}) {
    if (signed_area(*ring) > 0) std::reverse(ring->begin(), ring->end());
    env.obstacles.push_back(*ring);
  }
  return env;
}

}  // namespace

TEST_CASE("visibility on an empty map is the straight segment") {
  Environment env;
  env.boundary = {{0, 0}, {10, 0}, {10, 10}, {0, 10}};
  const auto res = visibility_shortest(env, {1, 1}, {7, 9});
  REQUIRE(res.reachable);
  CHECK(res.cost == doctest::Approx(distance({1, 1}, {7, 9})));
  CHECK(res.path.size() == 2);
}

TEST_CASE("visibility around the center obstacle") {
  const auto res = visibility_shortest(center_obstacle_env(), {1, 5}, {9, 5});
  REQUIRE(res.reachable);
  CHECK(res.cost == doctest::Approx(2.0 * std::sqrt(10.0) + 2.0).epsilon(1e-12));
}

TEST_CASE("visibility reports sealed chambers unreachable") {
  const auto res = visibility_shortest(sealed_chamber_env(), {1, 1}, {5, 5});
  CHECK_FALSE(res.reachable);
}

TEST_CASE("grid oracle corridor and diagonal") {
  OccupancyGrid grid;
  grid.width = 10;
  grid.height = 10;
  grid.cell_size = 1.0;
  grid.cells.assign(100, 0);
  SUBCASE("straight corridor of 10 cells costs 9") {
    const auto res = grid_shortest(grid, {0.5, 0.5}, {9.5, 0.5}, 4);
    REQUIRE(res.reachable);
    CHECK(res.cost == doctest::Approx(9.0));
  }
  SUBCASE("open diagonal costs 9*sqrt(2)") {
    const auto res = grid_shortest(grid, {0.5, 0.5}, {9.5, 9.5}, 8);
    REQUIRE(res.reachable);
    CHECK(res.cost == doctest::Approx(9.0 * std::sqrt(2.0)));
  }
  SUBCASE("blocked goal is unreachable") {
    for (int r = 0; r < 10; ++r) grid.cells[r * 10 + 5] = 1;
    const auto res = grid_shortest(grid, {0.5, 0.5}, {9.5, 0.5}, 8);
    CHECK_FALSE(res.reachable);
  }
}

TEST_CASE("class enumeration on an empty map") {
  Environment env;
  env.boundary = {{0, 0}, {10, 0}, {10, 10}, {0, 10}};
  const auto d = ConvexDissection::build(env);
  const auto classes = enumerate_class_optima(d, {1, 1}, {9, 9}, 6, 64);
  REQUIRE(classes.size() == 1);
  CHECK(classes[0].cost == doctest::Approx(distance({1, 1}, {9, 9})));
}

TEST_CASE("one obstacle yields two leading classes") {
  const auto d = ConvexDissection::build(center_obstacle_env());
  const auto classes = enumerate_class_optima(d, {1, 5}, {9, 5}, 8, 256);
  REQUIRE(classes.size() >= 2);
  // above and below optima are symmetric
  CHECK(classes[0].cost == doctest::Approx(classes[1].cost).epsilon(1e-6));
  CHECK(classes[0].cost ==
        doctest::Approx(2.0 * std::sqrt(10.0) + 2.0).epsilon(1e-3));
  CHECK_FALSE(classes[0].encoding == classes[1].encoding);
  // the two best classes pass on opposite sides of the obstacle
  const auto side = [](const ClassOptimum& c) {
    double extreme = 5.0;
    for (const Point& p : c.path) {
      if (std::abs(p.y - 5.0) > std::abs(extreme - 5.0)) extreme = p.y;
    }
    return extreme > 5.0;
  };
  CHECK(side(classes[0]) != side(classes[1]));
}

TEST_CASE("visibility equals the best enumerated class") {
  // quantization error scales with cutline length / dense_k, so this runs on
  // small maps where it sits well below the 1e-6 relative budget
  for (std::uint64_t seed : {11ULL, 22ULL}) {
    const auto env = random_rect_env(seed, 1, 3, 20, 20);
    const auto d = ConvexDissection::build(env);
    SplitMix64 rng(seed);
    const Point a = random_free_point(env, rng, 0.2);
    const Point b = random_free_point(env, rng, 0.2);
    const auto vis = visibility_shortest(env, a, b);
    REQUIRE(vis.reachable);
    const auto classes = enumerate_class_optima(d, a, b, 10, 2048);
    REQUIRE_FALSE(classes.empty());
    CHECK(classes[0].cost ==
          doctest::Approx(vis.cost).epsilon(1e-6));
  }
}

TEST_CASE("class optima agree with the compression algorithm") {
  for (std::uint64_t seed : {5ULL, 6ULL}) {
    const auto env = random_rect_env(seed, 1, 3, 200, 200);
    const auto d = ConvexDissection::build(env);
    SplitMix64 rng(seed + 100);
    const Point a = random_free_point(env, rng, 1.0);
    const Point b = random_free_point(env, rng, 1.0);
    const int dense_k = 512;
    const auto classes = enumerate_class_optima(d, a, b, 10, dense_k);
    REQUIRE_FALSE(classes.empty());
    double max_cut = 0.0;
    for (const auto& cut : d.cutlines()) max_cut = std::max(max_cut, cut.length());
    int checked = 0;
    for (const auto& cls : classes) {
      if (checked >= 8) break;
      const auto res = get_shortest_path(d, cls.encoding, a, b, nullptr, 0.0);
      CHECK(std::abs(res.cost - cls.cost) <= 2.0 * max_cut / dense_k);
      ++checked;
    }
  }
}
