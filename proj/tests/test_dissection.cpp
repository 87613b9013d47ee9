#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <deque>
#include <random>
#include <set>

#include "cdtplan/dissection.hpp"
#include "cdtplan/environment.hpp"
#include "cdtplan/error.hpp"

using namespace cdtplan;

namespace {

Environment square_env(double side = 10.0) {
  Environment env;
  env.boundary = {{0, 0}, {side, 0}, {side, side}, {0, side}};
  return env;
}

Environment center_obstacle_env() {
  Environment env = square_env();
  env.obstacles.push_back({{4, 4}, {4, 6}, {6, 6}, {6, 4}});  // CW
  return env;
}

Environment two_rooms_env() {
  Environment env;
  env.boundary = {{0, 0},  {4, 0},  {4, 4},  {8, 4},  {8, 0},  {12, 0},
                  {12, 10}, {8, 10}, {8, 6},  {4, 6},  {4, 10}, {0, 10}};
  return env;
}

Environment sealed_chamber_env() {
  Environment env = square_env();
  // U-shaped wall plus a cap sealing the pocket [4,6]x[4,6].
  std::vector<Point> u_shape{{3, 3}, {7, 3}, {7, 7}, {6, 7},
                             {6, 4}, {4, 4}, {4, 7}, {3, 7}};
  std::vector<Point> cap{{4, 6}, {6, 6}, {6, 7}, {4, 7}};
  for (auto* ring : {&u_shape, &cap}) {
    if (signed_area(*ring) > 0) std::reverse(ring->begin(), ring->end());
    env.obstacles.push_back(*ring);
  }
  return env;
}

bool connected_without(const TopologyGraph& g, int removed_cutline) {
  if (g.nodes == 0) return true;
  std::vector<bool> seen(g.nodes, false);
  std::deque<int> queue{0};
  seen[0] = true;
  int count = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (const auto& [cut, w] : g.adjacency[u]) {
      if (cut == removed_cutline || seen[w]) continue;
      seen[w] = true;
      ++count;
      queue.push_back(w);
    }
  }
  return count == g.nodes;
}

}  // namespace

TEST_CASE("empty convex map dissects to one polygon") {
  const auto d = ConvexDissection::build(square_env());
  CHECK(d.polygons().size() == 1);
  CHECK(d.cutlines().empty());
  CHECK(d.graph().independent_cycles() == 0);
}

TEST_CASE("center obstacle: annulus Euler relation") {
  const auto env = center_obstacle_env();
  const auto d = ConvexDissection::build(env);
  CHECK(d.polygons().size() >= 4);
  // one independent cycle around the obstacle: edges == nodes for a
  // connected graph
  CHECK(d.graph().component_count() == 1);
  CHECK(d.graph().independent_cycles() == 1);
  CHECK(d.cutlines().size() == d.polygons().size());
  CHECK(d.graph().independent_cycles() == count_independent_obstacles(env));
}

TEST_CASE("two rooms joined by a door") {
  const auto d = ConvexDissection::build(two_rooms_env());
  CHECK(d.graph().component_count() == 1);
  // some cutline inside the corridor is a bridge
  bool found_bridge = false;
  for (const auto& cut : d.cutlines()) {
    const Point mid = cut.at(0.5);
    const bool in_corridor = mid.x > 3.9 && mid.x < 8.1 && mid.y > 3.9 &&
                             mid.y < 6.1;
    if (in_corridor && !connected_without(d.graph(), cut.id)) {
      found_bridge = true;
      break;
    }
  }
  CHECK(found_bridge);
}

TEST_CASE("nonconvex dart stays two triangles") {
  Environment env;
  env.boundary = {{0, 0}, {4, 1}, {8, 0}, {4, 4}};
  const auto d = ConvexDissection::build(env);
  REQUIRE(d.polygons().size() == 2);
  REQUIRE(d.cutlines().size() == 1);
  CHECK(d.adjacent_cutlines(0).empty());
}

TEST_CASE("locate basics") {
  const auto d = ConvexDissection::build(center_obstacle_env());
  SUBCASE("free point locates") {
    const int id = d.locate({1, 1});
    CHECK(d.point_in({1, 1}, id));
  }
  SUBCASE("obstacle interior throws") {
    CHECK_THROWS_AS(d.locate({5, 5}), NotInFreeSpaceError);
  }
  SUBCASE("outside boundary throws") {
    CHECK_THROWS_AS(d.locate({20, 20}), NotInFreeSpaceError);
  }
  SUBCASE("point on a cutline resolves to the smaller id") {
    REQUIRE_FALSE(d.cutlines().empty());
    const auto& cut = d.cutlines().front();
    const Point mid = cut.at(0.5);
    CHECK(d.locate(mid) == std::min(cut.left, cut.right));
  }
}

TEST_CASE("single-polygon map locate") {
  const auto d = ConvexDissection::build(square_env());
  CHECK(d.locate({5, 5}) == 0);
}

TEST_CASE("adjacent cutlines queries") {
  const auto d = ConvexDissection::build(center_obstacle_env());
  SUBCASE("point query returns the containing polygon's cutlines") {
    // use a polygon centroid so the point is strictly interior
    const auto& poly = d.polygon(0);
    Point c{0, 0};
    for (const Point& v : poly.vertices) c = c + v;
    c = (1.0 / poly.vertices.size()) * c;
    CHECK(d.locate(c) == 0);
    CHECK(d.cutlines_at_point(c) == poly.cutline_ids);
  }
  SUBCASE("point on a cutline unions both polygons") {
    const auto& cut = d.cutlines().front();
    const auto cuts = d.cutlines_at_point(cut.at(0.5));
    std::set<int> expected;
    for (const int poly : {cut.left, cut.right}) {
      for (const int c : d.polygon(poly).cutline_ids) expected.insert(c);
    }
    CHECK(cuts == std::vector<int>(expected.begin(), expected.end()));
  }
  SUBCASE("cutline query excludes itself and matches the polygon pair") {
    for (const auto& cut : d.cutlines()) {
      const auto adj = d.adjacent_cutlines(cut.id);
      CHECK(std::find(adj.begin(), adj.end(), cut.id) == adj.end());
      std::set<int> expected;
      for (const int poly : {cut.left, cut.right}) {
        for (const int c : d.polygon(poly).cutline_ids) {
          if (c != cut.id) expected.insert(c);
        }
      }
      CHECK(adj == std::vector<int>(expected.begin(), expected.end()));
    }
  }
  SUBCASE("empty set query") {
    CHECK(d.adjacent_cutlines(std::span<const int>{}).empty());
  }
}

TEST_CASE("validation passes on a sound dissection") {
  const auto d = ConvexDissection::build(center_obstacle_env());
  const auto report = d.validate(10000, 7);
  INFO(report.summary());
  CHECK(report.pass());
  CHECK(report.covered_fraction == 1.0);
}

TEST_CASE("validation flags a removed polygon") {
  const auto d = ConvexDissection::build(center_obstacle_env());
  std::vector<ConvexPolygon> polys(d.polygons().begin(), d.polygons().end());
  polys.pop_back();
  const auto report = validate_dissection_parts(d.env(), polys, d.cutlines(),
                                                 5000, 7);
  CHECK_FALSE(report.pass());
  CHECK(report.coverage_violations > 0);
}

TEST_CASE("validation flags an injected reflex vertex") {
  const auto d = ConvexDissection::build(center_obstacle_env());
  std::vector<ConvexPolygon> polys(d.polygons().begin(), d.polygons().end());
  auto& vs = polys[0].vertices;
  const Point mid = 0.5 * (vs[0] + vs[1]);
  const Point centroid = [&] {
    Point c{0, 0};
    for (const Point& v : vs) c = c + v;
    return (1.0 / vs.size()) * c;
  }();
  // dent the edge midpoint toward the centroid
  vs.insert(vs.begin() + 1, mid + 0.3 * (centroid - mid));
  const auto report = validate_dissection_parts(d.env(), polys, d.cutlines(),
                                                 1000, 7);
  CHECK(report.convexity_violations > 0);
}

TEST_CASE("interior disjointness over random maps") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    Environment env = square_env(100.0);
    std::uniform_real_distribution<double> pos(10.0, 70.0);
    std::uniform_real_distribution<double> size(4.0, 18.0);
    for (int k = 0; k < 4; ++k) {
      for (int attempt = 0; attempt < 50; ++attempt) {
        const double x = pos(rng), y = pos(rng);
        const double w = size(rng), h = size(rng);
        Environment candidate = env;
        candidate.obstacles.push_back(
            {{x, y}, {x, y + h}, {x + w, y + h}, {x + w, y}});
        try {
          validate_environment(candidate);
        } catch (const ValidationError&) {
          continue;
        }
        bool clear = true;
        for (std::size_t i = 0; i + 1 < candidate.obstacles.size() && clear;
             ++i) {
          const auto bb = bounding_box(candidate.obstacles[i]);
          clear = x > bb.hi.x + 2 || x + w < bb.lo.x - 2 || y > bb.hi.y + 2 ||
                  y + h < bb.lo.y - 2;
        }
        if (!clear) continue;
        env = candidate;
        break;
      }
    }
    const auto d = ConvexDissection::build(env);
    const auto report = d.validate(10000, trial + 1);
    INFO("trial " << trial << ": " << report.summary());
    CHECK(report.pass());
    CHECK(d.graph().independent_cycles() == count_independent_obstacles(env));
  }
}

TEST_CASE("sealed chamber gives a second graph component") {
  const auto env = sealed_chamber_env();
  const auto d = ConvexDissection::build(env);
  CHECK(d.graph().component_count() == 2);
  CHECK(d.graph().independent_cycles() == count_independent_obstacles(env));
  const int inside = d.locate({5, 5});
  const int outside = d.locate({1, 1});
  const auto comp = d.graph().components();
  CHECK(comp[inside] != comp[outside]);
  const auto report = d.validate(5000, 3);
  INFO(report.summary());
  CHECK(report.pass());
}

TEST_CASE("graph connectivity matches grid flood fill") {
  // zigzag walls leave a single connected corridor
  OccupancyGrid grid;
  grid.width = 30;
  grid.height = 20;
  grid.cell_size = 1.0;
  grid.cells.assign(600, 0);
  const auto block = [&](int c0, int r0, int c1, int r1) {
    for (int r = r0; r < r1; ++r) {
      for (int c = c0; c < c1; ++c) grid.cells[r * 30 + c] = 1;
    }
  };
  block(6, 0, 8, 14);
  block(14, 6, 16, 20);
  block(22, 0, 24, 14);

  const auto env = grid_to_environment(grid, 0.5);
  const auto d = ConvexDissection::build(env);
  const auto comp = d.graph().components();

  // grid flood fill from (1,1)
  std::vector<int> reach(600, 0);
  std::deque<std::pair<int, int>> queue{{1, 1}};
  reach[1 * 30 + 1] = 1;
  while (!queue.empty()) {
    auto [c, r] = queue.front();
    queue.pop_front();
    const int dc[4] = {1, -1, 0, 0}, dr[4] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      const int nc = c + dc[k], nr = r + dr[k];
      if (nc < 0 || nr < 0 || nc >= 30 || nr >= 20) continue;
      if (grid.occupied(nc, nr) || reach[nr * 30 + nc]) continue;
      reach[nr * 30 + nc] = 1;
      queue.push_back({nc, nr});
    }
  }

  const int comp_start = comp[d.locate({1.5, 1.5})];
  std::mt19937_64 rng(4);
  int checked = 0;
  while (checked < 200) {
    const int c = static_cast<int>(rng() % 30);
    const int r = static_cast<int>(rng() % 20);
    if (grid.occupied(c, r)) continue;
    const Point p{c + 0.5, r + 0.5};
    const auto id = d.try_locate(p);
    REQUIRE(id.has_value());
    const bool graph_connected = comp[*id] == comp_start;
    const bool grid_connected = reach[r * 30 + c] == 1;
    CHECK(graph_connected == grid_connected);
    ++checked;
  }
}

TEST_CASE("snapshot round trip") {
  const auto d = ConvexDissection::build(center_obstacle_env());
  const auto text = d.to_snapshot_json();
  const auto d2 = ConvexDissection::from_snapshot_json(text);
  CHECK(d2.polygons().size() == d.polygons().size());
  CHECK(d2.cutlines().size() == d.cutlines().size());
  CHECK(d2.locate({1, 1}) == d.locate({1, 1}));
  CHECK(d2.to_snapshot_json() == text);
}

TEST_CASE("fully blocked construction fails") {
  Environment env = square_env();
  env.obstacles.push_back({{0, 0}, {0, 10}, {10, 10}, {10, 0}});
  CHECK_THROWS(ConvexDissection::build(env));
}
