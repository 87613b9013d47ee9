#include "cdtplan/mapgen.hpp"

#include <algorithm>

#include "cdtplan/error.hpp"

namespace cdtplan {

Environment random_rect_env(std::uint64_t seed, int min_obstacles,
                            int max_obstacles, double width, double height) {
  SplitMix64 rng(seed * 0x9e3779b97f4a7c15ULL + 0xD1552E5A);
  Environment env;
  env.boundary = {{0, 0}, {width, 0}, {width, height}, {0, height}};
  const int target = rng.uniform_int(min_obstacles, max_obstacles);
  const double margin = 0.03 * std::min(width, height);
  const double gap = 0.02 * std::min(width, height);

  struct Rect {
    double x0, y0, x1, y1;
  };
  std::vector<Rect> rects;
  int attempts = 0;
  while (static_cast<int>(rects.size()) < target && attempts < 4000) {
    ++attempts;
    const double w = rng.uniform(0.05, 0.24) * width;
    const double h = rng.uniform(0.05, 0.24) * height;
    const double x = rng.uniform(margin, width - margin - w);
    const double y = rng.uniform(margin, height - margin - h);
    const Rect r{x, y, x + w, y + h};
    bool clear = true;
    for (const Rect& o : rects) {
      if (r.x0 < o.x1 + gap && o.x0 < r.x1 + gap && r.y0 < o.y1 + gap &&
          o.y0 < r.y1 + gap) {
        clear = false;
        break;
      }
    }
    if (!clear) continue;
    rects.push_back(r);
  }
  for (const Rect& r : rects) {
    env.obstacles.push_back(
        {{r.x0, r.y0}, {r.x0, r.y1}, {r.x1, r.y1}, {r.x1, r.y0}});
  }
  return env;
}

Environment preset_env(const std::string& name) {
  Environment env;
  env.boundary = {{0, 0}, {1000, 0}, {1000, 1000}, {0, 1000}};
  const auto add = [&env](std::vector<Point> ring) {
    if (signed_area(ring) > 0) std::reverse(ring.begin(), ring.end());
    env.obstacles.push_back(std::move(ring));
  };

  if (name == "cluttered") {
    SplitMix64 rng(0xC1A77E11);
    int placed = 0;
    std::vector<BBox> taken;
    while (placed < 14) {
      const double w = rng.uniform(50, 130);
      const double h = rng.uniform(50, 130);
      const double x = rng.uniform(40, 960 - w);
      const double y = rng.uniform(40, 960 - h);
      BBox box;
      box.expand({x - 25, y - 25});
      box.expand({x + w + 25, y + h + 25});
      bool clear = true;
      for (const BBox& o : taken) {
        if (box.lo.x < o.hi.x && o.lo.x < box.hi.x && box.lo.y < o.hi.y &&
            o.lo.y < box.hi.y) {
          clear = false;
          break;
        }
      }
      if (!clear) continue;
      taken.push_back(box);
      add({{x, y}, {x + w, y}, {x + w, y + h}, {x, y + h}});
      ++placed;
    }
    return env;
  }
  if (name == "trap") {
    // U-shaped trap opening toward +x, plus a free-standing block.
    add({{200, 200},
         {700, 200},
         {700, 300},
         {300, 300},
         {300, 700},
         {700, 700},
         {700, 800},
         {200, 800}});
    add({{800, 450}, {880, 450}, {880, 560}, {800, 560}});
    return env;
  }
  if (name == "maze") {
    // One serpentine wall: a single independent obstacle whose corridors
    // force long detours.
    add({{100, 250},
         {700, 250},
         {700, 500},
         {900, 500},
         {900, 560},
         {360, 560},
         {360, 750},
         {700, 750},
         {700, 810},
         {100, 810},
         {100, 750},
         {300, 750},
         {300, 500},
         {640, 500},
         {640, 310},
         {100, 310}});
    return env;
  }
  if (name == "rooms") {
    env.boundary = {{0, 0},    {400, 0},    {400, 400},  {600, 400},
                    {600, 0},  {1000, 0},   {1000, 1000}, {600, 1000},
                    {600, 600}, {400, 600}, {400, 1000}, {0, 1000}};
    return env;
  }
  throw Error("unknown preset map: " + name);
}

std::vector<std::string> preset_names() {
  return {"cluttered", "trap", "maze", "rooms"};
}

Point random_free_point(const Environment& env, SplitMix64& rng,
                        double clearance) {
  const BBox box = env.bbox();
  const double eps = env.epsilon();
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const Point p{rng.uniform(box.lo.x, box.hi.x),
                  rng.uniform(box.lo.y, box.hi.y)};
    if (!env.in_free_space(p, eps)) continue;
    if (clearance > 0) {
      bool clear = true;
      const auto check_ring = [&](const std::vector<Point>& ring) {
        for (std::size_t i = 0; i < ring.size() && clear; ++i) {
          clear = point_segment_distance(
                      p, {ring[i], ring[(i + 1) % ring.size()]}) >= clearance;
        }
      };
      check_ring(env.boundary);
      for (const auto& obs : env.obstacles) {
        if (!clear) break;
        check_ring(obs);
      }
      if (!clear) continue;
    }
    return p;
  }
  throw Error("random_free_point: could not sample the free space");
}

}  // namespace cdtplan
