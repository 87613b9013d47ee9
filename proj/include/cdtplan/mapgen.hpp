#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cdtplan/environment.hpp"

namespace cdtplan {

/// Deterministic cross-platform generator (splitmix64); used everywhere a
/// reproducible stream is needed.
struct SplitMix64 {
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;

  explicit SplitMix64(std::uint64_t seed = 1) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

/// Seeded benchmark map: axis-aligned rectangular obstacles with margins
/// that keep the environment valid and well-separated.
Environment random_rect_env(std::uint64_t seed, int min_obstacles = 3,
                            int max_obstacles = 10, double width = 1000.0,
                            double height = 1000.0);

/// Built-in 1000x1000 benchmark environments:
///   cluttered - 14 scattered blocks
///   trap      - U-shaped trap plus a block
///   maze      - one serpentine wall (single cycle)
///   rooms     - two rooms joined by a corridor
Environment preset_env(const std::string& name);
std::vector<std::string> preset_names();

/// Uniform sample of the free space, at least `clearance` away from every
/// wall and obstacle edge.
Point random_free_point(const Environment& env, SplitMix64& rng,
                        double clearance = 0.0);

}  // namespace cdtplan
