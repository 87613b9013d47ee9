#pragma once

#include <string>
#include <vector>

#include "cdtplan/dissection.hpp"
#include "cdtplan/encoding.hpp"
#include "cdtplan/environment.hpp"

namespace cdtplan {

/// Brute-force ground truth used to check the planner; kept independent of
/// the compression machinery.
struct OracleResult {
  bool reachable = false;
  double cost = 0.0;
  Polyline path;
  std::string method;
};

/// Exact Euclidean shortest path over the visibility graph of the polygon
/// vertices plus the two query points. Optimal for polygonal environments.
OracleResult visibility_shortest(const Environment& env, Point a, Point b);

/// Dijkstra over free cells; 4- or 8-connectivity (diagonal cost sqrt(2),
/// no corner cutting). Upper-bounds the continuous optimum.
OracleResult grid_shortest(const OccupancyGrid& grid, Point a, Point b,
                           int connectivity = 8);

struct ClassOptimum {
  CdtEncoding encoding;
  double cost = 0.0;
  Polyline path;
};

/// Enumerates reduced walks (no immediate backtracking) between the query
/// points' polygons up to max_len crossings, and computes each class optimum
/// by dynamic programming over cutlines discretized into dense_k points.
/// Returns classes sorted by cost.
std::vector<ClassOptimum> enumerate_class_optima(const ConvexDissection& d,
                                                 Point a, Point b,
                                                 int max_len = 12,
                                                 int dense_k = 512);

}  // namespace cdtplan
