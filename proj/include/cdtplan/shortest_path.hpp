#pragma once

#include <optional>
#include <span>

#include "cdtplan/dissection.hpp"
#include "cdtplan/encoding.hpp"
#include "cdtplan/geometry.hpp"

namespace cdtplan {

struct CompressionResult {
  Polyline path;   // x_s, one vertex per crossed cutline, x_e
  double cost = 0.0;
  int iterations = 0;  // full sweeps executed
};

/// One compression sweep: replaces vertex k by the two-segment minimizer on
/// its cutline, in ascending k, each step seeing the already-updated
/// predecessor. Requires |vertices| == |cutlines| + 2. Never increases cost.
Polyline compress_sweep(std::span<const Point> vertices,
                        std::span<const Segment> cutlines, double eps);

/// Shortest path from x_s to x_e within the homotopy class of `enc`:
/// vertices start at cutline midpoints (or `warm_start`) and are swept until
/// a full sweep improves the cost by less than `eps` or moves no vertex
/// further than the geometric tolerance. Pass eps = 0 to converge on vertex
/// movement alone. Endpoints must lie in the walk's terminal polygons.
/// Sweeps are capped at 10000.
CompressionResult get_shortest_path(const ConvexDissection& d,
                                    const CdtEncoding& enc, Point x_s,
                                    Point x_e,
                                    const Polyline* warm_start = nullptr,
                                    double eps = -1.0);

/// Default sweep tolerance: 1e-6 of the environment diagonal.
double default_compression_eps(const ConvexDissection& d);

}  // namespace cdtplan
