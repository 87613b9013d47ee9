#include "cdtplan/shortest_path.hpp"

#include <cmath>

#include "cdtplan/error.hpp"

namespace cdtplan {

namespace {

constexpr int kSweepCap = 10000;

// Returns the largest vertex displacement of the sweep.
double sweep_in_place(std::vector<Point>& v, std::span<const Segment> cuts,
                      double eps) {
  double max_move_sq = 0.0;
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    const Point next = min_sum_on_segment(v[k], v[k + 2], cuts[k], eps);
    max_move_sq = std::max(max_move_sq, distance_sq(v[k + 1], next));
    v[k + 1] = next;
  }
  return std::sqrt(max_move_sq);
}

}  // namespace

double default_compression_eps(const ConvexDissection& d) {
  return 1e-6 * d.env().diagonal();
}

Polyline compress_sweep(std::span<const Point> vertices,
                        std::span<const Segment> cutlines, double eps) {
  if (vertices.size() != cutlines.size() + 2) {
    throw ContractError("compress_sweep: |vertices| must equal |cutlines|+2");
  }
  std::vector<Point> out(vertices.begin(), vertices.end());
  sweep_in_place(out, cutlines, eps);
  return out;
}

CompressionResult get_shortest_path(const ConvexDissection& d,
                                    const CdtEncoding& enc, Point x_s,
                                    Point x_e, const Polyline* warm_start,
                                    double eps) {
  if (!enc.valid()) throw ContractError("get_shortest_path: malformed walk");
  if (!std::isfinite(x_s.x) || !std::isfinite(x_s.y) ||
      !std::isfinite(x_e.x) || !std::isfinite(x_e.y)) {
    throw ContractError("get_shortest_path: non-finite endpoint");
  }
  if (eps < 0) eps = default_compression_eps(d);
  const double geps = d.epsilon();
  if (!d.point_in(x_s, enc.first())) {
    throw ContractError("get_shortest_path: x_s not in the first polygon");
  }
  if (!d.point_in(x_e, enc.last())) {
    throw ContractError("get_shortest_path: x_e not in the last polygon");
  }

  const std::size_t m = enc.crossings.size();
  CompressionResult res;
  if (m == 0) {
    res.path = {x_s, x_e};
    res.cost = distance(x_s, x_e);
    res.iterations = 0;
    return res;
  }

  std::vector<Segment> cuts;
  cuts.reserve(m);
  for (const int c : enc.crossings) cuts.push_back(d.cutline(c).seg);

  std::vector<Point>& v = res.path;
  v.resize(m + 2);
  v.front() = x_s;
  v.back() = x_e;
  if (warm_start) {
    if (warm_start->size() != m + 2) {
      throw ContractError("get_shortest_path: warm start arity mismatch");
    }
    for (std::size_t k = 0; k < m; ++k) v[k + 1] = (*warm_start)[k + 1];
  } else {
    for (std::size_t k = 0; k < m; ++k) v[k + 1] = cuts[k].at(0.5);
  }

  // Stop when a full sweep improves the cost by less than eps, or moves no
  // vertex further than the geometric tolerance (a fixed point; the cost is
  // quadratically insensitive near the optimum, so the movement test is the
  // sharper convergence signal).
  double cost = polyline_length(v);
  for (int sweep = 0; sweep < kSweepCap; ++sweep) {
    const double max_move = sweep_in_place(v, cuts, geps);
    const double new_cost = polyline_length(v);
    ++res.iterations;
    if (new_cost > cost + eps + 1e-9 * (1.0 + cost)) {
      throw IterationLimitError("get_shortest_path: cost increased in sweep");
    }
    const double improvement = cost - new_cost;
    cost = new_cost;
    if (improvement < eps || max_move <= geps) {
      res.cost = cost;
      return res;
    }
  }
  throw IterationLimitError("get_shortest_path: sweep cap exceeded");
}

}  // namespace cdtplan
