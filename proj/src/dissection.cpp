#include "cdtplan/dissection.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <deque>
#include <map>
#include <random>
#include <unordered_map>

#include <json.hpp>

#include "cdtplan/error.hpp"
#include "triangulate.hpp"

namespace cdtplan {

namespace {

struct Cell {
  std::vector<int> verts;  // CCW vertex ids
  std::vector<int> nbrs;   // cell across (verts[i], verts[i+1]), -1 = wall
  bool alive = true;
};

// Rotates the cycle so that the contiguous run of edges bordering `other`
// starts at index 0. Returns the run length, or -1 when the shared edges are
// not a single contiguous run.
int rotate_to_shared_run(Cell& cell, int other) {
  const int n = static_cast<int>(cell.verts.size());
  int start = -1;
  for (int i = 0; i < n; ++i) {
    const int prev = (i + n - 1) % n;
    if (cell.nbrs[i] == other && cell.nbrs[prev] != other) {
      start = i;
      break;
    }
  }
  if (start < 0) return -1;  // none, or all edges shared
  std::rotate(cell.verts.begin(), cell.verts.begin() + start, cell.verts.end());
  std::rotate(cell.nbrs.begin(), cell.nbrs.begin() + start, cell.nbrs.end());
  int run = 0;
  while (run < n && cell.nbrs[run] == other) ++run;
  for (int i = run; i < n; ++i) {
    if (cell.nbrs[i] == other) return -1;  // second run: malformed
  }
  return run;
}

}  // namespace

// ---------------------------------------------------------------------------
// TopologyGraph

std::vector<int> TopologyGraph::components() const {
  std::vector<int> comp(nodes, -1);
  int count = 0;
  for (int s = 0; s < nodes; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = count;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (const auto& [cut, w] : adjacency[u]) {
        if (comp[w] < 0) {
          comp[w] = count;
          queue.push_back(w);
        }
      }
    }
    ++count;
  }
  return comp;
}

int TopologyGraph::component_count() const {
  const auto comp = components();
  return comp.empty() ? 0 : 1 + *std::max_element(comp.begin(), comp.end());
}

int TopologyGraph::independent_cycles() const {
  return static_cast<int>(edges.size()) - nodes + component_count();
}

// ---------------------------------------------------------------------------
// Build

ConvexDissection ConvexDissection::build(const Environment& env) {
  validate_environment(env);
  ConvexDissection d;
  d.env_ = env;
  d.eps_ = env.epsilon();
  const double eps = d.eps_;

  // Gather deduplicated vertices and ring constraints.
  std::vector<Point> points;
  const auto add_point = [&](Point p) -> int {
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (distance(points[i], p) <= eps) return static_cast<int>(i);
    }
    points.push_back(p);
    return static_cast<int>(points.size()) - 1;
  };
  std::vector<std::pair<int, int>> constraints;
  const auto add_ring = [&](const std::vector<Point>& ring) {
    std::vector<int> ids;
    for (const Point& p : ring) ids.push_back(add_point(p));
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const int a = ids[i];
      const int b = ids[(i + 1) % ids.size()];
      if (a != b) constraints.push_back({a, b});
    }
  };
  add_ring(env.boundary);
  for (const auto& obs : env.obstacles) add_ring(obs);

  // Split constraints at vertices lying on them, so touching rings share
  // exact mesh edges.
  std::vector<std::pair<int, int>> split;
  for (const auto& [a, b] : constraints) {
    const Segment seg{points[a], points[b]};
    std::vector<std::pair<double, int>> on_seg;
    for (std::size_t v = 0; v < points.size(); ++v) {
      if (static_cast<int>(v) == a || static_cast<int>(v) == b) continue;
      if (point_segment_distance(points[v], seg) > eps) continue;
      const double t = dot(points[v] - seg.a, seg.b - seg.a) /
                       std::max(distance_sq(seg.a, seg.b), 1e-300);
      if (t > 0.0 && t < 1.0) on_seg.push_back({t, static_cast<int>(v)});
    }
    std::sort(on_seg.begin(), on_seg.end());
    int prev = a;
    for (const auto& [t, v] : on_seg) {
      split.push_back({prev, v});
      prev = v;
    }
    split.push_back({prev, b});
  }
  std::sort(split.begin(), split.end(), [](auto l, auto r) {
    return detail::TriMesh::edge_key(l.first, l.second) <
           detail::TriMesh::edge_key(r.first, r.second);
  });
  split.erase(std::unique(split.begin(), split.end(),
                          [](auto l, auto r) {
                            return detail::TriMesh::edge_key(l.first, l.second) ==
                                   detail::TriMesh::edge_key(r.first, r.second);
                          }),
              split.end());

  const detail::TriMesh mesh = detail::constrained_delaunay(points, split);

  // Classify triangles by centroid.
  std::vector<int> tri_cell(mesh.tris.size(), -1);
  std::vector<Cell> cells;
  for (std::size_t t = 0; t < mesh.tris.size(); ++t) {
    const auto& tri = mesh.tris[t];
    const Point centroid =
        (1.0 / 3.0) * (mesh.verts[tri.v[0]] + mesh.verts[tri.v[1]] +
                       mesh.verts[tri.v[2]]);
    if (!env.in_free_space(centroid, eps)) continue;
    tri_cell[t] = static_cast<int>(cells.size());
    cells.push_back({{tri.v[0], tri.v[1], tri.v[2]}, {-1, -1, -1}, true});
  }
  if (cells.empty()) {
    throw ConstructionError("free space is empty or degenerate");
  }
  for (std::size_t t = 0; t < mesh.tris.size(); ++t) {
    if (tri_cell[t] < 0) continue;
    const auto& tri = mesh.tris[t];
    for (int k = 0; k < 3; ++k) {
      const int n = tri.nbr[k];
      if (n < 0 || tri_cell[n] < 0) continue;
      if (mesh.is_constrained(tri.v[k], tri.v[(k + 1) % 3])) continue;
      cells[tri_cell[t]].nbrs[k] = tri_cell[n];
    }
  }

  // Hertel-Mehlhorn: remove inessential diagonals, longest first.
  struct Candidate {
    double len;
    int u, v;
  };
  std::vector<Candidate> candidates;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t k = 0; k < cells[c].verts.size(); ++k) {
      const int u = cells[c].verts[k];
      const int v = cells[c].verts[(k + 1) % cells[c].verts.size()];
      if (cells[c].nbrs[k] >= 0 && u < v) {
        candidates.push_back({distance(mesh.verts[u], mesh.verts[v]), u, v});
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const auto& l, const auto& r) {
    if (l.len != r.len) return l.len > r.len;
    if (l.u != r.u) return l.u < r.u;
    return l.v < r.v;
  });

  std::unordered_map<std::uint64_t, std::pair<int, int>> edge_cells;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t k = 0; k < cells[c].verts.size(); ++k) {
      if (cells[c].nbrs[k] < 0) continue;
      const int u = cells[c].verts[k];
      const int v = cells[c].verts[(k + 1) % cells[c].verts.size()];
      const auto key = detail::TriMesh::edge_key(u, v);
      if (u < v) edge_cells[key] = {static_cast<int>(c), cells[c].nbrs[k]};
    }
  }

  const auto try_merge = [&](int u, int v) -> bool {
    const auto it = edge_cells.find(detail::TriMesh::edge_key(u, v));
    if (it == edge_cells.end()) return false;
    auto [pi, qi] = it->second;
    if (pi == qi || !cells[pi].alive || !cells[qi].alive) return false;
    Cell& p = cells[pi];
    Cell& q = cells[qi];
    const int run_p = rotate_to_shared_run(p, qi);
    const int run_q = rotate_to_shared_run(q, pi);
    if (run_p <= 0 || run_q <= 0 || run_p != run_q) return false;
    if (run_p >= static_cast<int>(p.verts.size()) ||
        run_q >= static_cast<int>(q.verts.size())) {
      return false;
    }

    const int np = static_cast<int>(p.verts.size());
    const int nq = static_cast<int>(q.verts.size());
    std::vector<int> verts, nbrs;
    verts.reserve(np + nq - 2 * run_p);
    nbrs.reserve(np + nq - 2 * run_p);
    for (int i = run_p; i < np; ++i) {
      verts.push_back(p.verts[i]);
      nbrs.push_back(p.nbrs[i]);
    }
    for (int i = run_q; i < nq; ++i) {
      verts.push_back(q.verts[i]);
      nbrs.push_back(q.nbrs[i]);
    }
    // Junctions sit at union indices 0 (chain end) and np - run_p (start).
    const int m = static_cast<int>(verts.size());
    for (const int j : {0, np - run_p}) {
      const Point prev = mesh.verts[verts[(j + m - 1) % m]];
      const Point cur = mesh.verts[verts[j]];
      const Point next = mesh.verts[verts[(j + 1) % m]];
      if (orient(prev, cur, next, eps) < 0) return false;
    }

    // Commit: p absorbs q.
    for (int i = 0; i < run_p; ++i) {
      edge_cells.erase(detail::TriMesh::edge_key(
          p.verts[i], p.verts[(i + 1) % np]));
    }
    p.verts = std::move(verts);
    p.nbrs = std::move(nbrs);
    q.alive = false;
    q.verts.clear();
    q.nbrs.clear();
    for (std::size_t k = 0; k < p.nbrs.size(); ++k) {
      if (p.nbrs[k] == qi) p.nbrs[k] = pi;  // defensive; chain was removed
    }
    for (auto& [key, pq] : edge_cells) {
      if (pq.first == qi) pq.first = pi;
      if (pq.second == qi) pq.second = pi;
    }
    // Fix backpointers of q's former neighbors.
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!cells[c].alive || static_cast<int>(c) == pi) continue;
      for (auto& nb : cells[c].nbrs) {
        if (nb == qi) nb = pi;
      }
    }
    return true;
  };

  bool merged_any = true;
  while (merged_any) {
    merged_any = false;
    for (const auto& cand : candidates) {
      if (try_merge(cand.u, cand.v)) merged_any = true;
    }
  }

  // Deterministic polygon order: lexicographic sorted vertex-id sequence.
  std::vector<int> order;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (cells[c].alive) order.push_back(static_cast<int>(c));
  }
  std::vector<std::vector<int>> sort_keys(cells.size());
  for (const int c : order) {
    sort_keys[c] = cells[c].verts;
    std::sort(sort_keys[c].begin(), sort_keys[c].end());
  }
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return sort_keys[a] < sort_keys[b]; });
  std::vector<int> cell_to_poly(cells.size(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    cell_to_poly[order[i]] = static_cast<int>(i);
  }

  d.polygons_.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Cell& cell = cells[order[i]];
    ConvexPolygon poly;
    poly.id = static_cast<int>(i);
    const int n = static_cast<int>(cell.verts.size());
    for (int k = 0; k < n; ++k) {
      const Point prev = mesh.verts[cell.verts[(k + n - 1) % n]];
      const Point cur = mesh.verts[cell.verts[k]];
      const Point next = mesh.verts[cell.verts[(k + 1) % n]];
      if (orient(prev, cur, next, eps) != 0) poly.vertices.push_back(cur);
    }
    if (poly.vertices.size() < 3) {
      throw ConstructionError("degenerate polygon after merging");
    }
    d.polygons_[i] = std::move(poly);
  }

  // Cutlines: group surviving interior edges by polygon pair and merge each
  // collinear chain into one segment.
  struct PairEdges {
    std::vector<std::pair<int, int>> edges;
  };
  std::map<std::pair<int, int>, PairEdges> by_pair;
  for (const auto& [key, pq] : edge_cells) {
    const int pa = cell_to_poly[pq.first];
    const int pb = cell_to_poly[pq.second];
    if (pa < 0 || pb < 0 || pa == pb) continue;
    const int u = static_cast<int>(key >> 32);
    const int v = static_cast<int>(key & 0xffffffffu);
    by_pair[{std::min(pa, pb), std::max(pa, pb)}].edges.push_back({u, v});
  }
  for (auto& [pair, group] : by_pair) {
    // Chain extremes: vertices used an odd number of times.
    std::unordered_map<int, int> uses;
    double total = 0.0;
    for (const auto& [u, v] : group.edges) {
      ++uses[u];
      ++uses[v];
      total += distance(mesh.verts[u], mesh.verts[v]);
    }
    std::vector<int> ends;
    for (const auto& [v, n] : uses) {
      if (n % 2 == 1) ends.push_back(v);
    }
    if (ends.size() != 2) {
      throw ConstructionError("cutline chain between polygons is not simple");
    }
    Point a = mesh.verts[ends[0]];
    Point b = mesh.verts[ends[1]];
    if (std::abs(distance(a, b) - total) > 16 * eps + 1e-9) {
      throw ConstructionError("cutline chain between polygons is not straight");
    }
    if (b.x < a.x || (b.x == a.x && b.y < a.y)) std::swap(a, b);
    Cutline cut;
    cut.id = static_cast<int>(d.cutlines_.size());
    cut.seg = {a, b};
    cut.left = pair.first;
    cut.right = pair.second;
    d.cutlines_.push_back(cut);
  }

  for (const Cutline& cut : d.cutlines_) {
    d.polygons_[cut.left].cutline_ids.push_back(cut.id);
    d.polygons_[cut.right].cutline_ids.push_back(cut.id);
  }
  for (auto& poly : d.polygons_) {
    std::sort(poly.cutline_ids.begin(), poly.cutline_ids.end());
  }

  d.graph_.nodes = static_cast<int>(d.polygons_.size());
  d.graph_.adjacency.assign(d.graph_.nodes, {});
  for (const Cutline& cut : d.cutlines_) {
    d.graph_.edges.push_back({cut.id, cut.left, cut.right});
    d.graph_.adjacency[cut.left].push_back({cut.id, cut.right});
    d.graph_.adjacency[cut.right].push_back({cut.id, cut.left});
  }

  d.build_locator();
  return d;
}

// ---------------------------------------------------------------------------
// Point location

void ConvexDissection::build_locator() {
  bounds_ = env_.bbox();
  const int n = static_cast<int>(polygons_.size());
  grid_dim_ = std::clamp(static_cast<int>(std::ceil(std::sqrt(n))) * 2, 1, 256);
  cell_w_ = std::max((bounds_.hi.x - bounds_.lo.x) / grid_dim_, 1e-12);
  cell_h_ = std::max((bounds_.hi.y - bounds_.lo.y) / grid_dim_, 1e-12);
  buckets_.assign(static_cast<std::size_t>(grid_dim_) * grid_dim_, {});
  for (const auto& poly : polygons_) {
    const BBox box = bounding_box(poly.vertices);
    const int x0 = std::clamp(
        static_cast<int>((box.lo.x - bounds_.lo.x - eps_) / cell_w_), 0,
        grid_dim_ - 1);
    const int x1 = std::clamp(
        static_cast<int>((box.hi.x - bounds_.lo.x + eps_) / cell_w_), 0,
        grid_dim_ - 1);
    const int y0 = std::clamp(
        static_cast<int>((box.lo.y - bounds_.lo.y - eps_) / cell_h_), 0,
        grid_dim_ - 1);
    const int y1 = std::clamp(
        static_cast<int>((box.hi.y - bounds_.lo.y + eps_) / cell_h_), 0,
        grid_dim_ - 1);
    for (int gy = y0; gy <= y1; ++gy) {
      for (int gx = x0; gx <= x1; ++gx) {
        buckets_[static_cast<std::size_t>(gy) * grid_dim_ + gx].push_back(
            poly.id);
      }
    }
  }
}

bool ConvexDissection::point_in(Point p, int polygon_id) const {
  return point_in_convex_polygon(p, polygons_[polygon_id].vertices, eps_);
}

std::vector<int> ConvexDissection::locate_all(Point p) const {
  std::vector<int> out;
  if (buckets_.empty()) return out;
  const int gx = std::clamp(static_cast<int>((p.x - bounds_.lo.x) / cell_w_),
                            0, grid_dim_ - 1);
  const int gy = std::clamp(static_cast<int>((p.y - bounds_.lo.y) / cell_h_),
                            0, grid_dim_ - 1);
  for (const int id : buckets_[static_cast<std::size_t>(gy) * grid_dim_ + gx]) {
    if (point_in(p, id)) out.push_back(id);
  }
  return out;  // bucket contents ascend, so out is sorted
}

std::optional<int> ConvexDissection::try_locate(Point p) const {
  const auto all = locate_all(p);
  if (all.empty()) return std::nullopt;
  return all.front();
}

int ConvexDissection::locate(Point p) const {
  const auto id = try_locate(p);
  if (!id) {
    throw NotInFreeSpaceError("point (" + std::to_string(p.x) + ", " +
                              std::to_string(p.y) + ") is not in free space");
  }
  return *id;
}

std::vector<int> ConvexDissection::cutlines_at_point(Point p) const {
  const auto polys = locate_all(p);
  if (polys.empty()) {
    throw NotInFreeSpaceError("point (" + std::to_string(p.x) + ", " +
                              std::to_string(p.y) + ") is not in free space");
  }
  std::vector<int> out;
  for (const int id : polys) {
    const auto& cuts = polygons_[id].cutline_ids;
    out.insert(out.end(), cuts.begin(), cuts.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> ConvexDissection::adjacent_cutlines(int cutline_id) const {
  const Cutline& cut = cutlines_[cutline_id];
  std::vector<int> out;
  for (const int poly : {cut.left, cut.right}) {
    for (const int c : polygons_[poly].cutline_ids) {
      if (c != cutline_id) out.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> ConvexDissection::adjacent_cutlines(
    std::span<const int> cutline_ids) const {
  std::vector<int> out;
  for (const int c : cutline_ids) {
    const auto adj = adjacent_cutlines(c);
    out.insert(out.end(), adj.begin(), adj.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Validation

std::string DissectionValidation::summary() const {
  std::string s = pass() ? "pass" : "FAIL";
  s += " (samples=" + std::to_string(samples);
  s += ", coverage_violations=" + std::to_string(coverage_violations);
  s += ", convexity_violations=" + std::to_string(convexity_violations);
  s += ", pairing_violations=" + std::to_string(pairing_violations);
  s += ", covered=" + std::to_string(covered_fraction) + ")";
  return s;
}

DissectionValidation validate_dissection_parts(
    const Environment& env, std::span<const ConvexPolygon> polygons,
    std::span<const Cutline> cutlines, int samples, std::uint64_t seed) {
  DissectionValidation report;
  const double eps = env.epsilon();
  const BBox box = env.bbox();

  std::vector<BBox> poly_boxes;
  poly_boxes.reserve(polygons.size());
  for (const auto& poly : polygons) {
    BBox b = bounding_box(poly.vertices);
    b.lo = b.lo - Point{eps, eps};
    b.hi = b.hi + Point{eps, eps};
    poly_boxes.push_back(b);
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(box.lo.x, box.hi.x);
  std::uniform_real_distribution<double> uy(box.lo.y, box.hi.y);
  const double clearance = std::max(2 * eps, 1e-9 * box.diagonal());

  int accepted = 0, covered = 0;
  int attempts = 0;
  const int max_attempts = samples * 200;
  while (accepted < samples && ++attempts < max_attempts) {
    const Point p{ux(rng), uy(rng)};
    if (!env.in_free_space(p, eps)) continue;
    // stay away from every dissection edge to make coverage unambiguous
    bool near_edge = false;
    for (std::size_t i = 0; i < polygons.size() && !near_edge; ++i) {
      if (!poly_boxes[i].contains(p)) continue;
      const auto& vs = polygons[i].vertices;
      for (std::size_t k = 0; k < vs.size() && !near_edge; ++k) {
        near_edge = point_segment_distance(
                        p, {vs[k], vs[(k + 1) % vs.size()]}) <= clearance;
      }
    }
    if (near_edge) continue;
    ++accepted;
    int hits = 0;
    for (std::size_t i = 0; i < polygons.size(); ++i) {
      if (!poly_boxes[i].contains(p)) continue;
      if (point_in_convex_polygon(p, polygons[i].vertices, eps)) ++hits;
    }
    if (hits >= 1) ++covered;
    if (hits != 1) ++report.coverage_violations;
  }
  report.samples = accepted;
  report.covered_fraction =
      accepted > 0 ? static_cast<double>(covered) / accepted : 0.0;

  for (const auto& poly : polygons) {
    const auto& vs = poly.vertices;
    const std::size_t n = vs.size();
    bool convex = n >= 3;
    for (std::size_t k = 0; k < n && convex; ++k) {
      convex = orient(vs[(k + n - 1) % n], vs[k], vs[(k + 1) % n], eps) >= 0;
    }
    if (!convex) ++report.convexity_violations;
  }

  const double slop = 8 * eps;
  for (const auto& cut : cutlines) {
    bool ok = cut.left >= 0 && cut.right >= 0 && cut.left != cut.right &&
              cut.left < static_cast<int>(polygons.size()) &&
              cut.right < static_cast<int>(polygons.size()) &&
              cut.length() > eps;
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      if (!ok) break;
      const Point p = cut.at(t);
      ok = point_in_convex_polygon(p, polygons[cut.left].vertices, slop) &&
           point_in_convex_polygon(p, polygons[cut.right].vertices, slop);
    }
    if (!ok) ++report.pairing_violations;
  }

  // Every polygon edge piece must lie on an environment edge or on one of the
  // polygon's own cutlines.
  std::vector<Segment> env_edges;
  const auto add_edges = [&](const std::vector<Point>& ring) {
    for (std::size_t i = 0; i < ring.size(); ++i) {
      env_edges.push_back({ring[i], ring[(i + 1) % ring.size()]});
    }
  };
  add_edges(env.boundary);
  for (const auto& obs : env.obstacles) add_edges(obs);

  for (const auto& poly : polygons) {
    const auto& vs = poly.vertices;
    bool ok = true;
    for (std::size_t k = 0; k < vs.size() && ok; ++k) {
      const Segment edge{vs[k], vs[(k + 1) % vs.size()]};
      for (double t : {0.125, 0.375, 0.625, 0.875}) {
        const Point p = edge.at(t);
        bool on_wall = false;
        for (const auto& e : env_edges) {
          if (point_segment_distance(p, e) <= slop) {
            on_wall = true;
            break;
          }
        }
        if (on_wall) continue;
        bool on_cut = false;
        for (const int c : poly.cutline_ids) {
          if (point_segment_distance(p, cutlines[c].seg) <= slop) {
            on_cut = true;
            break;
          }
        }
        if (!on_cut) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) ++report.pairing_violations;
  }
  return report;
}

DissectionValidation ConvexDissection::validate(int samples,
                                                std::uint64_t seed) const {
  return validate_dissection_parts(env_, polygons_, cutlines_, samples, seed);
}

// ---------------------------------------------------------------------------
// Snapshot

std::string ConvexDissection::to_snapshot_json() const {
  nlohmann::json doc;
  doc["environment"] = nlohmann::json::parse(serialize_env(env_));
  doc["environment_hash"] = environment_hash(env_);
  auto& polys = doc["polygons"] = nlohmann::json::array();
  for (const auto& poly : polygons_) {
    nlohmann::json jp;
    jp["id"] = poly.id;
    auto& verts = jp["vertices"] = nlohmann::json::array();
    for (const Point& v : poly.vertices) verts.push_back({v.x, v.y});
    jp["cutlines"] = poly.cutline_ids;
    polys.push_back(std::move(jp));
  }
  auto& cuts = doc["cutlines"] = nlohmann::json::array();
  for (const auto& cut : cutlines_) {
    nlohmann::json jc;
    jc["id"] = cut.id;
    jc["a"] = {cut.seg.a.x, cut.seg.a.y};
    jc["b"] = {cut.seg.b.x, cut.seg.b.y};
    jc["left"] = cut.left;
    jc["right"] = cut.right;
    cuts.push_back(std::move(jc));
  }
  return doc.dump();
}

ConvexDissection ConvexDissection::from_snapshot_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid snapshot JSON: ") + e.what(),
                     static_cast<std::size_t>(e.byte));
  }
  ConvexDissection d;
  d.env_ = load_polygon_env(doc.at("environment").dump());
  if (doc.contains("environment_hash") &&
      doc["environment_hash"].get<std::uint64_t>() != environment_hash(d.env_)) {
    throw ValidationError("snapshot environment hash mismatch");
  }
  d.eps_ = d.env_.epsilon();
  for (const auto& jp : doc.at("polygons")) {
    ConvexPolygon poly;
    poly.id = jp.at("id").get<int>();
    for (const auto& v : jp.at("vertices")) {
      poly.vertices.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    poly.cutline_ids = jp.at("cutlines").get<std::vector<int>>();
    d.polygons_.push_back(std::move(poly));
  }
  for (const auto& jc : doc.at("cutlines")) {
    Cutline cut;
    cut.id = jc.at("id").get<int>();
    cut.seg.a = {jc.at("a")[0].get<double>(), jc.at("a")[1].get<double>()};
    cut.seg.b = {jc.at("b")[0].get<double>(), jc.at("b")[1].get<double>()};
    cut.left = jc.at("left").get<int>();
    cut.right = jc.at("right").get<int>();
    d.cutlines_.push_back(cut);
  }
  d.graph_.nodes = static_cast<int>(d.polygons_.size());
  d.graph_.adjacency.assign(d.graph_.nodes, {});
  for (const Cutline& cut : d.cutlines_) {
    d.graph_.edges.push_back({cut.id, cut.left, cut.right});
    d.graph_.adjacency[cut.left].push_back({cut.id, cut.right});
    d.graph_.adjacency[cut.right].push_back({cut.id, cut.left});
  }
  d.build_locator();
  return d;
}

}  // namespace cdtplan
