#include "cdtplan/environment.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <functional>
#include <numeric>
#include <unordered_map>

#include <json.hpp>

#include "cdtplan/error.hpp"

namespace cdtplan {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void fnv_mix(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= kFnvPrime;
  }
}

void fnv_mix_double(std::uint64_t& h, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  fnv_mix(h, &bits, sizeof(bits));
}

bool proper_cross(const Segment& s1, const Segment& s2, double eps) {
  const int o1 = orient(s2.a, s2.b, s1.a, eps);
  const int o2 = orient(s2.a, s2.b, s1.b, eps);
  const int o3 = orient(s1.a, s1.b, s2.a, eps);
  const int o4 = orient(s1.a, s1.b, s2.b, eps);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

double segment_segment_distance(const Segment& s1, const Segment& s2,
                                double eps) {
  if (proper_cross(s1, s2, eps)) return 0.0;
  return std::min(std::min(point_segment_distance(s1.a, s2),
                           point_segment_distance(s1.b, s2)),
                  std::min(point_segment_distance(s2.a, s1),
                           point_segment_distance(s2.b, s1)));
}

void check_simple_polygon(const std::vector<Point>& poly, int report_index,
                          double eps) {
  const std::size_t n = poly.size();
  if (n < 3) throw ValidationError("polygon has fewer than 3 vertices", report_index);
  for (std::size_t i = 0; i < n; ++i) {
    if (distance(poly[i], poly[(i + 1) % n]) <= eps) {
      throw ValidationError("polygon has a degenerate edge", report_index);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Segment ei{poly[i], poly[(i + 1) % n]};
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      const Segment ej{poly[j], poly[(j + 1) % n]};
      const auto hit = segment_intersection(ei, ej, eps);
      if (hit.kind == IntersectKind::none) continue;
      if (adjacent) {
        if (hit.kind == IntersectKind::overlap) {
          throw ValidationError("polygon doubles back on itself", report_index);
        }
        continue;  // shared endpoint
      }
      throw ValidationError("polygon is self-intersecting", report_index);
    }
  }
}

}  // namespace

std::size_t OccupancyGrid::occupied_count() const {
  return static_cast<std::size_t>(
      std::count(cells.begin(), cells.end(), std::uint8_t{1}));
}

bool Environment::in_free_space(Point p, double eps) const {
  if (!point_in_simple_polygon(p, boundary, eps)) return false;
  for (const auto& obs : obstacles) {
    // Obstacle boundaries stay free; only strict interiors are blocked.
    bool on_edge = false;
    const std::size_t n = obs.size();
    for (std::size_t i = 0; i < n && !on_edge; ++i) {
      on_edge = point_segment_distance(p, {obs[i], obs[(i + 1) % n]}) <= eps;
    }
    if (on_edge) continue;
    if (point_in_simple_polygon(p, obs, eps)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// PGM loading

namespace {

struct ByteCursor {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;

  bool eof() const { return pos >= bytes.size(); }
  std::uint8_t peek() const { return bytes[pos]; }

  void skip_space_and_comments() {
    while (!eof()) {
      const std::uint8_t c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') ++pos;
      } else if (std::isspace(c)) {
        ++pos;
      } else {
        break;
      }
    }
  }

  int read_int(const char* what) {
    skip_space_and_comments();
    if (eof() || !std::isdigit(peek())) {
      throw ParseError(std::string("expected integer for ") + what, pos);
    }
    long v = 0;
    while (!eof() && std::isdigit(peek())) {
      v = v * 10 + (peek() - '0');
      if (v > 1000000000L) throw ParseError("integer out of range", pos);
      ++pos;
    }
    return static_cast<int>(v);
  }
};

}  // namespace

OccupancyGrid load_occupancy_grid(std::span<const std::uint8_t> bytes,
                                  GridFormat format, int threshold,
                                  bool invert) {
  if (format == GridFormat::auto_detect) {
    static const std::uint8_t png_magic[4] = {0x89, 'P', 'N', 'G'};
    if (bytes.size() >= 4 && std::memcmp(bytes.data(), png_magic, 4) == 0) {
      throw ParseError("PNG input is not supported by this build; use PGM P5",
                       0);
    }
    format = GridFormat::pgm;
  }

  ByteCursor cur{bytes};
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw ParseError("not a binary PGM (missing P5 magic)", 0);
  }
  cur.pos = 2;
  const int width = cur.read_int("width");
  const int height = cur.read_int("height");
  const int maxval = cur.read_int("maxval");
  if (width <= 0 || height <= 0) {
    throw ParseError("non-positive raster dimensions", cur.pos);
  }
  if (maxval <= 0 || maxval > 255) {
    throw ParseError("unsupported maxval (must be 1..255)", cur.pos);
  }
  if (cur.eof() || !std::isspace(cur.peek())) {
    throw ParseError("missing whitespace before pixel data", cur.pos);
  }
  ++cur.pos;
  const std::size_t expected = static_cast<std::size_t>(width) * height;
  if (bytes.size() - cur.pos < expected) {
    throw ParseError("truncated pixel data", bytes.size());
  }

  OccupancyGrid grid;
  grid.width = width;
  grid.height = height;
  grid.cell_size = 1.0;
  grid.cells.resize(expected);
  for (std::size_t i = 0; i < expected; ++i) {
    const bool dark = bytes[cur.pos + i] < threshold;
    grid.cells[i] = (dark != invert) ? 1 : 0;
  }
  return grid;
}

OccupancyGrid load_occupancy_grid_file(const std::string& path, int threshold,
                                       bool invert) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return load_occupancy_grid(bytes, GridFormat::auto_detect, threshold,
                             invert);
}

// ---------------------------------------------------------------------------
// Grid -> polygon environment

namespace {

// 4-connected component labeling over a membership predicate.
std::vector<int> label_components(int w, int h,
                                  const std::function<bool(int, int)>& in,
                                  int* count_out) {
  std::vector<int> labels(static_cast<std::size_t>(w) * h, -1);
  int count = 0;
  std::vector<std::pair<int, int>> stack;
  for (int row = 0; row < h; ++row) {
    for (int col = 0; col < w; ++col) {
      if (!in(col, row) || labels[static_cast<std::size_t>(row) * w + col] >= 0)
        continue;
      const int id = count++;
      stack.push_back({col, row});
      labels[static_cast<std::size_t>(row) * w + col] = id;
      while (!stack.empty()) {
        auto [c, r] = stack.back();
        stack.pop_back();
        const int dc[4] = {1, -1, 0, 0};
        const int dr[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
          const int nc = c + dc[k], nr = r + dr[k];
          if (nc < 0 || nr < 0 || nc >= w || nr >= h) continue;
          auto& lab = labels[static_cast<std::size_t>(nr) * w + nc];
          if (lab >= 0 || !in(nc, nr)) continue;
          lab = id;
          stack.push_back({nc, nr});
        }
      }
    }
  }
  if (count_out) *count_out = count;
  return labels;
}

// Crack-following outer contour of a cell region, region kept on the left of
// the walking direction. Corners revisited at diagonal pinches are nudged
// into the region so the result stays a simple polygon.
std::vector<Point> trace_outer_contour(
    int w, int h, const std::function<bool(int, int)>& in) {
  int start_col = -1, start_row = -1;
  for (int row = 0; row < h && start_col < 0; ++row) {
    for (int col = 0; col < w; ++col) {
      if (in(col, row)) {
        start_col = col;
        start_row = row;
        break;
      }
    }
  }
  if (start_col < 0) return {};

  // Directions: 0=+x, 1=+y, 2=-x, 3=-y.
  const int dx[4] = {1, 0, -1, 0};
  const int dy[4] = {0, 1, 0, -1};
  // Cell offsets relative to the crack's start corner.
  const auto left_cell = [&](int cx, int cy, int d, int& c, int& r) {
    switch (d) {
      case 0: c = cx; r = cy; break;
      case 1: c = cx - 1; r = cy; break;
      case 2: c = cx - 1; r = cy - 1; break;
      default: c = cx; r = cy - 1; break;
    }
  };
  const auto right_cell = [&](int cx, int cy, int d, int& c, int& r) {
    switch (d) {
      case 0: c = cx; r = cy - 1; break;
      case 1: c = cx; r = cy; break;
      case 2: c = cx - 1; r = cy; break;
      default: c = cx - 1; r = cy - 1; break;
    }
  };
  const auto in_bounds = [&](int c, int r) {
    return c >= 0 && r >= 0 && c < w && r < h;
  };
  const auto crack_valid = [&](int cx, int cy, int d) {
    int lc, lr, rc, rr;
    left_cell(cx, cy, d, lc, lr);
    right_cell(cx, cy, d, rc, rr);
    const bool l = in_bounds(lc, lr) && in(lc, lr);
    const bool r = in_bounds(rc, rr) && in(rc, rr);
    return l && !r;
  };

  int cx = start_col, cy = start_row, dir = 0;
  // top edge of the first region cell in scan order
  std::vector<std::pair<int, int>> corners;
  std::vector<int> dirs;
  const int limit = 8 * w * h + 16;
  int steps = 0;
  do {
    corners.push_back({cx, cy});
    dirs.push_back(dir);
    cx += dx[dir];
    cy += dy[dir];
    // Prefer turning right (away from the region interior), then straight,
    // then left; this keeps 4-connectivity semantics at diagonal corners.
    const int right_turn = (dir + 3) % 4;
    const int left_turn = (dir + 1) % 4;
    if (crack_valid(cx, cy, right_turn)) {
      dir = right_turn;
    } else if (crack_valid(cx, cy, dir)) {
      // keep direction
    } else if (crack_valid(cx, cy, left_turn)) {
      dir = left_turn;
    } else {
      throw ConstructionError("contour tracing lost the region boundary");
    }
    if (++steps > limit) {
      throw ConstructionError("contour tracing did not close");
    }
  } while (cx != start_col || cy != start_row || dir != 0);

  // Corners visited more than once are diagonal pinch points. Chamfer each
  // visit (pull back 0.25 cells along both incident cracks) so the traced
  // polygon stays simple.
  std::unordered_map<std::int64_t, int> visit_count;
  const auto corner_key = [w](std::pair<int, int> c) {
    return static_cast<std::int64_t>(c.second) * (w + 2) + c.first;
  };
  for (const auto& c : corners) ++visit_count[corner_key(c)];

  std::vector<Point> poly;
  poly.reserve(corners.size());
  for (std::size_t i = 0; i < corners.size(); ++i) {
    const auto [px, py] = corners[i];
    const Point p{static_cast<double>(px), static_cast<double>(py)};
    if (visit_count[corner_key(corners[i])] > 1) {
      const int in_dir = dirs[(i + corners.size() - 1) % corners.size()];
      const int out_dir = dirs[i];
      const Point in_vec{static_cast<double>(dx[in_dir]),
                         static_cast<double>(dy[in_dir])};
      const Point out_vec{static_cast<double>(dx[out_dir]),
                          static_cast<double>(dy[out_dir])};
      poly.push_back(p - 0.25 * in_vec);
      poly.push_back(p + 0.25 * out_vec);
    } else {
      poly.push_back(p);
    }
  }

  // Drop collinear chain vertices.
  std::vector<Point> compact;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point prev = poly[(i + n - 1) % n];
    const Point cur = poly[i];
    const Point next = poly[(i + 1) % n];
    if (std::abs(cross(cur - prev, next - cur)) > 1e-12) {
      compact.push_back(cur);
    }
  }
  return compact;
}

std::vector<Point> simplify_closed(const std::vector<Point>& poly,
                                   double tol) {
  if (tol <= 0.0 || poly.size() <= 4) return poly;
  // Split at the two mutually farthest of (first, farthest-from-first).
  std::size_t split = 0;
  double best = -1.0;
  for (std::size_t i = 1; i < poly.size(); ++i) {
    const double d = distance_sq(poly[0], poly[i]);
    if (d > best) {
      best = d;
      split = i;
    }
  }
  std::vector<Point> part1(poly.begin(), poly.begin() + split + 1);
  std::vector<Point> part2(poly.begin() + split, poly.end());
  part2.push_back(poly[0]);
  auto s1 = douglas_peucker(part1, tol);
  auto s2 = douglas_peucker(part2, tol);
  s1.pop_back();
  s2.pop_back();
  s1.insert(s1.end(), s2.begin(), s2.end());
  return s1;
}

}  // namespace

std::vector<Point> douglas_peucker(std::span<const Point> pts, double tol) {
  if (pts.size() <= 2) return {pts.begin(), pts.end()};
  std::vector<bool> keep(pts.size(), false);
  keep.front() = keep.back() = true;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, pts.size() - 1}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    if (hi <= lo + 1) continue;
    const Segment base{pts[lo], pts[hi]};
    double worst = -1.0;
    std::size_t worst_i = lo;
    for (std::size_t i = lo + 1; i < hi; ++i) {
      const double d = point_segment_distance(pts[i], base);
      if (d > worst) {
        worst = d;
        worst_i = i;
      }
    }
    if (worst > tol) {
      keep[worst_i] = true;
      stack.push_back({lo, worst_i});
      stack.push_back({worst_i, hi});
    }
  }
  std::vector<Point> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (keep[i]) out.push_back(pts[i]);
  }
  return out;
}

Environment grid_to_environment(const OccupancyGrid& grid,
                                double simplify_tol) {
  const int w = grid.width, h = grid.height;
  if (w <= 0 || h <= 0) throw ValidationError("empty grid");

  const auto occupied = [&](int c, int r) { return grid.occupied(c, r); };
  const auto free_cell = [&](int c, int r) { return !grid.occupied(c, r); };

  int free_count = 0;
  const auto free_labels = label_components(w, h, free_cell, &free_count);
  if (free_count == 0) {
    throw ValidationError("grid has no free cells (fully occupied)");
  }
  // Keep the largest free component; unreachable pockets become solid.
  std::vector<std::size_t> sizes(free_count, 0);
  for (int lab : free_labels) {
    if (lab >= 0) ++sizes[lab];
  }
  const int main_free = static_cast<int>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  const auto in_main = [&](int c, int r) {
    return free_labels[static_cast<std::size_t>(r) * w + c] == main_free;
  };
  const auto solid = [&](int c, int r) {
    return occupied(c, r) || !in_main(c, r);
  };

  Environment env;
  env.source_resolution = {w, h};
  env.boundary = trace_outer_contour(w, h, in_main);
  if (env.boundary.size() < 3) {
    throw ValidationError("free region degenerates to a line or point");
  }

  int solid_count = 0;
  const auto solid_labels = label_components(w, h, solid, &solid_count);
  std::vector<bool> touches_border(solid_count, false);
  for (int col = 0; col < w; ++col) {
    for (int row : {0, h - 1}) {
      const int lab = solid_labels[static_cast<std::size_t>(row) * w + col];
      if (lab >= 0) touches_border[lab] = true;
    }
  }
  for (int row = 0; row < h; ++row) {
    for (int col : {0, w - 1}) {
      const int lab = solid_labels[static_cast<std::size_t>(row) * w + col];
      if (lab >= 0) touches_border[lab] = true;
    }
  }
  for (int id = 0; id < solid_count; ++id) {
    if (touches_border[id]) continue;  // folded into the boundary contour
    const auto in_comp = [&](int c, int r) {
      return solid_labels[static_cast<std::size_t>(r) * w + c] == id;
    };
    auto contour = trace_outer_contour(w, h, in_comp);
    if (contour.size() >= 3) env.obstacles.push_back(std::move(contour));
  }

  // Simplify, falling back to raw contours if simplification breaks an
  // invariant.
  Environment simplified = env;
  simplified.boundary = simplify_closed(env.boundary, simplify_tol);
  for (auto& obs : simplified.obstacles) obs = simplify_closed(obs, simplify_tol);
  const auto scale_and_orient = [&](Environment& e) {
    for (auto& v : e.boundary) v = grid.cell_size * v;
    for (auto& obs : e.obstacles) {
      for (auto& v : obs) v = grid.cell_size * v;
    }
    if (signed_area(e.boundary) < 0) {
      std::reverse(e.boundary.begin(), e.boundary.end());
    }
    for (auto& obs : e.obstacles) {
      if (signed_area(obs) > 0) std::reverse(obs.begin(), obs.end());
    }
  };
  scale_and_orient(simplified);
  try {
    validate_environment(simplified);
    return simplified;
  } catch (const ValidationError&) {
    scale_and_orient(env);
    validate_environment(env);
    return env;
  }
}

// ---------------------------------------------------------------------------
// JSON environment format

Environment load_polygon_env(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(),
                     static_cast<std::size_t>(e.byte));
  }
  const auto parse_ring = [](const nlohmann::json& arr,
                             int index) -> std::vector<Point> {
    if (!arr.is_array()) {
      throw ValidationError("polygon must be an array of [x,y] pairs", index);
    }
    std::vector<Point> ring;
    for (const auto& v : arr) {
      if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
          !v[1].is_number()) {
        throw ValidationError("vertex must be a [x,y] number pair", index);
      }
      const double x = v[0].get<double>();
      const double y = v[1].get<double>();
      if (!std::isfinite(x) || !std::isfinite(y)) {
        throw ValidationError("non-finite vertex coordinate", index);
      }
      ring.push_back({x, y});
    }
    return ring;
  };

  if (!doc.contains("boundary")) {
    throw ValidationError("missing \"boundary\" field", 0);
  }
  Environment env;
  env.boundary = parse_ring(doc["boundary"], 0);
  if (doc.contains("obstacles")) {
    if (!doc["obstacles"].is_array()) {
      throw ValidationError("\"obstacles\" must be an array", 1);
    }
    int idx = 1;
    for (const auto& obs : doc["obstacles"]) {
      env.obstacles.push_back(parse_ring(obs, idx));
      ++idx;
    }
  }

  if (signed_area(env.boundary) < 0) {
    std::reverse(env.boundary.begin(), env.boundary.end());
  }
  for (auto& obs : env.obstacles) {
    if (signed_area(obs) > 0) std::reverse(obs.begin(), obs.end());
  }
  validate_environment(env);
  return env;
}

std::string serialize_env(const Environment& env) {
  nlohmann::json doc;
  auto& boundary = doc["boundary"] = nlohmann::json::array();
  for (const Point& p : env.boundary) boundary.push_back({p.x, p.y});
  auto& obstacles = doc["obstacles"] = nlohmann::json::array();
  for (const auto& obs : env.obstacles) {
    nlohmann::json ring = nlohmann::json::array();
    for (const Point& p : obs) ring.push_back({p.x, p.y});
    obstacles.push_back(std::move(ring));
  }
  return doc.dump();
}

void validate_environment(const Environment& env) {
  const double eps = std::max(env.epsilon(), 1e-12);
  check_simple_polygon(env.boundary, 0, eps);
  for (std::size_t k = 0; k < env.obstacles.size(); ++k) {
    const int index = static_cast<int>(k) + 1;
    const auto& obs = env.obstacles[k];
    check_simple_polygon(obs, index, eps);
    // containment in the boundary
    for (const Point& v : obs) {
      if (!point_in_simple_polygon(v, env.boundary, eps)) {
        throw ValidationError("obstacle vertex outside the boundary", index);
      }
    }
    for (std::size_t i = 0; i < obs.size(); ++i) {
      const Segment e1{obs[i], obs[(i + 1) % obs.size()]};
      for (std::size_t j = 0; j < env.boundary.size(); ++j) {
        const Segment e2{env.boundary[j],
                         env.boundary[(j + 1) % env.boundary.size()]};
        if (proper_cross(e1, e2, eps)) {
          throw ValidationError("obstacle crosses the boundary", index);
        }
      }
    }
  }
  // pairwise interior-disjointness
  for (std::size_t a = 0; a < env.obstacles.size(); ++a) {
    for (std::size_t b = a + 1; b < env.obstacles.size(); ++b) {
      const auto& pa = env.obstacles[a];
      const auto& pb = env.obstacles[b];
      for (std::size_t i = 0; i < pa.size(); ++i) {
        const Segment e1{pa[i], pa[(i + 1) % pa.size()]};
        for (std::size_t j = 0; j < pb.size(); ++j) {
          const Segment e2{pb[j], pb[(j + 1) % pb.size()]};
          if (proper_cross(e1, e2, eps)) {
            throw ValidationError("obstacles overlap", static_cast<int>(b) + 1);
          }
        }
      }
      const auto strictly_inside = [&](Point p, const std::vector<Point>& poly) {
        for (std::size_t i = 0; i < poly.size(); ++i) {
          const Segment e{poly[i], poly[(i + 1) % poly.size()]};
          if (point_segment_distance(p, e) <= eps) return false;
        }
        return point_in_simple_polygon(p, poly, eps);
      };
      if (strictly_inside(pa[0], pb) || strictly_inside(pb[0], pa)) {
        throw ValidationError("one obstacle contains another",
                              static_cast<int>(b) + 1);
      }
    }
  }
}

int count_independent_obstacles(const Environment& env) {
  const double eps = std::max(env.epsilon(), 1e-12);
  const std::size_t n = env.obstacles.size();
  if (n == 0) return 0;

  const auto polys_touch = [&](const std::vector<Point>& a,
                               const std::vector<Point>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      const Segment e1{a[i], a[(i + 1) % a.size()]};
      for (std::size_t j = 0; j < b.size(); ++j) {
        const Segment e2{b[j], b[(j + 1) % b.size()]};
        if (segment_segment_distance(e1, e2, eps) <= eps) return true;
      }
    }
    return false;
  };

  // Union-find over contact-connected obstacle groups.
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (polys_touch(env.obstacles[a], env.obstacles[b])) {
        parent[find(static_cast<int>(a))] = find(static_cast<int>(b));
      }
    }
  }
  std::vector<bool> group_touches_boundary(n, false);
  for (std::size_t a = 0; a < n; ++a) {
    if (polys_touch(env.obstacles[a], env.boundary)) {
      group_touches_boundary[find(static_cast<int>(a))] = true;
    }
  }
  int independent = 0;
  for (std::size_t a = 0; a < n; ++a) {
    if (find(static_cast<int>(a)) == static_cast<int>(a) &&
        !group_touches_boundary[a]) {
      ++independent;
    }
  }
  return independent;
}

std::uint64_t environment_hash(const Environment& env) {
  std::uint64_t h = kFnvOffset;
  fnv_mix_double(h, static_cast<double>(env.boundary.size()));
  for (const Point& p : env.boundary) {
    fnv_mix_double(h, p.x);
    fnv_mix_double(h, p.y);
  }
  for (const auto& obs : env.obstacles) {
    fnv_mix_double(h, static_cast<double>(obs.size()));
    for (const Point& p : obs) {
      fnv_mix_double(h, p.x);
      fnv_mix_double(h, p.y);
    }
  }
  return h;
}

}  // namespace cdtplan
