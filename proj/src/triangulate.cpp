#include "triangulate.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

#include "cdtplan/error.hpp"

namespace cdtplan::detail {

namespace {

// Exact-sign predicates in extended precision; coordinates at map scales are
// well within long double's mantissa.
long double orient_ld(Point a, Point b, Point c) {
  return (static_cast<long double>(b.x) - a.x) *
             (static_cast<long double>(c.y) - a.y) -
         (static_cast<long double>(b.y) - a.y) *
             (static_cast<long double>(c.x) - a.x);
}

bool in_circumcircle(Point a, Point b, Point c, Point p) {
  const long double ax = static_cast<long double>(a.x) - p.x;
  const long double ay = static_cast<long double>(a.y) - p.y;
  const long double bx = static_cast<long double>(b.x) - p.x;
  const long double by = static_cast<long double>(b.y) - p.y;
  const long double cx = static_cast<long double>(c.x) - p.x;
  const long double cy = static_cast<long double>(c.y) - p.y;
  const long double det = (ax * ax + ay * ay) * (bx * cy - cx * by) -
                          (bx * bx + by * by) * (ax * cy - cx * ay) +
                          (cx * cx + cy * cy) * (ax * by - bx * ay);
  return det > 0.0L;
}

class Builder {
 public:
  explicit Builder(const std::vector<Point>& points) {
    mesh_.verts = points;
    n_real_ = static_cast<int>(points.size());
    const BBox box = bounding_box(points);
    const double span =
        std::max({box.hi.x - box.lo.x, box.hi.y - box.lo.y, 1.0});
    const Point c{0.5 * (box.lo.x + box.hi.x), 0.5 * (box.lo.y + box.hi.y)};
    const double m = 16.0 * span;
    mesh_.verts.push_back({c.x - 2.0 * m, c.y - m});
    mesh_.verts.push_back({c.x + 2.0 * m, c.y - m});
    mesh_.verts.push_back({c.x, c.y + 2.0 * m});
    mesh_.tris.push_back({{n_real_, n_real_ + 1, n_real_ + 2}, {-1, -1, -1}});
    alive_.push_back(true);
  }

  void insert_all() {
    for (int i = 0; i < n_real_; ++i) insert_point(i);
    refresh_vertex_cache();
  }

  void insert_constraint(int a, int b, int depth = 0) {
    if (a == b) return;
    if (depth > 64) {
      throw ConstructionError("constraint insertion recursion overflow");
    }
    if (edge_exists(a, b)) {
      mesh_.constrained.insert(TriMesh::edge_key(a, b));
      return;
    }
    const Point pa = mesh_.verts[a];
    const Point pb = mesh_.verts[b];

    // Find the triangle in a's fan whose far edge is crossed by a->b.
    int first_cross = -1;
    int cross_edge = -1;
    {
      const int start = live_triangle_of(a);
      int t = start;
      bool reversed = false;
      int guard = 0;
      while (t >= 0 && guard++ <= static_cast<int>(mesh_.tris.size()) * 2) {
        const int ia = vert_pos(t, a);
        const int x = mesh_.tris[t].v[(ia + 1) % 3];
        const int y = mesh_.tris[t].v[(ia + 2) % 3];
        const long double sx = orient_ld(pa, pb, mesh_.verts[x]);
        const long double sy = orient_ld(pa, pb, mesh_.verts[y]);
        if (sx == 0.0L && between(pa, pb, mesh_.verts[x])) {
          insert_constraint(a, x, depth + 1);
          insert_constraint(x, b, depth + 1);
          return;
        }
        if (sy == 0.0L && between(pa, pb, mesh_.verts[y])) {
          insert_constraint(a, y, depth + 1);
          insert_constraint(y, b, depth + 1);
          return;
        }
        // CCW fan triangle (a, x, y): the segment exits through (x, y) when
        // x lies right of a->b and y lies left.
        if (sx < 0.0L && sy > 0.0L &&
            orient_ld(mesh_.verts[x], mesh_.verts[y], pa) *
                    orient_ld(mesh_.verts[x], mesh_.verts[y], pb) <
                0.0L) {
          first_cross = t;
          cross_edge = (ia + 1) % 3;  // edge (x, y)
          break;
        }
        const int nxt = reversed ? mesh_.tris[t].nbr[(ia + 2) % 3]
                                 : mesh_.tris[t].nbr[ia];
        if (nxt == start) break;
        if (nxt < 0) {
          if (reversed) break;
          reversed = true;
          t = start;
          continue;
        }
        t = nxt;
      }
    }
    if (first_cross < 0) {
      throw ConstructionError("constraint endpoint fan walk failed");
    }

    // March along a->b and collect every crossed edge.
    std::deque<std::pair<int, int>> crossing;
    {
      int cur = first_cross;
      int edge = cross_edge;
      int guard = 0;
      while (true) {
        const int u = mesh_.tris[cur].v[edge];  // right of a->b
        const int v = mesh_.tris[cur].v[(edge + 1) % 3];  // left of a->b
        crossing.push_back({u, v});
        const int nxt = mesh_.tris[cur].nbr[edge];
        if (nxt < 0) throw ConstructionError("constraint march left the mesh");
        const int w = mesh_.tris[nxt].v[vert_pos_opposite(nxt, u, v)];
        if (w == b) break;
        const long double sw = orient_ld(pa, pb, mesh_.verts[w]);
        if (sw == 0.0L && between(pa, pb, mesh_.verts[w])) {
          insert_constraint(a, w, depth + 1);
          insert_constraint(w, b, depth + 1);
          return;
        }
        const int eu = sw > 0.0L ? u : w;
        const int ev = sw > 0.0L ? w : v;
        cur = nxt;
        edge = edge_pos(cur, eu, ev);
        if (++guard > static_cast<int>(mesh_.tris.size())) {
          throw ConstructionError("constraint march did not terminate");
        }
      }
    }

    // Flip crossing edges out of the way until (a,b) materializes.
    int stall = 0;
    const int stall_limit =
        4 * static_cast<int>(crossing.size() * crossing.size()) + 64;
    while (!crossing.empty()) {
      auto [u, v] = crossing.front();
      crossing.pop_front();
      int t1, e1;
      if (!find_edge(u, v, t1, e1)) continue;
      if (!edges_cross(pa, pb, mesh_.verts[u], mesh_.verts[v])) continue;
      if (!flip_ok(t1, e1)) {
        crossing.push_back({u, v});
        if (++stall > stall_limit) {
          throw ConstructionError("constraint recovery stalled");
        }
        continue;
      }
      const auto [nu, nv] = flip(t1, e1);
      if (edges_cross(pa, pb, mesh_.verts[nu], mesh_.verts[nv])) {
        crossing.push_back({nu, nv});
      }
    }
    if (!edge_exists(a, b)) {
      throw ConstructionError("failed to recover constraint edge");
    }
    mesh_.constrained.insert(TriMesh::edge_key(a, b));
  }

  // Lawson flips restoring local Delaunay-ness away from constraints.
  void legalize() {
    std::deque<std::pair<int, int>> queue;
    for (std::size_t t = 0; t < mesh_.tris.size(); ++t) {
      if (!alive_[t]) continue;
      for (int k = 0; k < 3; ++k) {
        const int u = mesh_.tris[t].v[k];
        const int v = mesh_.tris[t].v[(k + 1) % 3];
        if (u < v) queue.push_back({u, v});
      }
    }
    long budget = 32L * static_cast<long>(queue.size()) + 1024;
    while (!queue.empty() && budget-- > 0) {
      auto [u, v] = queue.front();
      queue.pop_front();
      if (mesh_.is_constrained(u, v)) continue;
      int t, e;
      if (!find_edge(u, v, t, e)) continue;
      const int tt = mesh_.tris[t].nbr[e];
      if (tt < 0) continue;
      const int apex1 = mesh_.tris[t].v[(e + 2) % 3];
      const int apex2 = mesh_.tris[tt].v[vert_pos_opposite(tt, u, v)];
      if (!in_circumcircle(mesh_.verts[mesh_.tris[t].v[0]],
                           mesh_.verts[mesh_.tris[t].v[1]],
                           mesh_.verts[mesh_.tris[t].v[2]],
                           mesh_.verts[apex2])) {
        continue;
      }
      if (!flip_ok(t, e)) continue;
      flip(t, e);
      for (const int w : {apex1, apex2}) {
        for (const int z : {u, v}) {
          queue.push_back({std::min(w, z), std::max(w, z)});
        }
      }
    }
  }

  TriMesh finish() {
    TriMesh out;
    out.verts.assign(mesh_.verts.begin(), mesh_.verts.begin() + n_real_);
    out.constrained = mesh_.constrained;
    std::vector<int> remap(mesh_.tris.size(), -1);
    for (std::size_t t = 0; t < mesh_.tris.size(); ++t) {
      if (!alive_[t]) continue;
      const auto& tri = mesh_.tris[t];
      if (tri.v[0] >= n_real_ || tri.v[1] >= n_real_ || tri.v[2] >= n_real_) {
        continue;
      }
      remap[t] = static_cast<int>(out.tris.size());
      out.tris.push_back(tri);
    }
    for (auto& tri : out.tris) {
      for (int k = 0; k < 3; ++k) {
        tri.nbr[k] = tri.nbr[k] >= 0 ? remap[tri.nbr[k]] : -1;
      }
    }
    return out;
  }

 private:
  TriMesh mesh_;
  std::vector<bool> alive_;
  std::vector<int> vert_tri_;  // a live triangle incident to each vertex
  int n_real_ = 0;
  int last_tri_ = 0;

  static bool between(Point a, Point b, Point w) {
    return dot(w - a, b - a) > 0 && dot(w - b, a - b) > 0;
  }

  static bool edges_cross(Point a, Point b, Point c, Point d) {
    return orient_ld(a, b, c) * orient_ld(a, b, d) < 0.0L &&
           orient_ld(c, d, a) * orient_ld(c, d, b) < 0.0L;
  }

  int vert_pos(int t, int v) const {
    for (int k = 0; k < 3; ++k) {
      if (mesh_.tris[t].v[k] == v) return k;
    }
    throw ConstructionError("vertex not in triangle");
  }

  int vert_pos_opposite(int t, int u, int v) const {
    for (int k = 0; k < 3; ++k) {
      const int w = mesh_.tris[t].v[k];
      if (w != u && w != v) return k;
    }
    throw ConstructionError("degenerate triangle");
  }

  int edge_pos(int t, int u, int v) const {
    for (int k = 0; k < 3; ++k) {
      if (mesh_.tris[t].v[k] == u && mesh_.tris[t].v[(k + 1) % 3] == v) {
        return k;
      }
    }
    throw ConstructionError("edge not in triangle");
  }

  void refresh_vertex_cache() {
    vert_tri_.assign(mesh_.verts.size(), -1);
    for (std::size_t t = 0; t < mesh_.tris.size(); ++t) {
      if (!alive_[t]) continue;
      for (int k = 0; k < 3; ++k) {
        vert_tri_[mesh_.tris[t].v[k]] = static_cast<int>(t);
      }
    }
  }

  int live_triangle_of(int v) {
    const int t = vert_tri_[v];
    if (t >= 0 && alive_[t]) return t;
    refresh_vertex_cache();
    if (vert_tri_[v] < 0) throw ConstructionError("vertex has no triangle");
    return vert_tri_[v];
  }

  bool edge_exists(int a, int b) {
    int t, e;
    return find_edge(a, b, t, e);
  }

  // Walks the fan around `a` looking for edge (a,b) in either direction.
  bool find_edge(int a, int b, int& t_out, int& e_out) {
    const int start = live_triangle_of(a);
    int t = start;
    bool reversed = false;
    int guard = 0;
    while (t >= 0 && guard++ <= static_cast<int>(mesh_.tris.size()) * 2) {
      for (int k = 0; k < 3; ++k) {
        const int u = mesh_.tris[t].v[k];
        const int v = mesh_.tris[t].v[(k + 1) % 3];
        if ((u == a && v == b) || (u == b && v == a)) {
          t_out = t;
          e_out = k;
          return true;
        }
      }
      const int ia = vert_pos(t, a);
      const int nxt =
          reversed ? mesh_.tris[t].nbr[(ia + 2) % 3] : mesh_.tris[t].nbr[ia];
      if (nxt == start) break;
      if (nxt < 0) {
        if (reversed) break;
        reversed = true;
        t = start;
        continue;
      }
      t = nxt;
    }
    return false;
  }

  bool flip_ok(int t, int e) const {
    const int tt = mesh_.tris[t].nbr[e];
    if (tt < 0) return false;
    const int u = mesh_.tris[t].v[e];
    const int v = mesh_.tris[t].v[(e + 1) % 3];
    if (mesh_.is_constrained(u, v)) return false;
    const int a = mesh_.tris[t].v[(e + 2) % 3];
    const int b = mesh_.tris[tt].v[vert_pos_opposite(tt, u, v)];
    return orient_ld(mesh_.verts[a], mesh_.verts[b], mesh_.verts[u]) *
               orient_ld(mesh_.verts[a], mesh_.verts[b], mesh_.verts[v]) <
           0.0L;
  }

  void set_nbr(int t, int old_nbr, int new_nbr) {
    if (t < 0) return;
    for (int k = 0; k < 3; ++k) {
      if (mesh_.tris[t].nbr[k] == old_nbr) {
        mesh_.tris[t].nbr[k] = new_nbr;
        return;
      }
    }
  }

  // Flips edge e of t; returns the new diagonal (apex1, apex2).
  std::pair<int, int> flip(int t, int e) {
    const int tt = mesh_.tris[t].nbr[e];
    const int u = mesh_.tris[t].v[e];
    const int v = mesh_.tris[t].v[(e + 1) % 3];
    const int a = mesh_.tris[t].v[(e + 2) % 3];
    const int e_vu = edge_pos(tt, v, u);
    const int b = mesh_.tris[tt].v[(e_vu + 2) % 3];

    const int n_va = mesh_.tris[t].nbr[(e + 1) % 3];
    const int n_au = mesh_.tris[t].nbr[(e + 2) % 3];
    const int n_ub = mesh_.tris[tt].nbr[(e_vu + 1) % 3];
    const int n_bv = mesh_.tris[tt].nbr[(e_vu + 2) % 3];

    mesh_.tris[t] = {{u, b, a}, {n_ub, tt, n_au}};
    mesh_.tris[tt] = {{b, v, a}, {n_bv, n_va, t}};

    set_nbr(n_ub, tt, t);
    set_nbr(n_va, t, tt);
    if (!vert_tri_.empty()) {
      vert_tri_[u] = t;
      vert_tri_[v] = tt;
      vert_tri_[a] = t;
      vert_tri_[b] = t;
    }
    return {a, b};
  }

  int locate(Point p) {
    int t = last_tri_;
    if (t < 0 || t >= static_cast<int>(mesh_.tris.size()) || !alive_[t]) {
      t = -1;
      for (std::size_t i = 0; i < mesh_.tris.size(); ++i) {
        if (alive_[i]) {
          t = static_cast<int>(i);
          break;
        }
      }
    }
    int guard = 0;
    const int cap = static_cast<int>(mesh_.tris.size()) * 4 + 64;
    while (true) {
      bool moved = false;
      for (int k = 0; k < 3; ++k) {
        const Point a = mesh_.verts[mesh_.tris[t].v[k]];
        const Point b = mesh_.verts[mesh_.tris[t].v[(k + 1) % 3]];
        if (orient_ld(a, b, p) < 0.0L) {
          const int nxt = mesh_.tris[t].nbr[k];
          if (nxt < 0) throw ConstructionError("point outside super triangle");
          t = nxt;
          moved = true;
          break;
        }
      }
      if (!moved) return t;
      if (++guard > cap) {
        for (std::size_t i = 0; i < mesh_.tris.size(); ++i) {
          if (!alive_[i]) continue;
          bool inside = true;
          for (int k = 0; k < 3 && inside; ++k) {
            const Point a = mesh_.verts[mesh_.tris[i].v[k]];
            const Point b = mesh_.verts[mesh_.tris[i].v[(k + 1) % 3]];
            inside = orient_ld(a, b, p) >= 0.0L;
          }
          if (inside) return static_cast<int>(i);
        }
        throw ConstructionError("point location failed");
      }
    }
  }

  void insert_point(int vi) {
    const Point p = mesh_.verts[vi];
    const int t0 = locate(p);

    // Grow the cavity of triangles whose circumcircle contains p.
    std::vector<int> cavity;
    std::vector<int> stack{t0};
    std::vector<bool> in_cavity(mesh_.tris.size(), false);
    in_cavity[t0] = true;
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      cavity.push_back(t);
      for (int k = 0; k < 3; ++k) {
        const int n = mesh_.tris[t].nbr[k];
        if (n < 0 || in_cavity[n]) continue;
        const auto& tri = mesh_.tris[n];
        if (in_circumcircle(mesh_.verts[tri.v[0]], mesh_.verts[tri.v[1]],
                            mesh_.verts[tri.v[2]], p)) {
          in_cavity[n] = true;
          stack.push_back(n);
        }
      }
    }

    struct Rim {
      int u, v, outside;
    };
    std::vector<Rim> rims;
    for (const int t : cavity) {
      for (int k = 0; k < 3; ++k) {
        const int n = mesh_.tris[t].nbr[k];
        if (n >= 0 && in_cavity[n]) continue;
        rims.push_back({mesh_.tris[t].v[k], mesh_.tris[t].v[(k + 1) % 3], n});
      }
    }
    for (const int t : cavity) alive_[t] = false;

    // Fan new triangles (p, u, v) around the rim; rims form a closed cycle,
    // so the start/end vertex maps pair neighbors uniquely.
    std::vector<int> new_ids;
    new_ids.reserve(rims.size());
    std::unordered_map<int, int> starting_at, ending_at;
    for (const auto& rim : rims) {
      const int id = static_cast<int>(mesh_.tris.size());
      mesh_.tris.push_back({{vi, rim.u, rim.v}, {-1, rim.outside, -1}});
      alive_.push_back(true);
      new_ids.push_back(id);
      starting_at[rim.u] = id;
      ending_at[rim.v] = id;
    }
    for (std::size_t i = 0; i < rims.size(); ++i) {
      const int id = new_ids[i];
      mesh_.tris[id].nbr[0] = ending_at[rims[i].u];    // across (p, u)
      mesh_.tris[id].nbr[2] = starting_at[rims[i].v];  // across (v, p)
      if (rims[i].outside >= 0) {
        const int e = edge_pos(rims[i].outside, rims[i].v, rims[i].u);
        mesh_.tris[rims[i].outside].nbr[e] = id;
      }
    }
    last_tri_ = new_ids.empty() ? last_tri_ : new_ids.front();
  }
};

}  // namespace

TriMesh constrained_delaunay(const std::vector<Point>& points,
                             const std::vector<std::pair<int, int>>& edges) {
  if (points.size() < 3) {
    throw ConstructionError("need at least 3 points to triangulate");
  }
  Builder builder(points);
  builder.insert_all();
  for (const auto& [a, b] : edges) {
    builder.insert_constraint(a, b);
  }
  builder.legalize();
  return builder.finish();
}

}  // namespace cdtplan::detail
