#include "cdtplan/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>

#include "cdtplan/error.hpp"

namespace cdtplan {

namespace {

std::vector<Segment> environment_edges(const Environment& env) {
  std::vector<Segment> edges;
  const auto add = [&](const std::vector<Point>& ring) {
    for (std::size_t i = 0; i < ring.size(); ++i) {
      edges.push_back({ring[i], ring[(i + 1) % ring.size()]});
    }
  };
  add(env.boundary);
  for (const auto& obs : env.obstacles) add(obs);
  return edges;
}

bool properly_crosses(const Segment& s, const Segment& wall, double eps) {
  const int o1 = orient(wall.a, wall.b, s.a, eps);
  const int o2 = orient(wall.a, wall.b, s.b, eps);
  const int o3 = orient(s.a, s.b, wall.a, eps);
  const int o4 = orient(s.a, s.b, wall.b, eps);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

// A segment is traversable when it crosses no wall properly, every open
// sub-interval between wall touches stays in free space, and any stretch
// running along a wall has open free space on at least one side (a seam
// between two blocked regions has zero width and is not passable).
bool segment_in_free_space(const Environment& env,
                           const std::vector<Segment>& walls, Point a, Point b,
                           double eps) {
  const Segment s{a, b};
  const double len = s.length();
  if (len <= eps) return env.in_free_space(a, eps);
  const Point dir = (1.0 / len) * (s.b - s.a);
  const Point normal{-dir.y, dir.x};
  const double probe = std::max(1e3 * eps, 1e-9);
  std::vector<double> cuts{0.0, 1.0};
  for (const Segment& wall : walls) {
    if (properly_crosses(s, wall, eps)) return false;
    const auto hit = segment_intersection(s, wall, eps);
    if (hit.kind == IntersectKind::point) {
      cuts.push_back(hit.t1);
    } else if (hit.kind == IntersectKind::overlap) {
      const double t0 = hit.t1;
      const double t1 =
          std::clamp(hit.t1 + distance(hit.p, hit.q) / len, 0.0, 1.0);
      cuts.push_back(t0);
      cuts.push_back(t1);
      const Point m = s.at(0.5 * (t0 + t1));
      if (!env.in_free_space(m + probe * normal, eps) &&
          !env.in_free_space(m - probe * normal, eps)) {
        return false;
      }
    }
  }
  std::sort(cuts.begin(), cuts.end());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    if (mid <= 0.0 || mid >= 1.0) continue;
    if (!env.in_free_space(s.at(mid), eps)) return false;
  }
  return true;
}

}  // namespace

OracleResult visibility_shortest(const Environment& env, Point a, Point b) {
  OracleResult res;
  res.method = "visibility";
  const double eps = env.epsilon();
  if (!env.in_free_space(a, eps) || !env.in_free_space(b, eps)) {
    throw NotInFreeSpaceError("visibility_shortest: endpoint not free");
  }
  const auto walls = environment_edges(env);

  std::vector<Point> nodes{a, b};
  for (const Point& p : env.boundary) nodes.push_back(p);
  for (const auto& obs : env.obstacles) {
    for (const Point& p : obs) nodes.push_back(p);
  }
  const std::size_t n = nodes.size();

  if (segment_in_free_space(env, walls, a, b, eps)) {
    res.reachable = true;
    res.cost = distance(a, b);
    res.path = {a, b};
    return res;
  }

  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!segment_in_free_space(env, walls, nodes[i], nodes[j], eps)) continue;
      const double w = distance(nodes[i], nodes[j]);
      adj[i].push_back({static_cast<int>(j), w});
      adj[j].push_back({static_cast<int>(i), w});
    }
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kInf);
  std::vector<int> prev(n, -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[0] = 0.0;
  heap.push({0.0, 0});
  while (!heap.empty()) {
    const auto [du, u] = heap.top();
    heap.pop();
    if (du > dist[u]) continue;
    if (u == 1) break;
    for (const auto& [v, w] : adj[u]) {
      if (du + w < dist[v]) {
        dist[v] = du + w;
        prev[v] = u;
        heap.push({dist[v], v});
      }
    }
  }
  if (dist[1] == kInf) return res;  // unreachable
  res.reachable = true;
  res.cost = dist[1];
  for (int v = 1; v >= 0; v = prev[v]) {
    res.path.push_back(nodes[v]);
    if (v == 0) break;
  }
  std::reverse(res.path.begin(), res.path.end());
  return res;
}

OracleResult grid_shortest(const OccupancyGrid& grid, Point a, Point b,
                           int connectivity) {
  OracleResult res;
  res.method = connectivity == 4 ? "grid4" : "grid8";
  const auto cell_of = [&](Point p) -> std::pair<int, int> {
    const int c = std::clamp(static_cast<int>(p.x / grid.cell_size), 0,
                             grid.width - 1);
    const int r = std::clamp(static_cast<int>(p.y / grid.cell_size), 0,
                             grid.height - 1);
    return {c, r};
  };
  const auto [ac, ar] = cell_of(a);
  const auto [bc, br] = cell_of(b);
  if (grid.occupied(ac, ar) || grid.occupied(bc, br)) {
    throw NotInFreeSpaceError("grid_shortest: endpoint on an occupied cell");
  }

  const std::size_t total = static_cast<std::size_t>(grid.width) * grid.height;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(total, kInf);
  std::vector<int> prev(total, -1);
  const auto index = [&](int c, int r) {
    return static_cast<std::size_t>(r) * grid.width + c;
  };
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[index(ac, ar)] = 0.0;
  heap.push({0.0, static_cast<int>(index(ac, ar))});
  const int goal = static_cast<int>(index(bc, br));
  const double diag = std::sqrt(2.0) * grid.cell_size;
  while (!heap.empty()) {
    const auto [du, u] = heap.top();
    heap.pop();
    if (du > dist[u]) continue;
    if (u == goal) break;
    const int c = u % grid.width;
    const int r = u / grid.width;
    const int dc[8] = {1, -1, 0, 0, 1, 1, -1, -1};
    const int dr[8] = {0, 0, 1, -1, 1, -1, 1, -1};
    const int moves = connectivity == 4 ? 4 : 8;
    for (int k = 0; k < moves; ++k) {
      const int nc = c + dc[k], nr = r + dr[k];
      if (nc < 0 || nr < 0 || nc >= grid.width || nr >= grid.height) continue;
      if (grid.occupied(nc, nr)) continue;
      if (k >= 4 && (grid.occupied(c, nr) || grid.occupied(nc, r))) {
        continue;  // no corner cutting
      }
      const double w = k < 4 ? grid.cell_size : diag;
      const std::size_t v = index(nc, nr);
      if (du + w < dist[v]) {
        dist[v] = du + w;
        prev[v] = u;
        heap.push({dist[v], static_cast<int>(v)});
      }
    }
  }
  if (dist[goal] == kInf) return res;
  res.reachable = true;
  res.cost = dist[goal];
  for (int v = goal; v >= 0; v = prev[v]) {
    res.path.push_back({(v % grid.width + 0.5) * grid.cell_size,
                        (v / grid.width + 0.5) * grid.cell_size});
    if (v == static_cast<int>(index(ac, ar))) break;
  }
  std::reverse(res.path.begin(), res.path.end());
  return res;
}

std::vector<ClassOptimum> enumerate_class_optima(const ConvexDissection& d,
                                                 Point a, Point b, int max_len,
                                                 int dense_k) {
  const int start = d.locate(a);
  const int goal = d.locate(b);
  const auto& graph = d.graph();

  // Node-to-goal hop distances for pruning.
  std::vector<int> hops(graph.nodes, -1);
  std::deque<int> queue{goal};
  hops[goal] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (const auto& [cut, w] : graph.adjacency[u]) {
      if (hops[w] < 0) {
        hops[w] = hops[u] + 1;
        queue.push_back(w);
      }
    }
  }

  std::vector<CdtEncoding> walks;
  constexpr std::size_t kWalkCap = 50000;
  CdtEncoding current{{start}, {}};
  const std::function<void()> dfs = [&]() {
    if (walks.size() >= kWalkCap) return;
    if (current.last() == goal) walks.push_back(current);
    const int used = static_cast<int>(current.crossings.size());
    if (used >= max_len) return;
    const int node = current.last();
    if (hops[node] < 0 || used + hops[node] > max_len) return;
    for (const int c : d.polygon(node).cutline_ids) {
      if (!current.crossings.empty() && current.crossings.back() == c) {
        continue;  // immediate backtrack can never be class-optimal
      }
      current.nodes.push_back(d.cutline(c).other(node));
      current.crossings.push_back(c);
      dfs();
      current.nodes.pop_back();
      current.crossings.pop_back();
    }
  };
  dfs();

  std::vector<ClassOptimum> out;
  for (const auto& enc : walks) {
    const std::size_t m = enc.crossings.size();
    ClassOptimum item;
    item.encoding = enc;
    if (m == 0) {
      item.cost = distance(a, b);
      item.path = {a, b};
      out.push_back(std::move(item));
      continue;
    }
    // Layered DP over dense cutline samples, then zoom rounds re-running the
    // DP in shrinking windows around the previous argmin to kill the
    // quantization error.
    std::vector<double> window_lo(m, 0.0), window_hi(m, 1.0);
    std::vector<double> picks_param(m, 0.5);
    double total_cost = 0.0;
    for (int round = 0; round < 4; ++round) {
      std::vector<std::vector<Point>> layers(m);
      std::vector<std::vector<double>> params(m);
      for (std::size_t k = 0; k < m; ++k) {
        const Cutline& cut = d.cutline(enc.crossings[k]);
        const double lo = window_lo[k], hi = window_hi[k];
        layers[k].reserve(dense_k);
        params[k].reserve(dense_k);
        for (int i = 0; i < dense_k; ++i) {
          const double t = lo + (hi - lo) * i / (dense_k - 1);
          params[k].push_back(t);
          layers[k].push_back(cut.at(t));
        }
      }
      std::vector<double> cost(dense_k);
      std::vector<std::vector<int>> from(m, std::vector<int>(dense_k, -1));
      for (int i = 0; i < dense_k; ++i) cost[i] = distance(a, layers[0][i]);
      std::vector<double> next(dense_k);
      for (std::size_t k = 1; k < m; ++k) {
        for (int j = 0; j < dense_k; ++j) {
          double best = std::numeric_limits<double>::infinity();
          int arg = -1;
          const Point pj = layers[k][j];
          for (int i = 0; i < dense_k; ++i) {
            const double c = cost[i] + distance(layers[k - 1][i], pj);
            if (c < best) {
              best = c;
              arg = i;
            }
          }
          next[j] = best;
          from[k][j] = arg;
        }
        std::swap(cost, next);
      }
      double best = std::numeric_limits<double>::infinity();
      int arg = -1;
      for (int i = 0; i < dense_k; ++i) {
        const double c = cost[i] + distance(layers[m - 1][i], b);
        if (c < best) {
          best = c;
          arg = i;
        }
      }
      total_cost = best;
      std::vector<int> picks(m);
      picks[m - 1] = arg;
      for (std::size_t k = m; k-- > 1;) {
        picks[k - 1] = from[k][picks[k]];
      }
      item.path.assign(1, a);
      for (std::size_t k = 0; k < m; ++k) {
        picks_param[k] = params[k][picks[k]];
        item.path.push_back(layers[k][picks[k]]);
      }
      item.path.push_back(b);
      bool all_tight = true;
      for (std::size_t k = 0; k < m; ++k) {
        const double res = (window_hi[k] - window_lo[k]) / (dense_k - 1);
        window_lo[k] = std::max(0.0, picks_param[k] - 8 * res);
        window_hi[k] = std::min(1.0, picks_param[k] + 8 * res);
        all_tight = all_tight && res * d.cutline(enc.crossings[k]).length() < 1e-12;
      }
      if (all_tight) break;
    }
    item.cost = total_cost;
    out.push_back(std::move(item));
  }
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
    if (l.cost != r.cost) return l.cost < r.cost;
    return l.encoding.to_string() < r.encoding.to_string();
  });
  return out;
}

}  // namespace cdtplan
