#include "cdtplan/encoding.hpp"

#include <algorithm>
#include <unordered_set>

#include "cdtplan/error.hpp"

namespace cdtplan {

std::string CdtEncoding::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(nodes[i]);
  }
  return out;
}

std::uint64_t CdtEncoding::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  const auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL;
    h *= 1099511628211ULL;
  };
  for (const int n : nodes) mix(static_cast<std::uint64_t>(n) + 1);
  mix(0xffffULL);
  for (const int c : crossings) mix(static_cast<std::uint64_t>(c) + 1);
  return h;
}

CdtEncoding trivial_encoding(const ConvexDissection& d, Point x) {
  return {{d.locate(x)}, {}};
}

std::optional<CdtEncoding> concat(const ConvexDissection& d,
                                  const CdtEncoding& enc, int cutline_id) {
  const Cutline& cut = d.cutline(cutline_id);
  if (!cut.incident(enc.last())) return std::nullopt;
  CdtEncoding out = enc;
  out.nodes.push_back(cut.other(enc.last()));
  out.crossings.push_back(cutline_id);
  return out;
}

const std::vector<int>& cutline_sequence(const CdtEncoding& enc) {
  return enc.crossings;
}

bool encoding_set_equal(std::span<const CdtEncoding> a,
                        std::span<const CdtEncoding> b) {
  std::unordered_set<CdtEncoding, CdtEncodingHash> sa(a.begin(), a.end());
  std::unordered_set<CdtEncoding, CdtEncodingHash> sb(b.begin(), b.end());
  return sa == sb;
}

namespace {

Point point_at_arc(std::span<const Point> path, double arc) {
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const double len = distance(path[i], path[i + 1]);
    if (arc <= len || i + 2 == path.size()) {
      const double t = len > 0 ? std::clamp(arc / len, 0.0, 1.0) : 0.0;
      return Segment{path[i], path[i + 1]}.at(t);
    }
    arc -= len;
  }
  return path.back();
}

}  // namespace

CdtEncoding encode_path(const ConvexDissection& d,
                        std::span<const Point> path) {
  if (path.empty()) throw ContractError("encode_path: empty path");
  const double eps = d.epsilon();
  const double total = polyline_length(path);

  for (const Point& p : path) {
    if (!d.try_locate(p)) {
      throw NotInFreeSpaceError("encode_path: path vertex outside free space");
    }
  }
  if (total <= eps) {
    return {{d.locate(path.front())}, {}};
  }

  // Classification probes step this far past each crossing; keep it well
  // above the containment tolerance but tiny against cutline lengths.
  const double probe = std::max(1e3 * eps, 1e-12);

  struct Event {
    double arc;
    int cutline;
  };
  std::vector<Event> events;
  std::vector<Segment> walls;
  const auto add_walls = [&](const std::vector<Point>& ring) {
    for (std::size_t i = 0; i < ring.size(); ++i) {
      walls.push_back({ring[i], ring[(i + 1) % ring.size()]});
    }
  };
  add_walls(d.env().boundary);
  for (const auto& obs : d.env().obstacles) add_walls(obs);

  double arc_base = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const Segment seg{path[i], path[i + 1]};
    const double len = seg.length();
    if (len <= eps) continue;
    for (const Cutline& cut : d.cutlines()) {
      const auto hit = segment_intersection(seg, cut.seg, eps);
      if (hit.kind == IntersectKind::overlap) {
        if (distance(hit.p, hit.q) > 4 * eps) {
          throw Error("encode_path: path runs along a cutline");
        }
        events.push_back({arc_base + hit.t1 * len, cut.id});
      } else if (hit.kind == IntersectKind::point) {
        events.push_back({arc_base + hit.t1 * len, cut.id});
      }
    }
    for (const Segment& wall : walls) {
      if (orient(wall.a, wall.b, seg.a, eps) *
                  orient(wall.a, wall.b, seg.b, eps) <
              0 &&
          orient(seg.a, seg.b, wall.a, eps) *
                  orient(seg.a, seg.b, wall.b, eps) <
              0) {
        throw NotInFreeSpaceError("encode_path: path crosses an obstacle edge");
      }
    }
    arc_base += len;
  }
  std::sort(events.begin(), events.end(),
            [](const Event& l, const Event& r) { return l.arc < r.arc; });

  // Starting polygon: probe just inside the path.
  CdtEncoding walk;
  {
    const auto at_start = d.locate_all(point_at_arc(path, std::min(probe, total)));
    if (at_start.empty()) {
      throw NotInFreeSpaceError("encode_path: start probe left free space");
    }
    walk.nodes.push_back(at_start.front());
  }

  std::size_t i = 0;
  while (i < events.size()) {
    std::size_t j = i;
    while (j + 1 < events.size() && events[j + 1].arc - events[i].arc <= probe) {
      ++j;
    }
    const double probe_arc = std::min(events[j].arc + probe, total);
    const auto q_set = d.locate_all(point_at_arc(path, probe_arc));
    if (q_set.empty()) {
      throw NotInFreeSpaceError("encode_path: probe left free space");
    }
    const auto contains = [&](int id) {
      return std::find(q_set.begin(), q_set.end(), id) != q_set.end();
    };
    int cur = walk.last();
    if (!contains(cur)) {
      // Cross cluster cutlines until the probe polygon is reached.
      bool progressed = true;
      while (!contains(cur) && progressed) {
        progressed = false;
        for (std::size_t k = i; k <= j; ++k) {
          const Cutline& cut = d.cutline(events[k].cutline);
          if (!cut.incident(cur)) continue;
          const int nxt = cut.other(cur);
          // avoid bouncing back and forth inside one cluster
          if (walk.nodes.size() >= 2 &&
              walk.nodes[walk.nodes.size() - 2] == nxt &&
              walk.crossings.back() == cut.id && !contains(nxt)) {
            continue;
          }
          walk.nodes.push_back(nxt);
          walk.crossings.push_back(cut.id);
          cur = nxt;
          progressed = true;
          break;
        }
      }
      if (!contains(cur)) {
        throw Error("encode_path: could not track the path across events");
      }
    }
    i = j + 1;
  }
  return walk;
}

}  // namespace cdtplan
