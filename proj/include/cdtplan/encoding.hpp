#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cdtplan/dissection.hpp"

namespace cdtplan {

/// A walk of polygon nodes in the topology graph, identifying a path
/// homotopy class. crossings[i] is the cutline between nodes[i] and
/// nodes[i+1]. Walks are stored unreduced; immediate backtracks are legal.
struct CdtEncoding {
  std::vector<int> nodes;
  std::vector<int> crossings;

  bool operator==(const CdtEncoding& other) const {
    return nodes == other.nodes && crossings == other.crossings;
  }
  bool valid() const { return !nodes.empty() && crossings.size() + 1 == nodes.size(); }
  int first() const { return nodes.front(); }
  int last() const { return nodes.back(); }

  /// Comma-separated node ids, e.g. "3,5,9".
  std::string to_string() const;
  std::uint64_t hash() const;
};

struct CdtEncodingHash {
  std::size_t operator()(const CdtEncoding& e) const {
    return static_cast<std::size_t>(e.hash());
  }
};

/// The encoding of the constant path at x: a single-node walk.
CdtEncoding trivial_encoding(const ConvexDissection& d, Point x);

/// Walk extension by a cutline symbol. Returns the extended walk when the
/// cutline is incident to the walk's last node, absent otherwise.
std::optional<CdtEncoding> concat(const ConvexDissection& d,
                                  const CdtEncoding& enc, int cutline_id);

/// The cutline crossing sequence of a walk (empty for single-node walks).
const std::vector<int>& cutline_sequence(const CdtEncoding& enc);

/// Maps a concrete polyline to its walk: polygons visited in order, with
/// consecutive duplicates collapsed and grazing touches ignored. Rejects
/// paths leaving free space or running along a cutline for positive length.
CdtEncoding encode_path(const ConvexDissection& d, std::span<const Point> path);

bool encoding_set_equal(std::span<const CdtEncoding> a,
                        std::span<const CdtEncoding> b);

}  // namespace cdtplan
