#pragma once

#include <atomic>
#include <cstdint>
#include <deque>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "cdtplan/dissection.hpp"
#include "cdtplan/encoding.hpp"
#include "cdtplan/geometry.hpp"

namespace cdtplan {

/// Sample points along one cutline at spacing <= interval, both endpoints
/// included.
struct CutlineSamples {
  int cutline = -1;
  std::vector<double> params;
  std::vector<Point> points;
};

/// Per-sample optimum for one cutline: the winning walk, its cost, and the
/// converged path (kept to warm-start later compressions and to reconstruct
/// goal paths).
struct SampleRecord {
  const CdtEncoding* encoding = nullptr;
  double cost = 0.0;
  Polyline path;
};

struct EncodingSet {
  std::vector<SampleRecord> records;
  std::vector<const CdtEncoding*> distinct;  // ordered by serialization
  bool empty() const { return distinct.empty(); }
};

struct PlannerStats {
  long long rewire_triggers = 0;
  long long cutline_set_computations = 0;
  long long warm_runs = 0;
  long long cold_runs = 0;
  long long warm_sweeps = 0;
  long long cold_sweeps = 0;
  long long samples_evaluated = 0;
  long long goals_on_cutline = 0;
  double set_init_ms = 0.0;

  double mean_warm_sweeps() const {
    return warm_runs > 0 ? static_cast<double>(warm_sweeps) / warm_runs : 0.0;
  }
};

/// Single-source planner state: after set_init computes the optimal encoding
/// set of every reachable cutline, get_goal answers any goal query from the
/// stored sets. set_init is an exclusive writer; get_goal is const and safe
/// for concurrent callers.
class PlannerState {
 public:
  enum class Status { empty, ready };

  struct GoalResult {
    Polyline path;
    double cost = 0.0;
    CdtEncoding encoding;
  };

  /// Computes the encoding set of every cutline reachable from x_init
  /// (breadth-first from the adjacent cutlines outward, re-optimizing
  /// affected sets after each wave step).
  static PlannerState set_init(const ConvexDissection& d, Point x_init,
                               double interval = 2.0, double eps = -1.0);

  /// Globally optimal path to x_goal. Straight segment when the goal shares
  /// a polygon with x_init; otherwise the best candidate class among the
  /// goal-adjacent cutlines' distinct encodings, compressed to a fixed
  /// point. Cost ties break toward the smaller encoding serialization.
  GoalResult get_goal(Point x_goal) const;

  Status status() const { return status_; }
  Point x_init() const { return x_init_; }
  double interval() const { return interval_; }
  double eps() const { return eps_; }
  const ConvexDissection& dissection() const { return *d_; }
  const CutlineSamples& samples(int cutline) const { return samples_[cutline]; }
  const EncodingSet& encoding_set(int cutline) const { return sets_[cutline]; }
  PlannerStats stats() const;

  /// Content hash of the planner tables (not of query-side counters).
  std::uint64_t state_hash() const;

  std::string to_snapshot_json() const;
  static PlannerState from_snapshot_json(const ConvexDissection& d,
                                         std::string_view text);

  /// Test hooks: corrupt a record, then rerun the rewiring pass around it.
  SampleRecord& record_for_testing(int cutline, int sample);
  int rerun_optimize_for_testing(int cutline);

  // Sets hold pointers into the interning pool, so copying is unsafe.
  PlannerState(const PlannerState&) = delete;
  PlannerState& operator=(const PlannerState&) = delete;
  PlannerState(PlannerState&&) = default;
  PlannerState& operator=(PlannerState&&) = default;

 private:
  PlannerState() = default;

  const CdtEncoding* intern(const CdtEncoding& enc);
  const std::string& key_of(const CdtEncoding* enc) const;
  EncodingSet compute_cutline_set(int cutline);
  int optimize_existing(int cutline);
  bool set_changed(const EncodingSet& prev, const EncodingSet& next) const;

  const ConvexDissection* d_ = nullptr;
  Point x_init_;
  double interval_ = 2.0;
  double eps_ = 0.0;
  double delta_cost_ = 0.0;
  Status status_ = Status::empty;
  std::vector<int> init_polygons_;
  std::vector<CutlineSamples> samples_;
  std::vector<EncodingSet> sets_;
  std::vector<char> in_ex_;
  std::unordered_map<int, std::vector<const CdtEncoding*>> seeds_;
  PlannerStats stats_;
  std::shared_ptr<std::atomic<long long>> goals_on_cutline_ =
      std::make_shared<std::atomic<long long>>(0);

  struct InternEntry {
    CdtEncoding enc;
    std::string key;
  };
  std::deque<InternEntry> pool_;
  std::unordered_map<CdtEncoding, const CdtEncoding*, CdtEncodingHash> index_;
  std::unordered_map<const CdtEncoding*, const std::string*> keys_;
};

}  // namespace cdtplan
