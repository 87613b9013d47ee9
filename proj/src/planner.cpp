#include "cdtplan/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <limits>

#include <json.hpp>

#include "cdtplan/error.hpp"
#include "cdtplan/shortest_path.hpp"

namespace cdtplan {

namespace {

void hash_mix(std::uint64_t& h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}

std::uint64_t double_bits(double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  return bits;
}

}  // namespace

const CdtEncoding* PlannerState::intern(const CdtEncoding& enc) {
  const auto it = index_.find(enc);
  if (it != index_.end()) return it->second;
  pool_.push_back({enc, enc.to_string()});
  const CdtEncoding* ptr = &pool_.back().enc;
  index_[enc] = ptr;
  keys_[ptr] = &pool_.back().key;
  return ptr;
}

const std::string& PlannerState::key_of(const CdtEncoding* enc) const {
  return *keys_.at(enc);
}

// Alg. 2: recompute the per-sample optima of one cutline from the encoding
// sets of its neighbors in the explored region (plus the direct seeds when
// the cutline borders the start polygon).
EncodingSet PlannerState::compute_cutline_set(int cutline) {
  ++stats_.cutline_set_computations;
  const ConvexDissection& d = *d_;

  std::vector<const CdtEncoding*> candidates;
  {
    std::vector<const CdtEncoding*> pool;
    for (const int near : d.adjacent_cutlines(cutline)) {
      if (!in_ex_[near]) continue;
      for (const CdtEncoding* enc : sets_[near].distinct) pool.push_back(enc);
    }
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    for (const CdtEncoding* enc : pool) {
      const auto extended = concat(d, *enc, cutline);
      if (extended) candidates.push_back(intern(*extended));
    }
    const auto seed_it = seeds_.find(cutline);
    if (seed_it != seeds_.end()) {
      for (const CdtEncoding* enc : seed_it->second) candidates.push_back(enc);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());
    std::sort(candidates.begin(), candidates.end(),
              [this](const CdtEncoding* l, const CdtEncoding* r) {
                return key_of(l) < key_of(r);
              });
  }

  const CutlineSamples& samples = samples_[cutline];
  EncodingSet out;
  out.records.resize(samples.points.size());
  if (candidates.empty()) return out;

  std::vector<Polyline> warm(candidates.size());
  Polyline warm_buffer;
  for (std::size_t si = 0; si < samples.points.size(); ++si) {
    const Point x_t = samples.points[si];
    ++stats_.samples_evaluated;
    SampleRecord best;
    best.cost = std::numeric_limits<double>::infinity();
    Polyline best_path;
    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
      const CdtEncoding& enc = *candidates[ci];
      const Polyline* start = nullptr;
      if (!warm[ci].empty()) {
        warm_buffer = warm[ci];
        warm_buffer.back() = x_t;
        start = &warm_buffer;
        ++stats_.warm_runs;
      } else {
        ++stats_.cold_runs;
      }
      auto res = get_shortest_path(d, enc, x_init_, x_t, start, eps_);
      (start ? stats_.warm_sweeps : stats_.cold_sweeps) += res.iterations;
      if (res.cost < best.cost) {
        best.cost = res.cost;
        best.encoding = candidates[ci];
        best_path = res.path;
      }
      warm[ci] = std::move(res.path);
    }
    best.path = std::move(best_path);
    out.records[si] = std::move(best);
  }

  for (const auto& rec : out.records) {
    if (rec.encoding) out.distinct.push_back(rec.encoding);
  }
  std::sort(out.distinct.begin(), out.distinct.end(),
            [this](const CdtEncoding* l, const CdtEncoding* r) {
              return key_of(l) < key_of(r);
            });
  out.distinct.erase(std::unique(out.distinct.begin(), out.distinct.end()),
                     out.distinct.end());
  return out;
}

bool PlannerState::set_changed(const EncodingSet& prev,
                               const EncodingSet& next) const {
  if (prev.distinct != next.distinct) return true;
  if (prev.records.size() != next.records.size()) return true;
  for (std::size_t i = 0; i < prev.records.size(); ++i) {
    const bool had = prev.records[i].encoding != nullptr;
    const bool has = next.records[i].encoding != nullptr;
    if (had != has) return true;
    if (has && next.records[i].cost < prev.records[i].cost - delta_cost_) {
      return true;
    }
  }
  return false;
}

// Alg. 3: ripple recomputation through already-explored cutlines while their
// sets keep changing.
int PlannerState::optimize_existing(int cutline) {
  const ConvexDissection& d = *d_;
  std::deque<int> worklist;
  std::vector<char> queued(d.cutlines().size(), 0);
  for (const int near : d.adjacent_cutlines(cutline)) {
    if (in_ex_[near]) {
      worklist.push_back(near);
      queued[near] = 1;
    }
  }
  int triggers = 0;
  long long budget =
      2000LL * static_cast<long long>(d.cutlines().size()) + 1000;
  while (!worklist.empty()) {
    if (--budget < 0) {
      throw IterationLimitError("optimize_existing: rewiring did not settle");
    }
    const int c_r = worklist.front();
    worklist.pop_front();
    queued[c_r] = 0;
    EncodingSet fresh = compute_cutline_set(c_r);
    if (!set_changed(sets_[c_r], fresh)) continue;
    sets_[c_r] = std::move(fresh);
    ++triggers;
    ++stats_.rewire_triggers;
    for (const int nb : d.adjacent_cutlines(c_r)) {
      if (in_ex_[nb] && !queued[nb]) {
        worklist.push_back(nb);
        queued[nb] = 1;
      }
    }
  }
  return triggers;
}

PlannerState PlannerState::set_init(const ConvexDissection& d, Point x_init,
                                    double interval, double eps) {
  const auto t0 = std::chrono::steady_clock::now();
  if (interval <= 0) throw ContractError("set_init: interval must be positive");
  PlannerState st;
  st.d_ = &d;
  st.x_init_ = x_init;
  st.interval_ = interval;
  st.eps_ = eps < 0 ? default_compression_eps(d) : eps;
  st.delta_cost_ = 1e-9 * d.env().diagonal();

  st.init_polygons_ = d.locate_all(x_init);
  if (st.init_polygons_.empty()) {
    throw NotInFreeSpaceError("set_init: x_init is not in free space");
  }

  const std::size_t n_cut = d.cutlines().size();
  st.samples_.resize(n_cut);
  for (std::size_t c = 0; c < n_cut; ++c) {
    const Cutline& cut = d.cutline(static_cast<int>(c));
    const int n = std::max(
        2, static_cast<int>(std::ceil(cut.length() / interval)) + 1);
    auto& s = st.samples_[c];
    s.cutline = static_cast<int>(c);
    s.params.reserve(n);
    s.points.reserve(n);
    for (int i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / (n - 1);
      s.params.push_back(t);
      s.points.push_back(cut.at(t));
    }
  }
  st.sets_.assign(n_cut, {});
  st.in_ex_.assign(n_cut, 0);

  // Seed the cutlines of every polygon containing x_init with the trivial
  // encoding extended by the cutline's own symbol; a start point exactly on
  // a cutline seeds both sides.
  std::vector<int> seeded;
  for (const int poly : st.init_polygons_) {
    for (const int c : d.polygon(poly).cutline_ids) {
      const auto extended = concat(d, CdtEncoding{{poly}, {}}, c);
      if (!extended) continue;
      st.seeds_[c].push_back(st.intern(*extended));
      if (std::find(seeded.begin(), seeded.end(), c) == seeded.end()) {
        seeded.push_back(c);
      }
    }
  }
  std::sort(seeded.begin(), seeded.end());
  for (const int c : seeded) {
    st.sets_[c] = st.compute_cutline_set(c);
    st.in_ex_[c] = 1;
  }

  std::deque<int> wave;
  std::vector<char> queued(n_cut, 0);
  for (const int c : d.adjacent_cutlines(seeded)) {
    if (!queued[c]) {
      wave.push_back(c);
      queued[c] = 1;
    }
  }
  while (!wave.empty()) {
    const int c_k = wave.front();
    wave.pop_front();
    queued[c_k] = 0;
    st.sets_[c_k] = st.compute_cutline_set(c_k);
    for (const int nb : d.adjacent_cutlines(c_k)) {
      if (!st.in_ex_[nb] && !queued[nb]) {
        wave.push_back(nb);
        queued[nb] = 1;
      }
    }
    st.in_ex_[c_k] = 1;
    st.optimize_existing(c_k);
  }

  st.status_ = Status::ready;
  st.stats_.set_init_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                t0)
          .count();
  return st;
}

PlannerState::GoalResult PlannerState::get_goal(Point x_goal) const {
  if (status_ != Status::ready) {
    throw ContractError("get_goal: planner state is not ready");
  }
  const ConvexDissection& d = *d_;
  const auto goal_polys = d.locate_all(x_goal);
  if (goal_polys.empty()) {
    throw NotInFreeSpaceError("get_goal: goal is not in free space");
  }

  // Same convex polygon: the straight segment is globally optimal.
  for (const int poly : init_polygons_) {
    if (std::find(goal_polys.begin(), goal_polys.end(), poly) !=
        goal_polys.end()) {
      GoalResult res;
      res.path = {x_init_, x_goal};
      res.cost = distance(x_init_, x_goal);
      res.encoding = {{poly}, {}};
      return res;
    }
  }
  if (goal_polys.size() > 1) {
    goals_on_cutline_->fetch_add(1, std::memory_order_relaxed);
  }

  // Candidate classes: distinct encodings of the goal-adjacent cutlines
  // whose final polygon contains the goal, warm-started from the stored
  // record nearest the goal.
  struct Candidate {
    const CdtEncoding* enc;
    const SampleRecord* warm;
    double proxy;
  };
  std::vector<Candidate> candidates;
  std::vector<int> goal_cuts;
  for (const int poly : goal_polys) {
    const auto& ids = d.polygon(poly).cutline_ids;
    goal_cuts.insert(goal_cuts.end(), ids.begin(), ids.end());
  }
  std::sort(goal_cuts.begin(), goal_cuts.end());
  goal_cuts.erase(std::unique(goal_cuts.begin(), goal_cuts.end()),
                  goal_cuts.end());
  for (const int c : goal_cuts) {
    const EncodingSet& set = sets_[c];
    for (std::size_t si = 0; si < set.records.size(); ++si) {
      const SampleRecord& rec = set.records[si];
      if (!rec.encoding) continue;
      if (!d.point_in(x_goal, rec.encoding->last())) continue;
      const double proxy = rec.cost + distance(samples_[c].points[si], x_goal);
      bool found = false;
      for (auto& cand : candidates) {
        if (cand.enc == rec.encoding) {
          found = true;
          if (proxy < cand.proxy) {
            cand.proxy = proxy;
            cand.warm = &rec;
          }
          break;
        }
      }
      if (!found) candidates.push_back({rec.encoding, &rec, proxy});
    }
  }
  if (candidates.empty()) {
    throw UnreachableError("get_goal: goal is unreachable from x_init");
  }
  std::sort(candidates.begin(), candidates.end(),
            [this](const Candidate& l, const Candidate& r) {
              return key_of(l.enc) < key_of(r.enc);
            });

  GoalResult best;
  best.cost = std::numeric_limits<double>::infinity();
  Polyline warm_buffer;
  for (const Candidate& cand : candidates) {
    warm_buffer = cand.warm->path;
    warm_buffer.back() = x_goal;
    const auto res =
        get_shortest_path(d, *cand.enc, x_init_, x_goal, &warm_buffer, 0.0);
    if (res.cost < best.cost) {
      best.cost = res.cost;
      best.path = res.path;
      best.encoding = *cand.enc;
    }
  }
  return best;
}

PlannerStats PlannerState::stats() const {
  PlannerStats out = stats_;
  out.goals_on_cutline = goals_on_cutline_->load(std::memory_order_relaxed);
  return out;
}

std::uint64_t PlannerState::state_hash() const {
  std::uint64_t h = 0x2545F4914F6CDD1DULL;
  hash_mix(h, double_bits(x_init_.x));
  hash_mix(h, double_bits(x_init_.y));
  hash_mix(h, double_bits(interval_));
  for (const auto& set : sets_) {
    hash_mix(h, 0x5e7);
    for (const auto& rec : set.records) {
      if (!rec.encoding) {
        hash_mix(h, 0);
        continue;
      }
      hash_mix(h, rec.encoding->hash());
      hash_mix(h, double_bits(rec.cost));
      for (const Point& p : rec.path) {
        hash_mix(h, double_bits(p.x));
        hash_mix(h, double_bits(p.y));
      }
    }
    for (const CdtEncoding* enc : set.distinct) hash_mix(h, enc->hash());
  }
  return h;
}

SampleRecord& PlannerState::record_for_testing(int cutline, int sample) {
  return sets_[cutline].records[sample];
}

int PlannerState::rerun_optimize_for_testing(int cutline) {
  return optimize_existing(cutline);
}

std::string PlannerState::to_snapshot_json() const {
  nlohmann::json doc;
  doc["x_init"] = {x_init_.x, x_init_.y};
  doc["interval"] = interval_;
  doc["eps"] = eps_;
  doc["environment_hash"] = environment_hash(d_->env());
  doc["status"] = status_ == Status::ready ? "ready" : "empty";
  auto& stats = doc["stats"];
  stats["rewire_triggers"] = stats_.rewire_triggers;
  stats["cutline_set_computations"] = stats_.cutline_set_computations;
  stats["warm_runs"] = stats_.warm_runs;
  stats["cold_runs"] = stats_.cold_runs;
  stats["warm_sweeps"] = stats_.warm_sweeps;
  stats["cold_sweeps"] = stats_.cold_sweeps;
  stats["samples_evaluated"] = stats_.samples_evaluated;
  stats["set_init_ms"] = stats_.set_init_ms;
  auto& sets = doc["sets"] = nlohmann::json::array();
  for (std::size_t c = 0; c < sets_.size(); ++c) {
    nlohmann::json js;
    js["cutline"] = static_cast<int>(c);
    auto& records = js["records"] = nlohmann::json::array();
    for (const auto& rec : sets_[c].records) {
      nlohmann::json jr;
      if (rec.encoding) {
        jr["e"] = key_of(rec.encoding);
        jr["c"] = rec.cost;
        auto& path = jr["p"] = nlohmann::json::array();
        for (const Point& p : rec.path) path.push_back({p.x, p.y});
      }
      records.push_back(std::move(jr));
    }
    sets.push_back(std::move(js));
  }
  return doc.dump();
}

PlannerState PlannerState::from_snapshot_json(const ConvexDissection& d,
                                              std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid planner snapshot: ") + e.what(),
                     static_cast<std::size_t>(e.byte));
  }
  if (doc.at("environment_hash").get<std::uint64_t>() !=
      environment_hash(d.env())) {
    throw ValidationError("planner snapshot does not match this dissection");
  }
  const Point x_init{doc.at("x_init")[0].get<double>(),
                     doc.at("x_init")[1].get<double>()};
  PlannerState st;
  st.d_ = &d;
  st.x_init_ = x_init;
  st.interval_ = doc.at("interval").get<double>();
  st.eps_ = doc.at("eps").get<double>();
  st.delta_cost_ = 1e-9 * d.env().diagonal();
  st.init_polygons_ = d.locate_all(x_init);

  // pair -> cutline map to rebuild crossing sequences from node strings
  std::unordered_map<std::uint64_t, int> pair_to_cut;
  const auto pair_key = [](int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
  };
  for (const auto& cut : d.cutlines()) {
    pair_to_cut[pair_key(cut.left, cut.right)] = cut.id;
  }
  const auto parse_encoding = [&](const std::string& key) {
    CdtEncoding enc;
    std::size_t pos = 0;
    while (pos < key.size()) {
      std::size_t next = key.find(',', pos);
      if (next == std::string::npos) next = key.size();
      enc.nodes.push_back(std::stoi(key.substr(pos, next - pos)));
      pos = next + 1;
    }
    for (std::size_t i = 0; i + 1 < enc.nodes.size(); ++i) {
      const auto it = pair_to_cut.find(pair_key(enc.nodes[i], enc.nodes[i + 1]));
      if (it == pair_to_cut.end()) {
        throw ValidationError("snapshot encoding is not a graph walk: " + key);
      }
      enc.crossings.push_back(it->second);
    }
    return enc;
  };

  const std::size_t n_cut = d.cutlines().size();
  st.samples_.resize(n_cut);
  for (std::size_t c = 0; c < n_cut; ++c) {
    const Cutline& cut = d.cutline(static_cast<int>(c));
    const int n = std::max(
        2, static_cast<int>(std::ceil(cut.length() / st.interval_)) + 1);
    auto& s = st.samples_[c];
    s.cutline = static_cast<int>(c);
    for (int i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / (n - 1);
      s.params.push_back(t);
      s.points.push_back(cut.at(t));
    }
  }
  st.sets_.assign(n_cut, {});
  st.in_ex_.assign(n_cut, 0);

  for (const auto& js : doc.at("sets")) {
    const int c = js.at("cutline").get<int>();
    EncodingSet& set = st.sets_[c];
    for (const auto& jr : js.at("records")) {
      SampleRecord rec;
      if (jr.contains("e")) {
        rec.encoding = st.intern(parse_encoding(jr.at("e").get<std::string>()));
        rec.cost = jr.at("c").get<double>();
        for (const auto& p : jr.at("p")) {
          rec.path.push_back({p[0].get<double>(), p[1].get<double>()});
        }
      }
      set.records.push_back(std::move(rec));
    }
    for (const auto& rec : set.records) {
      if (rec.encoding) set.distinct.push_back(rec.encoding);
    }
    std::sort(set.distinct.begin(), set.distinct.end(),
              [&st](const CdtEncoding* l, const CdtEncoding* r) {
                return st.key_of(l) < st.key_of(r);
              });
    set.distinct.erase(std::unique(set.distinct.begin(), set.distinct.end()),
                       set.distinct.end());
    if (!set.records.empty() &&
        set.records.size() != st.samples_[c].points.size()) {
      throw ValidationError("snapshot sample count mismatch");
    }
    st.in_ex_[c] = set.distinct.empty() ? 0 : 1;
  }
  const auto& stats = doc.at("stats");
  st.stats_.rewire_triggers = stats.at("rewire_triggers").get<long long>();
  st.stats_.cutline_set_computations =
      stats.at("cutline_set_computations").get<long long>();
  st.stats_.warm_runs = stats.at("warm_runs").get<long long>();
  st.stats_.cold_runs = stats.at("cold_runs").get<long long>();
  st.stats_.warm_sweeps = stats.at("warm_sweeps").get<long long>();
  st.stats_.cold_sweeps = stats.at("cold_sweeps").get<long long>();
  st.stats_.samples_evaluated = stats.at("samples_evaluated").get<long long>();
  st.stats_.set_init_ms = stats.at("set_init_ms").get<double>();
  st.status_ = doc.at("status").get<std::string>() == "ready" ? Status::ready
                                                              : Status::empty;
  return st;
}

}  // namespace cdtplan
