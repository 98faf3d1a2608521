#pragma once

/**
 * @file divergence.hpp
 * @brief Exact divergence functions Div_lambda(n; delta) of graph oracles.
 *
 * For a triple (a, b, c) the forbidden radius is
 *     rho = delta * min(d(c,a), d(c,b)) - lambda
 * and the detour is the length of a shortest a-b path all of whose vertices
 * v satisfy d(v,c) > rho (compared exactly; rho is rational). A pair whose
 * endpoints are not both outside the forbidden ball is not admissible.
 *
 * For vertex-transitive oracles c is fixed at the basepoint; translating a
 * triple moves any c there. All distances are graph distances on vertices.
 */

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <tuple>
#include <unordered_map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "coxdiv/oracle.hpp"
#include "coxdiv/parallel.hpp"
#include "coxdiv/scalar.hpp"

namespace coxdiv {

enum class Mode { exhaustive, sampled };

struct DivergenceQuery {
  int n = 1;
  Rational delta{1, 2};
  Rational lambda{0};
  Rational horizon_factor{8};
  Mode mode = Mode::exhaustive;
  std::uint64_t pair_count = 1000;  ///< sampled mode only
  std::uint64_t seed = 1;           ///< sampled mode only
  unsigned workers = 1;
  std::size_t memory_budget = default_memory_budget;

  /// Throws CONFIG when a field violates delta in (0,1), lambda >= 0, n >= 1, horizon_factor >= 1.
  void validate() const {
    if (n < 1) throw Error(ErrorCode::config, "n must be >= 1");
    if (!(delta > 0 && delta < 1)) throw Error(ErrorCode::config, "delta must lie in (0,1)");
    if (lambda < 0) throw Error(ErrorCode::config, "lambda must be >= 0");
    if (horizon_factor < 1) throw Error(ErrorCode::config, "horizon_factor must be >= 1");
    if (mode == Mode::sampled && pair_count == 0) throw Error(ErrorCode::config, "pair_count must be positive");
  }

  int horizon() const {
    Rational h = horizon_factor * n;
    return static_cast<int>((h.numerator() + h.denominator() - 1) / h.denominator());
  }
};

/// floor of a rational, exact for negative values.
inline std::int64_t floor_of(const Rational& r) {
  auto q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
  return q;
}

inline Rational forbidden_radius(const DivergenceQuery& q, std::int64_t distance_to_c) {
  return q.delta * Rational(distance_to_c) - q.lambda;
}

enum class DetourStatus { path, disconnected, horizon_exceeded };

template <class V>
struct DetourResult {
  DetourStatus status = DetourStatus::path;
  int length = 0;
  std::vector<V> path;  ///< a = path.front(), b = path.back()
  Rational forbidden_radius{0};
};

template <class V>
struct Ball {
  std::vector<V> vertices;  ///< BFS order
  std::vector<int> distance;
};

/// Exact ball of radius r around `center`, in deterministic BFS order.
template <GraphOracle O>
Ball<typename O::Vertex> bfs_ball(const O& oracle, const typename O::Vertex& center, int r,
                                  std::size_t memory_budget = default_memory_budget) {
  if (r < 0) throw Error(ErrorCode::config, "radius must be >= 0");
  GraphCache<O> cache(oracle, memory_budget);
  Ball<typename O::Vertex> out;
  VertexId c = cache.intern(center);
  std::vector<int> dist{0};
  std::vector<VertexId> order{c};
  for (std::size_t head = 0; head < order.size(); ++head) {
    VertexId u = order[head];
    if (dist[u] == r) continue;
    try {
      for (VertexId v : cache.neighbors(u)) {
        if (v >= dist.size()) dist.resize(v + 1, -1);
        if (dist[v] >= 0) continue;
        dist[v] = dist[u] + 1;
        order.push_back(v);
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::memory_budget) throw;
      throw Error(ErrorCode::memory_budget, std::string(e.what()) + " at ball radius " + std::to_string(dist[u]));
    }
  }
  for (VertexId v : order) {
    out.vertices.push_back(cache.vertex(v));
    out.distance.push_back(dist[v]);
  }
  return out;
}

namespace detail {

/// Per-thread BFS scratch with O(1) reset via epochs.
class Scratch {
 public:
  void begin(std::size_t size) {
    if (stamp_.size() < size) {
      stamp_.resize(size + size / 2 + 64, 0);
      dist_.resize(stamp_.size(), 0);
    }
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
  }
  void ensure(std::size_t size) {
    if (stamp_.size() < size) {
      stamp_.resize(size + size / 2 + 64, 0);
      dist_.resize(stamp_.size(), 0);
    }
  }
  bool seen(VertexId v) const { return stamp_[v] == epoch_; }
  void mark(VertexId v, int d) {
    stamp_[v] = epoch_;
    dist_[v] = d;
  }
  int dist(VertexId v) const { return dist_[v]; }

 private:
  std::vector<std::uint32_t> stamp_;
  std::vector<int> dist_;
  std::uint32_t epoch_ = 0;
};

/**
 * BFS from `source` over vertices allowed by `allowed`, stopping after
 * depth `max_depth` or once every target has been reached. `found[i]`
 * receives the distance of targets[i] or -1. Returns true iff the reachable
 * component was exhausted (the queue emptied before the depth cutoff).
 */
template <class Cache, class Allowed>
bool restricted_bfs(Cache& cache, Scratch& scratch, VertexId source, const std::vector<VertexId>& targets,
                    std::vector<int>& found, int max_depth, Allowed&& allowed) {
  found.assign(targets.size(), -1);
  std::unordered_map<VertexId, std::size_t> target_index;
  for (std::size_t i = 0; i < targets.size(); ++i) target_index.emplace(targets[i], i);
  std::size_t remaining = targets.size();
  scratch.begin(cache.size());
  scratch.mark(source, 0);
  auto hit = [&](VertexId v, int d) {
    if (auto it = target_index.find(v); it != target_index.end() && found[it->second] < 0) {
      found[it->second] = d;
      --remaining;
    }
  };
  hit(source, 0);
  std::vector<VertexId> frontier{source}, next;
  for (int depth = 0; !frontier.empty(); ++depth) {
    if (remaining == 0 || depth == max_depth) return false;
    next.clear();
    for (VertexId u : frontier) {
      const auto& adj = cache.neighbors(u);
      scratch.ensure(cache.size());
      for (VertexId v : adj) {
        if (scratch.seen(v) || !allowed(v)) continue;
        scratch.mark(v, depth + 1);
        hit(v, depth + 1);
        // stop before expanding further vertices, which would intern the next sphere
        if (remaining == 0) return false;
        next.push_back(v);
      }
    }
    frontier.swap(next);
  }
  return remaining != 0;
}

}  // namespace detail

/**
 * Shortest a-b path avoiding {v : d(v,c) <= forbidden_radius}, searched up
 * to `horizon` edges. DISCONNECTED requires a certificate: either the
 * reachable component of a was exhausted, or the oracle is a tree (then b
 * is reachable iff the geodesic avoids the ball).
 */
template <GraphOracle O>
DetourResult<typename O::Vertex> detour_distance(const O& oracle, const typename O::Vertex& a,
                                                 const typename O::Vertex& b, const typename O::Vertex& c,
                                                 const Rational& forbidden_radius, int horizon,
                                                 std::size_t memory_budget = default_memory_budget) {
  using V = typename O::Vertex;
  GraphCache<O> cache(oracle, memory_budget);
  DetourResult<V> out;
  out.forbidden_radius = forbidden_radius;
  const std::int64_t cutoff = floor_of(forbidden_radius);
  VertexId cid = cache.intern(c);
  std::vector<char> forbidden;
  detail::Scratch scratch;
  if (cutoff >= 0) {
    // every vertex within distance `cutoff` of c
    std::vector<int> dist{0};
    std::vector<VertexId> order{cid};
    for (std::size_t head = 0; head < order.size(); ++head) {
      VertexId u = order[head];
      if (dist[u] == cutoff) continue;
      for (VertexId v : cache.neighbors(u)) {
        if (v >= dist.size()) dist.resize(v + 1, -1);
        if (dist[v] >= 0) continue;
        dist[v] = dist[u] + 1;
        order.push_back(v);
      }
    }
    for (VertexId v : order) {
      if (v >= forbidden.size()) forbidden.resize(v + 1, 0);
      forbidden[v] = 1;
    }
  }
  auto allowed = [&](VertexId v) { return v >= forbidden.size() || !forbidden[v]; };
  VertexId aid = cache.intern(a), bid = cache.intern(b);
  if (!allowed(aid) || !allowed(bid))
    throw Error(ErrorCode::config, "detour endpoints must lie outside the forbidden ball");

  int depth_limit = horizon;
  const bool tree = oracle_is_tree(oracle);
  if (tree) {
    std::vector<int> plain;
    detail::restricted_bfs(cache, scratch, aid, {bid}, plain, horizon, [](VertexId) { return true; });
    if (plain[0] >= 0) depth_limit = plain[0];
  }
  // BFS with parent links
  std::unordered_map<VertexId, VertexId> parent{{aid, aid}};
  std::vector<VertexId> frontier{aid}, next;
  bool reached = aid == bid;
  int depth = 0;
  while (!reached && !frontier.empty() && depth < depth_limit) {
    next.clear();
    for (VertexId u : frontier) {
      for (VertexId v : cache.neighbors(u)) {
        if (parent.count(v) || !allowed(v)) continue;
        parent.emplace(v, u);
        if (v == bid) reached = true;
        next.push_back(v);
      }
    }
    frontier.swap(next);
    ++depth;
  }
  if (reached) {
    std::vector<VertexId> rev{bid};
    while (rev.back() != aid) rev.push_back(parent.at(rev.back()));
    out.status = DetourStatus::path;
    out.length = depth;
    for (auto it = rev.rbegin(); it != rev.rend(); ++it) out.path.push_back(cache.vertex(*it));
  } else if (frontier.empty() || tree) {
    out.status = DetourStatus::disconnected;
  } else {
    out.status = DetourStatus::horizon_exceeded;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Divergence function

enum class RowStatus { exact, unbounded, horizon_exceeded, lower_bound };

constexpr const char* to_string(RowStatus s) {
  switch (s) {
    case RowStatus::exact: return "exact";
    case RowStatus::unbounded: return "unbounded";
    case RowStatus::horizon_exceeded: return "horizon_exceeded";
    case RowStatus::lower_bound: return "lower_bound";
  }
  return "?";
}

struct DivergenceRow {
  int n = 0;
  std::optional<std::int64_t> value;  ///< largest finite detour; nullopt if no admissible pair
  bool unbounded = false;
  std::string witness_a, witness_b, witness_c;
  std::uint64_t pairs_scanned = 0;  ///< unordered admissible pairs
  RowStatus status = RowStatus::exact;
};

struct DivergenceReport {
  std::string oracle;
  DivergenceQuery query;
  std::vector<DivergenceRow> rows;  ///< n' = 1..n
  int source_radius = 0;            ///< closer endpoints range over this ball around c
  std::size_t ball_size = 0;
  std::size_t vertices_visited = 0;
  double runtime_seconds = 0;
};

/**
 * Radius R such that pairs whose closer endpoint lies farther than R from c
 * cannot raise any row: every vertex of an a-b geodesic is within
 * floor(n/2) of {a, b}, so once (1 - delta) r > floor(n/2) - lambda the
 * geodesic itself avoids the forbidden ball. One extra layer keeps pairs
 * realizing plain distances in the enumeration.
 */
inline int source_radius(const DivergenceQuery& q) {
  Rational slack = Rational(q.n / 2) - q.lambda;
  if (slack < 0) return 0;
  return static_cast<int>(floor_of(slack / (Rational(1) - q.delta))) + 1;
}

namespace detail {

struct PairOutcome {
  int pair_distance = 0;  // d(a,b)
  DetourStatus status = DetourStatus::path;
  int length = 0;
  std::size_t a = 0;       // ball index of the closer endpoint
  std::size_t b_rank = 0;  // position of b in the BFS order from a
  VertexId b = 0;          // cache id, for rendering only
};

// Running maxima for one pair distance. Ties go to the smallest (a, b_rank),
// which does not depend on thread scheduling.
struct Bucket {
  std::optional<PairOutcome> best, disconnected, horizon;
  std::uint64_t pairs = 0;

  static bool before(const PairOutcome& x, const PairOutcome& y) {
    return std::tie(x.a, x.b_rank) < std::tie(y.a, y.b_rank);
  }

  void add(const PairOutcome& o) {
    ++pairs;
    consider(o);
  }
  void merge(const Bucket& other) {
    for (const auto* o : {&other.best, &other.disconnected, &other.horizon})
      if (*o) consider(**o);
    pairs += other.pairs;
  }

 private:
  void consider(const PairOutcome& o) {
    switch (o.status) {
      case DetourStatus::path:
        if (!best || o.length > best->length || (o.length == best->length && before(o, *best))) best = o;
        break;
      case DetourStatus::disconnected:
        if (!disconnected || before(o, *disconnected)) disconnected = o;
        break;
      case DetourStatus::horizon_exceeded:
        if (!horizon || before(o, *horizon)) horizon = o;
        break;
    }
  }
};

/// Plain BFS to depth `depth`: every reached vertex with its distance, in BFS order.
template <class Cache>
std::vector<std::pair<VertexId, int>> bfs_collect(Cache& cache, Scratch& scratch, VertexId source, int depth) {
  std::vector<std::pair<VertexId, int>> order{{source, 0}};
  scratch.begin(cache.size());
  scratch.mark(source, 0);
  for (std::size_t head = 0; head < order.size(); ++head) {
    auto [u, d] = order[head];
    if (d == depth) continue;
    const auto& adj = cache.neighbors(u);
    scratch.ensure(cache.size());
    for (VertexId v : adj) {
      if (scratch.seen(v)) continue;
      scratch.mark(v, d + 1);
      order.emplace_back(v, d + 1);
    }
  }
  return order;
}

/**
 * All detours with closer endpoint a (ball index `a`). Partners b are the
 * vertices within n of a that come after a in the BFS order around c; all
 * of them share the forbidden radius delta * d(c,a) - lambda. With
 * `samples` non-empty only those partner slots (reduced modulo the partner
 * count) are evaluated.
 */
template <class Cache>
std::vector<PairOutcome> detours_from(Cache& cache, Scratch& scratch, const DivergenceQuery& q, bool tree,
                                      const std::vector<int>& dist_c, std::size_t a,
                                      const std::vector<std::uint64_t>& samples) {
  const auto aid = static_cast<VertexId>(a);
  const std::size_t ball_size = dist_c.size();
  const Rational rho = forbidden_radius(q, dist_c[a]);
  if (!(Rational(dist_c[a]) > rho)) return {};  // a itself is forbidden
  const std::int64_t cutoff = floor_of(rho);

  auto reached = bfs_collect(cache, scratch, aid, q.n);
  std::vector<std::size_t> partner;  // indices into `reached`
  for (std::size_t i = 1; i < reached.size(); ++i)
    if (reached[i].first > aid) partner.push_back(i);
  if (partner.empty()) return {};
  if (!samples.empty()) {
    std::vector<std::size_t> chosen;
    for (auto r : samples) chosen.push_back(partner[r % partner.size()]);
    std::sort(chosen.begin(), chosen.end());
    chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
    partner = std::move(chosen);
  }

  std::vector<VertexId> targets;
  int farthest = 0;
  for (auto i : partner) {
    targets.push_back(reached[i].first);
    farthest = std::max(farthest, reached[i].second);
  }
  // ids past the ball lie farther than source_radius > rho from c
  auto allowed = [&](VertexId v) { return v >= ball_size || dist_c[v] > cutoff; };
  std::vector<int> found;
  // in a tree a detour exists iff the geodesic survives
  const int limit = tree ? farthest : q.horizon();
  const bool exhausted = restricted_bfs(cache, scratch, aid, targets, found, limit, allowed);

  std::vector<PairOutcome> out;
  out.reserve(partner.size());
  for (std::size_t k = 0; k < partner.size(); ++k) {
    PairOutcome o;
    o.pair_distance = reached[partner[k]].second;
    o.a = a;
    o.b_rank = partner[k];
    o.b = targets[k];
    if (found[k] >= 0) {
      o.length = found[k];
    } else {
      o.status = exhausted || tree ? DetourStatus::disconnected : DetourStatus::horizon_exceeded;
    }
    out.push_back(o);
  }
  return out;
}

}  // namespace detail

/**
 * Div_lambda(n'; delta) for n' = 1..n with c fixed at the basepoint.
 * Row n' maximizes over unordered pairs {a, b} with d(a,b) <= n'. The
 * closer endpoint ranges over the ball of radius source_radius(query)
 * around c, which loses nothing (see source_radius). A DISCONNECTED pair
 * makes its row, and every later row, UNBOUNDED; an unresolved pair makes
 * the row HORIZON_EXCEEDED.
 */
template <GraphOracle O>
DivergenceReport divergence_function(const O& oracle, const DivergenceQuery& query) {
  query.validate();
  if (!oracle.vertex_transitive())
    throw Error(ErrorCode::non_transitive_unsupported,
                "fixed-basepoint divergence needs a vertex-transitive oracle");
  const auto started = std::chrono::steady_clock::now();
  GraphCache<O> cache(oracle, query.memory_budget);
  const bool tree = oracle_is_tree(oracle);
  const int radius = source_radius(query);

  // ids 0..ball_size-1 are exactly the source ball, in BFS order
  cache.intern(oracle.basepoint());
  std::vector<int> dist_c{0};
  for (std::size_t head = 0; head < dist_c.size(); ++head) {
    if (dist_c[head] == radius) break;
    for (VertexId v : cache.neighbors(static_cast<VertexId>(head)))
      if (v >= dist_c.size()) dist_c.resize(v + 1, dist_c[head] + 1);
  }
  while (dist_c.back() > radius) dist_c.pop_back();
  const std::size_t ball_size = dist_c.size();

  // sampled mode: draw (a, partner slot) pairs up front. The sphere of a
  // is drawn first so that sources near c, where detours are long, are not
  // swamped by the outermost sphere.
  std::vector<std::vector<std::uint64_t>> samples(ball_size);
  std::vector<std::size_t> sources;
  if (query.mode == Mode::sampled) {
    std::vector<std::size_t> sphere_start(static_cast<std::size_t>(radius) + 2, ball_size);
    for (std::size_t v = ball_size; v-- > 0;) sphere_start[dist_c[v]] = v;
    std::mt19937_64 rng(query.seed);
    for (std::uint64_t k = 0; k < query.pair_count; ++k) {
      const auto r = static_cast<std::size_t>(rng() % (static_cast<std::uint64_t>(radius) + 1));
      const std::size_t width = sphere_start[r + 1] - sphere_start[r];
      const std::size_t a = sphere_start[r] + rng() % width;
      samples[a].push_back(rng());
    }
    for (std::size_t a = 0; a < ball_size; ++a)
      if (!samples[a].empty()) sources.push_back(a);
  } else {
    for (std::size_t a = 0; a < ball_size; ++a) sources.push_back(a);
  }

  auto per_source = parallel_map(sources.size(), std::max(1u, query.workers), [&](std::size_t i) {
    thread_local detail::Scratch scratch;
    std::vector<detail::Bucket> buckets(static_cast<std::size_t>(query.n) + 1);
    for (const auto& o : detail::detours_from(cache, scratch, query, tree, dist_c, sources[i], samples[sources[i]]))
      buckets[o.pair_distance].add(o);
    return buckets;
  });

  std::vector<detail::Bucket> by_distance(static_cast<std::size_t>(query.n) + 1);
  for (const auto& buckets : per_source)
    for (int k = 1; k <= query.n; ++k) by_distance[k].merge(buckets[k]);

  DivergenceReport report;
  report.oracle = oracle.name();
  report.query = query;
  report.source_radius = radius;
  report.ball_size = ball_size;
  const std::string c_text = oracle.render(cache.vertex(0));
  detail::Bucket running;
  for (int k = 1; k <= query.n; ++k) {
    running.merge(by_distance[k]);
    DivergenceRow row;
    row.n = k;
    row.pairs_scanned = running.pairs;
    row.witness_c = c_text;
    const detail::PairOutcome* witness = nullptr;
    if (running.best) {
      row.value = running.best->length;
      witness = &*running.best;
    }
    if (running.disconnected) {
      row.unbounded = true;
      row.status = RowStatus::unbounded;
      witness = &*running.disconnected;
    } else if (running.horizon) {
      row.status = RowStatus::horizon_exceeded;
      witness = &*running.horizon;
    } else {
      row.status = query.mode == Mode::sampled ? RowStatus::lower_bound : RowStatus::exact;
    }
    if (witness) {
      row.witness_a = oracle.render(cache.vertex(static_cast<VertexId>(witness->a)));
      row.witness_b = oracle.render(cache.vertex(witness->b));
    }
    report.rows.push_back(std::move(row));
  }
  report.vertices_visited = cache.size();
  report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

/// Outcome of a single pair: a finite detour length or unbounded.
struct PairDivergence {
  std::optional<std::int64_t> value;  ///< nullopt when unbounded or unresolved
  bool unbounded = false;
  bool horizon_exceeded = false;
};

/**
 * Divergence of one pair: the largest detour over the given c samples, or
 * c = basepoint for vertex-transitive oracles when no samples are given.
 * Inadmissible configurations (a or b inside the forbidden ball) are
 * skipped.
 */
template <GraphOracle O>
PairDivergence pair_divergence(const O& oracle, const typename O::Vertex& a, const typename O::Vertex& b,
                               const DivergenceQuery& query,
                               const std::vector<typename O::Vertex>& c_samples = {}) {
  query.validate();
  std::vector<typename O::Vertex> cs = c_samples;
  if (cs.empty()) {
    if (!oracle.vertex_transitive())
      throw Error(ErrorCode::non_transitive_unsupported, "give explicit c samples for non-transitive oracles");
    cs.push_back(oracle.basepoint());
  }
  PairDivergence out;
  for (const auto& c : cs) {
    auto dist = [&](const typename O::Vertex& x) {
      auto r = detour_distance(oracle, c, x, c, Rational(-1), std::numeric_limits<int>::max() / 2, query.memory_budget);
      return static_cast<std::int64_t>(r.length);
    };
    const std::int64_t da = dist(a), db = dist(b);
    Rational rho = forbidden_radius(query, std::min(da, db));
    if (!(Rational(da) > rho) || !(Rational(db) > rho)) continue;
    const std::int64_t dab = detour_distance(oracle, a, b, a, Rational(-1), std::numeric_limits<int>::max() / 2,
                                             query.memory_budget)
                                 .length;
    const int horizon = std::max<int>(query.horizon(), static_cast<int>(floor_of(query.horizon_factor * dab)) + 1);
    auto r = detour_distance(oracle, a, b, c, rho, horizon, query.memory_budget);
    if (r.status == DetourStatus::disconnected) {
      out.unbounded = true;
      out.value.reset();
      return out;
    }
    if (r.status == DetourStatus::horizon_exceeded) {
      out.horizon_exceeded = true;
      continue;
    }
    if (!out.value || r.length > *out.value) out.value = r.length;
  }
  return out;
}

}  // namespace coxdiv
