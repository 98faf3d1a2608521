#pragma once

/**
 * @file oracle.hpp
 * @brief The graph-oracle contract and a thread-safe interning cache.
 *
 * An oracle describes a locally finite, connected, undirected graph
 * (typically a Cayley graph) lazily:
 *
 *   using Vertex = ...;                       // value type
 *   std::string name() const;
 *   Vertex basepoint() const;
 *   std::vector<Vertex> neighbors(const Vertex&) const;  // stable order, symmetric
 *   std::string canonical_key(const Vertex&) const;      // injective
 *   std::string render(const Vertex&) const;             // human readable
 *   bool vertex_transitive() const;
 *
 * Optionally `bool is_tree() const`, which lets the divergence engine
 * certify disconnection in infinite graphs.
 */

#include <atomic>
#include <concepts>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "coxdiv/error.hpp"

namespace coxdiv {

template <class O>
concept GraphOracle = requires(const O& o, const typename O::Vertex& v) {
  typename O::Vertex;
  { o.name() } -> std::convertible_to<std::string>;
  { o.basepoint() } -> std::convertible_to<typename O::Vertex>;
  { o.neighbors(v) } -> std::convertible_to<std::vector<typename O::Vertex>>;
  { o.canonical_key(v) } -> std::convertible_to<std::string>;
  { o.render(v) } -> std::convertible_to<std::string>;
  { o.vertex_transitive() } -> std::convertible_to<bool>;
};

template <class O>
bool oracle_is_tree(const O& o) {
  if constexpr (requires { { o.is_tree() } -> std::convertible_to<bool>; })
    return o.is_tree();
  else
    return false;
}

using VertexId = std::uint32_t;

inline constexpr std::size_t default_memory_budget = std::size_t{3} << 30;  // 3 GiB

/**
 * Interns oracle vertices to dense ids and memoizes adjacency. Ids are
 * assigned in discovery order. Readers of already-expanded vertices never
 * block; expansion of a new vertex takes a mutex only to intern results.
 */
template <GraphOracle O>
class GraphCache {
 public:
  using Vertex = typename O::Vertex;

  explicit GraphCache(const O& oracle, std::size_t memory_budget = default_memory_budget)
      : oracle_(oracle), budget_(memory_budget) {
    chunks_.resize(max_chunks);
  }

  GraphCache(const GraphCache&) = delete;
  GraphCache& operator=(const GraphCache&) = delete;

  const O& oracle() const { return oracle_; }

  VertexId intern(const Vertex& v) {
    std::string key = oracle_.canonical_key(v);
    std::lock_guard lock(mutex_);
    return intern_locked(v, std::move(key));
  }

  std::size_t size() const { return size_.load(std::memory_order_acquire); }
  std::size_t bytes_used() const { return bytes_.load(std::memory_order_relaxed); }
  std::size_t budget() const { return budget_; }

  const Vertex& vertex(VertexId id) const { return record(id).vertex; }

  /// Neighbor ids of `id`, computing and interning them on first use.
  const std::vector<VertexId>& neighbors(VertexId id) {
    Record& r = record(id);
    if (r.expanded.load(std::memory_order_acquire)) return r.adjacency;
    auto verts = oracle_.neighbors(r.vertex);
    std::vector<std::string> keys;
    keys.reserve(verts.size());
    for (const auto& v : verts) keys.push_back(oracle_.canonical_key(v));
    std::lock_guard lock(mutex_);
    if (r.expanded.load(std::memory_order_relaxed)) return r.adjacency;
    std::vector<VertexId> adj;
    adj.reserve(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) adj.push_back(intern_locked(verts[i], std::move(keys[i])));
    r.adjacency = std::move(adj);
    bytes_.fetch_add(r.adjacency.capacity() * sizeof(VertexId), std::memory_order_relaxed);
    r.expanded.store(true, std::memory_order_release);
    return r.adjacency;
  }

 private:
  struct Record {
    Vertex vertex;
    std::vector<VertexId> adjacency;
    std::atomic<bool> expanded{false};
  };

  static constexpr std::size_t chunk_bits = 14;
  static constexpr std::size_t chunk_size = std::size_t{1} << chunk_bits;
  static constexpr std::size_t max_chunks = std::size_t{1} << 18;  // 2^32 ids

  Record& record(VertexId id) const { return chunks_[id >> chunk_bits][id & (chunk_size - 1)]; }

  VertexId intern_locked(const Vertex& v, std::string key) {
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    const std::size_t id = size_.load(std::memory_order_relaxed);
    std::size_t cost = key.size() * 2 + sizeof(Record) + 96;
    if constexpr (requires { { oracle_.heap_bytes(v) } -> std::convertible_to<std::size_t>; }) cost += oracle_.heap_bytes(v);
    if (bytes_.load(std::memory_order_relaxed) + cost > budget_)
      throw Error(ErrorCode::memory_budget, "graph cache reached " + std::to_string(id) + " vertices (budget " +
                                                std::to_string(budget_ >> 10) + " KiB)");
    auto& chunk = chunks_[id >> chunk_bits];
    if (!chunk) chunk = std::make_unique<Record[]>(chunk_size);
    chunk[id & (chunk_size - 1)].vertex = v;
    index_.emplace(std::move(key), static_cast<VertexId>(id));
    bytes_.fetch_add(cost, std::memory_order_relaxed);
    size_.store(id + 1, std::memory_order_release);
    return static_cast<VertexId>(id);
  }

  const O& oracle_;
  std::size_t budget_;
  mutable std::vector<std::unique_ptr<Record[]>> chunks_;
  std::unordered_map<std::string, VertexId> index_;
  std::mutex mutex_;
  std::atomic<std::size_t> size_{0};
  std::atomic<std::size_t> bytes_{0};
};

}  // namespace coxdiv
