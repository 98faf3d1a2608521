#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "coxdiv/error.hpp"

namespace coxdiv {

/// A finite graph given by adjacency lists; mainly a test fixture.
class ExplicitGraphOracle {
 public:
  using Vertex = std::uint32_t;

  ExplicitGraphOracle(std::vector<std::vector<Vertex>> adjacency, Vertex basepoint = 0, bool transitive = false)
      : adj_(std::move(adjacency)), base_(basepoint), transitive_(transitive) {
    for (Vertex v = 0; v < adj_.size(); ++v)
      for (Vertex u : adj_[v]) {
        if (u >= adj_.size()) throw Error(ErrorCode::config, "edge endpoint out of range");
        const auto& back = adj_[u];
        if (std::find(back.begin(), back.end(), v) == back.end())
          throw Error(ErrorCode::config, "adjacency is not symmetric");
      }
    if (base_ >= adj_.size()) throw Error(ErrorCode::config, "basepoint out of range");
  }

  std::size_t size() const { return adj_.size(); }
  std::string name() const { return "explicit(" + std::to_string(adj_.size()) + ")"; }
  Vertex basepoint() const { return base_; }
  bool vertex_transitive() const { return transitive_; }
  std::vector<Vertex> neighbors(const Vertex& v) const { return adj_.at(v); }
  std::string canonical_key(const Vertex& v) const { return std::to_string(v); }
  std::string render(const Vertex& v) const { return std::to_string(v); }

 private:
  std::vector<std::vector<Vertex>> adj_;
  Vertex base_;
  bool transitive_;
};

}  // namespace coxdiv
