#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "coxdiv/oracles/laurent.hpp"

namespace coxdiv {

inline constexpr int default_degree_bound = 24;

/**
 * Cayley graph of SL_2(F_q[t, 1/t]) for the elementary generators
 * E12(c t^k), E21(c t^k) with c in F_q^* and k in {-1, 0, 1}. The set is
 * closed under inverses (E(p)^-1 = E(-p)). Right multiplication.
 */
class SL2Oracle {
 public:
  using Vertex = SLMatrix<2>;

  explicit SL2Oracle(int q, int degree_bound = default_degree_bound) : q_(q), degree_bound_(degree_bound) {
    if (q != 2 && q != 3) throw Error(ErrorCode::config, "sl2 oracle supports q = 2 or q = 3");
    if (degree_bound < 1) throw Error(ErrorCode::config, "degree_bound must be >= 1");
    std::set<std::string> seen;
    for (auto [i, j] : {std::pair{0, 1}, std::pair{1, 0}})
      for (int k = -1; k <= 1; ++k)
        for (int c = 1; c < q; ++c) {
          auto g = Vertex::elementary(i, j, LaurentPoly::monomial(q, c, k));
          if (seen.insert(g.canonical_key()).second) gens_.push_back(g);
        }
  }

  int q() const { return q_; }
  int degree_bound() const { return degree_bound_; }
  const std::vector<Vertex>& generators() const { return gens_; }

  std::string name() const { return "sl2(q=" + std::to_string(q_) + ")"; }
  Vertex basepoint() const { return Vertex::identity(q_); }
  bool vertex_transitive() const { return true; }

  std::vector<Vertex> neighbors(const Vertex& a) const {
    std::vector<Vertex> out;
    out.reserve(gens_.size());
    for (const auto& g : gens_) {
      Vertex m = a * g;
      if (m.max_span() > degree_bound_)
        throw Error(ErrorCode::span_budget, "entry span exceeds degree_bound " + std::to_string(degree_bound_) +
                                                " at " + m.to_string());
      out.push_back(std::move(m));
    }
    return out;
  }

  std::string canonical_key(const Vertex& a) const { return a.canonical_key(); }
  std::size_t heap_bytes(const Vertex& a) const {
    std::size_t total = 0;
    for (const auto& e : a.entries()) total += e.heap_bytes();
    return total;
  }
  std::string render(const Vertex& a) const { return a.to_string(); }
  Vertex parse(const std::string& text) const { return Vertex::parse(q_, text); }
  Vertex multiply(const Vertex& a, const Vertex& b) const { return a * b; }

 private:
  int q_;
  int degree_bound_;
  std::vector<Vertex> gens_;
};

}  // namespace coxdiv
