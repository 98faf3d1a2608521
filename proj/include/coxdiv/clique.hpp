#pragma once

/**
 * @file clique.hpp
 * @brief Exact maximum clique for graphs with at most 64 vertices.
 *
 * Branch and bound over 64-bit adjacency masks. Vertices are ordered by
 * non-increasing degree; each node bounds its candidate set with a greedy
 * colouring and prunes when |clique| + colours <= |best|.
 */

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <vector>

#include "coxdiv/error.hpp"

namespace coxdiv {

using Mask = std::uint64_t;

namespace detail {

class CliqueSearch {
 public:
  explicit CliqueSearch(const std::vector<Mask>& adj) : adj_(adj) {}

  Mask run(Mask candidates) {
    expand(0, candidates, 0);
    return best_;
  }

 private:
  // Greedy sequential colouring of `p`; fills order/colour arrays so that
  // colour[k] is a bound on any clique inside order[0..k].
  void colour(Mask p, std::vector<int>& order, std::vector<int>& colours) const {
    order.clear();
    colours.clear();
    int c = 0;
    while (p) {
      ++c;
      Mask q = p;
      while (q) {
        int v = std::countr_zero(q);
        q &= ~adj_[v];
        q &= ~(Mask{1} << v);
        p &= ~(Mask{1} << v);
        order.push_back(v);
        colours.push_back(c);
      }
    }
  }

  void expand(Mask clique, Mask p, int size) {
    std::vector<int> order, colours;
    colour(p, order, colours);
    for (int k = static_cast<int>(order.size()) - 1; k >= 0; --k) {
      if (size + colours[k] <= best_size_) return;
      int v = order[k];
      Mask bit = Mask{1} << v;
      Mask next = p & adj_[v];
      if (next == 0) {
        if (size + 1 > best_size_) {
          best_size_ = size + 1;
          best_ = clique | bit;
        }
      } else {
        expand(clique | bit, next, size + 1);
      }
      p &= ~bit;
    }
  }

  const std::vector<Mask>& adj_;
  Mask best_ = 0;
  int best_size_ = 0;
};

}  // namespace detail

/**
 * Maximum clique of the graph with adjacency masks `adj` (no self loops).
 * Returns the member indices in increasing order.
 */
inline std::vector<int> max_clique(const std::vector<Mask>& adj) {
  const int n = static_cast<int>(adj.size());
  if (n > 64) throw Error(ErrorCode::too_large, "max_clique supports at most 64 vertices");
  if (n == 0) return {};
  // relabel by non-increasing degree so colouring sees dense vertices first
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](int a, int b) { return std::popcount(adj[a]) > std::popcount(adj[b]); });
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[perm[i]] = i;
  std::vector<Mask> relabeled(n, 0);
  for (int i = 0; i < n; ++i)
    for (Mask m = adj[perm[i]]; m; m &= m - 1) relabeled[i] |= Mask{1} << pos[std::countr_zero(m)];
  Mask all = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  Mask best = detail::CliqueSearch(relabeled).run(all);
  std::vector<int> out;
  for (; best; best &= best - 1) out.push_back(perm[std::countr_zero(best)]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace coxdiv
