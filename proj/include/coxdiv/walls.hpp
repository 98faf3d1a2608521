#pragma once

/**
 * @file walls.hpp
 * @brief Walls of the Coxeter complex: separation, parallelism, pencils of
 *        pairwise parallel walls and empirical parallel-wall constants.
 *
 * A wall is the fixed set of a reflection t = u s u^{-1}; it is identified
 * with the positive root +-u(alpha_s). Two distinct walls are parallel
 * (disjoint in the Tits cone) iff |B(root1, root2)| >= 1.
 */

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "coxdiv/clique.hpp"
#include "coxdiv/coxeter.hpp"
#include "coxdiv/parallel.hpp"

namespace coxdiv {

struct Wall {
  Element reflection;
  Vec root;  ///< positive

  friend bool operator==(const Wall& a, const Wall& b) { return a.root == b.root; }
};

/// Wall of the reflection u s u^{-1}.
inline Wall make_wall(const CoxeterSystem& sys, const Element& u, int s) {
  Vec root = sys.act(u.word, simple_root(sys.rank(), s));
  if (root_sign(root) < 0) root = negate(std::move(root));
  std::vector<Generator> w = u.word;
  w.push_back(static_cast<Generator>(s));
  w.insert(w.end(), u.word.rbegin(), u.word.rend());
  return Wall{sys.normal_form(w), std::move(root)};
}

inline Wall simple_wall(const CoxeterSystem& sys, int s) {
  return Wall{sys.generator(s), simple_root(sys.rank(), s)};
}

namespace detail {

/// Positive roots of the walls crossed by a reduced gallery from u to v.
inline std::vector<Vec> separating_roots(const CoxeterSystem& sys, const Element& u, const Element& v) {
  Element x = sys.multiply(sys.inverse(u), v);
  std::vector<Vec> roots;
  roots.reserve(x.length());
  std::vector<Generator> prefix = u.word;
  for (auto s : x.word) {
    Vec r = sys.act(prefix, simple_root(sys.rank(), s));
    if (root_sign(r) < 0) r = negate(std::move(r));
    roots.push_back(std::move(r));
    prefix.push_back(s);
  }
  return roots;
}

}  // namespace detail

/**
 * Walls separating chambers u and v, in gallery order along the ShortLex
 * word of u^{-1}v. Their number is the gallery distance.
 */
inline std::vector<Wall> separating_walls(const CoxeterSystem& sys, const Element& u, const Element& v) {
  Element x = sys.multiply(sys.inverse(u), v);
  std::vector<Wall> walls;
  walls.reserve(x.length());
  Element prefix = u;
  for (auto s : x.word) {
    walls.push_back(make_wall(sys, prefix, s));
    prefix.word.push_back(s);  // u s1 ... s_{i-1}, not necessarily ShortLex
  }
  return walls;
}

/// Separating walls for an explicit (not necessarily ShortLex) reduced word of u^{-1}v.
inline std::vector<Wall> separating_walls_along(const CoxeterSystem& sys, const Element& u,
                                                std::span<const Generator> reduced_word) {
  std::vector<Wall> walls;
  Element prefix = u;
  for (auto s : reduced_word) {
    walls.push_back(make_wall(sys, prefix, s));
    prefix.word.push_back(s);
  }
  return walls;
}

/// +1 iff w^{-1}(root) is positive: w lies on the same side as the identity.
inline int wall_side(const CoxeterSystem& sys, const Element& w, const Wall& h) {
  return root_sign(sys.act_inverse(w.word, h.root)) > 0 ? 1 : -1;
}

inline bool roots_parallel(const BilinearForm& form, const Vec& r1, const Vec& r2) {
  return form.pairing(r1, r2).abs() >= QuadExtScalar(1);
}

inline bool walls_parallel(const CoxeterSystem& sys, const Wall& h1, const Wall& h2) {
  if (h1.root == h2.root) throw Error(ErrorCode::same_wall, "parallelism needs two distinct walls");
  return roots_parallel(sys.form(), h1.root, h2.root);
}

inline constexpr std::size_t default_clique_bound = 40;

struct ParallelFamily {
  std::size_t size = 0;
  std::vector<std::size_t> members;  ///< indices into the input list
};

namespace detail {

inline ParallelFamily max_parallel_roots(const BilinearForm& form, const std::vector<Vec>& roots,
                                         std::size_t bound) {
  if (roots.size() > bound || roots.size() > 64)
    throw Error(ErrorCode::too_large, std::to_string(roots.size()) + " walls exceed the exact clique bound " +
                                          std::to_string(std::min<std::size_t>(bound, 64)));
  std::vector<Mask> adj(roots.size(), 0);
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (roots_parallel(form, roots[i], roots[j])) {
        adj[i] |= Mask{1} << j;
        adj[j] |= Mask{1} << i;
      }
  ParallelFamily out;
  for (int v : max_clique(adj)) out.members.push_back(static_cast<std::size_t>(v));
  out.size = out.members.size();
  return out;
}

}  // namespace detail

/// Largest pairwise-parallel subfamily (exact maximum clique).
inline ParallelFamily max_parallel_family(const CoxeterSystem& sys, const std::vector<Wall>& walls,
                                          std::size_t bound = default_clique_bound) {
  std::vector<Vec> roots;
  for (const auto& w : walls) roots.push_back(w.root);
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (roots[i] == roots[j]) throw Error(ErrorCode::same_wall, "wall list contains duplicates");
  return detail::max_parallel_roots(sys.form(), roots, bound);
}

// ---------------------------------------------------------------------------
// Scans

struct ScanOptions {
  unsigned workers = 1;
  std::size_t clique_bound = default_clique_bound;
  bool full_orbit = false;  ///< pwt_scan: scan every wall meeting the half-radius ball
};

struct PencilRow {
  int n = 0;
  std::size_t min_parallel = 0;
  Element witness;
  std::size_t chambers = 0;
};

struct PencilReport {
  int radius = 0;
  std::vector<PencilRow> rows;  ///< n = 1..radius
  int c_hat = 1;                ///< least C with min_parallel(n) >= floor(n / C) for all rows
};

inline void require_infinite(const CoxeterSystem& sys) {
  if (sys.is_finite())
    throw Error(ErrorCode::spherical_system, "the Coxeter group is finite; scans need a non-spherical system");
}

/**
 * For every chamber w with 1 <= length(w) <= radius, the largest pairwise
 * parallel family among the walls separating w from the identity; the
 * minimum is taken per length.
 */
inline PencilReport lemma1_scan(const CoxeterSystem& sys, int radius, const ScanOptions& options = {}) {
  require_infinite(sys);
  if (radius < 1) throw Error(ErrorCode::config, "radius must be at least 1");
  if (static_cast<std::size_t>(radius) > std::min<std::size_t>(options.clique_bound, 64))
    throw Error(ErrorCode::too_large, "radius exceeds the exact clique bound");
  auto ball = sys.ball(radius);
  Element identity;
  auto sizes = parallel_map(ball.size(), options.workers, [&](std::size_t i) {
    if (ball[i].is_identity()) return std::size_t{0};
    auto roots = detail::separating_roots(sys, identity, ball[i]);
    return detail::max_parallel_roots(sys.form(), roots, options.clique_bound).size;
  });
  PencilReport report;
  report.radius = radius;
  report.rows.resize(radius);
  for (int n = 1; n <= radius; ++n) report.rows[n - 1].n = n;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const auto len = ball[i].length();
    if (len == 0) continue;
    auto& row = report.rows[len - 1];
    if (row.chambers == 0 || sizes[i] < row.min_parallel) {
      row.min_parallel = sizes[i];
      row.witness = ball[i];
    }
    ++row.chambers;
  }
  for (int c = 1;; ++c) {
    bool ok = std::all_of(report.rows.begin(), report.rows.end(), [c](const PencilRow& r) {
      return r.min_parallel >= static_cast<std::size_t>(r.n / c);
    });
    if (ok) {
      report.c_hat = c;
      break;
    }
  }
  return report;
}

struct PwtWitness {
  Element chamber;
  int wall_distance = 0;
  Element shielding_wall;  ///< reflection of the separating parallel wall
};

struct PwtRow {
  std::string wall_id;
  Wall wall;
  std::optional<int> cpp_hat;         ///< nullopt = NOT_FOUND
  std::size_t n_scanned = 0;          ///< chambers at wall-distance >= cpp_hat
  int max_wall_distance = 0;          ///< largest wall-distance seen in the ball
  std::vector<PwtWitness> witnesses;  ///< one per chamber counted in n_scanned
};

struct PwtReport {
  int radius = 0;
  std::vector<PwtRow> rows;
};

namespace detail {

/// Depth descent of a root: returns (u, s) with root = +-u(alpha_s) and |u| = depth.
inline std::pair<Element, int> root_anchor(const CoxeterSystem& sys, Vec v) {
  if (root_sign(v) < 0) v = negate(std::move(v));
  std::vector<Generator> steps;
  for (;;) {
    int nonzero = 0, last = -1;
    for (int i = 0; i < sys.rank(); ++i)
      if (!v[i].is_zero()) {
        ++nonzero;
        last = i;
      }
    if (nonzero == 1) return {sys.normal_form(steps), last};
    int step = -1;
    for (int i = 0; i < sys.rank(); ++i)
      if (sys.form().pairing_simple(i, v).sign() > 0) {
        step = i;
        break;
      }
    if (step < 0) throw Error(ErrorCode::invalid_matrix, "not a root");
    sys.form().reflect(step, v);
    steps.push_back(static_cast<Generator>(step));
  }
}

}  // namespace detail

/**
 * Empirical parallel-wall constants. For a wall H with anchor chamber c0
 * (a chamber with a panel on H), the wall-distance of w is the least
 * gallery distance from w to a chamber with a panel on H, which equals
 * the depth of the root w^{-1}(root of H). A chamber is shielded when a
 * wall parallel to H separates it from c0. cpp_hat is one more than the
 * largest wall-distance of an unshielded chamber, reported only if some
 * scanned chamber lies at that distance or beyond.
 */
inline PwtReport pwt_scan(const CoxeterSystem& sys, int radius, const ScanOptions& options = {}) {
  require_infinite(sys);
  if (radius < 2) throw Error(ErrorCode::config, "pwt radius must be at least 2");
  auto ball = sys.ball(radius);

  struct Target {
    std::string id;
    Wall wall;
    Element anchor;
  };
  std::vector<Target> targets;
  for (int s = 0; s < sys.rank(); ++s) targets.push_back({std::to_string(s + 1), simple_wall(sys, s), Element{}});
  if (options.full_orbit) {
    for (const auto& w : sys.ball(radius / 2)) {
      for (const auto& h : separating_walls(sys, Element{}, w)) {
        bool known = std::any_of(targets.begin(), targets.end(), [&](const Target& t) { return t.wall == h; });
        if (known) continue;
        auto [anchor, s] = detail::root_anchor(sys, h.root);
        targets.push_back({to_string(h.reflection), h, anchor});
      }
    }
  }

  struct Cell {
    int distance = 0;
    std::optional<Element> shield;
  };
  PwtReport report;
  report.radius = radius;
  for (const auto& target : targets) {
    auto cells = parallel_map(ball.size(), options.workers, [&](std::size_t i) {
      const Element& w = ball[i];
      Cell cell;
      cell.distance = sys.root_depth(sys.act_inverse(w.word, target.wall.root));
      Element x = sys.multiply(sys.inverse(target.anchor), w);
      std::vector<Generator> prefix = target.anchor.word;
      for (auto s : x.word) {
        Vec r = sys.act(prefix, simple_root(sys.rank(), s));
        if (root_sign(r) < 0) r = negate(std::move(r));
        if (r != target.wall.root && roots_parallel(sys.form(), r, target.wall.root)) {
          cell.shield = make_wall(sys, Element{prefix}, s).reflection;
          break;
        }
        prefix.push_back(s);
      }
      return cell;
    });
    PwtRow row{target.id, target.wall, std::nullopt, 0, 0, {}};
    int worst_unshielded = -1;
    for (const auto& c : cells) {
      row.max_wall_distance = std::max(row.max_wall_distance, c.distance);
      if (!c.shield) worst_unshielded = std::max(worst_unshielded, c.distance);
    }
    int candidate = worst_unshielded + 1;
    if (candidate <= row.max_wall_distance) {
      row.cpp_hat = candidate;
      for (std::size_t i = 0; i < ball.size(); ++i)
        if (cells[i].distance >= candidate) {
          ++row.n_scanned;
          row.witnesses.push_back({ball[i], cells[i].distance, *cells[i].shield});
        }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace coxdiv
