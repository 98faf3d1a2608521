#pragma once

/**
 * @file coxeter.hpp
 * @brief Coxeter systems with labels in {2,3,4,6,inf}: the geometric
 *        representation, Brink-Howlett small roots, word automata and
 *        ShortLex normal forms.
 *
 * Conventions used throughout:
 *  - generators are 0-based indices; ShortLex order on words compares
 *    length first, then generator index lexicographically;
 *  - roots are coordinate vectors in the simple-root basis;
 *  - an element is stored as its ShortLex normal form word.
 */

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coxdiv/error.hpp"
#include "coxdiv/scalar.hpp"

namespace coxdiv {

using Generator = std::uint8_t;

/// Label used for m(s,t) = infinity.
inline constexpr int infinity_label = 0;

// ---------------------------------------------------------------------------
// CoxeterMatrix

class CoxeterMatrix {
 public:
  CoxeterMatrix() = default;

  /// `labels` is row-major rank x rank; infinity is `infinity_label`.
  CoxeterMatrix(int rank, std::vector<int> labels) : rank_(rank), m_(std::move(labels)) {
    if (rank_ < 1) throw Error(ErrorCode::invalid_matrix, "rank must be at least 1");
    if (rank_ > 64) throw Error(ErrorCode::invalid_matrix, "rank above 64 is not supported");
    if (m_.size() != static_cast<std::size_t>(rank_ * rank_))
      throw Error(ErrorCode::invalid_matrix, "expected rank*rank labels");
    for (int i = 0; i < rank_; ++i) {
      if (at(i, i) != 1) throw Error(ErrorCode::invalid_matrix, "diagonal label must be 1");
      for (int j = 0; j < rank_; ++j) {
        if (at(i, j) != at(j, i)) throw Error(ErrorCode::invalid_matrix, "matrix is not symmetric");
        if (i != j && at(i, j) != infinity_label && at(i, j) < 2)
          throw Error(ErrorCode::invalid_matrix, "off-diagonal label must be >= 2 or inf");
      }
    }
  }

  /// Builds a matrix from its strict upper triangle, row by row.
  static CoxeterMatrix from_upper(int rank, const std::vector<int>& upper) {
    std::vector<int> m(static_cast<std::size_t>(rank) * rank, 1);
    std::size_t k = 0;
    for (int i = 0; i < rank; ++i)
      for (int j = i + 1; j < rank; ++j) {
        if (k >= upper.size()) throw Error(ErrorCode::invalid_matrix, "upper triangle too short");
        m[i * rank + j] = m[j * rank + i] = upper[k++];
      }
    if (k != upper.size()) throw Error(ErrorCode::invalid_matrix, "upper triangle too long");
    return CoxeterMatrix(rank, std::move(m));
  }

  int rank() const { return rank_; }
  int at(int i, int j) const { return m_[static_cast<std::size_t>(i) * rank_ + j]; }
  bool is_infinite(int i, int j) const { return at(i, j) == infinity_label; }

  friend bool operator==(const CoxeterMatrix&, const CoxeterMatrix&) = default;

 private:
  int rank_ = 0;
  std::vector<int> m_;
};

namespace systems {

inline CoxeterMatrix infinite_dihedral() { return CoxeterMatrix::from_upper(2, {infinity_label}); }
inline CoxeterMatrix a1() { return CoxeterMatrix(1, {1}); }
inline CoxeterMatrix a2() { return CoxeterMatrix::from_upper(2, {3}); }
inline CoxeterMatrix b2() { return CoxeterMatrix::from_upper(2, {4}); }
inline CoxeterMatrix g2() { return CoxeterMatrix::from_upper(2, {6}); }
inline CoxeterMatrix a3() { return CoxeterMatrix::from_upper(3, {3, 2, 3}); }
/// Affine A~2: triangle group (3,3,3).
inline CoxeterMatrix affine_a2() { return CoxeterMatrix::from_upper(3, {3, 3, 3}); }
/// Affine C~2: triangle group (4,4,2).
inline CoxeterMatrix affine_c2() { return CoxeterMatrix::from_upper(3, {4, 2, 4}); }
/// Hyperbolic triangle group with labels (3,3,4).
inline CoxeterMatrix triangle_334() { return CoxeterMatrix::from_upper(3, {3, 4, 3}); }
/// Right-angled pentagon: cyclic neighbours commute, the rest are free.
inline CoxeterMatrix right_angled_pentagon() {
  constexpr int inf = infinity_label;
  // pairs (0,1) (1,2) (2,3) (3,4) (0,4) commute
  return CoxeterMatrix::from_upper(5, {2, inf, inf, 2,  //
                                       2, inf, inf,     //
                                       2, inf,          //
                                       2});
}

/// Looks up a built-in system by name; nullopt when unknown.
inline std::optional<CoxeterMatrix> by_name(const std::string& name) {
  if (name == "infinite-dihedral") return infinite_dihedral();
  if (name == "A1") return a1();
  if (name == "A2") return a2();
  if (name == "B2") return b2();
  if (name == "G2") return g2();
  if (name == "A3") return a3();
  if (name == "affine-A2") return affine_a2();
  if (name == "affine-C2") return affine_c2();
  if (name == "triangle-334") return triangle_334();
  if (name == "pentagon") return right_angled_pentagon();
  return std::nullopt;
}

inline std::vector<std::string> names() {
  return {"infinite-dihedral", "A1", "A2", "B2", "G2", "A3", "affine-A2", "affine-C2", "triangle-334", "pentagon"};
}

}  // namespace systems

// ---------------------------------------------------------------------------
// Bilinear form

using Vec = std::vector<QuadExtScalar>;

class BilinearForm {
 public:
  BilinearForm() = default;
  BilinearForm(int rank, std::vector<QuadExtScalar> entries) : rank_(rank), b_(std::move(entries)) {
    two_b_.reserve(b_.size());
    for (const auto& x : b_) two_b_.push_back(x + x);
  }

  int rank() const { return rank_; }
  const QuadExtScalar& at(int i, int j) const { return b_[static_cast<std::size_t>(i) * rank_ + j]; }
  /// 2 B(alpha_i, alpha_j); integral in Z[sqrt2, sqrt3].
  const QuadExtScalar& twice(int i, int j) const { return two_b_[static_cast<std::size_t>(i) * rank_ + j]; }

  QuadExtScalar pairing(std::span<const QuadExtScalar> u, std::span<const QuadExtScalar> v) const {
    QuadExtScalar acc;
    for (int i = 0; i < rank_; ++i) {
      if (u[i].is_zero()) continue;
      QuadExtScalar row;
      for (int j = 0; j < rank_; ++j)
        if (!v[j].is_zero() && !at(i, j).is_zero()) row += at(i, j) * v[j];
      acc += u[i] * row;
    }
    return acc;
  }

  /// B(alpha_i, v).
  QuadExtScalar pairing_simple(int i, std::span<const QuadExtScalar> v) const {
    QuadExtScalar acc;
    for (int j = 0; j < rank_; ++j)
      if (!v[j].is_zero() && !at(i, j).is_zero()) acc += at(i, j) * v[j];
    return acc;
  }

  /// In-place simple reflection s_i(v) = v - 2 B(alpha_i, v) alpha_i.
  void reflect(int i, std::span<QuadExtScalar> v) const {
    QuadExtScalar c;
    for (int j = 0; j < rank_; ++j)
      if (!v[j].is_zero() && !twice(i, j).is_zero()) c += twice(i, j) * v[j];
    if (!c.is_zero()) v[i] -= c;
  }

 private:
  int rank_ = 0;
  std::vector<QuadExtScalar> b_;
  std::vector<QuadExtScalar> two_b_;
};

/// Exact -cos(pi/m) for the supported labels, -1 for infinity.
inline QuadExtScalar form_entry(int label) {
  switch (label) {
    case 1: return QuadExtScalar(1);
    case 2: return QuadExtScalar(0);
    case 3: return QuadExtScalar::rational(-1, 2);
    case 4: return QuadExtScalar::from_rationals(0, Rational(-1, 2), 0, 0);
    case 6: return QuadExtScalar::from_rationals(0, 0, Rational(-1, 2), 0);
    case infinity_label: return QuadExtScalar(-1);
    default:
      throw Error(ErrorCode::unsupported_label,
                  "label " + std::to_string(label) + " needs a number field beyond Q(sqrt2,sqrt3)");
  }
}

inline BilinearForm build_form(const CoxeterMatrix& matrix) {
  const int n = matrix.rank();
  std::vector<QuadExtScalar> b(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b[static_cast<std::size_t>(i) * n + j] = form_entry(matrix.at(i, j));
  return BilinearForm(n, std::move(b));
}

// ---------------------------------------------------------------------------
// Roots

struct Root {
  Vec coords;
  int depth = 0;  ///< least length of u with this root = u(alpha_s)
};

inline Vec simple_root(int rank, int i) {
  Vec v(static_cast<std::size_t>(rank));
  v[i] = QuadExtScalar(1);
  return v;
}

inline bool is_zero_vector(std::span<const QuadExtScalar> v) {
  return std::all_of(v.begin(), v.end(), [](const QuadExtScalar& x) { return x.is_zero(); });
}

/// Sign of a root: the sign of its first nonzero coordinate.
inline int root_sign(std::span<const QuadExtScalar> v) {
  for (const auto& x : v)
    if (!x.is_zero()) return x.sign();
  return 0;
}

inline Vec negate(Vec v) {
  for (auto& x : v) x = -x;
  return v;
}

/// Exact map key for a coordinate vector.
using RootKey = std::vector<std::int64_t>;

inline RootKey root_key(std::span<const QuadExtScalar> v) {
  RootKey k;
  k.reserve(v.size() * 5);
  for (const auto& x : v) {
    for (auto n : x.numerators()) k.push_back(n);
    k.push_back(x.denominator());
  }
  return k;
}

inline std::string to_string(std::span<const QuadExtScalar> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].to_string();
  }
  return s + ")";
}

class SmallRootSet {
 public:
  static constexpr std::int32_t negative = -1;   ///< s_i(alpha_i) = -alpha_i
  static constexpr std::int32_t not_small = -2;  ///< image is positive but not small

  SmallRootSet() = default;
  SmallRootSet(int rank, std::vector<Root> roots, std::vector<std::int32_t> table)
      : rank_(rank), roots_(std::move(roots)), table_(std::move(table)) {
    for (std::size_t id = 0; id < roots_.size(); ++id) index_.emplace(root_key(roots_[id].coords), id);
  }

  int rank() const { return rank_; }
  std::size_t size() const { return roots_.size(); }
  const Root& operator[](std::size_t id) const { return roots_[id]; }
  const std::vector<Root>& roots() const { return roots_; }

  std::optional<std::size_t> find(std::span<const QuadExtScalar> v) const {
    auto it = index_.find(root_key(v));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Id of s_gen(root id), or `negative` / `not_small`.
  std::int32_t reflect(std::size_t id, int gen) const { return table_[id * rank_ + gen]; }

  /// Simple root alpha_i always has id i.
  static std::size_t simple_id(int i) { return static_cast<std::size_t>(i); }

 private:
  int rank_ = 0;
  std::vector<Root> roots_;
  std::vector<std::int32_t> table_;
  std::map<RootKey, std::size_t> index_;
};

/**
 * Breadth-first closure of the simple roots: from beta and alpha_i != beta,
 * s_i(beta) is new exactly when B(alpha_i, beta) lies strictly in (-1, 0).
 * Pairings >= 0 lead back to shallower roots, pairings <= -1 to dominant
 * ones, so neither case creates a root.
 */
inline SmallRootSet small_roots(const BilinearForm& form, std::size_t bound = 100000) {
  const int n = form.rank();
  std::vector<Root> roots;
  std::map<RootKey, std::size_t> index;
  for (int i = 0; i < n; ++i) {
    roots.push_back(Root{simple_root(n, i), 0});
    index.emplace(root_key(roots.back().coords), roots.size() - 1);
  }
  const QuadExtScalar minus_one(-1);
  for (std::size_t head = 0; head < roots.size(); ++head) {
    for (int i = 0; i < n; ++i) {
      if (head == static_cast<std::size_t>(i)) continue;
      QuadExtScalar p = form.pairing_simple(i, roots[head].coords);
      if (!(p.sign() < 0 && p > minus_one)) continue;
      Vec image = roots[head].coords;
      form.reflect(i, image);
      auto key = root_key(image);
      if (index.count(key)) continue;
      roots.push_back(Root{std::move(image), roots[head].depth + 1});
      index.emplace(std::move(key), roots.size() - 1);
      if (roots.size() > bound)
        throw Error(ErrorCode::closure_overflow, "small root closure exceeded " + std::to_string(bound));
    }
  }
  std::vector<std::int32_t> table(roots.size() * n);
  for (std::size_t id = 0; id < roots.size(); ++id)
    for (int i = 0; i < n; ++i) {
      if (id == static_cast<std::size_t>(i)) {
        table[id * n + i] = SmallRootSet::negative;
        continue;
      }
      Vec image = roots[id].coords;
      form.reflect(i, image);
      auto it = index.find(root_key(image));
      table[id * n + i] = it == index.end() ? SmallRootSet::not_small : static_cast<std::int32_t>(it->second);
    }
  return SmallRootSet(n, std::move(roots), std::move(table));
}

// ---------------------------------------------------------------------------
// Automata

enum class Language {
  reduced,   ///< every reduced word
  shortlex,  ///< exactly the ShortLex normal forms, one word per element
};

/**
 * Deterministic automaton whose states are sets of small roots.
 *
 * After reading a word w the state is the set of small roots beta > 0 with
 * w(beta) < 0 (for the ShortLex language, also the small roots that block
 * lexicographically smaller rewrites). Reading x rejects iff alpha_x is in
 * the state; otherwise the new state is the small part of
 * {alpha_x} + x(state) (+ {x(alpha_y) : y < x} for ShortLex).
 */
class WordAutomaton {
 public:
  static constexpr std::int32_t reject = -1;

  WordAutomaton() = default;
  WordAutomaton(int alphabet, Language language, std::vector<std::vector<std::uint32_t>> states,
                std::vector<std::int32_t> transitions)
      : alphabet_(alphabet), language_(language), states_(std::move(states)), trans_(std::move(transitions)) {}

  int alphabet() const { return alphabet_; }
  Language language() const { return language_; }
  std::size_t num_states() const { return states_.size(); }
  static constexpr std::int32_t start() { return 0; }
  /// Sorted small-root ids of a state.
  const std::vector<std::uint32_t>& state(std::size_t s) const { return states_[s]; }

  std::int32_t step(std::int32_t state, int gen) const {
    if (state == reject) return reject;
    return trans_[static_cast<std::size_t>(state) * alphabet_ + gen];
  }

  bool accepts(std::span<const Generator> word) const {
    std::int32_t s = start();
    for (auto g : word) {
      s = step(s, g);
      if (s == reject) return false;
    }
    return true;
  }

  /// Number of accepted words of each length 0..max_length.
  std::vector<std::uint64_t> growth(int max_length) const {
    std::vector<std::uint64_t> counts;
    std::vector<std::uint64_t> cur(states_.size(), 0), next(states_.size());
    cur[start()] = 1;
    for (int len = 0; len <= max_length; ++len) {
      std::uint64_t total = 0;
      for (auto c : cur) total += c;
      counts.push_back(total);
      std::fill(next.begin(), next.end(), 0);
      for (std::size_t s = 0; s < states_.size(); ++s) {
        if (!cur[s]) continue;
        for (int g = 0; g < alphabet_; ++g) {
          auto t = step(static_cast<std::int32_t>(s), g);
          if (t != reject) next[t] += cur[s];
        }
      }
      cur.swap(next);
    }
    return counts;
  }

  /// True iff some accepted word has length exactly `length`.
  bool accepts_some_word_of_length(std::size_t length) const {
    std::vector<char> cur(states_.size(), 0), next(states_.size());
    cur[start()] = 1;
    for (std::size_t len = 0; len < length; ++len) {
      std::fill(next.begin(), next.end(), 0);
      bool any = false;
      for (std::size_t s = 0; s < states_.size(); ++s) {
        if (!cur[s]) continue;
        for (int g = 0; g < alphabet_; ++g) {
          auto t = step(static_cast<std::int32_t>(s), g);
          if (t != reject) next[t] = any = true;
        }
      }
      if (!any) return false;
      cur.swap(next);
    }
    return true;
  }

  /// Accepted words of length <= max_length in ShortLex order.
  std::vector<std::vector<Generator>> words_up_to(int max_length) const {
    std::vector<std::vector<Generator>> out{{}};
    std::vector<std::int32_t> state_of{start()};
    std::size_t level_begin = 0;
    for (int len = 1; len <= max_length; ++len) {
      std::size_t level_end = out.size();
      for (std::size_t k = level_begin; k < level_end; ++k)
        for (int g = 0; g < alphabet_; ++g) {
          auto t = step(state_of[k], g);
          if (t == reject) continue;
          auto w = out[k];
          w.push_back(static_cast<Generator>(g));
          out.push_back(std::move(w));
          state_of.push_back(t);
        }
      level_begin = level_end;
    }
    return out;
  }

 private:
  int alphabet_ = 0;
  Language language_ = Language::shortlex;
  std::vector<std::vector<std::uint32_t>> states_;
  std::vector<std::int32_t> trans_;
};

inline WordAutomaton build_automaton(const SmallRootSet& small, Language language = Language::shortlex,
                                     std::size_t state_bound = 1'000'000) {
  const int n = small.rank();
  std::vector<std::vector<std::uint32_t>> states{{}};
  std::map<std::vector<std::uint32_t>, std::int32_t> index{{{}, 0}};
  std::vector<std::int32_t> trans;
  for (std::size_t s = 0; s < states.size(); ++s) {
    for (int x = 0; x < n; ++x) {
      const auto& cur = states[s];
      if (std::binary_search(cur.begin(), cur.end(), static_cast<std::uint32_t>(x))) {
        trans.push_back(WordAutomaton::reject);
        continue;
      }
      std::vector<std::uint32_t> next{static_cast<std::uint32_t>(x)};
      for (auto beta : cur) {
        auto img = small.reflect(beta, x);
        if (img >= 0) next.push_back(static_cast<std::uint32_t>(img));
      }
      if (language == Language::shortlex)
        for (int y = 0; y < x; ++y) {
          auto img = small.reflect(SmallRootSet::simple_id(y), x);
          if (img >= 0) next.push_back(static_cast<std::uint32_t>(img));
        }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      auto [it, inserted] = index.emplace(next, static_cast<std::int32_t>(states.size()));
      if (inserted) {
        states.push_back(std::move(next));
        if (states.size() > state_bound)
          throw Error(ErrorCode::closure_overflow, "automaton exceeded " + std::to_string(state_bound) + " states");
      }
      trans.push_back(it->second);
    }
  }
  return WordAutomaton(n, language, std::move(states), std::move(trans));
}

// ---------------------------------------------------------------------------
// Elements

/// A group element, stored as its ShortLex normal form.
struct Element {
  std::vector<Generator> word;

  std::size_t length() const { return word.size(); }
  bool is_identity() const { return word.empty(); }
  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element& a, const Element& b) {
    if (a.word.size() != b.word.size()) return a.word.size() <=> b.word.size();
    return a.word <=> b.word;
  }
};

/// "e" for the identity, otherwise 1-based letters such as "s1s2s1".
inline std::string to_string(const Element& w) {
  if (w.word.empty()) return "e";
  std::string s;
  for (auto g : w.word) s += "s" + std::to_string(static_cast<int>(g) + 1);
  return s;
}

/// Inverse of to_string; accepts "e", "" and "s1s2...".
inline std::vector<Generator> parse_word(const std::string& text) {
  std::vector<Generator> word;
  if (text.empty() || text == "e") return word;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != 's') throw Error(ErrorCode::parse, "bad word '" + text + "'");
    ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
    if (j == i) throw Error(ErrorCode::parse, "bad word '" + text + "'");
    int g = std::stoi(text.substr(i, j - i));
    if (g < 1 || g > 255) throw Error(ErrorCode::parse, "generator out of range in '" + text + "'");
    word.push_back(static_cast<Generator>(g - 1));
    i = j;
  }
  return word;
}

struct SystemOptions {
  std::size_t small_root_bound = 100000;
  /// Sphericity test: W is declared finite iff no accepted word is longer
  /// than this. 0 means (number of small roots)^2.
  std::size_t finiteness_length = 0;
};

/**
 * A Coxeter system together with all derived structures. Immutable after
 * construction and safe to share between threads.
 */
class CoxeterSystem {
 public:
  explicit CoxeterSystem(CoxeterMatrix matrix, SystemOptions options = {})
      : matrix_(std::move(matrix)),
        form_(build_form(matrix_)),
        small_(small_roots(form_, options.small_root_bound)),
        shortlex_(build_automaton(small_, Language::shortlex)),
        reduced_(build_automaton(small_, Language::reduced)) {
    std::size_t bound = options.finiteness_length ? options.finiteness_length : small_.size() * small_.size();
    finite_ = !shortlex_.accepts_some_word_of_length(bound + 1);
  }

  int rank() const { return matrix_.rank(); }
  const CoxeterMatrix& matrix() const { return matrix_; }
  const BilinearForm& form() const { return form_; }
  const SmallRootSet& small_root_set() const { return small_; }
  const WordAutomaton& shortlex_automaton() const { return shortlex_; }
  const WordAutomaton& reduced_automaton() const { return reduced_; }
  bool is_finite() const { return finite_; }

  /// ShortLex-least reduced word of the element represented by `word`.
  Element normal_form(std::span<const Generator> word) const {
    const int n = rank();
    check_word(word);
    // columns[j] = g^{-1}(alpha_j), built as s_{x_k} ... s_{x_1}
    std::vector<Vec> cols(n);
    for (int j = 0; j < n; ++j) cols[j] = simple_root(n, j);
    for (auto x : word)
      for (auto& c : cols) form_.reflect(x, c);
    Element out;
    out.word.reserve(word.size());
    for (;;) {
      int s = -1;
      for (int j = 0; j < n; ++j)
        if (root_sign(cols[j]) < 0) {
          s = j;
          break;
        }
      if (s < 0) break;
      out.word.push_back(static_cast<Generator>(s));
      // g <- s g, so g^{-1} <- g^{-1} s
      for (int j = 0; j < n; ++j) {
        if (j == s) continue;
        const auto& f = form_.twice(s, j);
        if (f.is_zero()) continue;
        for (int k = 0; k < n; ++k)
          if (!cols[s][k].is_zero()) cols[j][k] -= f * cols[s][k];
      }
      for (auto& x : cols[s]) x = -x;
    }
    return out;
  }

  Element multiply(const Element& u, const Element& v) const {
    if (u.is_identity()) return v;
    if (v.is_identity()) return u;
    std::vector<Generator> w = u.word;
    w.insert(w.end(), v.word.begin(), v.word.end());
    return normal_form(w);
  }

  Element inverse(const Element& w) const {
    std::vector<Generator> r(w.word.rbegin(), w.word.rend());
    return normal_form(r);
  }

  Element generator(int s) const { return Element{{static_cast<Generator>(s)}}; }

  /// w(v) for an element given by any word.
  Vec act(std::span<const Generator> word, Vec v) const {
    for (auto it = word.rbegin(); it != word.rend(); ++it) form_.reflect(*it, v);
    return v;
  }

  /// w^{-1}(v).
  Vec act_inverse(std::span<const Generator> word, Vec v) const {
    for (auto x : word) form_.reflect(x, v);
    return v;
  }

  /// Generators s with length(s w) < length(w), in increasing order.
  std::vector<Generator> left_descents(const Element& w) const {
    std::vector<Generator> out;
    for (int s = 0; s < rank(); ++s)
      if (root_sign(act_inverse(w.word, simple_root(rank(), s))) < 0) out.push_back(static_cast<Generator>(s));
    return out;
  }

  /// Generators s with length(w s) < length(w).
  std::vector<Generator> right_descents(const Element& w) const {
    std::vector<Generator> out;
    for (int s = 0; s < rank(); ++s)
      if (root_sign(act(w.word, simple_root(rank(), s))) < 0) out.push_back(static_cast<Generator>(s));
    return out;
  }

  /// Every element of length <= radius, in ShortLex order.
  std::vector<Element> ball(int radius) const {
    std::vector<Element> out;
    for (auto& w : shortlex_.words_up_to(radius)) out.push_back(Element{std::move(w)});
    return out;
  }

  /// Depth of a positive root: least length of u with root = u(alpha_s).
  int root_depth(Vec v) const {
    if (root_sign(v) < 0) v = negate(std::move(v));
    int depth = 0;
    for (;;) {
      int nonzero = 0;
      for (const auto& x : v) nonzero += !x.is_zero();
      if (nonzero == 1) return depth;  // positive multiple of a simple root
      int step = -1;
      for (int i = 0; i < rank(); ++i)
        if (form_.pairing_simple(i, v).sign() > 0) {
          step = i;
          break;
        }
      if (step < 0) throw Error(ErrorCode::invalid_matrix, "vector is not a root: " + to_string(v));
      form_.reflect(step, v);
      ++depth;
    }
  }

 private:
  void check_word(std::span<const Generator> word) const {
    for (auto g : word)
      if (g >= rank()) throw Error(ErrorCode::parse, "generator index out of range");
  }

  CoxeterMatrix matrix_;
  BilinearForm form_;
  SmallRootSet small_;
  WordAutomaton shortlex_;
  WordAutomaton reduced_;
  bool finite_ = false;
};

inline Element normal_form(const CoxeterSystem& sys, std::span<const Generator> word) { return sys.normal_form(word); }
inline Element multiply(const CoxeterSystem& sys, const Element& u, const Element& v) { return sys.multiply(u, v); }
inline std::vector<Generator> left_descents(const CoxeterSystem& sys, const Element& w) {
  return sys.left_descents(w);
}

/// Parses the plain-text matrix format: `rank=<k>` then the strict upper
/// triangle, one row per line, `inf` for infinity. Blank lines and `#`
/// comments are ignored. Rows may optionally include the diagonal 1.
CoxeterMatrix parse_coxeter_matrix(const std::string& text);

/// Inverse of parse_coxeter_matrix (strict upper triangle form).
std::string format_coxeter_matrix(const CoxeterMatrix& m);

}  // namespace coxdiv

#include "coxdiv/detail/matrix_format.hpp"
