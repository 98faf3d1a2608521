#include <algorithm>
#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "coxdiv/coxeter.hpp"

using namespace coxdiv;

namespace {

using Word = std::vector<Generator>;

// Independent finite models: permutations (A_n) and signed permutations (B_2).
using Perm = std::vector<int>;

struct FiniteModel {
  int rank;
  std::function<Perm(const Perm&, int)> act;  // right multiplication by s_i
  Perm identity;
};

FiniteModel symmetric_model(int rank) {
  Perm id(rank + 1);
  for (int i = 0; i <= rank; ++i) id[i] = i;
  return {rank, [](const Perm& p, int i) {
            Perm q = p;
            std::swap(q[i], q[i + 1]);
            return q;
          },
          id};
}

FiniteModel b2_model() {
  // signed permutations of {1,2}: s1 swaps positions, s2 negates position 2
  return {2, [](const Perm& p, int i) {
            Perm q = p;
            if (i == 0) std::swap(q[0], q[1]);
            else q[1] = -q[1];
            return q;
          },
          Perm{1, 2}};
}

Perm evaluate(const FiniteModel& m, const Word& w) {
  Perm p = m.identity;
  for (auto g : w) p = m.act(p, g);
  return p;
}

// Breadth-first enumeration; the first word reaching an element is its
// ShortLex-least word because levels are expanded in lex order.
std::map<Perm, Word> brute_force_normal_forms(const FiniteModel& m) {
  std::map<Perm, Word> nf{{m.identity, {}}};
  std::vector<Word> level{{}};
  while (!level.empty()) {
    std::vector<Word> next;
    for (const auto& w : level)
      for (int g = 0; g < m.rank; ++g) {
        Word u = w;
        u.push_back(static_cast<Generator>(g));
        auto p = evaluate(m, u);
        if (nf.emplace(p, u).second) next.push_back(u);
      }
    level = std::move(next);
  }
  return nf;
}

std::vector<Word> all_words(int rank, int length) {
  std::vector<Word> out{{}};
  for (int l = 0; l < length; ++l) {
    std::vector<Word> next;
    for (auto& w : out)
      for (int g = 0; g < rank; ++g) {
        auto u = w;
        u.push_back(static_cast<Generator>(g));
        next.push_back(std::move(u));
      }
    out = std::move(next);
  }
  return out;
}

// Oracle for small roots: enumerate positive roots up to a depth; a root is
// small iff it dominates no shallower root (pairing >= 1).
std::set<RootKey> dominance_oracle(const BilinearForm& form, int max_depth) {
  const int n = form.rank();
  std::vector<Root> roots;
  std::set<RootKey> seen;
  for (int i = 0; i < n; ++i) {
    roots.push_back({simple_root(n, i), 0});
    seen.insert(root_key(roots.back().coords));
  }
  for (std::size_t head = 0; head < roots.size(); ++head) {
    if (roots[head].depth >= max_depth) continue;
    for (int i = 0; i < n; ++i) {
      Vec v = roots[head].coords;
      form.reflect(i, v);
      if (root_sign(v) < 0) continue;
      if (seen.insert(root_key(v)).second) roots.push_back({v, roots[head].depth + 1});
    }
  }
  std::set<RootKey> small;
  for (const auto& beta : roots) {
    bool dominates = false;
    for (const auto& gamma : roots)
      if (gamma.depth < beta.depth && form.pairing(beta.coords, gamma.coords) >= QuadExtScalar(1)) dominates = true;
    if (!dominates) small.insert(root_key(beta.coords));
  }
  return small;
}

std::set<RootKey> keys_of(const SmallRootSet& s) {
  std::set<RootKey> out;
  for (const auto& r : s.roots()) out.insert(root_key(r.coords));
  return out;
}

}  // namespace

TEST(BuildForm, Entries) {
  auto f = build_form(systems::a2());
  EXPECT_EQ(f.at(0, 1), QuadExtScalar::rational(-1, 2));
  EXPECT_EQ(f.at(0, 0), QuadExtScalar(1));
  auto right = build_form(CoxeterMatrix::from_upper(2, {2}));
  EXPECT_EQ(right.at(0, 1), QuadExtScalar(0));
  auto inf = build_form(systems::infinite_dihedral());
  EXPECT_EQ(inf.at(0, 1), QuadExtScalar(-1));
  auto b2 = build_form(systems::b2());
  EXPECT_EQ(b2.at(0, 1) * b2.at(0, 1), QuadExtScalar::rational(1, 2));
  auto g2 = build_form(systems::g2());
  EXPECT_EQ(g2.at(0, 1) * g2.at(0, 1), QuadExtScalar::rational(3, 4));
}

TEST(BuildForm, RejectsUnsupportedLabel) {
  try {
    build_form(CoxeterMatrix::from_upper(2, {5}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unsupported_label);
  }
}

TEST(BuildForm, InvariantsOnShippedSystems) {
  for (const auto& name : systems::names()) {
    auto f = build_form(*systems::by_name(name));
    for (int i = 0; i < f.rank(); ++i)
      for (int j = 0; j < f.rank(); ++j) {
        EXPECT_EQ(f.at(i, j), f.at(j, i));
        if (i == j) EXPECT_EQ(f.at(i, j), QuadExtScalar(1));
        else {
          EXPECT_LE(f.at(i, j), QuadExtScalar(0));
          EXPECT_GE(f.at(i, j), QuadExtScalar(-1));
        }
      }
  }
}

TEST(CoxeterMatrix, ValidationAndFileFormat) {
  EXPECT_THROW(CoxeterMatrix(2, {1, 3, 2, 1}), Error);
  EXPECT_THROW(CoxeterMatrix(2, {1, 1, 1, 1}), Error);
  EXPECT_THROW(CoxeterMatrix(0, {}), Error);
  auto m = parse_coxeter_matrix("# pentagon-free example\nrank=3\n3 inf\n4\n");
  EXPECT_EQ(m.rank(), 3);
  EXPECT_EQ(m.at(0, 1), 3);
  EXPECT_TRUE(m.is_infinite(0, 2));
  EXPECT_EQ(m.at(1, 2), 4);
  EXPECT_EQ(parse_coxeter_matrix(format_coxeter_matrix(m)), m);
  EXPECT_EQ(parse_coxeter_matrix("rank=3\n1 3 inf\n1 4\n1\n"), m);
  for (const auto& name : systems::names()) {
    auto sys = *systems::by_name(name);
    EXPECT_EQ(parse_coxeter_matrix(format_coxeter_matrix(sys)), sys) << name;
  }
  EXPECT_THROW(parse_coxeter_matrix("3 3\n"), Error);
  EXPECT_THROW(parse_coxeter_matrix("rank=3\n3 x\n4\n"), Error);
  EXPECT_THROW(parse_coxeter_matrix("rank=3\n3\n4\n"), Error);
}

TEST(SmallRoots, DocumentedSizes) {
  EXPECT_EQ(small_roots(build_form(systems::infinite_dihedral())).size(), 2u);
  EXPECT_EQ(small_roots(build_form(systems::a2())).size(), 3u);
  EXPECT_EQ(small_roots(build_form(systems::affine_a2())).size(), 6u);
}

TEST(SmallRoots, MatchDominanceOracle) {
  for (const auto& name : systems::names()) {
    auto form = build_form(*systems::by_name(name));
    auto small = small_roots(form);
    EXPECT_EQ(keys_of(small), dominance_oracle(form, 6)) << name;
  }
}

TEST(SmallRoots, PositiveAndUnitNorm) {
  for (const auto& name : systems::names()) {
    auto form = build_form(*systems::by_name(name));
    auto small = small_roots(form);
    for (const auto& r : small.roots()) {
      for (const auto& c : r.coords) EXPECT_GE(c.sign(), 0);
      EXPECT_FALSE(is_zero_vector(r.coords));
      EXPECT_EQ(form.pairing(r.coords, r.coords), QuadExtScalar(1)) << name;
    }
  }
}

TEST(SmallRoots, OverflowBound) {
  try {
    small_roots(build_form(systems::a3()), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::closure_overflow);
  }
}

TEST(Automaton, InfiniteDihedralGrowth) {
  CoxeterSystem sys(systems::infinite_dihedral());
  auto g = sys.shortlex_automaton().growth(12);
  EXPECT_EQ(g[0], 1u);
  for (int k = 1; k <= 12; ++k) EXPECT_EQ(g[k], 2u) << k;
  auto r = sys.reduced_automaton().growth(12);
  for (int k = 1; k <= 12; ++k) EXPECT_EQ(r[k], 2u) << k;
}

TEST(Automaton, A2Totals) {
  CoxeterSystem sys(systems::a2());
  auto g = sys.shortlex_automaton().growth(6);
  EXPECT_EQ(g, (std::vector<std::uint64_t>{1, 2, 2, 1, 0, 0, 0}));
  // all reduced words: the longest element has two
  auto r = sys.reduced_automaton().growth(6);
  EXPECT_EQ(r, (std::vector<std::uint64_t>{1, 2, 2, 2, 0, 0, 0}));
}

TEST(Automaton, AffineA2LengthTwo) {
  CoxeterSystem sys(systems::affine_a2());
  EXPECT_EQ(sys.shortlex_automaton().growth(2)[2], 6u);
}

class FiniteGroups : public ::testing::TestWithParam<int> {};

TEST_P(FiniteGroups, AutomataMatchBruteForce) {
  const int which = GetParam();
  CoxeterMatrix m = which == 0 ? systems::a2() : which == 1 ? systems::b2() : systems::a3();
  FiniteModel model = which == 1 ? b2_model() : symmetric_model(m.rank());
  const std::size_t order = which == 0 ? 6 : which == 1 ? 8 : 24;
  CoxeterSystem sys(m);
  EXPECT_TRUE(sys.is_finite());

  auto nf = brute_force_normal_forms(model);
  ASSERT_EQ(nf.size(), order);
  std::size_t longest = 0;
  std::set<Word> shortlex;
  for (auto& [p, w] : nf) {
    shortlex.insert(w);
    longest = std::max(longest, w.size());
  }
  auto accepted = sys.shortlex_automaton().words_up_to(static_cast<int>(longest) + 2);
  EXPECT_EQ(std::set<Word>(accepted.begin(), accepted.end()), shortlex);
  EXPECT_EQ(accepted.size(), order);

  std::map<Perm, std::size_t> length;
  for (auto& [p, w] : nf) length[p] = w.size();
  for (std::size_t len = 0; len <= longest + 1; ++len)
    for (const auto& w : all_words(m.rank(), static_cast<int>(len))) {
      auto p = evaluate(model, w);
      bool reduced = length[p] == w.size();
      ASSERT_EQ(sys.reduced_automaton().accepts(w), reduced);
      ASSERT_EQ(sys.shortlex_automaton().accepts(w), nf[p] == w);
      ASSERT_EQ(sys.normal_form(w).word, nf[p]);
    }
}

INSTANTIATE_TEST_SUITE_P(A2B2A3, FiniteGroups, ::testing::Values(0, 1, 2));

TEST(Automaton, GrowthMatchesBfsOverMultiply) {
  for (auto m : {systems::affine_a2(), systems::right_angled_pentagon(), systems::triangle_334()}) {
    CoxeterSystem sys(m);
    EXPECT_FALSE(sys.is_finite());
    auto growth = sys.shortlex_automaton().growth(10);
    std::set<Element> seen{Element{}};
    std::vector<Element> frontier{Element{}};
    for (int k = 1; k <= 10; ++k) {
      std::vector<Element> next;
      for (const auto& w : frontier)
        for (int s = 0; s < sys.rank(); ++s) {
          auto u = sys.multiply(w, sys.generator(s));
          if (seen.insert(u).second) next.push_back(u);
        }
      EXPECT_EQ(next.size(), growth[k]) << "length " << k;
      for (const auto& u : next) EXPECT_EQ(u.length(), static_cast<std::size_t>(k));
      frontier = std::move(next);
    }
  }
}

TEST(NormalForm, DocumentedExamples) {
  CoxeterSystem a2(systems::a2());
  EXPECT_TRUE(a2.normal_form(Word{0, 0}).is_identity());
  EXPECT_EQ(a2.normal_form(Word{1, 0, 1}).word, (Word{0, 1, 0}));
  CoxeterSystem dinf(systems::infinite_dihedral());
  auto x = dinf.normal_form(Word{0, 1});
  auto y = dinf.normal_form(Word{1, 0});
  EXPECT_TRUE(dinf.multiply(x, y).is_identity());
}

TEST(NormalForm, ProjectionAndAcceptedByAutomaton) {
  std::mt19937_64 rng(7);
  for (const auto& name : systems::names()) {
    CoxeterSystem sys(*systems::by_name(name));
    for (int trial = 0; trial < 200; ++trial) {
      Word w(rng() % 14);
      for (auto& g : w) g = static_cast<Generator>(rng() % sys.rank());
      auto nf = sys.normal_form(w);
      EXPECT_LE(nf.length(), w.size());
      EXPECT_EQ(nf.length() % 2, w.size() % 2);
      EXPECT_EQ(sys.normal_form(nf.word), nf);
      EXPECT_TRUE(sys.shortlex_automaton().accepts(nf.word)) << name;
      EXPECT_TRUE(sys.reduced_automaton().accepts(nf.word)) << name;
    }
  }
}

TEST(Multiply, Examples) {
  CoxeterSystem a2(systems::a2());
  Element v{{1, 0}};
  EXPECT_EQ(a2.multiply(Element{}, v), v);
  EXPECT_TRUE(a2.multiply(a2.generator(0), a2.generator(0)).is_identity());
  auto p = a2.multiply(a2.generator(0), v);
  EXPECT_EQ(p.length(), 3u);
  EXPECT_EQ(p.word, (Word{0, 1, 0}));
}

TEST(Multiply, ParitySubadditivityAssociativity) {
  std::mt19937_64 rng(11);
  for (auto m : {systems::affine_a2(), systems::right_angled_pentagon(), systems::triangle_334(), systems::g2()}) {
    CoxeterSystem sys(m);
    auto random_element = [&] {
      Word w(rng() % 10);
      for (auto& g : w) g = static_cast<Generator>(rng() % sys.rank());
      return sys.normal_form(w);
    };
    for (int trial = 0; trial < 300; ++trial) {
      auto u = random_element(), v = random_element(), w = random_element();
      auto uv = sys.multiply(u, v);
      EXPECT_EQ(uv.length() % 2, (u.length() + v.length()) % 2);
      EXPECT_LE(uv.length(), u.length() + v.length());
      EXPECT_EQ(sys.multiply(uv, w), sys.multiply(u, sys.multiply(v, w)));
      EXPECT_TRUE(sys.multiply(u, sys.inverse(u)).is_identity());
    }
  }
}

TEST(LeftDescents, Examples) {
  CoxeterSystem a2(systems::a2());
  EXPECT_TRUE(a2.left_descents(Element{}).empty());
  EXPECT_EQ(a2.left_descents(Element{{1, 0}}), (std::vector<Generator>{1}));
  EXPECT_EQ(a2.left_descents(Element{{0, 1, 0}}), (std::vector<Generator>{0, 1}));
}

TEST(LeftDescents, AgreeWithLengths) {
  for (auto m : {systems::a3(), systems::affine_a2(), systems::right_angled_pentagon()}) {
    CoxeterSystem sys(m);
    for (const auto& w : sys.ball(5)) {
      auto d = sys.left_descents(w);
      for (int s = 0; s < sys.rank(); ++s) {
        bool shorter = sys.multiply(sys.generator(s), w).length() < w.length();
        EXPECT_EQ(std::count(d.begin(), d.end(), s) == 1, shorter);
      }
    }
  }
}

TEST(Sphericity, Detection) {
  EXPECT_TRUE(CoxeterSystem(systems::a1()).is_finite());
  EXPECT_TRUE(CoxeterSystem(systems::g2()).is_finite());
  EXPECT_FALSE(CoxeterSystem(systems::infinite_dihedral()).is_finite());
  EXPECT_FALSE(CoxeterSystem(systems::affine_c2()).is_finite());
  EXPECT_FALSE(CoxeterSystem(systems::right_angled_pentagon()).is_finite());
}

TEST(RootDepth, SimpleAndReflected) {
  CoxeterSystem sys(systems::affine_a2());
  EXPECT_EQ(sys.root_depth(simple_root(3, 1)), 0);
  auto v = simple_root(3, 1);
  sys.form().reflect(0, v);
  EXPECT_EQ(sys.root_depth(v), 1);
  EXPECT_EQ(sys.root_depth(negate(v)), 1);
}
