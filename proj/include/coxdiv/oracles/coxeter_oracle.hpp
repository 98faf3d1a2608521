#pragma once

#include <memory>
#include <string>
#include <vector>

#include "coxdiv/coxeter.hpp"

namespace coxdiv {

/// Chambers of the Coxeter complex as group elements; edges are right multiplication by S.
class CoxeterOracle {
 public:
  using Vertex = Element;

  CoxeterOracle(std::shared_ptr<const CoxeterSystem> system, std::string label)
      : sys_(std::move(system)), label_(std::move(label)) {}

  const CoxeterSystem& system() const { return *sys_; }
  std::string name() const { return "coxeter(" + label_ + ")"; }
  Vertex basepoint() const { return {}; }
  bool vertex_transitive() const { return true; }

  /// The Cayley graph is a tree iff every off-diagonal label is infinite.
  bool is_tree() const {
    const auto& m = sys_->matrix();
    for (int i = 0; i < m.rank(); ++i)
      for (int j = i + 1; j < m.rank(); ++j)
        if (!m.is_infinite(i, j)) return false;
    return true;
  }

  std::vector<Vertex> neighbors(const Vertex& w) const {
    std::vector<Vertex> out;
    std::vector<Generator> word = w.word;
    for (int s = 0; s < sys_->rank(); ++s) {
      word.push_back(static_cast<Generator>(s));
      out.push_back(sys_->normal_form(word));
      word.pop_back();
    }
    return out;
  }

  std::string canonical_key(const Vertex& w) const { return {w.word.begin(), w.word.end()}; }
  std::string render(const Vertex& w) const { return to_string(w); }
  Vertex parse(const std::string& text) const { return sys_->normal_form(parse_word(text)); }
  Vertex multiply(const Vertex& u, const Vertex& v) const { return sys_->multiply(u, v); }

 private:
  std::shared_ptr<const CoxeterSystem> sys_;
  std::string label_;
};

}  // namespace coxdiv
