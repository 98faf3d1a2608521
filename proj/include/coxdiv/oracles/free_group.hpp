#pragma once

#include <string>
#include <vector>

#include "coxdiv/error.hpp"

namespace coxdiv {

/**
 * Free group on `rank` letters. Elements are freely reduced words; the
 * i-th generator is the lowercase letter 'a'+i and its inverse the
 * uppercase one.
 */
class FreeGroupOracle {
 public:
  using Vertex = std::string;

  explicit FreeGroupOracle(int rank) : rank_(rank) {
    if (rank < 1 || rank > 26) throw Error(ErrorCode::config, "free group rank must be in [1,26]");
  }

  int rank() const { return rank_; }
  std::string name() const { return "free(rank=" + std::to_string(rank_) + ")"; }
  Vertex basepoint() const { return {}; }
  bool vertex_transitive() const { return true; }
  bool is_tree() const { return true; }

  static char inverse_letter(char x) { return x >= 'a' ? static_cast<char>(x - 'a' + 'A') : static_cast<char>(x - 'A' + 'a'); }

  std::vector<Vertex> neighbors(const Vertex& w) const {
    std::vector<Vertex> out;
    for (int i = 0; i < rank_; ++i)
      for (char x : {static_cast<char>('a' + i), static_cast<char>('A' + i)}) out.push_back(append(w, x));
    return out;
  }

  std::string canonical_key(const Vertex& w) const { return w; }
  std::string render(const Vertex& w) const { return w.empty() ? "e" : w; }

  Vertex parse(const std::string& text) const {
    if (text == "e") return {};
    Vertex w;
    for (char x : text) {
      bool lower = x >= 'a' && x < 'a' + rank_, upper = x >= 'A' && x < 'A' + rank_;
      if (!lower && !upper) throw Error(ErrorCode::parse, "bad free-group letter in " + text);
      w = append(w, x);
    }
    return w;
  }

  Vertex multiply(const Vertex& u, const Vertex& v) const {
    Vertex w = u;
    for (char x : v) w = append(w, x);
    return w;
  }

 private:
  static Vertex append(Vertex w, char x) {
    if (!w.empty() && w.back() == inverse_letter(x))
      w.pop_back();
    else
      w.push_back(x);
    return w;
  }

  int rank_;
};

}  // namespace coxdiv
