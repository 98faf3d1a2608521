#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "coxdiv/error.hpp"

namespace coxdiv {

/// Cayley graph of Z^d with the standard generators +-e_i.
class GridOracle {
 public:
  using Vertex = std::vector<std::int64_t>;

  explicit GridOracle(int d) : d_(d) {
    if (d < 1) throw Error(ErrorCode::config, "grid dimension must be >= 1");
  }

  int dimension() const { return d_; }
  std::string name() const { return "grid(d=" + std::to_string(d_) + ")"; }
  Vertex basepoint() const { return Vertex(static_cast<std::size_t>(d_), 0); }
  bool vertex_transitive() const { return true; }
  bool is_tree() const { return d_ == 1; }

  std::vector<Vertex> neighbors(const Vertex& v) const {
    std::vector<Vertex> out;
    out.reserve(2 * v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (int step : {1, -1}) {
        Vertex u = v;
        u[i] += step;
        out.push_back(std::move(u));
      }
    }
    return out;
  }

  std::string canonical_key(const Vertex& v) const {
    std::string key;
    for (auto x : v) {
      auto u = static_cast<std::uint64_t>(x);
      for (int b = 0; b < 8; ++b) key.push_back(static_cast<char>((u >> (8 * b)) & 0xff));
    }
    return key;
  }

  std::string render(const Vertex& v) const {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(v[i]);
    }
    return s + ")";
  }

  Vertex parse(const std::string& text) const {
    if (text.size() < 2 || text.front() != '(' || text.back() != ')')
      throw Error(ErrorCode::parse, "grid vertex must look like (x,y): " + text);
    Vertex v;
    std::stringstream in(text.substr(1, text.size() - 2));
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stoll(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw Error(ErrorCode::parse, "bad grid coordinate: " + item);
      }
    }
    if (v.size() != static_cast<std::size_t>(d_)) throw Error(ErrorCode::parse, "wrong grid dimension: " + text);
    return v;
  }

  /// Group law (addition).
  Vertex multiply(const Vertex& a, const Vertex& b) const {
    Vertex c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
    return c;
  }

 private:
  int d_;
};

}  // namespace coxdiv
