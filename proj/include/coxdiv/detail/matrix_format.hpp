#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "coxdiv/coxeter.hpp"
#include "coxdiv/detail/text.hpp"

namespace coxdiv {

namespace detail {

inline int parse_label(const std::string& tok) {
  if (tok == "inf" || tok == "oo" || tok == "infinity") return infinity_label;
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::parse, "bad Coxeter label '" + tok + "'");
  }
  if (used != tok.size()) throw Error(ErrorCode::parse, "bad Coxeter label '" + tok + "'");
  return v;
}

}  // namespace detail

inline CoxeterMatrix parse_coxeter_matrix(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int rank = -1;
  std::vector<std::vector<int>> rows;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (rank < 0) {
      auto eq = line.find('=');
      if (eq == std::string::npos || detail::trim(line.substr(0, eq)) != "rank")
        throw Error(ErrorCode::parse, "matrix file must start with 'rank=<k>'");
      rank = detail::parse_label(detail::trim(line.substr(eq + 1)));
      if (rank < 1) throw Error(ErrorCode::parse, "rank must be positive");
      continue;
    }
    std::istringstream row(line);
    std::vector<int> labels;
    std::string tok;
    while (row >> tok) labels.push_back(detail::parse_label(tok));
    rows.push_back(std::move(labels));
  }
  if (rank < 0) throw Error(ErrorCode::parse, "missing 'rank=<k>' header");
  std::vector<int> upper;
  for (int i = 0; i < rank - 1; ++i) {
    if (static_cast<std::size_t>(i) >= rows.size())
      throw Error(ErrorCode::parse, "expected " + std::to_string(rank - 1) + " rows");
    auto& r = rows[i];
    const auto strict = static_cast<std::size_t>(rank - 1 - i);
    if (r.size() == strict + 1 && r.front() == 1) r.erase(r.begin());
    if (r.size() != strict) throw Error(ErrorCode::parse, "row " + std::to_string(i + 1) + " has wrong length");
    upper.insert(upper.end(), r.begin(), r.end());
  }
  // optional trailing diagonal-only row "1"
  for (std::size_t i = static_cast<std::size_t>(std::max(rank - 1, 0)); i < rows.size(); ++i)
    if (!(rows[i].size() == 1 && rows[i][0] == 1)) throw Error(ErrorCode::parse, "too many rows");
  return CoxeterMatrix::from_upper(rank, upper);
}

inline std::string format_coxeter_matrix(const CoxeterMatrix& m) {
  std::string out = "rank=" + std::to_string(m.rank()) + "\n";
  for (int i = 0; i + 1 < m.rank(); ++i) {
    for (int j = i + 1; j < m.rank(); ++j) {
      if (j > i + 1) out += ' ';
      out += m.is_infinite(i, j) ? std::string("inf") : std::to_string(m.at(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace coxdiv
