#pragma once

/**
 * @file config.hpp
 * @brief Flat key/value run configuration with [sections].
 *
 *   # comment
 *   command = divergence
 *   [oracle]
 *   kind = grid
 *   d = 2
 *
 * A key inside [oracle] is addressed as "oracle.kind". Keys before the first
 * section have no prefix. Whitespace around keys and values is trimmed.
 */

#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>

#include "coxdiv/detail/text.hpp"
#include "coxdiv/error.hpp"
#include "coxdiv/scalar.hpp"

namespace coxdiv {

using ConfigMap = std::map<std::string, std::string>;

inline ConfigMap parse_config(const std::string& text) {
  ConfigMap out;
  std::istringstream in(text);
  std::string line, section;
  for (int number = 1; std::getline(in, line); ++number) {
    auto where = [&] { return " (line " + std::to_string(number) + ")"; };
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw Error(ErrorCode::config, "unterminated section header" + where());
      section = detail::trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw Error(ErrorCode::config, "empty section name" + where());
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::config, "expected key = value" + where());
    std::string key = detail::trim(line.substr(0, eq));
    if (key.empty()) throw Error(ErrorCode::config, "empty key" + where());
    if (!section.empty()) key = section + "." + key;
    if (!out.emplace(key, detail::trim(line.substr(eq + 1))).second)
      throw Error(ErrorCode::config, "duplicate key '" + key + "'" + where());
  }
  return out;
}

inline std::string format_config(const ConfigMap& config) {
  std::string out, section;
  for (const auto& [key, value] : config)
    if (key.find('.') == std::string::npos) out += key + " = " + value + "\n";
  for (const auto& [key, value] : config) {
    auto dot = key.find('.');
    if (dot == std::string::npos) continue;
    if (key.substr(0, dot) != section) {
      section = key.substr(0, dot);
      out += "[" + section + "]\n";
    }
    out += key.substr(dot + 1) + " = " + value + "\n";
  }
  return out;
}

/// Exact rational from "3", "-1/2" or "0.25".
inline Rational parse_rational(const std::string& raw) {
  const std::string text = detail::trim(raw);
  auto fail = [&] { throw Error(ErrorCode::config, "not a rational number: '" + raw + "'"); };
  auto integer = [&](const std::string& s, bool allow_sign) -> std::int64_t {
    if (s.empty()) fail();
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) fail();
    for (std::size_t k = i; k < s.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(s[k]))) fail();
    try {
      return std::stoll(s);
    } catch (const std::out_of_range&) {
      fail();
    }
    return 0;
  };
  if (auto slash = text.find('/'); slash != std::string::npos) {
    auto num = integer(text.substr(0, slash), true), den = integer(text.substr(slash + 1), false);
    if (den == 0) fail();
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string::npos) {
    std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 15) fail();
    bool negative = !whole.empty() && whole[0] == '-';
    std::int64_t w = whole.empty() || whole == "-" || whole == "+" ? 0 : integer(whole, true);
    std::int64_t f = integer(frac, false), scale = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
    Rational r = Rational(w < 0 ? -w : w) + Rational(f, scale);
    return negative ? -r : r;
  }
  return Rational(integer(text, true));
}

inline std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace coxdiv
