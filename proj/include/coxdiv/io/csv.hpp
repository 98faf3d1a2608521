#pragma once

/**
 * @file csv.hpp
 * @brief RFC 4180 CSV for the report schemas.
 *
 * Cells containing a comma, a double quote, CR or LF are quoted, and quotes
 * inside are doubled. Lines end with LF. Every schema has a fixed header.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coxdiv/divergence.hpp"
#include "coxdiv/error.hpp"

namespace coxdiv::csv {

using Row = std::vector<std::string>;

inline std::string quote(const std::string& cell) {
  if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline std::string format(const std::vector<Row>& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += quote(row[i]);
    }
    out += '\n';
  }
  return out;
}

/// Inverse of format; accepts CRLF line ends as well.
inline std::vector<Row> parse(const std::string& text) {
  std::vector<Row> rows;
  Row row;
  std::string cell;
  bool quoted = false, after_quote = false;
  std::size_t line = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
          after_quote = true;
        }
      } else {
        if (c == '\n') ++line;
        cell += c;
      }
      continue;
    }
    if (c == ',') {
      row.push_back(std::move(cell));
      cell.clear();
      after_quote = false;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      row.push_back(std::move(cell));
      rows.push_back(std::move(row));
      cell.clear();
      row.clear();
      after_quote = false;
      ++line;
    } else if (c == '"') {
      if (!cell.empty() || after_quote) throw Error(ErrorCode::parse, "stray quote on CSV line " + std::to_string(line));
      quoted = true;
    } else {
      if (after_quote) throw Error(ErrorCode::parse, "text after closing quote on CSV line " + std::to_string(line));
      cell += c;
    }
  }
  if (quoted) throw Error(ErrorCode::parse, "unterminated quote in CSV");
  if (!cell.empty() || !row.empty() || after_quote) {
    row.push_back(std::move(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace detail {

inline std::int64_t to_int(const std::string& s, const char* column) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::parse, std::string("bad integer in column ") + column + ": '" + s + "'");
}

inline std::vector<Row> body(const std::string& text, const Row& header) {
  auto rows = parse(text);
  if (rows.empty() || rows.front() != header) throw Error(ErrorCode::parse, "unexpected CSV header");
  rows.erase(rows.begin());
  for (const auto& r : rows)
    if (r.size() != header.size()) throw Error(ErrorCode::parse, "wrong number of CSV cells");
  return rows;
}

}  // namespace detail

// --- divergence -------------------------------------------------------------

inline const Row divergence_header{"n",         "div_value", "unbounded_flag", "witness_a",
                                   "witness_b", "witness_c", "pairs_scanned",  "status"};

/// div_value is empty when the row is unbounded or has no admissible pair.
inline std::string divergence(const DivergenceReport& report) {
  std::vector<Row> rows{divergence_header};
  for (const auto& r : report.rows)
    rows.push_back({std::to_string(r.n), r.value && !r.unbounded ? std::to_string(*r.value) : "",
                    r.unbounded ? "1" : "0", r.witness_a, r.witness_b, r.witness_c, std::to_string(r.pairs_scanned),
                    to_string(r.status)});
  return format(rows);
}

inline RowStatus parse_status(const std::string& s) {
  for (auto st : {RowStatus::exact, RowStatus::unbounded, RowStatus::horizon_exceeded, RowStatus::lower_bound})
    if (s == to_string(st)) return st;
  throw Error(ErrorCode::parse, "unknown status '" + s + "'");
}

inline std::vector<DivergenceRow> parse_divergence(const std::string& text) {
  std::vector<DivergenceRow> out;
  for (const auto& r : detail::body(text, divergence_header)) {
    DivergenceRow row;
    row.n = static_cast<int>(detail::to_int(r[0], "n"));
    if (!r[1].empty()) row.value = detail::to_int(r[1], "div_value");
    if (r[2] != "0" && r[2] != "1") throw Error(ErrorCode::parse, "unbounded_flag must be 0 or 1");
    row.unbounded = r[2] == "1";
    row.witness_a = r[3];
    row.witness_b = r[4];
    row.witness_c = r[5];
    row.pairs_scanned = static_cast<std::uint64_t>(detail::to_int(r[6], "pairs_scanned"));
    row.status = parse_status(r[7]);
    out.push_back(std::move(row));
  }
  return out;
}

// --- pencil, pwt, automaton-stats --------------------------------------------

struct PencilCsvRow {
  int n = 0;
  std::uint64_t min_parallel = 0;
  std::string witness_word;
  friend bool operator==(const PencilCsvRow&, const PencilCsvRow&) = default;
};

struct PwtCsvRow {
  std::string wall_id;
  std::optional<int> cpp_hat;  ///< "NOT_FOUND" in the file
  std::uint64_t n_scanned = 0;
  friend bool operator==(const PwtCsvRow&, const PwtCsvRow&) = default;
};

struct CountCsvRow {
  int length = 0;
  std::uint64_t count = 0;
  friend bool operator==(const CountCsvRow&, const CountCsvRow&) = default;
};

inline const Row pencil_header{"n", "min_parallel", "witness_word"};
inline const Row pwt_header{"wall_id", "Cpp_hat", "n_scanned"};
inline const Row count_header{"length", "count"};

inline std::string pencil(const std::vector<PencilCsvRow>& rows) {
  std::vector<Row> out{pencil_header};
  for (const auto& r : rows) out.push_back({std::to_string(r.n), std::to_string(r.min_parallel), r.witness_word});
  return format(out);
}

inline std::vector<PencilCsvRow> parse_pencil(const std::string& text) {
  std::vector<PencilCsvRow> out;
  for (const auto& r : detail::body(text, pencil_header))
    out.push_back({static_cast<int>(detail::to_int(r[0], "n")),
                   static_cast<std::uint64_t>(detail::to_int(r[1], "min_parallel")), r[2]});
  return out;
}

inline std::string pwt(const std::vector<PwtCsvRow>& rows) {
  std::vector<Row> out{pwt_header};
  for (const auto& r : rows)
    out.push_back({r.wall_id, r.cpp_hat ? std::to_string(*r.cpp_hat) : "NOT_FOUND", std::to_string(r.n_scanned)});
  return format(out);
}

inline std::vector<PwtCsvRow> parse_pwt(const std::string& text) {
  std::vector<PwtCsvRow> out;
  for (const auto& r : detail::body(text, pwt_header)) {
    PwtCsvRow row{r[0], std::nullopt, static_cast<std::uint64_t>(detail::to_int(r[2], "n_scanned"))};
    if (r[1] != "NOT_FOUND") row.cpp_hat = static_cast<int>(detail::to_int(r[1], "Cpp_hat"));
    out.push_back(std::move(row));
  }
  return out;
}

inline std::string counts(const std::vector<CountCsvRow>& rows) {
  std::vector<Row> out{count_header};
  for (const auto& r : rows) out.push_back({std::to_string(r.length), std::to_string(r.count)});
  return format(out);
}

inline std::vector<CountCsvRow> parse_counts(const std::string& text) {
  std::vector<CountCsvRow> out;
  for (const auto& r : detail::body(text, count_header))
    out.push_back({static_cast<int>(detail::to_int(r[0], "length")),
                   static_cast<std::uint64_t>(detail::to_int(r[1], "count"))});
  return out;
}

}  // namespace coxdiv::csv
