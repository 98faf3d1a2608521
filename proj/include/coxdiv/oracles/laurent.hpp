#pragma once

/**
 * @file laurent.hpp
 * @brief Laurent polynomials over F_q (q prime, q in {2, 3}) and small
 * special linear matrices over them.
 */

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "coxdiv/error.hpp"

namespace coxdiv {

/// c_0 t^v + c_1 t^(v+1) + ... with c_0 and the last coefficient nonzero.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(int q) : q_(check_q(q)) {}

  static LaurentPoly monomial(int q, int coefficient, std::int32_t exponent) {
    LaurentPoly p(q);
    p.valuation_ = exponent;
    p.coeffs_.push_back(static_cast<std::uint8_t>(((coefficient % q) + q) % q));
    p.normalize();
    return p;
  }
  static LaurentPoly constant(int q, int c) { return monomial(q, c, 0); }
  static LaurentPoly from_coefficients(int q, std::int32_t valuation, std::vector<std::uint8_t> coeffs) {
    LaurentPoly p(q);
    p.valuation_ = valuation;
    for (auto& c : coeffs) c = static_cast<std::uint8_t>(c % q);
    p.coeffs_ = std::move(coeffs);
    p.normalize();
    return p;
  }

  int q() const { return q_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Allocator footprint of the coefficient buffer (malloc rounds small blocks up to 32 bytes).
  std::size_t heap_bytes() const { return coeffs_.capacity() ? std::max<std::size_t>(32, (coeffs_.capacity() + 15) & ~std::size_t{15}) : 0; }
  bool is_one() const { return valuation_ == 0 && coeffs_.size() == 1 && coeffs_[0] == 1; }
  std::int32_t valuation() const { return valuation_; }
  std::int32_t degree() const { return valuation_ + static_cast<std::int32_t>(coeffs_.size()) - 1; }
  /// degree - valuation, or -1 for zero.
  int span() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<std::uint8_t>& coefficients() const { return coeffs_; }
  int coefficient(std::int32_t exponent) const {
    auto i = static_cast<std::int64_t>(exponent) - valuation_;
    return i >= 0 && i < static_cast<std::int64_t>(coeffs_.size()) ? coeffs_[i] : 0;
  }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) { return combine(a, b, 1); }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return combine(a, b, a.q_ - 1); }
  LaurentPoly operator-() const { return LaurentPoly(q_) - *this; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    check_same(a, b);
    LaurentPoly r(a.q_);
    if (a.is_zero() || b.is_zero()) return r;
    r.valuation_ = a.valuation_ + b.valuation_;
    std::vector<unsigned> acc(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      if (a.coeffs_[i])
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) acc[i + j] += a.coeffs_[i] * b.coeffs_[j];
    r.coeffs_.resize(acc.size());
    for (std::size_t k = 0; k < acc.size(); ++k) r.coeffs_[k] = static_cast<std::uint8_t>(acc[k] % a.q_);
    r.normalize();
    return r;
  }

  /// Ascending exponents, e.g. "t^-1+1+t", "2t^3", "0".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      int c = coeffs_[i];
      if (!c) continue;
      std::int32_t e = valuation_ + static_cast<std::int32_t>(i);
      if (!s.empty()) s += '+';
      if (e == 0) {
        s += std::to_string(c);
        continue;
      }
      if (c != 1) s += std::to_string(c);
      s += 't';
      if (e != 1) s += '^' + std::to_string(e);
    }
    return s;
  }

  static LaurentPoly parse(int q, const std::string& text) {
    LaurentPoly p(q);
    if (text == "0") return p;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('+', pos);
      if (end == std::string::npos) end = text.size();
      p = p + parse_term(q, text.substr(pos, end - pos));
      pos = end + 1;
    }
    return p;
  }

 private:
  static int check_q(int q) {
    if (q != 2 && q != 3) throw Error(ErrorCode::config, "only q = 2 and q = 3 are supported");
    return q;
  }
  static void check_same(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.q_ != b.q_) throw Error(ErrorCode::config, "mixed fields in Laurent arithmetic");
  }

  static LaurentPoly parse_term(int q, const std::string& term) {
    auto fail = [&] { throw Error(ErrorCode::parse, "bad Laurent term '" + term + "'"); };
    if (term.empty()) fail();
    std::size_t i = 0;
    int c = 1;
    bool has_digits = false;
    while (i < term.size() && term[i] >= '0' && term[i] <= '9') {
      c = (has_digits ? c * 10 : 0) + (term[i] - '0');
      has_digits = true;
      ++i;
    }
    if (i == term.size()) {
      if (!has_digits) fail();
      return constant(q, c);
    }
    if (term[i] != 't') fail();
    ++i;
    std::int32_t e = 1;
    if (i < term.size()) {
      if (term[i] != '^' || i + 1 == term.size()) fail();
      try {
        std::size_t used = 0;
        e = std::stoi(term.substr(i + 1), &used);
        if (used != term.size() - i - 1) fail();
      } catch (const std::logic_error&) {
        fail();
      }
    }
    return monomial(q, c, e);
  }

  static LaurentPoly combine(const LaurentPoly& a, const LaurentPoly& b, int scale) {
    check_same(a, b);
    if (b.is_zero()) return a;
    LaurentPoly r(a.q_);
    if (a.is_zero()) {
      r = b;
      for (auto& c : r.coeffs_) c = static_cast<std::uint8_t>(c * scale % a.q_);
      r.normalize();
      return r;
    }
    r.valuation_ = std::min(a.valuation_, b.valuation_);
    std::int32_t top = std::max(a.degree(), b.degree());
    r.coeffs_.resize(static_cast<std::size_t>(top - r.valuation_ + 1));
    for (std::int32_t e = r.valuation_; e <= top; ++e)
      r.coeffs_[e - r.valuation_] = static_cast<std::uint8_t>((a.coefficient(e) + scale * b.coefficient(e)) % a.q_);
    r.normalize();
    return r;
  }

  void normalize() {
    std::size_t lo = 0;
    while (lo < coeffs_.size() && coeffs_[lo] == 0) ++lo;
    if (lo == coeffs_.size()) {
      coeffs_.clear();
      valuation_ = 0;
      return;
    }
    std::size_t hi = coeffs_.size();
    while (coeffs_[hi - 1] == 0) --hi;
    coeffs_ = std::vector<std::uint8_t>(coeffs_.begin() + static_cast<std::ptrdiff_t>(lo),
                                        coeffs_.begin() + static_cast<std::ptrdiff_t>(hi));
    valuation_ += static_cast<std::int32_t>(lo);
  }

  int q_ = 2;
  std::int32_t valuation_ = 0;
  std::vector<std::uint8_t> coeffs_;
};

/// N x N matrix over F_q[t, 1/t] with determinant one.
template <int N>
class SLMatrix {
 public:
  static_assert(N >= 1);

  SLMatrix() = default;

  static SLMatrix identity(int q) {
    SLMatrix m;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) m.at(i, j) = i == j ? LaurentPoly::constant(q, 1) : LaurentPoly(q);
    return m;
  }

  /// I + p * e_ij for i != j.
  static SLMatrix elementary(int i, int j, const LaurentPoly& p) {
    if (i == j || i < 0 || j < 0 || i >= N || j >= N) throw Error(ErrorCode::config, "bad elementary matrix indices");
    SLMatrix m = identity(p.q());
    m.at(i, j) = p;
    return m;
  }

  /// Throws DET_VIOLATION unless det = 1.
  static SLMatrix checked(std::array<LaurentPoly, N * N> entries) {
    SLMatrix m;
    m.e_ = std::move(entries);
    m.verify();
    return m;
  }

  int q() const { return e_[0].q(); }
  LaurentPoly& at(int i, int j) { return e_[static_cast<std::size_t>(i * N + j)]; }
  const LaurentPoly& at(int i, int j) const { return e_[static_cast<std::size_t>(i * N + j)]; }
  const std::array<LaurentPoly, N * N>& entries() const { return e_; }

  friend bool operator==(const SLMatrix&, const SLMatrix&) = default;

  /// Product with the determinant re-verified.
  friend SLMatrix operator*(const SLMatrix& a, const SLMatrix& b) {
    SLMatrix r;
    const int q = a.q();
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        LaurentPoly s(q);
        for (int k = 0; k < N; ++k) s = s + a.at(i, k) * b.at(k, j);
        r.at(i, j) = std::move(s);
      }
    r.verify();
    return r;
  }

  LaurentPoly determinant() const {
    std::array<int, N> cols{};
    for (int j = 0; j < N; ++j) cols[j] = j;
    return minor_det(0, cols, N);
  }

  int max_span() const {
    int s = -1;
    for (const auto& p : e_) s = std::max(s, p.span());
    return s;
  }

  /// "[[a, b], [c, d]]" with Laurent entries.
  std::string to_string() const {
    std::string s = "[";
    for (int i = 0; i < N; ++i) {
      s += i ? ", [" : "[";
      for (int j = 0; j < N; ++j) s += (j ? ", " : "") + at(i, j).to_string();
      s += ']';
    }
    return s + "]";
  }

  static SLMatrix parse(int q, const std::string& text) {
    std::string flat;
    for (char c : text)
      if (c != '[' && c != ']' && c != ' ') flat += c;
    std::array<LaurentPoly, N * N> entries;
    std::size_t pos = 0;
    for (int k = 0; k < N * N; ++k) {
      std::size_t end = flat.find(',', pos);
      if ((end == std::string::npos) != (k == N * N - 1)) throw Error(ErrorCode::parse, "bad matrix '" + text + "'");
      if (end == std::string::npos) end = flat.size();
      entries[k] = LaurentPoly::parse(q, flat.substr(pos, end - pos));
      pos = end + 1;
    }
    return checked(std::move(entries));
  }

  /// Per entry (row-major): int32 valuation LE, uint32 length LE, coefficient bytes.
  std::string canonical_key() const {
    std::string key;
    for (const auto& p : e_) {
      auto put32 = [&](std::uint32_t x) {
        for (int b = 0; b < 4; ++b) key.push_back(static_cast<char>((x >> (8 * b)) & 0xff));
      };
      put32(static_cast<std::uint32_t>(p.valuation()));
      put32(static_cast<std::uint32_t>(p.coefficients().size()));
      for (auto c : p.coefficients()) key.push_back(static_cast<char>(c));
    }
    return key;
  }

 private:
  void verify() const {
    if (!determinant().is_one()) throw Error(ErrorCode::det_violation, "determinant is not 1: " + to_string());
  }

  LaurentPoly minor_det(int row, const std::array<int, N>& cols, int count) const {
    const int q = e_[0].q();
    if (count == 1) return at(row, cols[0]);
    LaurentPoly total(q);
    for (int k = 0; k < count; ++k) {
      std::array<int, N> rest{};
      for (int m = 0, t = 0; m < count; ++m)
        if (m != k) rest[t++] = cols[m];
      LaurentPoly term = at(row, cols[k]) * minor_det(row + 1, rest, count - 1);
      total = k % 2 ? total - term : total + term;
    }
    return total;
  }

  std::array<LaurentPoly, N * N> e_;
};

}  // namespace coxdiv
