#pragma once

/**
 * @file scalar.hpp
 * @brief Exact arithmetic in the number field Q(sqrt2, sqrt3).
 *
 * A value is (n0 + n1*sqrt2 + n2*sqrt3 + n3*sqrt6) / den with 64-bit
 * numerators and a positive common denominator, kept in lowest terms.
 * Products are accumulated in 128 bits; a result that does not fit back
 * into 64 bits raises ARITHMETIC_OVERFLOW instead of wrapping.
 *
 * The sign of a nonzero value is decided by isolating the sqrt3 part and
 * squaring, which reduces the question to signs in Q(sqrt2). No floating
 * point is involved anywhere.
 */

#include <array>
#include <cstdint>
#include <numeric>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "coxdiv/error.hpp"

namespace coxdiv {

using Rational = boost::rational<std::int64_t>;

namespace detail {

using i128 = __int128;
using u128 = unsigned __int128;

inline i128 abs128(i128 x) { return x < 0 ? -x : x; }

inline i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::int64_t narrow(i128 x) {
  if (x > INT64_MAX || x < INT64_MIN)
    throw Error(ErrorCode::arithmetic_overflow, "Q(sqrt2,sqrt3) coefficient exceeds 64 bits");
  return static_cast<std::int64_t>(x);
}

inline int sgn(const auto& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// sign(a + b*sqrt2) for any signed integer type wide enough for a*a and 2*b*b.
template <class Int>
int sign_sqrt2(const Int& a, const Int& b) {
  int sa = sgn(a), sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: compare a^2 with 2 b^2
  Int lhs = a * a;
  Int rhs = b * b * 2;
  if (lhs == rhs) return 0;  // unreachable for integers, sqrt2 is irrational
  return lhs > rhs ? sa : sb;
}

inline int sign_sqrt2_128(std::int64_t a, std::int64_t b) {
  int sa = sgn(a), sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  u128 ua = static_cast<u128>(abs128(a));
  u128 ub = static_cast<u128>(abs128(b));
  u128 lhs = ua * ua;
  u128 rhs = ub * ub * 2;
  return lhs > rhs ? sa : sb;
}

}  // namespace detail

class QuadExtScalar {
 public:
  constexpr QuadExtScalar() = default;

  QuadExtScalar(std::int64_t integer) : num_{integer, 0, 0, 0}, den_(1) {}  // NOLINT(implicit)

  static QuadExtScalar from_rationals(const Rational& a, const Rational& b, const Rational& c,
                                      const Rational& d) {
    std::array<Rational, 4> r{a, b, c, d};
    detail::i128 den = 1;
    for (const auto& x : r) den = den / detail::gcd128(den, x.denominator()) * x.denominator();
    std::array<detail::i128, 4> n{};
    for (int k = 0; k < 4; ++k) n[k] = static_cast<detail::i128>(r[k].numerator()) * (den / r[k].denominator());
    return make(n, den);
  }

  static QuadExtScalar rational(std::int64_t p, std::int64_t q = 1) {
    return from_rationals(Rational(p, q), 0, 0, 0);
  }

  /// sqrt2, sqrt3 and sqrt6 as field elements.
  static QuadExtScalar sqrt2() { return from_rationals(0, 1, 0, 0); }
  static QuadExtScalar sqrt3() { return from_rationals(0, 0, 1, 0); }

  /// Coefficient k of the basis (1, sqrt2, sqrt3, sqrt6).
  Rational coefficient(int k) const { return Rational(num_[k], den_); }
  std::int64_t numerator(int k) const { return num_[k]; }
  std::int64_t denominator() const { return den_; }

  bool is_zero() const { return num_[0] == 0 && num_[1] == 0 && num_[2] == 0 && num_[3] == 0; }
  bool is_integral() const { return den_ == 1; }

  /// Exact sign: -1, 0 or +1.
  int sign() const {
    // value * den = X + sqrt3 * Y with X = n0 + n1 sqrt2, Y = n2 + n3 sqrt2
    int sx = detail::sign_sqrt2_128(num_[0], num_[1]);
    int sy = detail::sign_sqrt2_128(num_[2], num_[3]);
    if (sy == 0) return sx;
    if (sx == 0 || sx == sy) return sy;
    // opposite signs: sign(X + sqrt3 Y) = sx * sign(X^2 - 3 Y^2)
    using boost::multiprecision::cpp_int;
    cpp_int a = num_[0], b = num_[1], c = num_[2], d = num_[3];
    cpp_int p = a * a + 2 * b * b - 3 * c * c - 6 * d * d;
    cpp_int q = 2 * a * b - 6 * c * d;
    return sx * detail::sign_sqrt2(p, q);
  }

  QuadExtScalar operator-() const {
    QuadExtScalar r = *this;
    for (auto& n : r.num_) {
      if (n == INT64_MIN) throw Error(ErrorCode::arithmetic_overflow, "negation overflow");
      n = -n;
    }
    return r;
  }

  friend QuadExtScalar operator+(const QuadExtScalar& x, const QuadExtScalar& y) {
    using detail::i128;
    if (x.den_ == y.den_) {
      std::array<i128, 4> n{};
      for (int k = 0; k < 4; ++k) n[k] = static_cast<i128>(x.num_[k]) + y.num_[k];
      return x.den_ == 1 ? make_integral(n) : make(n, x.den_);
    }
    i128 g = detail::gcd128(x.den_, y.den_);
    i128 fx = y.den_ / g, fy = x.den_ / g;
    std::array<i128, 4> n{};
    for (int k = 0; k < 4; ++k) n[k] = x.num_[k] * fx + y.num_[k] * fy;
    return make(n, x.den_ * fx);
  }

  friend QuadExtScalar operator-(const QuadExtScalar& x, const QuadExtScalar& y) { return x + (-y); }

  friend QuadExtScalar operator*(const QuadExtScalar& x, const QuadExtScalar& y) {
    using detail::i128;
    const auto& a = x.num_;
    const auto& b = y.num_;
    auto m = [](std::int64_t u, std::int64_t v) { return static_cast<i128>(u) * v; };
    std::array<i128, 4> n{
        m(a[0], b[0]) + 2 * m(a[1], b[1]) + 3 * m(a[2], b[2]) + 6 * m(a[3], b[3]),
        m(a[0], b[1]) + m(a[1], b[0]) + 3 * m(a[2], b[3]) + 3 * m(a[3], b[2]),
        m(a[0], b[2]) + m(a[2], b[0]) + 2 * m(a[1], b[3]) + 2 * m(a[3], b[1]),
        m(a[0], b[3]) + m(a[3], b[0]) + m(a[1], b[2]) + m(a[2], b[1]),
    };
    if (x.den_ == 1 && y.den_ == 1) return make_integral(n);
    return make(n, static_cast<i128>(x.den_) * y.den_);
  }

  QuadExtScalar& operator+=(const QuadExtScalar& o) { return *this = *this + o; }
  QuadExtScalar& operator-=(const QuadExtScalar& o) { return *this = *this - o; }
  QuadExtScalar& operator*=(const QuadExtScalar& o) { return *this = *this * o; }

  friend bool operator==(const QuadExtScalar&, const QuadExtScalar&) = default;

  friend bool operator<(const QuadExtScalar& x, const QuadExtScalar& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QuadExtScalar& x, const QuadExtScalar& y) { return y < x; }
  friend bool operator<=(const QuadExtScalar& x, const QuadExtScalar& y) { return !(y < x); }
  friend bool operator>=(const QuadExtScalar& x, const QuadExtScalar& y) { return !(x < y); }

  QuadExtScalar abs() const { return sign() < 0 ? -*this : *this; }

  /// Human-readable form, e.g. "-1/2", "1+2r2", "-1/2r3" (rK = sqrt K).
  std::string to_string() const {
    static constexpr const char* suffix[4] = {"", "r2", "r3", "r6"};
    std::string out;
    for (int k = 0; k < 4; ++k) {
      if (num_[k] == 0) continue;
      Rational c(num_[k], den_);
      if (!out.empty() && c > 0) out += '+';
      if (c.denominator() == 1) {
        if (k == 0 || (c.numerator() != 1 && c.numerator() != -1))
          out += std::to_string(c.numerator());
        else if (c.numerator() == -1)
          out += '-';
      } else {
        out += std::to_string(c.numerator()) + "/" + std::to_string(c.denominator());
      }
      out += suffix[k];
    }
    return out.empty() ? "0" : out;
  }

  /// Hash-friendly raw representation.
  const std::array<std::int64_t, 4>& numerators() const { return num_; }

 private:
  static QuadExtScalar make_integral(const std::array<detail::i128, 4>& n) {
    QuadExtScalar r;
    for (int k = 0; k < 4; ++k) r.num_[k] = detail::narrow(n[k]);
    r.den_ = 1;
    return r;
  }

  static QuadExtScalar make(std::array<detail::i128, 4> n, detail::i128 den) {
    if (den < 0) {
      den = -den;
      for (auto& x : n) x = -x;
    }
    detail::i128 g = den;
    for (auto x : n) g = detail::gcd128(g, x);
    if (g > 1) {
      den /= g;
      for (auto& x : n) x /= g;
    }
    QuadExtScalar r;
    for (int k = 0; k < 4; ++k) r.num_[k] = detail::narrow(n[k]);
    r.den_ = detail::narrow(den);
    return r;
  }

  std::array<std::int64_t, 4> num_{0, 0, 0, 0};
  std::int64_t den_ = 1;
};

}  // namespace coxdiv
