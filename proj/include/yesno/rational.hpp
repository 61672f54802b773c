#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "yesno/errors.hpp"

namespace yesno {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number in canonical form: denominator > 0,
/// gcd(|numerator|, denominator) == 1, zero stored as 0/1.
/// Components are arbitrary-precision integers, so nested partition
/// arithmetic never overflows.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(BigInt n) : num_(std::move(n)), den_(1) {}

  Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

  Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) {
      throw std::domain_error("rational with zero denominator");
    }
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_.is_zero()) {
      den_ = 1;
      return;
    }
    BigInt g = gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  // Accepts "a/b" with integer a and positive integer b, or a plain
  // integer, or a decimal literal such as "0.05" (converted exactly).
  static Rational parse(std::string_view text) {
    const auto bad = [&] {
      return ParseError("invalid rational literal '" + std::string(text) + "'");
    };
    if (text.empty()) throw bad();
    std::size_t pos = 0;
    if (text[pos] == '+' || text[pos] == '-') ++pos;
    const std::size_t digits_start = pos;
    while (pos < text.size() && is_digit(text[pos])) ++pos;
    if (pos == digits_start) throw bad();
    if (pos == text.size()) {
      return Rational(BigInt(std::string(text)), BigInt(1));
    }
    if (text[pos] == '/') {
      const std::string_view den = text.substr(pos + 1);
      if (den.empty() || !all_digits(den)) throw bad();
      BigInt d(std::string(den));
      if (d.is_zero()) throw ParseError("zero denominator in '" + std::string(text) + "'");
      return Rational(BigInt(std::string(text.substr(0, pos))), std::move(d));
    }
    if (text[pos] == '.') {
      const std::string_view frac = text.substr(pos + 1);
      if (frac.empty() || !all_digits(frac)) throw bad();
      std::string digits = std::string(text.substr(0, pos)) + std::string(frac);
      BigInt scale = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      return Rational(BigInt(digits), std::move(scale));
    }
    throw bad();
  }

  const BigInt& num() const noexcept { return num_; }
  const BigInt& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("rational division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }
  Rational operator-() const { return Rational(-num_, den_, canonical_tag{}); }

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;  // canonical form
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const BigInt lhs = a.num_ * b.den_;
    const BigInt rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  Rational abs() const { return num_ < 0 ? -*this : *this; }

  double to_double() const {
    if (num_.is_zero()) return 0.0;
    const BigInt a = num_ < 0 ? BigInt(-num_) : num_;
    const long sa = top_shift(a);
    const long sb = top_shift(den_);
    const double da = BigInt(a >> sa).convert_to<double>();
    const double db = BigInt(den_ >> sb).convert_to<double>();
    const double r = std::ldexp(da / db, static_cast<int>(sa - sb));
    return num_ < 0 ? -r : r;
  }

  /// "numerator/denominator", e.g. "22/5", "2/1", "0/1".
  std::string str() const { return num_.str() + "/" + den_.str(); }

  /// Fixed-point decimal rendering, exactly rounded (half away from zero).
  std::string decimal_str(int places = 6) const {
    BigInt scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    const BigInt a = num_ < 0 ? BigInt(-num_) : num_;
    const BigInt q = (a * scale * 2 + den_) / (den_ * 2);
    std::string digits = BigInt(q / scale).str();
    if (num_ < 0 && !q.is_zero()) digits.insert(digits.begin(), '-');
    if (places == 0) return digits;
    std::string frac = BigInt(q % scale).str();
    frac.insert(frac.begin(), static_cast<std::size_t>(places) - frac.size(), '0');
    return digits + "." + frac;
  }

 private:
  struct canonical_tag {};
  Rational(BigInt num, BigInt den, canonical_tag)
      : num_(std::move(num)), den_(std::move(den)) {}

  static bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }
  static bool all_digits(std::string_view s) noexcept {
    for (char c : s) {
      if (!is_digit(c)) return false;
    }
    return true;
  }

  // Shift that keeps ~62 significant bits, so huge components convert
  // to double without overflowing.
  static long top_shift(const BigInt& v) {
    const long bits = static_cast<long>(boost::multiprecision::msb(v));
    return bits > 62 ? bits - 62 : 0;
  }

  BigInt num_;
  BigInt den_;
};

}  // namespace yesno
