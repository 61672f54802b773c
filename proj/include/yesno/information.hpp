#pragma once

#include <cmath>
#include <stdexcept>

#include "yesno/rational.hpp"

namespace yesno {

namespace detail {

// log2 of a positive big integer, safe for values wider than a double.
inline double log2_int(const BigInt& v) {
  const auto bits = boost::multiprecision::msb(v);
  if (bits <= 512) return std::log2(v.convert_to<double>());
  const auto shift = bits - 62;
  return std::log2(BigInt(v >> shift).convert_to<double>()) + static_cast<double>(shift);
}

}  // namespace detail

/// -log2(p) in bits: the information content of observing an event of
/// probability p. Requires 0 < p <= 1.
inline double surprisal_bits(const Rational& p) {
  if (p <= Rational(0) || p > Rational(1)) {
    throw std::domain_error("surprisal_bits requires 0 < p <= 1, got " + p.str());
  }
  return detail::log2_int(p.den()) - detail::log2_int(p.num());
}

/// Binary entropy H_b(p) = -p log2 p - (1-p) log2 (1-p) in bits, with
/// 0 log2 0 taken as 0. Requires 0 <= p <= 1.
inline double binary_entropy_bits(const Rational& p) {
  if (p < Rational(0) || p > Rational(1)) {
    throw std::domain_error("binary_entropy_bits requires 0 <= p <= 1, got " + p.str());
  }
  if (p.is_zero() || p == Rational(1)) return 0.0;
  const Rational q = Rational(1) - p;
  return p.to_double() * surprisal_bits(p) + q.to_double() * surprisal_bits(q);
}

}  // namespace yesno
