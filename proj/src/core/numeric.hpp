#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace iterhash {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// An exact probability over an enumerated family: `count` favourable
// instances out of `total`. The denominator is kept unreduced so it always
// equals the family cardinality.
struct Probability {
  std::uint64_t count = 0;
  std::uint64_t total = 1;

  Rational rational() const { return Rational(BigInt(count), BigInt(total)); }
  double value() const { return static_cast<double>(count) / static_cast<double>(total); }

  friend bool operator==(const Probability& a, const Probability& b) {
    return BigInt(a.count) * b.total == BigInt(b.count) * a.total;
  }
  friend bool operator<(const Probability& a, const Probability& b) {
    return BigInt(a.count) * b.total < BigInt(b.count) * a.total;
  }
};

// Two-decimal rendering with ties rounded up, e.g. 53/100 -> "0.53",
// 1/8 -> "0.13".
std::string round_half_up_2(const Rational& q);

// Parses "a/b", "a" or a decimal such as "0.25" into an exact rational.
Rational parse_rational(const std::string& text);

std::string to_string(const BigInt& v);

}  // namespace iterhash
