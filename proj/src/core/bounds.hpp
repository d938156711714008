#pragma once

// Closed-form limits on the string length over which an iterated family of
// L-bit hash functions can be universal, strongly universal or almost
// universal, and minimum family sizes.

#include <cstdint>
#include <optional>

#include "core/numeric.hpp"

namespace iterhash {

struct BoundsRow {
  unsigned L = 0;
  Rational epsilon;
  // Counting arguments against the family cardinality.
  BigInt card_universal;              // 2L + L 2^(L+1)
  BigInt card_strong;                 // floor(L + 2 lg(2^L!) - lg(2^L - 1) - 1)
  std::optional<BigInt> card_almost;  // floor(L (eps 2^(L (2^(L+1)+1)) + 1)), unset past 10^6 bits
  double card_almost_log2 = 0;
  // Periodicity of unary strings.
  BigInt struct_universal;  // 2^L + 1
  BigInt struct_strong;     // 2^L + 1
  BigInt struct_almost;     // 2^L + lcm(1..2^L) - 1
};

BoundsRow table_bounds(unsigned L, const Rational& epsilon = Rational(1, 2));

// lg(n!) by compensated summation of lg k.
long double log2_factorial(std::uint64_t n);

// ceil(ceil(K/L - 1) / eps).
BigInt min_family_size(std::uint64_t K, unsigned L, const Rational& epsilon);

// strong: 1 + a(b - 1); otherwise ceil(a / b).
BigInt stinson_min_size(const BigInt& num_strings, const BigInt& num_values, bool strong);

// 2^L + lcm(1..2^L + 1 - floor(1/eps)), for 1/2^L < eps < 1 with 1/eps not an integer.
BigInt epsilon_impossible_length(unsigned L, const Rational& epsilon);

// Exponent of the cardinality ceiling 2^(L (2^L |Sigma| + 1)) of any iterated family.
BigInt iterated_family_log2_bound(unsigned L, std::uint64_t alphabet_size);

}  // namespace iterhash
