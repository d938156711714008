#pragma once

// Exact arithmetic for the structures the hash families compute over:
// prime fields F_p, binary fields GF(2)[x]/p(x), the shift ring
// GF(2)[x]/(x^L+1) and the integers modulo 2^L.
//
// Polynomials over GF(2) are bitmasks, bit k holding the coefficient of x^k.
// A degree-L reduction polynomial is stored without its leading term (the
// "low" part) so that L = 64 fits in a machine word.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "core/numeric.hpp"

namespace iterhash {

inline constexpr unsigned kMaxWordBits = 64;
inline constexpr unsigned kMaxIrreducibleEnumeration = 20;

inline std::uint64_t word_mask(unsigned bits) {
  return bits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
}

// One-position circular left shift of an L-bit value.
std::uint64_t barrel_rotate(std::uint64_t y, unsigned word_bits);

namespace gf2 {

unsigned degree(std::uint64_t poly);  // degree of a non-zero polynomial

// Multiplication by x in GF(2)[x]/(x^L + low).
inline std::uint64_t xtimes(std::uint64_t a, std::uint64_t low, unsigned word_bits) {
  const bool carry = (a >> (word_bits - 1)) & 1U;
  a = (a << 1) & word_mask(word_bits);
  return carry ? a ^ low : a;
}

// Product in GF(2)[x]/(x^L + low); a and b must be reduced.
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t low, unsigned word_bits);

// Plain polynomial remainder and gcd (operands of degree <= 63).
std::uint64_t rem(std::uint64_t a, std::uint64_t m);
std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

// Rabin's irreducibility test for x^L + low, any 1 <= L <= 64.
bool is_irreducible_rabin(unsigned word_bits, std::uint64_t low);

// Trial division by every polynomial of degree 1..L/2; full L+1-bit mask.
bool is_irreducible_trial(std::uint64_t poly);

// All monic irreducible degree-L polynomials as full L+1-bit masks, ascending.
// Trial division for L <= 12, Rabin's test above; L <= kMaxIrreducibleEnumeration.
std::vector<std::uint64_t> irreducible_polys(unsigned word_bits);

// Low part of the smallest irreducible x^L + low with non-zero constant term.
std::uint64_t default_reduction_low(unsigned word_bits);

// "0x7" style rendering of x^L + low, MSB = highest-degree term.
std::string poly_hex(unsigned word_bits, std::uint64_t low);

}  // namespace gf2

namespace modp {

inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= p - b ? a - (p - b) : a + b;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : p - (b - a);
}
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}
std::uint64_t pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p);

}  // namespace modp

bool is_prime(std::uint64_t n);

// Least common multiple of 1..k.
BigInt lcm_upto(std::uint64_t k);

// Number of positive divisors of n >= 1.
std::uint64_t divisor_count(std::uint64_t n);

// max_{1 <= i < n} d(i); n >= 2.
std::uint64_t divisor_max(std::uint64_t n);

enum class AlgebraKind { prime_field, binary_field, binary_ring, mod2L };

std::string to_string(AlgebraKind kind);

struct AlgebraSpec {
  AlgebraKind kind = AlgebraKind::mod2L;
  BigInt modulus;                   // p, or 2^L
  std::uint64_t reduction_low = 0;  // binary structures: p(x) - x^L
  unsigned word_bits = 0;           // L

  static AlgebraSpec prime_field(std::uint64_t p);
  static AlgebraSpec binary_field(unsigned word_bits);
  static AlgebraSpec binary_field(unsigned word_bits, std::uint64_t reduction_low);
  static AlgebraSpec binary_ring(unsigned word_bits);
  static AlgebraSpec mod2L(unsigned word_bits);

  bool is_field() const { return kind == AlgebraKind::prime_field || kind == AlgebraKind::binary_field; }
  bool is_binary() const { return kind == AlgebraKind::binary_field || kind == AlgebraKind::binary_ring; }

  // Number of elements; only meaningful below 2^64.
  std::uint64_t size() const;
  std::uint64_t prime() const;  // prime-field modulus as a word

  std::string describe() const;

  friend bool operator==(const AlgebraSpec&, const AlgebraSpec&) = default;
};

using AlgebraRef = std::shared_ptr<const AlgebraSpec>;

// Word-level arithmetic dispatch used by the hash families.
std::uint64_t alg_add(const AlgebraSpec& a, std::uint64_t x, std::uint64_t y);
std::uint64_t alg_sub(const AlgebraSpec& a, std::uint64_t x, std::uint64_t y);
std::uint64_t alg_mul(const AlgebraSpec& a, std::uint64_t x, std::uint64_t y);
std::uint64_t alg_neg(const AlgebraSpec& a, std::uint64_t x);
std::uint64_t alg_inv(const AlgebraSpec& a, std::uint64_t x);
std::uint64_t alg_pow(const AlgebraSpec& a, std::uint64_t x, std::uint64_t exp);

// A canonical representative bound to its algebra. Mixing elements of
// different algebras is a structural error.
class Element {
 public:
  Element(AlgebraRef algebra, std::uint64_t value);

  std::uint64_t value() const { return value_; }
  const AlgebraSpec& algebra() const { return *algebra_; }
  const AlgebraRef& algebra_ref() const { return algebra_; }

  friend bool operator==(const Element& a, const Element& b) {
    return a.value_ == b.value_ && *a.algebra_ == *b.algebra_;
  }

 private:
  AlgebraRef algebra_;
  std::uint64_t value_;
};

Element add(const Element& a, const Element& b);
Element sub(const Element& a, const Element& b);
Element mul(const Element& a, const Element& b);
Element inv(const Element& a);

}  // namespace iterhash
