#pragma once

// Forced-collision and extremal constructions, each returned with a
// certificate computed by enumeration (or sampling where the space is
// intractable).

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/algebra.hpp"
#include "core/families.hpp"
#include "core/numeric.hpp"

namespace iterhash {

enum class WitnessKind { tau_pair, binomial_pair, unary_forced, perfect_unary, ht_family, threewise_break, fourwise_break };
enum class CertificateMode { exhaustive, sampled };

std::string to_string(WitnessKind k);
std::string to_string(CertificateMode m);

struct NamedProbability {
  std::string name;
  Probability probability;
};

struct Witness {
  WitnessKind kind = WitnessKind::tau_pair;
  std::string family;  // spec the certificate was computed on
  std::vector<HashString> strings;
  std::vector<std::uint64_t> values;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::optional<Rational> claimed;
  std::vector<NamedProbability> measured;
  CertificateMode certificate = CertificateMode::exhaustive;
  bool holds = false;  // the certificate confirms the claim
  std::string note;
};

// Equal-length strings of length n+1 whose cwpoly (init 1) hash difference is
// tau(t) = prod_{i<n} (t - i), so they collide with probability n/|field|.
Witness tau_collision_pair(std::uint64_t n, const AlgebraSpec& field);

// (C(L,0), ..., C(L,L)) mod 2^L against L+1 zeros under power-of-two hashing
// with odd B; exhaustive for L <= 8, sampled above.
Witness binomial_collision_pair(unsigned word_bits, std::uint64_t samples = 4096, std::uint64_t seed = 1);

// c^(2^L) against c^(2^L + lcm(1..2^L)): equal under every iterated function.
// Exhaustive over all maps of the unary alphabet for L <= 2, sampled above.
Witness unary_forced_collision(unsigned word_bits, Char c = 0, std::uint64_t samples = 4096, std::uint64_t seed = 1);

// The cycle hash y -> y + 1 mod 2^L from H_0 = 0 over a one-letter alphabet.
HashInstance perfect_unary_hash(unsigned word_bits);
Witness perfect_unary_witness(unsigned word_bits);

// h_T for T = 1..2^L on unary strings: r below 2^L, then periodic with period T.
class HTFamily {
 public:
  explicit HTFamily(unsigned word_bits);

  unsigned word_bits() const { return word_bits_; }
  std::uint64_t members() const { return std::uint64_t{1} << word_bits_; }
  // The piecewise formula as printed: 2^L - T - ((r - 2^L) mod T) past 2^L.
  // It can go negative and is not an iterated function for T >= 2.
  std::int64_t literal(std::uint64_t t, std::uint64_t r) const;
  // 2^L - T + ((r - 2^L) mod T): same range, same period, and realizable.
  std::uint64_t value(std::uint64_t t, std::uint64_t r) const;
  // Longest length for which separation is claimed: 2^L + lcm(1..2^L) - 2.
  BigInt separation_length() const;
  // First pair r < r' <= max_len that no h_T separates.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> first_unseparated(std::uint64_t max_len,
                                                                           bool use_literal = false) const;
  // Rebuilds the state map F_T(y) = h_T(r + 1) where y = h_T(r); nullopt if
  // two lengths with the same value disagree on the next value.
  std::optional<std::vector<std::uint64_t>> compression_function(std::uint64_t t, bool use_literal = false) const;

 private:
  unsigned word_bits_;
};

Witness ht_family_witness(unsigned word_bits);

// (a, b, y) with P(h(a)=y, h(ab)=y) = P(h(a)=y, h(ab)=y, h(abb)=y) > 0.
Witness threewise_break(const FamilySpec& spec, std::uint64_t budget = 1'000'000'000);

// Strings (0, 1, 00, 10) with values (y, y, z, z'), z != z': probability 0
// under zobrist, where 4-wise independence needs 1/2^(4L).
Witness fourwise_break(const FamilySpec& spec, std::uint64_t budget = 1'000'000'000);

}  // namespace iterhash
