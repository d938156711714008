#pragma once

// Exact (exhaustive) and Monte-Carlo measurement of uniformity, almost
// universality, XOR universality, strong universality and k-wise
// independence of a family over a string set.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/families.hpp"
#include "core/numeric.hpp"
#include "core/strings.hpp"

namespace iterhash {

inline constexpr std::uint64_t kDefaultBudget = 1'000'000'000;

struct VerifyOptions {
  std::uint64_t budget = kDefaultBudget;  // instances x strings, and instances x pairs
  unsigned k_max = 2;                     // highest k for k-wise checks, 2..4
  unsigned threads = 0;                   // 0: hardware concurrency
};

enum class Uniformity { uniform, not_uniform, not_applicable };

std::string to_string(Uniformity u);

struct Interval {
  double low = 0;
  double high = 1;
};

// Wilson score interval at 95% confidence.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials);

// A maximal (or minimal) probability with the strings and hash values that
// attain it.
struct Extremum {
  Probability probability;
  std::vector<HashString> strings;
  std::vector<std::uint64_t> values;
  std::optional<Interval> interval;  // Monte Carlo only
};

struct KwiseVerdict {
  unsigned k = 2;
  std::optional<bool> independent;  // unset: not computed or vacuous
  std::string note;
  std::vector<HashString> witness;  // a failing tuple
  std::vector<std::uint64_t> values;
  std::optional<Probability> witness_probability;
};

struct KCollision {
  unsigned k = 2;
  std::optional<Extremum> max;
  std::string note;
};

struct VerificationReport {
  std::string family;
  std::string strings;
  std::size_t string_count = 0;
  std::uint64_t instances = 0;
  std::uint64_t value_count = 0;
  bool exact = true;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;

  Uniformity uniformity = Uniformity::not_applicable;
  std::optional<Extremum> max_value;  // largest P(h(s) = y)
  std::optional<Extremum> min_value;  // smallest P(h(s) = y)

  std::optional<Extremum> eps_au;   // max P(h(s) = h(s'))
  std::optional<Extremum> eps_axu;  // max P(h(s) - h(s') = y)
  std::string axu_kind;             // bitwise-xor | field-difference
  std::optional<Extremum> max_joint;  // max P(h(s) = y, h(s') = y')

  std::vector<KwiseVerdict> kwise;  // k = 2, 3, 4
  std::vector<KCollision> kwise_collision;

  // value_count x max joint probability; strongly universal families give 1/value_count.
  std::optional<Rational> eps_asu() const;
  std::optional<bool> pairwise_independent() const;
};

VerificationReport exact_report(const FamilySpec& spec, const StringSet& strings, const VerifyOptions& options = {});

// Instances are drawn with sample_instance(spec, stream(seed, trial)); results
// do not depend on the number of workers.
VerificationReport monte_carlo_report(const FamilySpec& spec, const StringSet& strings, std::uint64_t trials,
                                      std::uint64_t seed, const VerifyOptions& options = {});

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

struct Estimate {
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  double value() const { return trials ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0; }
  Interval interval() const { return wilson_interval(hits, trials); }
};

Estimate monte_carlo_collision(const FamilySpec& spec, const HashString& s, const HashString& t,
                               std::uint64_t trials, std::uint64_t seed);

Probability collision_probability(const FamilySpec& spec, const HashString& s, const HashString& t,
                                  std::uint64_t budget = kDefaultBudget);

// Counts of (low bits of h(s), low bits of h(t)), indexed y * 2^bits + y'.
struct JointTable {
  unsigned bits = 0;
  std::uint64_t total = 0;
  std::vector<std::uint64_t> counts;

  Probability at(std::uint64_t y, std::uint64_t y2) const { return {counts[(y << bits) | y2], total}; }
  bool all_equal() const;
};

JointTable pairwise_joint(const FamilySpec& spec, const HashString& s, const HashString& t, unsigned masked_bits,
                          std::uint64_t budget = kDefaultBudget);

// P(h(c^r) = h(c^r')) over the whole family.
Probability unary_collision_prob(const FamilySpec& spec, std::uint64_t r, std::uint64_t r2, Char c,
                                 std::uint64_t budget = kDefaultBudget);

struct CertainCollision {
  std::optional<std::pair<HashString, HashString>> pair;
  std::uint64_t strings_explored = 0;
  unsigned searched_len = 0;
};

// Distinct strings of length 1..max_len that collide under every instance,
// found by signature search in length-then-lexicographic order. The first
// repeated signature gives the canonical witness.
CertainCollision find_certain_collision(const FamilySpec& spec, unsigned max_len,
                                        std::uint64_t budget = kDefaultBudget);

enum class RowMode { exact, lower_bound, certain };

std::string to_string(RowMode m);

struct CollisionRow {
  unsigned n = 0;
  Probability probability;
  HashString s, t;
  RowMode mode = RowMode::exact;
};

struct CollisionTableOptions {
  unsigned exact_max_n = 7;
  std::uint64_t budget = 10'000'000'000ULL;
  unsigned search_width = 48;  // pairs kept per lower-bound row
};

// Max collision probability between distinct strings of length 1..n, for
// n = 1..n_max. Rows up to exact_max_n are exact; rows at or past the first
// certain collision are 1; rows in between carry the exact probability of
// the best pair found by local search, a certified lower bound.
std::vector<CollisionRow> collision_table(const FamilySpec& spec, unsigned n_max,
                                          const CollisionTableOptions& options = {});

}  // namespace iterhash
