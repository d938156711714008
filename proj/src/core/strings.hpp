#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/families.hpp"

namespace iterhash {

enum class StringRule { all_up_to, unary, explicit_list };

// A duplicate-free, ordered set of test strings. all_up_to lists strings by
// length, then lexicographically.
class StringSet {
 public:
  static StringSet all_up_to(std::uint64_t alphabet_size, unsigned max_len, unsigned min_len = 1,
                             bool no_trailing_zero = false);
  static StringSet unary(Char c, const std::vector<std::uint64_t>& lengths, std::uint64_t alphabet_size);
  static StringSet explicit_list(std::vector<HashString> strings, std::uint64_t alphabet_size);
  // all_up_to over the family's alphabet, honouring its trailing-zero rule.
  static StringSet for_family(const FamilySpec& spec, unsigned max_len, unsigned min_len = 1);

  const std::vector<HashString>& strings() const { return strings_; }
  std::size_t size() const { return strings_.size(); }
  const HashString& operator[](std::size_t i) const { return strings_[i]; }
  std::uint64_t alphabet_size() const { return alphabet_size_; }
  unsigned max_len() const { return max_len_; }
  StringRule rule() const { return rule_; }
  std::string describe() const;

 private:
  std::vector<HashString> strings_;
  std::uint64_t alphabet_size_ = 0;
  unsigned min_len_ = 0;
  unsigned max_len_ = 0;
  bool no_trailing_zero_ = false;
  StringRule rule_ = StringRule::explicit_list;
};

// Number of strings of length min_len..max_len, saturating at 2^63.
std::uint64_t count_strings(std::uint64_t alphabet_size, unsigned min_len, unsigned max_len);

std::string format_string(const HashString& s);

}  // namespace iterhash
