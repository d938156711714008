#include "core/strings.hpp"

#include <algorithm>
#include <set>

#include "core/error.hpp"

namespace iterhash {

namespace {

constexpr std::uint64_t kMaxStrings = std::uint64_t{1} << 26;

}  // namespace

std::uint64_t count_strings(std::uint64_t alphabet_size, unsigned min_len, unsigned max_len) {
  constexpr std::uint64_t cap = std::uint64_t{1} << 63;
  std::uint64_t total = 0;
  std::uint64_t level = 1;
  for (unsigned len = 0; len <= max_len; ++len) {
    if (len >= min_len) total = level > cap - total ? cap : total + level;
    level = (alphabet_size != 0 && level > cap / alphabet_size) ? cap : level * alphabet_size;
  }
  return total;
}

StringSet StringSet::all_up_to(std::uint64_t alphabet_size, unsigned max_len, unsigned min_len,
                               bool no_trailing_zero) {
  require(alphabet_size >= 1, ErrorKind::domain, "alphabet must be non-empty");
  require(min_len <= max_len, ErrorKind::domain, "min length above max length");
  const std::uint64_t n = count_strings(alphabet_size, min_len, max_len);
  require(n <= kMaxStrings, ErrorKind::capacity,
          "string set of " + (n == std::uint64_t{1} << 63 ? std::string("at least 2^63") : std::to_string(n)) +
              " strings exceeds the limit of 2^26");
  StringSet set;
  set.alphabet_size_ = alphabet_size;
  set.min_len_ = min_len;
  set.max_len_ = max_len;
  set.no_trailing_zero_ = no_trailing_zero;
  set.rule_ = StringRule::all_up_to;
  set.strings_.reserve(n);
  for (unsigned len = min_len; len <= max_len; ++len) {
    HashString s(len, 0);
    while (true) {
      if (!(no_trailing_zero && len > 0 && s.back() == 0)) set.strings_.push_back(s);
      // odometer increment, last position fastest
      int i = static_cast<int>(len) - 1;
      while (i >= 0 && s[i] + 1 == alphabet_size) s[i--] = 0;
      if (i < 0) break;
      ++s[i];
    }
  }
  return set;
}

StringSet StringSet::unary(Char c, const std::vector<std::uint64_t>& lengths, std::uint64_t alphabet_size) {
  require(c < alphabet_size, ErrorKind::domain, "unary character outside the alphabet");
  std::vector<HashString> strings;
  for (std::uint64_t len : lengths) {
    require(len <= kMaxStrings, ErrorKind::capacity, "unary string too long to materialize");
    strings.emplace_back(len, c);
  }
  StringSet set = explicit_list(std::move(strings), alphabet_size);
  set.rule_ = StringRule::unary;
  return set;
}

StringSet StringSet::explicit_list(std::vector<HashString> strings, std::uint64_t alphabet_size) {
  StringSet set;
  set.alphabet_size_ = alphabet_size;
  set.rule_ = StringRule::explicit_list;
  std::set<HashString> seen;
  for (auto& s : strings) {
    for (Char c : s) require(c < alphabet_size, ErrorKind::domain, "character outside the alphabet");
    if (!seen.insert(s).second) continue;
    set.max_len_ = std::max<unsigned>(set.max_len_, static_cast<unsigned>(s.size()));
    set.strings_.push_back(std::move(s));
  }
  set.min_len_ = 0;
  return set;
}

StringSet StringSet::for_family(const FamilySpec& spec, unsigned max_len, unsigned min_len) {
  if (spec.position_dependent())
    require(max_len <= spec.max_len, ErrorKind::capacity,
            "strings longer than the family's maxlen=" + std::to_string(spec.max_len));
  return all_up_to(spec.alphabet_size, max_len, min_len, spec.rejects_trailing_zero());
}

std::string StringSet::describe() const {
  switch (rule_) {
    case StringRule::all_up_to:
      return "all strings over sigma=" + std::to_string(alphabet_size_) + " of length " + std::to_string(min_len_) +
             ".." + std::to_string(max_len_) + (no_trailing_zero_ ? ", no trailing zero" : "");
    case StringRule::unary:
      return std::to_string(strings_.size()) + " unary strings";
    case StringRule::explicit_list:
      return std::to_string(strings_.size()) + " explicit strings";
  }
  return "";
}

std::string format_string(const HashString& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "]";
}

}  // namespace iterhash
