#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "core/error.hpp"
#include "core/strings.hpp"
#include "oracle.hpp"

using namespace iterhash;

TEST_CASE("all strings in length-lexicographic order") {
  const StringSet s = StringSet::all_up_to(3, 3);
  const auto expected = oracle::all_strings(3, 1, 3);
  REQUIRE(s.size() == expected.size());
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(s[i] == expected[i]);
  CHECK(StringSet::all_up_to(2, 2, 0).size() == 7);
  CHECK(StringSet::all_up_to(2, 2, 0)[0].empty());
  CHECK(s.rule() == StringRule::all_up_to);
}

TEST_CASE("trailing zero rule") {
  const StringSet s = StringSet::for_family(parse_family("multilinear:p=3,maxlen=3"), 2);
  CHECK(s.size() == 2 + 6);
  for (const auto& x : s.strings()) CHECK(x.back() != 0);
  CHECK_THROWS_AS(StringSet::for_family(parse_family("multilinear:p=3,maxlen=2"), 3), Error);
}

TEST_CASE("unary and explicit sets") {
  const StringSet u = StringSet::unary(1, {3, 1, 3}, 2);
  CHECK(u.size() == 2);
  for (const auto& x : u.strings())
    for (Char c : x) CHECK(c == 1);
  const StringSet e = StringSet::explicit_list({{0, 1}, {1}, {0, 1}}, 2);
  CHECK(e.size() == 2);
  std::set<HashString> distinct(e.strings().begin(), e.strings().end());
  CHECK(distinct.size() == e.size());
  CHECK_THROWS_AS(StringSet::explicit_list({{2}}, 2), Error);
  CHECK_THROWS_AS(StringSet::unary(2, {1}, 2), Error);
}

TEST_CASE("limits") {
  CHECK(count_strings(2, 1, 3) == 14);
  CHECK(count_strings(256, 1, 20) == std::uint64_t{1} << 63);
  CHECK(count_strings(std::uint64_t{1} << 30, 1, 4) == std::uint64_t{1} << 63);
  CHECK(count_strings(std::uint64_t{1} << 32, 0, 64) == std::uint64_t{1} << 63);
  try {
    StringSet::all_up_to(256, 8);
    FAIL("no capacity error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::capacity);
  }
  CHECK(format_string({0, 12, 3}) == "[0,12,3]");
}
