#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <string>
#include <vector>

#include "iterhash/iterhash.h"

namespace {

// takes ownership of a returned string
std::string take(char* s) {
  std::string out = s ? s : "";
  ih_string_free(s);
  return out;
}

nlohmann::json take_json(char* s) { return nlohmann::json::parse(take(s)); }

struct Family {
  ih_family* f = nullptr;
  explicit Family(const char* spec) { REQUIRE(ih_family_parse(spec, &f) == IH_OK); }
  ~Family() { ih_family_free(f); }
};

}  // namespace

TEST_CASE("family handles") {
  Family fam("tabulated:L=2,sigma=2");
  CHECK(ih_family_word_bits(fam.f) == 2);
  CHECK(ih_family_value_count(fam.f) == 4);
  CHECK(ih_family_alphabet_size(fam.f) == 2);
  char* s = nullptr;
  REQUIRE(ih_family_cardinality(fam.f, &s) == IH_OK);
  CHECK(take(s) == "64");
  REQUIRE(ih_family_describe(fam.f, &s) == IH_OK);
  CHECK(take(s).find("tabulated") != std::string::npos);

  ih_family* bad = nullptr;
  CHECK(ih_family_parse("nonsense:L=2", &bad) == IH_ERR_USAGE);
  CHECK(bad == nullptr);
  CHECK(std::string(ih_last_error()).size() > 0);
  CHECK(ih_family_parse("cwpoly:p=4", &bad) == IH_ERR_DOMAIN);
  CHECK(std::string(ih_family_grammar()).find("cwpoly") != std::string::npos);
  CHECK(std::string(ih_version()).size() > 0);
}

TEST_CASE("hashing through instances") {
  Family gcc("gcc-cpp");
  ih_instance* h = nullptr;
  REQUIRE(ih_instance_at(gcc.f, 0, &h) == IH_OK);
  std::uint64_t y = 0;
  REQUIRE(ih_hash_bytes(h, "z", 1, &y) == IH_OK);
  CHECK(y == 122);
  ih_instance_free(h);

  Family java("java-string");
  REQUIRE(ih_instance_at(java.f, 0, &h) == IH_OK);
  REQUIRE(ih_hash_bytes(h, "hello", 5, &y) == IH_OK);
  CHECK(y == 99162322);
  const std::uint32_t chars[] = {'h', 'e', 'l', 'l', 'o'};
  std::uint64_t z = 0;
  REQUIRE(ih_hash(h, chars, 5, &z) == IH_OK);
  CHECK(z == y);
  ih_instance_free(h);

  Family cw("cwpoly:L=8");
  ih_instance *a = nullptr, *b = nullptr;
  REQUIRE(ih_instance_sample(cw.f, 7, &a) == IH_OK);
  REQUIRE(ih_instance_sample(cw.f, 7, &b) == IH_OK);
  const std::uint32_t s[] = {1, 2, 3};
  std::uint64_t ya = 0, yb = 0;
  ih_hash(a, s, 3, &ya);
  ih_hash(b, s, 3, &yb);
  CHECK(ya == yb);
  const std::uint32_t out_of_range[] = {256};
  CHECK(ih_hash(a, out_of_range, 1, &ya) == IH_ERR_DOMAIN);
  ih_instance_free(a);
  ih_instance_free(b);

  Family gp("generalized-pearson:L=2");
  CHECK(ih_instance_at(gp.f, 1u << 20, &h) == IH_ERR_DOMAIN);
}

TEST_CASE("verification reports") {
  Family fam("tabulated:L=2,sigma=2");
  ih_strings* s = nullptr;
  REQUIRE(ih_strings_for_family(fam.f, 1, 2, &s) == IH_OK);
  CHECK(ih_strings_size(s) == 6);
  char* out = nullptr;
  REQUIRE(ih_verify_exact(fam.f, s, 0, 3, IH_FORMAT_JSON, &out) == IH_OK);
  const auto j = take_json(out);
  CHECK(j["eps_asu"]["num"] == 1);
  CHECK(j["eps_asu"]["den"] == 4);
  CHECK(j["eps_au"]["probability"]["den"] == 64);
  REQUIRE(ih_verify_monte_carlo(fam.f, s, 500, 3, 2, IH_FORMAT_TEXT, &out) == IH_OK);
  CHECK(take(out).find("eps_au") != std::string::npos);
  ih_strings_free(s);

  std::uint64_t num = 0, den = 0;
  const std::uint32_t a[] = {0}, b[] = {1};
  REQUIRE(ih_collision_probability(fam.f, a, 1, b, 1, 0, &num, &den) == IH_OK);
  CHECK(num == 16);
  CHECK(den == 64);

  Family pearson("pearson:L=2");
  REQUIRE(ih_unary_collision_probability(pearson.f, 2, 4, 0, &num, &den) == IH_OK);
  CHECK(num * 4 == den * 2);

  const std::uint32_t chars[] = {0, 1, 1};
  const std::size_t lengths[] = {1, 2};
  REQUIRE(ih_strings_explicit(2, chars, lengths, 2, &s) == IH_OK);
  CHECK(ih_strings_size(s) == 2);
  ih_strings_free(s);
}

TEST_CASE("tables, bounds and witnesses") {
  char* out = nullptr;
  const unsigned Ls[] = {2, 4};
  REQUIRE(ih_bounds_table(Ls, 2, nullptr, IH_FORMAT_CSV, &out) == IH_OK);
  const std::string csv = take(out);
  CHECK(csv.find("2,20,8,5") != std::string::npos);
  CHECK(csv.find("4,136,87,17") != std::string::npos);
  REQUIRE(ih_min_family_size(20, 2, "1/4", &out) == IH_OK);
  CHECK(take(out) == "36");
  REQUIRE(ih_epsilon_impossible_length(2, "0.4", &out) == IH_OK);
  CHECK(take(out) == "10");
  CHECK(ih_epsilon_impossible_length(2, "1/2", &out) == IH_ERR_DOMAIN);

  Family gp("generalized-pearson:L=1");
  REQUIRE(ih_certain_collision(gp.f, 2, 0, &out) == IH_OK);
  const auto c = take_json(out);
  CHECK(c["pair"][0] == nlohmann::json::array({0, 1}));
  CHECK(c["pair"][1] == nlohmann::json::array({1, 0}));
  REQUIRE(ih_collision_table(gp.f, 3, 3, 0, IH_FORMAT_JSON, &out) == IH_OK);
  CHECK(take_json(out)["rows"].size() == 3);

  REQUIRE(ih_witness("tau-pair", "p=3", 3, IH_FORMAT_JSON, &out) == IH_OK);
  const auto w = take_json(out);
  CHECK(w["holds"] == true);
  CHECK(w["claimed"]["num"] == 1);
  REQUIRE(ih_witness("threewise-break", "pearson:L=2", 0, IH_FORMAT_JSON, &out) == IH_OK);
  CHECK(take_json(out)["holds"] == true);
  CHECK(ih_witness("no-such-kind", "", 0, IH_FORMAT_JSON, &out) == IH_ERR_USAGE);
  CHECK(ih_witness("hT-family", "", 12, IH_FORMAT_JSON, &out) == IH_ERR_CAPACITY);

  REQUIRE(ih_divisor_table(6, IH_FORMAT_CSV, &out) == IH_OK);
  CHECK(take(out).find("6,4,") != std::string::npos);
}
