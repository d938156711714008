#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "core/error.hpp"
#include "core/verifier.hpp"
#include "core/witnesses.hpp"
#include "oracle.hpp"

using namespace iterhash;

namespace {

oracle::Str plain(const HashString& s) { return {s.begin(), s.end()}; }

Rational as_q(const oracle::Q& x) { return Rational(x.num, x.den); }

}  // namespace

TEST_CASE("tau pair collides with probability n/p") {
  struct Case {
    AlgebraSpec field;
    oracle::Field F;
  };
  const std::vector<Case> cases{{AlgebraSpec::prime_field(2), oracle::prime_field(2)},
                                {AlgebraSpec::prime_field(3), oracle::prime_field(3)},
                                {AlgebraSpec::binary_field(2), oracle::binary_field(2)},
                                {AlgebraSpec::prime_field(5), oracle::prime_field(5)},
                                {AlgebraSpec::prime_field(7), oracle::prime_field(7)},
                                {AlgebraSpec::binary_field(3), oracle::binary_field(3)}};
  for (const auto& c : cases) {
    const std::uint64_t p = c.F.size();
    for (std::uint64_t n = 1; n <= p; ++n) {
      const Witness w = tau_collision_pair(n, c.field);
      REQUIRE(w.strings.size() == 2);
      CHECK(w.strings[0] != w.strings[1]);
      CHECK(w.strings[0].size() == n + 1);
      CHECK(w.strings[1].size() == n + 1);
      CHECK(w.holds);
      CHECK(*w.claimed == Rational(n, p));
      const auto q = oracle::collision(oracle::cwpoly(c.F, 1), plain(w.strings[0]), plain(w.strings[1]));
      CHECK(as_q(q) == Rational(n, p));
    }
  }
  const Witness w = tau_collision_pair(3, AlgebraSpec::prime_field(3));
  CHECK(w.strings[1] == HashString{2, 0, 1, 0});
}

TEST_CASE("binomial pair collides under power-of-two hashing") {
  for (unsigned L = 1; L <= 5; ++L) {
    const Witness w = binomial_collision_pair(L);
    CHECK(w.holds);
    CHECK(w.certificate == CertificateMode::exhaustive);
    REQUIRE(w.strings.size() == 2);
    CHECK(as_q(oracle::collision(oracle::power_of_two(L), plain(w.strings[0]), plain(w.strings[1]))) == 1);
  }
  CHECK(binomial_collision_pair(8).holds);
  const Witness big = binomial_collision_pair(16, 512, 3);
  CHECK(big.certificate == CertificateMode::sampled);
  CHECK(big.holds);
}

TEST_CASE("unary strings collide under every iterated function") {
  for (unsigned L = 1; L <= 2; ++L) {
    const Witness w = unary_forced_collision(L);
    CHECK(w.holds);
    CHECK(w.certificate == CertificateMode::exhaustive);
  }
  const Witness w3 = unary_forced_collision(3, 0, 256, 9);
  CHECK(w3.holds);
  CHECK(w3.certificate == CertificateMode::sampled);
  // brute force over all 4^4 maps for L = 2: c^4 vs c^(4 + 12)
  for (const auto& a : oracle::tuples(4, 4)) {
    for (std::uint64_t y0 = 0; y0 < 4; ++y0) {
      std::uint64_t y = y0, z = y0;
      for (int i = 0; i < 4; ++i) y = a[y];
      for (int i = 0; i < 16; ++i) z = a[z];
      CHECK(y == z);
    }
  }
}

TEST_CASE("perfect unary hash") {
  for (unsigned L = 1; L <= 8; ++L) {
    const HashInstance h = perfect_unary_hash(L);
    std::set<std::uint64_t> seen;
    const std::uint64_t n = std::uint64_t{1} << L;
    for (std::uint64_t r = 1; r <= n; ++r) seen.insert(hash_unary(h, 0, r));
    CHECK(seen.size() == n);
    CHECK(perfect_unary_witness(L).holds);
  }
  CHECK_THROWS_AS(perfect_unary_hash(0), Error);
}

TEST_CASE("hT family") {
  const HTFamily h2(2);
  CHECK(h2.separation_length() == 14);
  CHECK(!h2.first_unseparated(14));
  const auto u = h2.first_unseparated(15);
  REQUIRE(u);
  CHECK(u->second == 15);
  for (std::uint64_t t = 1; t <= 4; ++t) {
    CHECK(h2.compression_function(t));
    for (std::uint64_t r = 4; r < 40; ++r) CHECK(h2.value(t, r + t) == h2.value(t, r));
  }
  // the printed formula is not realizable as an iterated function for T >= 2
  CHECK(h2.compression_function(1, true));
  CHECK(!h2.compression_function(3, true));
  const HTFamily h3(3);
  CHECK(h3.separation_length() == 846);
  CHECK(!h3.first_unseparated(846));
  CHECK(h3.first_unseparated(847));
  CHECK(ht_family_witness(2).holds);
  CHECK(ht_family_witness(3).holds);
}

TEST_CASE("three-wise break") {
  for (const char* spec : {"tabulated:L=2,sigma=2", "shift-tabulated:L=2,sigma=2", "pearson:L=2",
                           "generalized-pearson:L=2", "cwpoly:L=2"}) {
    const FamilySpec f = parse_family(spec);
    const Witness w = threewise_break(f);
    CHECK(w.holds);
    REQUIRE(w.measured.size() == 2);
    CHECK(w.measured[0].probability == w.measured[1].probability);
    CHECK(w.measured[0].probability.count > 0);
    CHECK(w.certificate == CertificateMode::exhaustive);
  }
  try {
    threewise_break(parse_family("multilinear:p=3,maxlen=3"));
    FAIL("accepted a family that is not iterated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::unsupported);
  }
}

TEST_CASE("four-wise break") {
  const Witness w = fourwise_break(parse_family("zobrist:L=1,sigma=2,maxlen=2"));
  CHECK(w.holds);
  CHECK(w.measured[0].probability.count == 0);
  CHECK(w.measured[0].probability.total == 16);
  CHECK(*w.claimed == 0);
  CHECK(w.parameters.at(0).second == "1/16");
  CHECK(w.measured[1].probability.count > 0);
}
