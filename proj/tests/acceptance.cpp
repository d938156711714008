// One PASS/FAIL line per acceptance criterion. Exits non-zero when the set
// of failing criteria differs from the documented known failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "core/bounds.hpp"
#include "core/error.hpp"
#include "core/families.hpp"
#include "core/report.hpp"
#include "core/rng.hpp"
#include "core/verifier.hpp"
#include "core/witnesses.hpp"
#include "oracle.hpp"

using namespace iterhash;

namespace {

// eps_axu of init-1 cwpoly over GF(4) is 1: equal-length strings that differ
// only in the last character differ by a constant.
// Division at L = 1 with p(x) = x: x^L = 0 mod p, so F(y, c) = c.
const std::set<int> kKnownFailures{8, 16};

struct Check {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

Rational as_q(const oracle::Q& x) { return Rational(x.num, x.den); }

oracle::Str plain(const HashString& s) { return {s.begin(), s.end()}; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string q_str(const Rational& q) { return format_rational(q); }

// C1: exact rows n = 1..7, rows up to 5 recomputed by brute force.
Check gp_table() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  CollisionTableOptions o;
  o.exact_max_n = 7;
  const auto rows = collision_table(parse_family("generalized-pearson:L=2"), 7, o);
  const std::vector<std::string> expected{"", "0.53", "0.72", "0.84", "0.88", "0.89", "0.95"};
  for (unsigned n = 2; n <= 7; ++n) {
    const auto& r = rows[n - 1];
    c.require(r.mode == RowMode::exact, "row " + std::to_string(n) + " not exact");
    c.require(r.probability.total == 1024, "row " + std::to_string(n) + " not over 1024 instances");
    c.require(round_half_up_2(r.probability.rational()) == expected[n - 1],
              "row " + std::to_string(n) + " = " + round_half_up_2(r.probability.rational()));
  }
  const auto fam = oracle::generalized_pearson(2);
  const auto strings = oracle::all_strings(4, 1, 5);
  const auto m = oracle::matrix(fam, strings);
  std::vector<std::uint64_t> best(6, 0);
  for (std::size_t b = 0; b < strings.size(); ++b)
    for (std::size_t a = 0; a < b; ++a) {
      std::uint64_t eq = 0;
      for (std::size_t i = 0; i < fam.size(); ++i) eq += m[i][a] == m[i][b];
      auto& slot = best[strings[b].size()];
      slot = std::max(slot, eq);
    }
  for (unsigned n = 2; n <= 5; ++n) {
    best[n] = std::max(best[n], best[n - 1]);
    c.require(rows[n - 1].probability.count == best[n], "oracle disagrees at row " + std::to_string(n));
  }
  c.detail = c.ok ? "rows 2..7 = 0.53 0.72 0.84 0.88 0.89 0.95, exact, " + std::to_string(seconds_since(t0)) + " s"
                  : c.detail;
  return c;
}

// C2: certain collision at length 11.
Check certain_collision() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  const FamilySpec f = parse_family("generalized-pearson:L=2");
  const auto found = find_certain_collision(f, 11, 20'000'000'000ULL);
  const double s = seconds_since(t0);
  c.require(found.pair.has_value(), "no pair up to length 11");
  if (!found.pair) return c;
  const Probability p = collision_probability(f, found.pair->first, found.pair->second);
  c.require(p.count == p.total && p.total == 1024, "pair collides with " + q_str(p.rational()));
  c.require(s <= 60, "search took " + std::to_string(s) + " s");
  const auto fam = oracle::generalized_pearson(2);
  c.require(as_q(oracle::collision(fam, plain(found.pair->first), plain(found.pair->second))) == 1,
            "oracle disagrees");
  if (c.ok)
    c.detail = format_string(found.pair->first) + " vs " + format_string(found.pair->second) + ", probability 1, " +
               std::to_string(s) + " s";
  return c;
}

// C3: pearson L=2, strings of length <= 4.
Check pearson_eps() {
  Check c;
  const FamilySpec f = parse_family("pearson:L=2");
  const StringSet s = StringSet::all_up_to(4, 4);
  const auto r = exact_report(f, s);
  c.require(r.instances == 96, "instances " + std::to_string(r.instances));
  c.require(r.eps_au->probability.rational() == Rational(5, 6), "eps_au " + q_str(r.eps_au->probability.rational()));
  if (c.ok) c.detail = "eps_au = 5/6 over 96 instances, " + std::to_string(s.size()) + " strings";
  return c;
}

// C4: unary collisions under pearson equal d(l)/2^L.
Check pearson_unary() {
  Check c;
  std::size_t checked = 0;
  for (unsigned L = 2; L <= 3; ++L) {
    const FamilySpec f = parse_family("pearson:L=" + std::to_string(L) + ",sigma=1");
    const std::uint64_t m = std::uint64_t{1} << L;
    for (std::uint64_t l = 1; l < m; ++l)
      for (std::uint64_t r : {1, 2, 5, 9}) {
        const Probability p = unary_collision_prob(f, r, r + l, 0);
        c.require(p.rational() == Rational(oracle::divisors(l), m),
                  "L=" + std::to_string(L) + " r=" + std::to_string(r) + " l=" + std::to_string(l));
        ++checked;
      }
  }
  if (c.ok) c.detail = std::to_string(checked) + " (L, r, l) cases equal d(l)/2^L";
  return c;
}

// C5: tabulated joint probabilities.
Check tabulated_joint() {
  Check c;
  const FamilySpec f = parse_family("tabulated:L=2,sigma=2");
  const StringSet s = StringSet::all_up_to(2, 2);
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      const JointTable t = pairwise_joint(f, s[a], s[b], 2);
      c.require(t.total == 64, "instances");
      for (std::uint64_t y = 0; y < 4; ++y)
        for (std::uint64_t z = 0; z < 4; ++z) c.require(t.at(y, z).rational() == Rational(1, 16), "cell");
    }
  std::vector<oracle::Str> plain_set(s.strings().begin(), s.strings().end());
  const auto [lo, hi] = oracle::joint_range(oracle::tabulated(2, 2, false), plain_set, 4);
  c.require(as_q(lo) == Rational(1, 16) && as_q(hi) == Rational(1, 16), "oracle joint range");
  if (c.ok) c.detail = "every joint cell 1/16 over 64 instances";
  return c;
}

// C6: shift-tabulated on the low 2 bits.
Check shift_tabulated_joint() {
  Check c;
  const FamilySpec f = parse_family("shift-tabulated:L=3,sigma=2");
  const StringSet s = StringSet::all_up_to(2, 2);
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      const JointTable t = pairwise_joint(f, s[a], s[b], 2);
      c.require(t.total == 512, "instances");
      for (std::uint64_t y = 0; y < 4; ++y)
        for (std::uint64_t z = 0; z < 4; ++z) c.require(t.at(y, z).rational() == Rational(1, 16), "cell");
    }
  std::vector<oracle::Str> plain_set(s.strings().begin(), s.strings().end());
  const auto [lo, hi] = oracle::joint_range(oracle::tabulated(3, 2, true), plain_set, 4, 3);
  c.require(as_q(lo) == Rational(1, 16) && as_q(hi) == Rational(1, 16), "oracle joint range");
  if (c.ok) c.detail = "every masked joint cell 1/16 over 512 instances";
  return c;
}

// C7: multilinear over F_3.
Check multilinear_joint() {
  Check c;
  const FamilySpec f = parse_family("multilinear:p=3,maxlen=2");
  const StringSet s = StringSet::for_family(f, 2);
  const auto r = exact_report(f, s);
  c.require(r.instances == 27, "instances");
  c.require(r.max_joint->probability.rational() == Rational(1, 9), "max joint");
  std::vector<oracle::Str> plain_set(s.strings().begin(), s.strings().end());
  const auto [lo, hi] = oracle::joint_range(oracle::multilinear(3, 2), plain_set, 3);
  c.require(as_q(lo) == Rational(1, 9) && as_q(hi) == Rational(1, 9), "oracle joint range");
  if (c.ok) c.detail = "every joint cell 1/9 over 27 instances";
  return c;
}

// C8: cwpoly degeneracy, xor bound, tau pairs.
Check cwpoly_checks() {
  Check c;
  for (const char* spec : {"cwpoly:L=2,init=zero", "cwpoly:L=8,init=zero", "cwpoly:p=5,init=zero"})
    for (const auto& inst : enumerate_instances(parse_family(spec), 1000))
      c.require(hash(inst, HashString{0}) == 0 && hash(inst, HashString{0, 0}) == 0, "(a) zero init");
  const bool a_ok = c.ok;

  std::string b_detail;
  const FamilySpec f = parse_family("cwpoly:L=2");
  bool b_ok = true;
  for (unsigned n = 1; n <= 3; ++n) {
    const auto r = exact_report(f, StringSet::all_up_to(4, n));
    const Rational e = r.eps_axu->probability.rational();
    b_detail += " n=" + std::to_string(n) + ":" + q_str(e);
    if (Rational(n, 4) < e) {
      b_ok = false;
      b_detail += " at " + format_string(r.eps_axu->strings[0]) + "," + format_string(r.eps_axu->strings[1]);
    }
  }
  c.require(b_ok, "(b) eps_axu" + b_detail + " exceeds n/4");

  bool c_ok = true;
  for (const auto& field : {AlgebraSpec::prime_field(2), AlgebraSpec::prime_field(3), AlgebraSpec::binary_field(2),
                            AlgebraSpec::prime_field(5), AlgebraSpec::prime_field(7), AlgebraSpec::binary_field(3)}) {
    const std::uint64_t p = static_cast<std::uint64_t>(field.modulus);
    for (std::uint64_t n = 1; n <= p; ++n) {
      const Witness w = tau_collision_pair(n, field);
      c_ok = c_ok && w.holds && w.measured.at(0).probability.rational() == Rational(n, p);
    }
  }
  c.require(c_ok, "(c) tau pair");
  if (c.ok) c.detail = "zero-init degeneracy, eps_axu" + b_detail + ", tau pairs n/p";
  else if (a_ok && c_ok) c.detail += "; (a) and (c) hold";
  return c;
}

// C9: cwpoly-strong.
Check cwpoly_strong() {
  Check c;
  for (std::uint64_t p : {3, 5}) {
    const auto r = exact_report(parse_family("cwpoly-strong:p=" + std::to_string(p)), StringSet::all_up_to(p, 2));
    c.require(r.instances == (p - 1) * p, "instances");
    const Rational bound(3, p - 1);
    c.require(!(bound < *r.eps_asu()), "p=" + std::to_string(p) + " eps_asu " + q_str(*r.eps_asu()));
    const StringSet strings = StringSet::all_up_to(p, 2);
    std::vector<oracle::Str> plain_set;
    for (const auto& s : strings.strings()) plain_set.push_back(plain(s));
    const auto [lo, hi] = oracle::joint_range(oracle::cwpoly_strong(oracle::prime_field(p)), plain_set, p);
    c.require(as_q(hi) * p == *r.eps_asu(), "oracle disagrees at p=" + std::to_string(p));
    if (c.ok)
      c.detail += (p == 3 ? "" : "; ") + ("p=" + std::to_string(p) + ": eps_asu " + q_str(*r.eps_asu()) + " <= " + q_str(bound));
  }
  return c;
}

// C10: bounds rows.
Check bounds_rows() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  struct Row {
    unsigned L;
    std::uint64_t u, s, st;
  };
  for (const Row& e : {Row{2, 20, 8, 5}, Row{4, 136, 87, 17}, Row{8, 4112, 3366, 257}, Row{16, 2097184, 1908072, 65537}}) {
    const BoundsRow r = table_bounds(e.L);
    c.require(r.card_universal == e.u && r.card_strong == e.s && r.struct_universal == e.st,
              "L=" + std::to_string(e.L));
  }
  const double s = seconds_since(t0);
  c.require(s <= 1.0, "took " + std::to_string(s) + " s");
  if (c.ok) c.detail = "12 integers for L = 2, 4, 8, 16 in " + std::to_string(s) + " s";
  return c;
}

// C11: c^(2^L) vs c^(2^L + lcm) under every map and initial value.
Check unary_forced() {
  Check c;
  std::uint64_t cases = 0;
  for (unsigned L = 1; L <= 2; ++L) {
    const Witness w = unary_forced_collision(L);
    c.require(w.holds && w.certificate == CertificateMode::exhaustive, "witness L=" + std::to_string(L));
    const std::uint64_t m = std::uint64_t{1} << L, r1 = m, r2 = m + oracle::lcm_upto(m);
    std::uint64_t maps = 0;
    for (const auto& a : oracle::tuples(m, static_cast<unsigned>(m)))
      for (std::uint64_t y0 = 0; y0 < m; ++y0, ++maps) {
        std::uint64_t y = y0, z = y0;
        for (std::uint64_t i = 0; i < r1; ++i) y = a[y];
        for (std::uint64_t i = 0; i < r2; ++i) z = a[z];
        c.require(y == z, "brute force L=" + std::to_string(L));
      }
    cases += maps;
    if (L == 2) c.require(maps == 1024, "L=2 should enumerate 1024 functions");
  }
  if (c.ok) c.detail = "all " + std::to_string(cases) + " (map, initial value) cases collide";
  return c;
}

// C12: three-wise break and 3-wise verdicts.
Check threewise() {
  Check c;
  VerifyOptions o;
  o.k_max = 3;
  for (const char* spec : {"tabulated:L=2,sigma=2", "shift-tabulated:L=2,sigma=2", "pearson:L=2",
                           "generalized-pearson:L=2", "cwpoly:L=2"}) {
    const FamilySpec f = parse_family(spec);
    const Witness w = threewise_break(f);
    c.require(w.holds && w.measured.size() == 2 && w.measured[0].probability == w.measured[1].probability &&
                  w.measured[0].probability.count > 0,
              std::string("break ") + spec);
    const auto r = exact_report(f, StringSet::all_up_to(f.alphabet_size, 3), o);
    c.require(r.kwise.size() >= 2 && r.kwise[1].independent == false, std::string("3-wise verdict ") + spec);
  }
  if (c.ok) c.detail = "5 families: equality certified, 3-wise false over lengths <= 3";
  return c;
}

// C13: zobrist.
Check zobrist() {
  Check c;
  VerifyOptions o;
  o.k_max = 4;
  const FamilySpec f = parse_family("zobrist:L=1,sigma=2,maxlen=2");
  const auto r = exact_report(f, StringSet::all_up_to(2, 2), o);
  c.require(r.kwise.size() == 3 && r.kwise[1].independent == true, "3-wise");
  const Witness w = fourwise_break(f);
  c.require(w.holds && w.measured[0].probability.count == 0, "four-wise break");
  if (c.ok) c.detail = "3-wise independent over 6 strings, quadruple " + std::to_string(w.measured[0].probability.count) +
                       "/" + std::to_string(w.measured[0].probability.total);
  return c;
}

// C14: hT separation and perfect unary hash.
Check structural() {
  Check c;
  const HTFamily h(2);
  c.require(h.separation_length() == 14, "separation length");
  c.require(!h.first_unseparated(14).has_value(), "unseparated pair up to 14");
  c.require(ht_family_witness(2).holds, "witness");
  for (unsigned L = 1; L <= 8; ++L) {
    const HashInstance p = perfect_unary_hash(L);
    std::set<std::uint64_t> seen;
    const std::uint64_t m = std::uint64_t{1} << L;
    for (std::uint64_t r = 1; r <= m; ++r) seen.insert(hash_unary(p, 0, r));
    c.require(seen.size() == m, "perfect unary L=" + std::to_string(L));
  }
  if (c.ok) c.detail = "hT separates lengths 1..14; perfect unary injective for L = 1..8";
  return c;
}

// C15: binomial pair.
Check binomial() {
  Check c;
  for (unsigned L = 1; L <= 8; ++L) {
    const Witness w = binomial_collision_pair(L);
    c.require(w.holds && w.certificate == CertificateMode::exhaustive, "L=" + std::to_string(L));
    if (L <= 5)
      c.require(as_q(oracle::collision(oracle::power_of_two(L), plain(w.strings[0]), plain(w.strings[1]))) == 1,
                "oracle L=" + std::to_string(L));
  }
  if (c.ok) c.detail = "collision under every odd B and initial value for L = 1..8";
  return c;
}

// C16: strongly permuting families.
Check strongly_permuting() {
  Check c;
  std::uint64_t instances = 0;
  std::string failing;
  for (unsigned L = 1; L <= 3; ++L) {
    const std::string l = std::to_string(L);
    std::vector<std::string> specs{"pearson:L=" + l, "fnv1:L=" + l + ",prime=3", "fnv1a:L=" + l + ",prime=3",
                                   "division:L=" + l};
    for (unsigned shift = 1; shift < L; ++shift) specs.push_back("bernstein:L=" + l + ",l=" + std::to_string(shift));
    for (const auto& spec : specs)
      for (const auto& inst : enumerate_instances(parse_family(spec), 10'000'000)) {
        ++instances;
        if (is_strongly_permuting(inst)) continue;
        failing += " " + spec + "#" + std::to_string(instances);
        if (inst.spec->construction == Construction::division)
          failing += "(p=x^" + std::to_string(L) + "+" +
                     std::to_string(std::get<DivisionParams>(inst.params).poly_low) + ")";
      }
  }
  Rng rng(2024);
  std::uint64_t collisions = 0;
  const std::vector<std::string> sampled{"pearson:L=8", "bernstein:L=32,l=5", "fnv1:L=32", "fnv1a:L=32",
                                         "division:L=32"};
  for (int i = 0; i < 10'000; ++i) {
    const FamilySpec f = parse_family(sampled[i % sampled.size()]);
    const HashInstance h = sample_instance(f, rng.next());
    const std::size_t len = 1 + rng.below(16);
    HashString s(len);
    for (auto& ch : s) ch = static_cast<Char>(rng.below(f.alphabet_size));
    HashString t = s;
    const std::size_t k = rng.below(len);
    t[k] = static_cast<Char>((t[k] + 1 + rng.below(f.alphabet_size - 1)) % f.alphabet_size);
    collisions += hash(h, s) == hash(h, t);
  }
  c.require(failing.empty(), "not strongly permuting:" + failing);
  c.require(collisions == 0, std::to_string(collisions) + " sampled collisions");
  if (c.ok) c.detail = std::to_string(instances) + " instances strongly permuting; 0 of 10000 hamming-1 pairs collide";
  else if (collisions == 0) c.detail += "; all other of " + std::to_string(instances) + " instances pass, 0 of 10000 hamming-1 pairs collide";
  return c;
}

// C17: gcc-cpp and java-string.
Check reference_hashers() {
  Check c;
  const HashInstance gcc = enumerate_instances(parse_family("gcc-cpp"), 1).at(0);
  const HashString z{'z'};
  c.require(hash(gcc, z) == 122, "gcc-cpp(z)");
  const HashInstance java = enumerate_instances(parse_family("java-string"), 1).at(0);
  const std::vector<std::string> corpus{"",          "a",        "ab",         "hello",     "Hello, World!",
                                        "hash",      "iterated", "universal",  "0123456789", "polygenelubricants",
                                        "zzzzzzzzz", "Aa",       "BB",         "tabulation", "The quick brown fox",
                                        "pearson",   "\x7f\x01", "collisions", "mississippi", "abcdefghijklmnopqrstuvwxyz"};
  for (const auto& w : corpus) {
    const HashString s(w.begin(), w.end());
    c.require(hash(java, s) == oracle::java(plain(s)), "java " + w);
  }
  c.require(hash(java, HashString{'A', 'a'}) == hash(java, HashString{'B', 'B'}), "Aa/BB");
  if (c.ok) c.detail = "gcc-cpp(z) = 122; java-string agrees on " + std::to_string(corpus.size()) + " strings";
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria{
      {"generalized pearson L=2 collision table, exact rows", gp_table},
      {"generalized pearson L=2 certain collision by length 11", certain_collision},
      {"pearson L=2 eps_au over lengths <= 4", pearson_eps},
      {"pearson unary collisions equal d(l)/2^L", pearson_unary},
      {"tabulated pairwise independence", tabulated_joint},
      {"shift-tabulated independence on low bits", shift_tabulated_joint},
      {"multilinear pairwise independence", multilinear_joint},
      {"cwpoly degeneracy, xor bound, tau pairs", cwpoly_checks},
      {"cwpoly-strong almost strong universality", cwpoly_strong},
      {"impossibility bounds rows", bounds_rows},
      {"forced unary collisions", unary_forced},
      {"three-wise impossibility", threewise},
      {"zobrist 3-wise but not 4-wise", zobrist},
      {"hT separation and perfect unary hash", structural},
      {"power-of-two binomial witness", binomial},
      {"strongly permuting families", strongly_permuting},
      {"reference hashers", reference_hashers},
  };
  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("error: ") + e.what();
    }
    if (!c.ok) failed.insert(id);
    std::printf("%s %2d %s: %s%s\n", c.ok ? "PASS" : "FAIL", id, criteria[i].first, c.detail.c_str(),
                !c.ok && kKnownFailures.count(id) ? " (known failure)" : "");
    std::fflush(stdout);
  }
  std::printf("%zu/%zu passed\n", criteria.size() - failed.size(), criteria.size());
  return failed == kKnownFailures ? 0 : 1;
}
