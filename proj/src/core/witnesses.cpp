#include "core/witnesses.hpp"

#include <map>

#include "core/error.hpp"
#include "core/verifier.hpp"

namespace iterhash {

std::string to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::tau_pair: return "tau-pair";
    case WitnessKind::binomial_pair: return "binomial-pair";
    case WitnessKind::unary_forced: return "unary-forced";
    case WitnessKind::perfect_unary: return "perfect-unary";
    case WitnessKind::ht_family: return "hT-family";
    case WitnessKind::threewise_break: return "threewise-break";
    case WitnessKind::fourwise_break: return "fourwise-break";
  }
  return "?";
}

std::string to_string(CertificateMode m) { return m == CertificateMode::exhaustive ? "exhaustive" : "sampled"; }

namespace {

FamilyOptions field_options(const AlgebraSpec& field) {
  FamilyOptions o;
  if (field.kind == AlgebraKind::prime_field) {
    o.prime = field.prime();
  } else {
    require(field.word_bits < 64, ErrorKind::capacity, "field too large");
    o.poly = field.reduction_low | (std::uint64_t{1} << field.word_bits);
  }
  return o;
}

}  // namespace

Witness tau_collision_pair(std::uint64_t n, const AlgebraSpec& field) {
  require(field.is_field(), ErrorKind::unsupported, "tau pair needs a field");
  const std::uint64_t p = field.size();
  require(n >= 1 && n <= p, ErrorKind::domain, "tau pair needs 1 <= n <= |field|");

  // coefficients of prod (t - i), lowest degree first
  std::vector<std::uint64_t> tau{1};
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t root = i;
    std::vector<std::uint64_t> next(tau.size() + 1, 0);
    for (std::size_t k = 0; k < tau.size(); ++k) {
      next[k + 1] = alg_add(field, next[k + 1], tau[k]);
      next[k] = alg_sub(field, next[k], alg_mul(field, tau[k], root));
    }
    tau = std::move(next);
  }
  // h(s) - h(s') = sum t^(n+1-i) (s_i - s'_i) with s = 0: s'_i = -tau_(n+1-i)
  HashString zero(n + 1, 0);
  HashString other(n + 1, 0);
  for (std::uint64_t i = 1; i <= n + 1; ++i) other[i - 1] = static_cast<Char>(alg_neg(field, tau[n + 1 - i]));

  const FamilySpec spec = build_family(Construction::cwpoly, field.word_bits, field_options(field));
  Witness w;
  w.kind = WitnessKind::tau_pair;
  w.family = to_string(spec);
  w.strings = {zero, other};
  w.parameters = {{"n", std::to_string(n)}, {"field", field.describe()}};
  w.claimed = Rational(n, p);
  const Probability measured = collision_probability(spec, zero, other);
  w.measured = {{"collision", measured}};
  w.certificate = CertificateMode::exhaustive;
  w.holds = measured.rational() == *w.claimed;
  return w;
}

Witness binomial_collision_pair(unsigned word_bits, std::uint64_t samples, std::uint64_t seed) {
  require(word_bits >= 1 && word_bits <= 32, ErrorKind::domain, "binomial pair needs 1 <= L <= 32");
  const std::uint64_t mask = word_mask(word_bits);
  HashString binom(word_bits + 1);
  BigInt c = 1;
  for (unsigned k = 0; k <= word_bits; ++k) {
    binom[k] = static_cast<Char>(static_cast<std::uint64_t>(c & mask));
    c = c * (word_bits - k) / (k + 1);
  }
  const HashString zeros(word_bits + 1, 0);
  FamilyOptions o;
  o.alphabet_size = std::min<std::uint64_t>(std::uint64_t{1} << word_bits, std::uint64_t{1} << 32);
  const FamilySpec spec = build_family(Construction::power_of_two, word_bits, o);

  Witness w;
  w.kind = WitnessKind::binomial_pair;
  w.family = to_string(spec);
  w.strings = {binom, zeros};
  w.parameters = {{"L", std::to_string(word_bits)}};
  w.claimed = Rational(1);
  Probability measured;
  if (word_bits <= 8) {
    measured = collision_probability(spec, binom, zeros);
    w.certificate = CertificateMode::exhaustive;
  } else {
    const Estimate e = monte_carlo_collision(spec, binom, zeros, samples, seed);
    measured = {e.hits, e.trials};
    w.certificate = CertificateMode::sampled;
  }
  w.measured = {{"collision", measured}};
  w.holds = measured.count == measured.total;
  return w;
}

Witness unary_forced_collision(unsigned word_bits, Char c, std::uint64_t samples, std::uint64_t seed) {
  require(word_bits >= 1 && word_bits <= 16, ErrorKind::domain, "unary forced collision needs 1 <= L <= 16");
  const std::uint64_t states = std::uint64_t{1} << word_bits;
  const BigInt lcm = lcm_upto(states);
  const BigInt r1 = states;
  const BigInt r2 = states + lcm;

  // every compression function of a one-letter alphabet is some A[y]
  FamilyOptions o;
  o.alphabet_size = 1;
  const FamilySpec spec = build_family(Construction::generalized_pearson, word_bits, o);

  Witness w;
  w.kind = WitnessKind::unary_forced;
  w.family = to_string(spec);
  if (r2 <= (1 << 20)) {
    w.strings = {HashString(static_cast<std::size_t>(r1), c), HashString(static_cast<std::size_t>(r2), c)};
  }
  w.parameters = {{"L", std::to_string(word_bits)},
                  {"character", std::to_string(c)},
                  {"length_a", r1.str()},
                  {"length_b", r2.str()},
                  {"lcm", lcm.str()}};
  w.claimed = Rational(1);
  Probability measured{0, 0};
  if (word_bits <= 2) {
    const InstanceSpace space(spec, kDefaultBudget);
    measured.total = space.size();
    for (std::uint64_t i = 0; i < space.size(); ++i) {
      const HashInstance inst = space.at(i);
      measured.count += hash_unary(inst, 0, r1) == hash_unary(inst, 0, r2);
    }
    w.certificate = CertificateMode::exhaustive;
  } else {
    auto shared = std::make_shared<const FamilySpec>(spec);
    measured.total = samples;
    for (std::uint64_t t = 0; t < samples; ++t) {
      const HashInstance inst = sample_instance(shared, trial_seed(seed, t));
      measured.count += hash_unary(inst, 0, r1) == hash_unary(inst, 0, r2);
    }
    w.certificate = CertificateMode::sampled;
  }
  w.measured = {{"collision", measured}};
  w.holds = measured.count == measured.total;
  return w;
}

HashInstance perfect_unary_hash(unsigned word_bits) {
  require(word_bits >= 1 && word_bits <= 16, ErrorKind::domain, "perfect unary hash needs 1 <= L <= 16");
  FamilyOptions o;
  o.alphabet_size = 1;
  o.init = InitPolicy::fixed_zero;
  auto spec = std::make_shared<const FamilySpec>(build_family(Construction::pearson, word_bits, o));
  const std::uint64_t n = std::uint64_t{1} << word_bits;
  std::vector<std::uint64_t> a(n);
  for (std::uint64_t y = 0; y < n; ++y) a[y] = (y + 1) % n;
  return make_instance(spec, ArrayParams{std::move(a)}, 0);
}

Witness perfect_unary_witness(unsigned word_bits) {
  const HashInstance h = perfect_unary_hash(word_bits);
  const std::uint64_t n = std::uint64_t{1} << word_bits;
  std::vector<bool> seen(n, false);
  bool injective = true;
  std::uint64_t y = h.init_value;
  for (std::uint64_t r = 1; r <= n; ++r) {
    y = step(h, y, 0, 1);
    if (seen[y]) injective = false;
    seen[y] = true;
  }
  Witness w;
  w.kind = WitnessKind::perfect_unary;
  w.family = to_string(h.family());
  w.parameters = {{"L", std::to_string(word_bits)}, {"lengths", "1.." + std::to_string(n)}};
  w.certificate = CertificateMode::exhaustive;
  w.holds = injective;
  w.note = injective ? "no collision among unary strings of length 1..2^L" : "collision found";
  return w;
}

HTFamily::HTFamily(unsigned word_bits) : word_bits_(word_bits) {
  require(word_bits >= 1 && word_bits <= 16, ErrorKind::domain, "hT family needs 1 <= L <= 16");
}

std::int64_t HTFamily::literal(std::uint64_t t, std::uint64_t r) const {
  const std::uint64_t n = members();
  require(t >= 1 && t <= n, ErrorKind::domain, "T must be in 1..2^L");
  if (r < n) return static_cast<std::int64_t>(r);
  return static_cast<std::int64_t>(n) - static_cast<std::int64_t>(t) - static_cast<std::int64_t>((r - n) % t);
}

std::uint64_t HTFamily::value(std::uint64_t t, std::uint64_t r) const {
  const std::uint64_t n = members();
  require(t >= 1 && t <= n, ErrorKind::domain, "T must be in 1..2^L");
  if (r < n) return r;
  return n - t + (r - n) % t;
}

BigInt HTFamily::separation_length() const { return members() + lcm_upto(members()) - 2; }

std::optional<std::pair<std::uint64_t, std::uint64_t>> HTFamily::first_unseparated(std::uint64_t max_len,
                                                                                   bool use_literal) const {
  require(max_len <= (std::uint64_t{1} << 24), ErrorKind::capacity, "separation check limited to lengths below 2^24");
  const std::uint64_t n = members();
  std::map<std::vector<std::int64_t>, std::uint64_t> first;
  std::vector<std::int64_t> sig(n);
  for (std::uint64_t r = 0; r <= max_len; ++r) {
    for (std::uint64_t t = 1; t <= n; ++t)
      sig[t - 1] = use_literal ? literal(t, r) : static_cast<std::int64_t>(value(t, r));
    const auto [it, inserted] = first.emplace(sig, r);
    if (!inserted) return std::make_pair(it->second, r);
  }
  return std::nullopt;
}

std::optional<std::vector<std::uint64_t>> HTFamily::compression_function(std::uint64_t t, bool use_literal) const {
  const std::uint64_t n = members();
  std::vector<std::int64_t> next(n, -1);
  auto h = [&](std::uint64_t r) { return use_literal ? literal(t, r) : static_cast<std::int64_t>(value(t, r)); };
  for (std::uint64_t r = 0; r < n + 2 * t; ++r) {
    const std::int64_t y = h(r);
    const std::int64_t z = h(r + 1);
    if (y < 0 || z < 0 || y >= static_cast<std::int64_t>(n) || z >= static_cast<std::int64_t>(n)) return std::nullopt;
    if (next[y] >= 0 && next[y] != z) return std::nullopt;
    next[y] = z;
  }
  std::vector<std::uint64_t> out(n);
  for (std::uint64_t y = 0; y < n; ++y) out[y] = next[y] < 0 ? y : static_cast<std::uint64_t>(next[y]);
  return out;
}

Witness ht_family_witness(unsigned word_bits) {
  const HTFamily fam(word_bits);
  Witness w;
  w.kind = WitnessKind::ht_family;
  w.family = "hT:L=" + std::to_string(word_bits);
  const BigInt limit = fam.separation_length();
  w.parameters = {{"L", std::to_string(word_bits)}, {"separation_length", limit.str()}};
  require(limit <= (1 << 24), ErrorKind::capacity, "separation check intractable beyond L=4");
  const auto gap = fam.first_unseparated(static_cast<std::uint64_t>(limit));
  bool realizable = true;
  std::string literal_note;
  for (std::uint64_t t = 1; t <= fam.members(); ++t) {
    if (!fam.compression_function(t)) realizable = false;
    if (!fam.compression_function(t, true)) literal_note += (literal_note.empty() ? "" : ",") + std::to_string(t);
  }
  w.parameters.emplace_back("realizable", realizable ? "true" : "false");
  w.parameters.emplace_back("printed_formula_not_iterated_for_T",
                            literal_note.empty() ? "none" : literal_note);
  w.certificate = CertificateMode::exhaustive;
  w.holds = !gap && realizable;
  w.note = gap ? "lengths " + std::to_string(gap->first) + " and " + std::to_string(gap->second) + " not separated"
               : "every pair of lengths up to 2^L + lcm - 2 is separated";
  return w;
}

Witness threewise_break(const FamilySpec& spec, std::uint64_t budget) {
  require(spec.iterated(), ErrorKind::unsupported, "threewise break applies to conventional iterated families");
  const InstanceSpace space(spec, budget);
  const std::uint64_t m = spec.value_count();
  require(m <= (1 << 16), ErrorKind::capacity, "threewise break limited to 2^16 hash values");
  require(spec.alphabet_size <= 256, ErrorKind::capacity, "threewise break limited to 256 characters");
  const std::uint64_t sigma = spec.alphabet_size;
  const std::uint64_t I = space.size();
  std::vector<std::uint64_t> pair(sigma * sigma * m, 0), triple(sigma * sigma * m, 0);
  for (std::uint64_t i = 0; i < I; ++i) {
    const HashInstance inst = space.at(i);
    for (Char a = 0; a < sigma; ++a) {
      const std::uint64_t ha = step(inst, inst.init_value, a, 1);
      for (Char b = 0; b < sigma; ++b) {
        const std::uint64_t hab = step(inst, ha, b, 2);
        if (hab != ha) continue;
        const std::uint64_t habb = step(inst, hab, b, 3);
        const std::uint64_t cell = (a * sigma + b) * m + ha;
        ++pair[cell];
        triple[cell] += habb == ha;
      }
    }
  }
  Witness w;
  w.kind = WitnessKind::threewise_break;
  w.family = to_string(spec);
  w.certificate = CertificateMode::exhaustive;
  for (std::uint64_t cell = 0; cell < pair.size(); ++cell) {
    if (pair[cell] == 0) continue;
    const Char a = static_cast<Char>(cell / m / sigma);
    const Char b = static_cast<Char>(cell / m % sigma);
    const std::uint64_t y = cell % m;
    w.strings = {{a}, {a, b}, {a, b, b}};
    w.values = {y};
    const Probability left{pair[cell], I};
    const Probability right{triple[cell], I};
    w.claimed = left.rational();
    w.measured = {{"P(h(a)=y, h(ab)=y)", left}, {"P(h(a)=y, h(ab)=y, h(abb)=y)", right}};
    w.holds = left.count == right.count;
    w.note = w.holds ? "3-wise independence would need the two sides to differ by a factor 2^L" : "equality violated";
    return w;
  }
  w.holds = false;
  w.note = "no (a, b, y) with non-zero probability; degenerate family";
  return w;
}

Witness fourwise_break(const FamilySpec& spec, std::uint64_t budget) {
  require(spec.construction == Construction::zobrist, ErrorKind::unsupported, "fourwise break is for zobrist");
  require(spec.alphabet_size >= 2 && spec.max_len >= 2, ErrorKind::domain, "fourwise break needs sigma >= 2, maxlen >= 2");
  const InstanceSpace space(spec, budget);
  const HashString s{0}, t{1}, sa{0, 0}, ta{1, 0};
  std::uint64_t split = 0, same = 0;
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    const HashInstance inst = space.at(i);
    if (hash(inst, s) != 0 || hash(inst, t) != 0) continue;
    const std::uint64_t z = hash(inst, sa), z2 = hash(inst, ta);
    split += z == 0 && z2 == 1;
    same += z == 0 && z2 == 0;
  }
  Witness w;
  w.kind = WitnessKind::fourwise_break;
  w.family = to_string(spec);
  w.strings = {s, t, sa, ta};
  w.values = {0, 0, 0, 1};
  w.certificate = CertificateMode::exhaustive;
  w.claimed = Rational(0);
  const Rational required(1, BigInt(1) << (4 * spec.word_bits));
  w.parameters = {{"required", boost::multiprecision::numerator(required).str() + "/" +
                                   boost::multiprecision::denominator(required).str()}};
  w.measured = {{"P(y, y, z, z') with z != z'", {split, space.size()}}, {"P(y, y, z, z)", {same, space.size()}}};
  w.holds = split == 0;
  return w;
}

}  // namespace iterhash
