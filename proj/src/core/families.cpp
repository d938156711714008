#include "core/families.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <unordered_map>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace iterhash {

namespace {

constexpr std::array kConstructions = {
    Construction::multilinear,  Construction::zobrist,  Construction::cwpoly,
    Construction::cwpoly_strong, Construction::tabulated, Construction::shift_tabulated,
    Construction::pearson,      Construction::generalized_pearson, Construction::division,
    Construction::bernstein,    Construction::fnv1,     Construction::fnv1a,
    Construction::sax,          Construction::sxx,      Construction::gcc_cpp,
    Construction::java_string,  Construction::power_of_two,
};

constexpr const char* kGrammar =
    "<construction>:L=<bits>[,sigma=<n>][,poly=0x..][,p=<prime>][,l=..,r=..]"
    "[,init=zero|one|random][,maxlen=..][,B=<multiplier>][,prime=<fnv prime>]\n"
    "constructions: multilinear zobrist cwpoly cwpoly-strong tabulated shift-tabulated pearson "
    "generalized-pearson division bernstein fnv1 fnv1a sax sxx gcc-cpp java-string power-of-two";

std::uint64_t byte_alphabet(unsigned word_bits) { return word_bits >= 8 ? 256 : (std::uint64_t{1} << word_bits); }

BigInt big_pow2(unsigned bits) { return BigInt(1) << bits; }

BigInt big_factorial(std::uint64_t n) {
  BigInt r = 1;
  for (std::uint64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

std::uint64_t to_word(const BigInt& v) { return static_cast<std::uint64_t>(v); }

}  // namespace

std::string to_string(Construction c) {
  switch (c) {
    case Construction::multilinear: return "multilinear";
    case Construction::zobrist: return "zobrist";
    case Construction::cwpoly: return "cwpoly";
    case Construction::cwpoly_strong: return "cwpoly-strong";
    case Construction::tabulated: return "tabulated";
    case Construction::shift_tabulated: return "shift-tabulated";
    case Construction::pearson: return "pearson";
    case Construction::generalized_pearson: return "generalized-pearson";
    case Construction::division: return "division";
    case Construction::bernstein: return "bernstein";
    case Construction::fnv1: return "fnv1";
    case Construction::fnv1a: return "fnv1a";
    case Construction::sax: return "sax";
    case Construction::sxx: return "sxx";
    case Construction::gcc_cpp: return "gcc-cpp";
    case Construction::java_string: return "java-string";
    case Construction::power_of_two: return "power-of-two";
  }
  return "?";
}

std::optional<Construction> construction_from_string(std::string_view name) {
  for (Construction c : kConstructions)
    if (to_string(c) == name) return c;
  return std::nullopt;
}

std::span<const Construction> all_constructions() { return kConstructions; }

std::string to_string(InitPolicy p) {
  switch (p) {
    case InitPolicy::fixed_zero: return "zero";
    case InitPolicy::fixed_one: return "one";
    case InitPolicy::uniform_random: return "random";
  }
  return "?";
}

const char* family_grammar() { return kGrammar; }

std::uint64_t FamilySpec::value_count() const {
  if (prime_valued()) return algebra->prime();
  require(word_bits < 64, ErrorKind::capacity, "value range 2^64 does not fit a word");
  return std::uint64_t{1} << word_bits;
}

bool FamilySpec::position_dependent() const {
  return construction == Construction::multilinear || construction == Construction::zobrist;
}

FamilySpec build_family(Construction c, unsigned word_bits, const FamilyOptions& o) {
  FamilySpec f;
  f.construction = c;
  f.word_bits = word_bits;
  const std::string name = to_string(c);

  auto field_algebra = [&]() {
    if (o.prime) {
      require(!o.poly, ErrorKind::usage, name + ": give either p= or poly=, not both");
      f.algebra = AlgebraSpec::prime_field(*o.prime);
      f.word_bits = f.algebra->word_bits;
      return;
    }
    require(f.word_bits >= 1 && f.word_bits <= 64, ErrorKind::usage, name + ": L must be in 1..64");
    if (o.poly) {
      require(f.word_bits < 64 && (*o.poly >> f.word_bits) == 1, ErrorKind::usage,
              name + ": poly must have degree exactly L");
      f.algebra = AlgebraSpec::binary_field(f.word_bits, *o.poly ^ (std::uint64_t{1} << f.word_bits));
    } else {
      f.algebra = AlgebraSpec::binary_field(f.word_bits);
    }
  };

  if (c == Construction::gcc_cpp || c == Construction::java_string) {
    require(word_bits == 0 || word_bits == 32, ErrorKind::usage, name + " is defined for L=32 only");
    f.word_bits = 32;
  } else if (!((c == Construction::cwpoly || c == Construction::cwpoly_strong || c == Construction::multilinear) &&
               o.prime)) {
    require(word_bits >= 1 && word_bits <= 64, ErrorKind::usage, name + ": L must be in 1..64");
  }
  require(!o.prime || c == Construction::cwpoly || c == Construction::cwpoly_strong || c == Construction::multilinear,
          ErrorKind::usage, name + " does not take p=");
  require(!o.poly || c == Construction::cwpoly || c == Construction::cwpoly_strong || c == Construction::multilinear ||
              c == Construction::tabulated || c == Construction::division,
          ErrorKind::usage, name + " does not take poly=");
  require(!o.max_len || c == Construction::multilinear || c == Construction::zobrist, ErrorKind::usage,
          name + " does not take maxlen=");
  require(!o.multiplier || c == Construction::power_of_two, ErrorKind::usage, name + " does not take B=");
  require(!o.fnv_prime || c == Construction::fnv1 || c == Construction::fnv1a, ErrorKind::usage,
          name + " does not take prime=");
  require(!(o.shift_left || o.shift_right) || c == Construction::bernstein || c == Construction::sax ||
              c == Construction::sxx,
          ErrorKind::usage, name + " does not take l=/r=");

  std::uint64_t default_sigma = 2;
  auto value_alphabet = [&] {
    return f.prime_valued() ? f.algebra->prime() : std::uint64_t{1} << std::min(f.word_bits, 32u);
  };
  InitPolicy default_init = InitPolicy::uniform_random;

  switch (c) {
    case Construction::multilinear:
      field_algebra();
      default_sigma = value_alphabet();
      f.max_len = o.max_len.value_or(4);
      require(f.max_len >= 1, ErrorKind::usage, "multilinear: maxlen must be positive");
      break;
    case Construction::zobrist:
      f.max_len = o.max_len.value_or(4);
      require(f.max_len >= 1, ErrorKind::usage, "zobrist: maxlen must be positive");
      default_init = InitPolicy::fixed_zero;
      break;
    case Construction::cwpoly:
      field_algebra();
      default_sigma = value_alphabet();
      default_init = InitPolicy::fixed_one;
      break;
    case Construction::cwpoly_strong:
      field_algebra();
      default_sigma = value_alphabet();
      require(!o.init || *o.init == InitPolicy::fixed_one, ErrorKind::usage,
              "cwpoly-strong fixes the initial value to 1");
      default_init = InitPolicy::fixed_one;
      break;
    case Construction::tabulated:
      field_algebra();
      break;
    case Construction::shift_tabulated:
      f.algebra = AlgebraSpec::binary_ring(word_bits);
      break;
    case Construction::pearson:
    case Construction::generalized_pearson:
      require(word_bits <= 24, ErrorKind::capacity, name + ": the 2^L-entry array is limited to L <= 24");
      default_sigma = byte_alphabet(word_bits);
      break;
    case Construction::division:
      default_sigma = byte_alphabet(word_bits);
      default_init = InitPolicy::fixed_one;
      if (o.poly) {
        field_algebra();
        f.division_low = f.algebra->reduction_low;
      }
      break;
    case Construction::bernstein:
      f.shift_left = o.shift_left.value_or(std::clamp(word_bits - 1, 1U, 5U));
      require(f.shift_left >= 1 && f.shift_left < 64, ErrorKind::usage, "bernstein: need 0 < l < 64");
      default_sigma = byte_alphabet(word_bits);
      f.algebra = AlgebraSpec::mod2L(word_bits);
      break;
    case Construction::fnv1:
    case Construction::fnv1a:
      f.fnv_prime = o.fnv_prime.value_or(word_bits <= 32 ? 16777619ULL : 1099511628211ULL) & word_mask(word_bits);
      require(f.fnv_prime % 2 == 1, ErrorKind::usage, name + ": the multiplier must be odd");
      default_sigma = byte_alphabet(word_bits);
      f.algebra = AlgebraSpec::mod2L(word_bits);
      break;
    case Construction::sax:
    case Construction::sxx:
      f.shift_left = o.shift_left.value_or(std::max(1U, (5 * word_bits + 16) / 32));
      f.shift_right = o.shift_right.value_or(std::max(1U, (2 * word_bits + 16) / 32));
      require(f.shift_left > 0 && f.shift_left < word_bits && f.shift_right > 0 && f.shift_right < word_bits,
              ErrorKind::usage, name + ": need 0 < l, r < L");
      default_sigma = byte_alphabet(word_bits);
      f.algebra = AlgebraSpec::mod2L(word_bits);
      break;
    case Construction::gcc_cpp:
    case Construction::java_string:
      require(!o.init || *o.init == InitPolicy::fixed_zero, ErrorKind::usage, name + " has a zero initial value");
      default_sigma = 256;
      default_init = InitPolicy::fixed_zero;
      f.algebra = AlgebraSpec::mod2L(32);
      break;
    case Construction::power_of_two:
      default_sigma = byte_alphabet(word_bits);
      if (o.multiplier) {
        require(*o.multiplier <= word_mask(word_bits), ErrorKind::usage, "power-of-two: B must be below 2^L");
        f.multiplier = *o.multiplier;
      }
      f.algebra = AlgebraSpec::mod2L(word_bits);
      break;
  }

  f.alphabet_size = o.alphabet_size.value_or(default_sigma);
  f.init = o.init.value_or(default_init);
  require(f.alphabet_size >= 1, ErrorKind::usage, name + ": sigma must be positive");
  require(f.alphabet_size <= (std::uint64_t{1} << 32), ErrorKind::usage, name + ": sigma must be at most 2^32");
  const bool characters_are_values = c == Construction::multilinear || c == Construction::cwpoly ||
                                     c == Construction::cwpoly_strong || c == Construction::pearson ||
                                     c == Construction::generalized_pearson || c == Construction::division ||
                                     c == Construction::bernstein || c == Construction::fnv1 ||
                                     c == Construction::fnv1a || c == Construction::power_of_two;
  if (characters_are_values && f.word_bits < 64) {
    require(f.alphabet_size <= f.value_count(), ErrorKind::usage,
            name + ": characters must be hash values, so sigma <= " + std::to_string(f.value_count()));
  }
  return f;
}

namespace {

std::uint64_t parse_number(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  int base = 10;
  if (v.size() > 2 && v[0] == '0' && (v[1] == 'x' || v[1] == 'X')) {
    v.remove_prefix(2);
    base = 16;
  }
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out, base);
  require(ec == std::errc() && ptr == v.data() + v.size() && !v.empty(), ErrorKind::usage,
          "family spec: bad value for " + std::string(key) + "\n" + kGrammar);
  return out;
}

unsigned parse_small(std::string_view key, std::string_view v) {
  const std::uint64_t n = parse_number(key, v);
  require(n <= 1'000'000, ErrorKind::usage, "family spec: " + std::string(key) + " too large");
  return static_cast<unsigned>(n);
}

}  // namespace

FamilySpec parse_family(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const auto construction = construction_from_string(name);
  require(construction.has_value(), ErrorKind::usage, "unknown family '" + std::string(name) + "'\n" + kGrammar);

  FamilyOptions o;
  unsigned word_bits = 0;
  std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    const auto eq = item.find('=');
    require(eq != std::string_view::npos, ErrorKind::usage, "family spec: expected key=value, got '" +
                                                                 std::string(item) + "'\n" + kGrammar);
    const std::string_view key = item.substr(0, eq);
    const std::string_view value = item.substr(eq + 1);
    if (key == "L") {
      word_bits = parse_small(key, value);
    } else if (key == "sigma") {
      o.alphabet_size = parse_number(key, value);
    } else if (key == "poly") {
      o.poly = parse_number(key, value);
    } else if (key == "p") {
      o.prime = parse_number(key, value);
    } else if (key == "l") {
      o.shift_left = parse_small(key, value);
    } else if (key == "r") {
      o.shift_right = parse_small(key, value);
    } else if (key == "maxlen") {
      o.max_len = parse_small(key, value);
    } else if (key == "B") {
      o.multiplier = parse_number(key, value);
    } else if (key == "prime") {
      o.fnv_prime = parse_number(key, value);
    } else if (key == "init") {
      if (value == "zero") {
        o.init = InitPolicy::fixed_zero;
      } else if (value == "one") {
        o.init = InitPolicy::fixed_one;
      } else if (value == "random") {
        o.init = InitPolicy::uniform_random;
      } else {
        fail(ErrorKind::usage, "family spec: init must be zero, one or random\n" + std::string(kGrammar));
      }
    } else {
      fail(ErrorKind::usage, "family spec: unknown key '" + std::string(key) + "'\n" + kGrammar);
    }
  }
  return build_family(*construction, word_bits, o);
}

std::string to_string(const FamilySpec& f) {
  std::string s = to_string(f.construction) + ":L=" + std::to_string(f.word_bits) +
                  ",sigma=" + std::to_string(f.alphabet_size);
  if (f.prime_valued()) s += ",p=" + f.algebra->modulus.str();
  if (f.algebra && f.algebra->kind == AlgebraKind::binary_field)
    s += ",poly=" + gf2::poly_hex(f.word_bits, f.algebra->reduction_low);
  if (f.construction == Construction::bernstein) s += ",l=" + std::to_string(f.shift_left);
  if (f.construction == Construction::sax || f.construction == Construction::sxx)
    s += ",l=" + std::to_string(f.shift_left) + ",r=" + std::to_string(f.shift_right);
  if (f.multiplier) s += ",B=" + std::to_string(*f.multiplier);
  if (f.construction == Construction::fnv1 || f.construction == Construction::fnv1a)
    s += ",prime=" + std::to_string(f.fnv_prime);
  if (f.position_dependent()) s += ",maxlen=" + std::to_string(f.max_len);
  s += ",init=" + to_string(f.init);
  return s;
}

namespace {

std::uint64_t value_limit(const FamilySpec& f) {
  return f.prime_valued() ? f.algebra->prime() - 1 : f.value_mask();
}

void check_values(const std::vector<std::uint64_t>& v, std::uint64_t limit, const char* what) {
  for (std::uint64_t x : v) require(x <= limit, ErrorKind::domain, std::string(what) + " entry out of range");
}

}  // namespace

HashInstance make_instance(std::shared_ptr<const FamilySpec> spec, InstanceParams params, std::uint64_t init_value) {
  require(spec != nullptr, ErrorKind::usage, "instance without a family");
  const FamilySpec& f = *spec;
  const std::uint64_t limit = value_limit(f);
  require(init_value <= limit, ErrorKind::domain, "initial value out of range");
  auto expect = [&](bool ok) {
    require(ok, ErrorKind::usage, "parameters do not match family " + to_string(f.construction));
  };
  switch (f.construction) {
    case Construction::multilinear: {
      auto* p = std::get_if<CoefficientParams>(&params);
      expect(p && p->m.size() == f.max_len);
      check_values(p->m, limit, "coefficient");
      break;
    }
    case Construction::zobrist: {
      auto* p = std::get_if<PositionTableParams>(&params);
      expect(p && p->h.size() == f.max_len * f.alphabet_size);
      check_values(p->h, limit, "position table");
      break;
    }
    case Construction::cwpoly: {
      auto* p = std::get_if<PolyParams>(&params);
      expect(p != nullptr);
      require(p->t <= limit, ErrorKind::domain, "t out of range");
      break;
    }
    case Construction::cwpoly_strong: {
      auto* p = std::get_if<StrongPolyParams>(&params);
      expect(p != nullptr);
      require(p->t != 0 && p->t <= limit && p->zeta <= limit, ErrorKind::domain,
              "cwpoly-strong needs non-zero t and in-range zeta");
      require(init_value == 1, ErrorKind::domain, "cwpoly-strong has initial value 1");
      break;
    }
    case Construction::tabulated:
    case Construction::shift_tabulated: {
      auto* p = std::get_if<TableParams>(&params);
      expect(p && p->gamma.size() == f.alphabet_size);
      check_values(p->gamma, limit, "Gamma");
      break;
    }
    case Construction::pearson:
    case Construction::generalized_pearson: {
      auto* p = std::get_if<ArrayParams>(&params);
      expect(p && p->a.size() == (std::uint64_t{1} << f.word_bits));
      check_values(p->a, limit, "A");
      if (f.construction == Construction::pearson) {
        std::vector<bool> seen(p->a.size(), false);
        for (std::uint64_t v : p->a) {
          require(!seen[v], ErrorKind::domain, "pearson: A must be a permutation");
          seen[v] = true;
        }
      }
      break;
    }
    case Construction::division: {
      auto* p = std::get_if<DivisionParams>(&params);
      expect(p != nullptr);
      require(p->poly_low <= f.value_mask() && gf2::is_irreducible_rabin(f.word_bits, p->poly_low), ErrorKind::domain,
              "division: p(x) must be irreducible of degree L");
      break;
    }
    case Construction::power_of_two: {
      auto* p = std::get_if<MultiplierParams>(&params);
      expect(p != nullptr);
      require(p->b <= f.value_mask(), ErrorKind::domain, "power-of-two: B out of range");
      break;
    }
    default:
      expect(std::holds_alternative<NoParams>(params));
      break;
  }
  return HashInstance{std::move(spec), std::move(params), init_value};
}

std::uint64_t step(const HashInstance& inst, std::uint64_t y, Char c, std::size_t position) {
  const FamilySpec& f = *inst.spec;
  const std::uint64_t mask = f.value_mask();
  switch (f.construction) {
    case Construction::multilinear: {
      const auto& m = std::get<CoefficientParams>(inst.params).m;
      return alg_add(*f.algebra, y, alg_mul(*f.algebra, m[position - 1], c));
    }
    case Construction::zobrist:
      return y ^ std::get<PositionTableParams>(inst.params).h[(position - 1) * f.alphabet_size + c];
    case Construction::cwpoly:
      return alg_add(*f.algebra, alg_mul(*f.algebra, std::get<PolyParams>(inst.params).t, y), c);
    case Construction::cwpoly_strong: {
      const auto& p = std::get<StrongPolyParams>(inst.params);
      return alg_add(*f.algebra, y, alg_mul(*f.algebra, alg_pow(*f.algebra, p.t, position), c));
    }
    case Construction::tabulated:
      return gf2::xtimes(y, f.algebra->reduction_low, f.word_bits) ^ std::get<TableParams>(inst.params).gamma[c];
    case Construction::shift_tabulated: {
      const std::uint64_t rot = f.word_bits == 64 ? std::rotl(y, 1) : (((y << 1) | (y >> (f.word_bits - 1))) & mask);
      return rot ^ std::get<TableParams>(inst.params).gamma[c];
    }
    case Construction::pearson:
    case Construction::generalized_pearson:
      return std::get<ArrayParams>(inst.params).a[y ^ c];
    case Construction::division: {
      const std::uint64_t low = std::get<DivisionParams>(inst.params).poly_low;
      return gf2::mulmod(y, low, low, f.word_bits) ^ c;
    }
    case Construction::bernstein:
      return (((y << f.shift_left) + y) ^ c) & mask;
    case Construction::fnv1:
      return ((y * f.fnv_prime) & mask) ^ c;
    case Construction::fnv1a:
      return ((y ^ c) * f.fnv_prime) & mask;
    case Construction::sax:
      return (y ^ ((y << f.shift_left) + (y >> f.shift_right) + c)) & mask;
    case Construction::sxx:
      return (y ^ ((y << f.shift_left) ^ (y >> f.shift_right) ^ c)) & mask;
    case Construction::gcc_cpp:
      return (5 * y + c) & 0xffffffffULL;
    case Construction::java_string:
      return (31 * y + c) & 0xffffffffULL;
    case Construction::power_of_two:
      return (std::get<MultiplierParams>(inst.params).b * y + c) & mask;
  }
  return 0;
}

std::uint64_t start_state(const HashInstance& inst) {
  return inst.spec->construction == Construction::cwpoly_strong ? 0 : inst.init_value;
}

std::uint64_t finalize(const HashInstance& inst, std::uint64_t state, std::size_t length) {
  const FamilySpec& f = *inst.spec;
  if (f.construction != Construction::cwpoly_strong) return state;
  const auto& p = std::get<StrongPolyParams>(inst.params);
  return alg_add(*f.algebra, alg_add(*f.algebra, state, alg_pow(*f.algebra, p.t, length + 1)), p.zeta);
}

namespace {

void check_char(const FamilySpec& f, Char c) {
  require(c < f.alphabet_size, ErrorKind::domain,
          "character " + std::to_string(c) + " outside alphabet of size " + std::to_string(f.alphabet_size));
}

}  // namespace

std::uint64_t compress(const HashInstance& inst, std::uint64_t state, Char c, std::size_t position) {
  const FamilySpec& f = *inst.spec;
  require(state <= value_limit(f), ErrorKind::domain, "state out of range");
  check_char(f, c);
  require(position >= 1, ErrorKind::domain, "positions count from 1");
  if (f.position_dependent())
    require(position <= f.max_len, ErrorKind::capacity,
            "position " + std::to_string(position) + " beyond the parameter table (maxlen " +
                std::to_string(f.max_len) + ")");
  return step(inst, state, c, position);
}

std::uint64_t hash(const HashInstance& inst, std::span<const Char> s) {
  const FamilySpec& f = *inst.spec;
  for (Char c : s) check_char(f, c);
  if (f.position_dependent())
    require(s.size() <= f.max_len, ErrorKind::capacity,
            "string of length " + std::to_string(s.size()) + " exceeds maxlen " + std::to_string(f.max_len));
  if (f.rejects_trailing_zero())
    require(s.empty() || s.back() != 0, ErrorKind::domain, "multilinear forbids strings ending with zero");
  std::uint64_t y = start_state(inst);
  for (std::size_t i = 0; i < s.size(); ++i) y = step(inst, y, s[i], i + 1);
  return finalize(inst, y, s.size());
}

std::uint64_t hash_unary(const HashInstance& inst, Char c, const BigInt& length) {
  const FamilySpec& f = *inst.spec;
  require(f.iterated(), ErrorKind::unsupported, "unary fast-forward needs a conventional iterated family");
  check_char(f, c);
  require(length >= 0, ErrorKind::domain, "negative length");
  constexpr std::uint64_t kWalkLimit = std::uint64_t{1} << 26;
  std::uint64_t y = inst.init_value;
  if (length <= kWalkLimit) {
    for (auto r = static_cast<std::uint64_t>(length); r > 0; --r) y = step(inst, y, c, 1);
    return y;
  }
  std::unordered_map<std::uint64_t, std::uint64_t> first_seen;
  std::vector<std::uint64_t> orbit;
  for (std::uint64_t r = 0;; ++r) {
    const auto [it, inserted] = first_seen.emplace(y, r);
    if (!inserted) {
      const std::uint64_t tail = it->second;
      const std::uint64_t period = r - tail;
      const BigInt offset = (length - tail) % period;
      return orbit[tail + static_cast<std::uint64_t>(offset)];
    }
    require(r < kWalkLimit, ErrorKind::capacity, "unary orbit longer than 2^26 states");
    orbit.push_back(y);
    y = step(inst, y, c, 1);
  }
}

std::int32_t as_signed32(std::uint64_t value) { return static_cast<std::int32_t>(static_cast<std::uint32_t>(value)); }

namespace {

BigInt param_cardinality(const FamilySpec& f) {
  const BigInt values = f.prime_valued() ? BigInt(f.algebra->prime()) : big_pow2(f.word_bits);
  switch (f.construction) {
    case Construction::multilinear: return boost::multiprecision::pow(values, f.max_len);
    case Construction::zobrist:
      return boost::multiprecision::pow(values, static_cast<unsigned>(f.max_len * f.alphabet_size));
    case Construction::cwpoly: return values;
    case Construction::cwpoly_strong: return (values - 1) * values;
    case Construction::tabulated:
    case Construction::shift_tabulated:
      require(f.alphabet_size <= 4096, ErrorKind::capacity, "table family too large to count");
      return boost::multiprecision::pow(values, static_cast<unsigned>(f.alphabet_size));
    case Construction::pearson:
      require(f.word_bits <= 12, ErrorKind::capacity, "pearson family too large to count");
      return big_factorial(std::uint64_t{1} << f.word_bits);
    case Construction::generalized_pearson:
      require(f.word_bits <= 12, ErrorKind::capacity, "generalized-pearson family too large to count");
      return boost::multiprecision::pow(values, 1U << f.word_bits);
    case Construction::division:
      if (f.division_low) return 1;
      return gf2::irreducible_polys(f.word_bits).size();
    case Construction::power_of_two:
      if (f.multiplier) return 1;
      return big_pow2(f.word_bits - 1);
    default: return 1;
  }
}

BigInt init_cardinality(const FamilySpec& f) {
  if (f.construction == Construction::cwpoly_strong || f.init != InitPolicy::uniform_random) return 1;
  return f.prime_valued() ? BigInt(f.algebra->prime()) : big_pow2(f.word_bits);
}

}  // namespace

BigInt family_cardinality(const FamilySpec& f) { return param_cardinality(f) * init_cardinality(f); }

InstanceSpace::InstanceSpace(FamilySpec spec, std::uint64_t budget)
    : spec_(std::make_shared<const FamilySpec>(std::move(spec))) {
  const FamilySpec& f = *spec_;
  // Guard the counting itself against astronomically large families.
  if (f.construction == Construction::pearson || f.construction == Construction::generalized_pearson)
    require(f.word_bits <= 4, ErrorKind::capacity,
            to_string(f.construction) + " at L=" + std::to_string(f.word_bits) + " is not enumerable");
  if (f.construction == Construction::division && !f.division_low)
    require(f.word_bits <= kMaxIrreducibleEnumeration, ErrorKind::capacity,
            "division: cannot enumerate irreducible polynomials of degree " + std::to_string(f.word_bits));
  const BigInt params = param_cardinality(f);
  const BigInt inits = init_cardinality(f);
  const BigInt total = params * inits;
  require(total <= budget, ErrorKind::capacity,
          "family " + to_string(f) + " has " + total.str() + " instances, over the budget of " +
              std::to_string(budget));
  param_count_ = to_word(params);
  init_count_ = to_word(inits);
  size_ = to_word(total);
  if (f.construction == Construction::division && !f.division_low) {
    for (std::uint64_t full : gf2::irreducible_polys(f.word_bits))
      division_polys_.push_back(full ^ (std::uint64_t{1} << f.word_bits));
  }
}

InstanceParams InstanceSpace::params_at(std::uint64_t index) const {
  const FamilySpec& f = *spec_;
  const std::uint64_t values = f.prime_valued() ? f.algebra->prime() : (std::uint64_t{1} << f.word_bits);
  auto digits = [&](std::size_t count) {
    std::vector<std::uint64_t> out(count);
    for (auto& d : out) {
      d = index % values;
      index /= values;
    }
    return out;
  };
  switch (f.construction) {
    case Construction::multilinear: return CoefficientParams{digits(f.max_len)};
    case Construction::zobrist: return PositionTableParams{digits(f.max_len * f.alphabet_size)};
    case Construction::cwpoly: return PolyParams{index};
    case Construction::cwpoly_strong: return StrongPolyParams{1 + index / values, index % values};
    case Construction::tabulated:
    case Construction::shift_tabulated: return TableParams{digits(f.alphabet_size)};
    case Construction::generalized_pearson: return ArrayParams{digits(values)};
    case Construction::pearson: {
      // Lehmer code: the digit in base (n - i) picks among the unused values.
      std::vector<std::uint64_t> pool(values);
      for (std::uint64_t i = 0; i < values; ++i) pool[i] = i;
      std::vector<std::uint64_t> a;
      a.reserve(values);
      for (std::uint64_t remaining = values; remaining > 0; --remaining) {
        const std::uint64_t pick = index % remaining;
        index /= remaining;
        a.push_back(pool[pick]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
      }
      return ArrayParams{std::move(a)};
    }
    case Construction::division:
      return DivisionParams{f.division_low ? *f.division_low : division_polys_[index]};
    case Construction::power_of_two: return MultiplierParams{f.multiplier ? *f.multiplier : 2 * index + 1};
    default: return NoParams{};
  }
}

std::uint64_t InstanceSpace::init_at(std::uint64_t index) const {
  const FamilySpec& f = *spec_;
  if (f.construction == Construction::cwpoly_strong) return 1;
  switch (f.init) {
    case InitPolicy::fixed_zero: return 0;
    case InitPolicy::fixed_one: return 1;
    case InitPolicy::uniform_random: return index;
  }
  return 0;
}

HashInstance InstanceSpace::at(std::uint64_t index) const {
  require(index < size_, ErrorKind::domain, "instance index out of range");
  return HashInstance{spec_, params_at(index / init_count_), init_at(index % init_count_)};
}

std::vector<HashInstance> enumerate_instances(const FamilySpec& spec, std::uint64_t budget) {
  InstanceSpace space(spec, budget);
  std::vector<HashInstance> out;
  out.reserve(space.size());
  for (std::uint64_t i = 0; i < space.size(); ++i) out.push_back(space.at(i));
  return out;
}

HashInstance sample_instance(const FamilySpec& spec, std::uint64_t seed) {
  return sample_instance(std::make_shared<const FamilySpec>(spec), seed);
}

HashInstance sample_instance(std::shared_ptr<const FamilySpec> spec, std::uint64_t seed) {
  const FamilySpec& f = *spec;
  Rng rng(seed);
  const bool prime = f.prime_valued();
  auto value = [&]() { return prime ? rng.below(f.algebra->prime()) : (rng.next() & f.value_mask()); };
  auto values = [&](std::size_t n) {
    std::vector<std::uint64_t> v(n);
    for (auto& x : v) x = value();
    return v;
  };

  InstanceParams params = NoParams{};
  switch (f.construction) {
    case Construction::multilinear: params = CoefficientParams{values(f.max_len)}; break;
    case Construction::zobrist: params = PositionTableParams{values(f.max_len * f.alphabet_size)}; break;
    case Construction::cwpoly: params = PolyParams{value()}; break;
    case Construction::cwpoly_strong: {
      const std::uint64_t n = prime ? f.algebra->prime() : 0;
      const std::uint64_t t = prime ? 1 + rng.below(n - 1) : [&] {
        std::uint64_t x;
        do x = rng.next() & f.value_mask();
        while (x == 0);
        return x;
      }();
      params = StrongPolyParams{t, value()};
      break;
    }
    case Construction::tabulated:
    case Construction::shift_tabulated: params = TableParams{values(f.alphabet_size)}; break;
    case Construction::generalized_pearson: params = ArrayParams{values(std::size_t{1} << f.word_bits)}; break;
    case Construction::pearson: {
      std::vector<std::uint64_t> a(std::size_t{1} << f.word_bits);
      for (std::size_t i = 0; i < a.size(); ++i) a[i] = i;
      for (std::size_t i = a.size(); i > 1; --i) std::swap(a[i - 1], a[rng.below(i)]);
      params = ArrayParams{std::move(a)};
      break;
    }
    case Construction::division: {
      std::uint64_t low = 0;
      if (f.division_low) {
        low = *f.division_low;
      } else {
        do low = rng.next() & f.value_mask();
        while (!gf2::is_irreducible_rabin(f.word_bits, low));
      }
      params = DivisionParams{low};
      break;
    }
    case Construction::power_of_two:
      params = MultiplierParams{f.multiplier ? *f.multiplier : ((rng.next() | 1U) & f.value_mask())};
      break;
    default: break;
  }

  std::uint64_t init = 0;
  if (f.construction == Construction::cwpoly_strong) {
    init = 1;
  } else {
    switch (f.init) {
      case InitPolicy::fixed_zero: init = 0; break;
      case InitPolicy::fixed_one: init = 1; break;
      case InitPolicy::uniform_random: init = value(); break;
    }
  }
  return HashInstance{std::move(spec), std::move(params), init};
}

namespace {

std::vector<std::uint64_t> all_states(const FamilySpec& f) {
  const std::uint64_t n = f.value_count();
  require(n <= (std::uint64_t{1} << 24), ErrorKind::capacity, "too many states to check exhaustively");
  std::vector<std::uint64_t> s(n);
  for (std::uint64_t i = 0; i < n; ++i) s[i] = i;
  return s;
}

}  // namespace

bool is_permuting(const HashInstance& inst, std::span<const std::uint64_t> states) {
  const FamilySpec& f = *inst.spec;
  std::vector<std::uint64_t> images(states.size());
  for (Char c = 0; c < f.alphabet_size; ++c) {
    for (std::size_t i = 0; i < states.size(); ++i) images[i] = step(inst, states[i], c, 1);
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
  }
  return true;
}

bool is_permuting(const HashInstance& inst) { return is_permuting(inst, all_states(*inst.spec)); }

bool is_strongly_permuting(const HashInstance& inst, std::span<const std::uint64_t> states) {
  if (!is_permuting(inst, states)) return false;
  const FamilySpec& f = *inst.spec;
  std::vector<std::uint64_t> images(f.alphabet_size);
  for (std::uint64_t y : states) {
    for (Char c = 0; c < f.alphabet_size; ++c) images[c] = step(inst, y, c, 1);
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
  }
  return true;
}

bool is_strongly_permuting(const HashInstance& inst) { return is_strongly_permuting(inst, all_states(*inst.spec)); }

std::vector<std::uint32_t> transition_table(const HashInstance& inst) {
  const FamilySpec& f = *inst.spec;
  if (!f.iterated() || f.word_bits > 24) return {};
  const std::uint64_t m = f.value_count();
  if (m * f.alphabet_size > (std::uint64_t{1} << 22)) return {};
  std::vector<std::uint32_t> table(m * f.alphabet_size);
  for (std::uint64_t y = 0; y < m; ++y)
    for (Char c = 0; c < f.alphabet_size; ++c)
      table[y * f.alphabet_size + c] = static_cast<std::uint32_t>(step(inst, y, c, 1));
  return table;
}

}  // namespace iterhash
