#include "core/algebra.hpp"

#include <algorithm>
#include <bit>
#include <iomanip>
#include <limits>
#include <sstream>

#include "core/error.hpp"

namespace iterhash {

std::uint64_t barrel_rotate(std::uint64_t y, unsigned word_bits) {
  require(word_bits >= 1 && word_bits <= kMaxWordBits, ErrorKind::domain, "barrel_rotate: word size out of range");
  require(y <= word_mask(word_bits), ErrorKind::domain, "barrel_rotate: value wider than the word");
  if (word_bits == 64) return std::rotl(y, 1);
  return ((y << 1) | (y >> (word_bits - 1))) & word_mask(word_bits);
}

namespace gf2 {

unsigned degree(std::uint64_t poly) { return poly == 0 ? 0 : 63U - static_cast<unsigned>(std::countl_zero(poly)); }

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t low, unsigned word_bits) {
  std::uint64_t r = 0;
  while (b != 0) {
    if (b & 1U) r ^= a;
    b >>= 1;
    a = xtimes(a, low, word_bits);
  }
  return r;
}

std::uint64_t rem(std::uint64_t a, std::uint64_t m) {
  require(m != 0, ErrorKind::domain, "polynomial remainder by zero");
  const unsigned d = degree(m);
  while (a != 0 && degree(a) >= d) a ^= m << (degree(a) - d);
  return a;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    const std::uint64_t r = rem(a, b);
    a = b;
    b = r;
  }
  return a;
}

namespace {

// (x^L + low) mod g for deg g < L.
std::uint64_t rem_monic(unsigned word_bits, std::uint64_t low, std::uint64_t g) {
  const unsigned d = degree(g);
  if (d == 0) return 0;
  std::uint64_t r = 1;
  for (unsigned i = 0; i < word_bits; ++i) {
    r <<= 1;
    if ((r >> d) & 1U) r ^= g;
  }
  return r ^ rem(low, g);
}

std::vector<unsigned> prime_factors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_irreducible_rabin(unsigned word_bits, std::uint64_t low) {
  require(word_bits >= 1 && word_bits <= kMaxWordBits, ErrorKind::domain, "irreducibility test: degree out of range");
  require(low <= word_mask(word_bits), ErrorKind::domain, "irreducibility test: low part wider than the degree");
  if (word_bits == 1) return true;
  if ((low & 1U) == 0) return false;
  const std::uint64_t x = 2;
  auto frobenius = [&](unsigned k) {
    std::uint64_t a = x;
    for (unsigned i = 0; i < k; ++i) a = mulmod(a, a, low, word_bits);
    return a;
  };
  if (frobenius(word_bits) != x) return false;
  for (unsigned q : prime_factors(word_bits)) {
    const std::uint64_t b = frobenius(word_bits / q) ^ x;
    if (b == 0) return false;
    if (gcd(b, rem_monic(word_bits, low, b)) != 1) return false;
  }
  return true;
}

bool is_irreducible_trial(std::uint64_t poly) {
  const unsigned n = degree(poly);
  if (poly < 2) return false;
  require(n <= 62, ErrorKind::capacity, "trial division limited to degree 62");
  const std::uint64_t end = std::uint64_t{1} << (n / 2 + 1);
  for (std::uint64_t g = 2; g < end; ++g)
    if (rem(poly, g) == 0) return false;
  return true;
}

std::vector<std::uint64_t> irreducible_polys(unsigned word_bits) {
  require(word_bits >= 1, ErrorKind::domain, "irreducible_polys: degree must be at least 1");
  require(word_bits <= kMaxIrreducibleEnumeration, ErrorKind::capacity,
          "irreducible_polys: degree " + std::to_string(word_bits) + " exceeds the enumeration limit of " +
              std::to_string(kMaxIrreducibleEnumeration));
  std::vector<std::uint64_t> out;
  const std::uint64_t lead = std::uint64_t{1} << word_bits;
  for (std::uint64_t low = 0; low < lead; ++low) {
    const bool ok = word_bits <= 12 ? is_irreducible_trial(lead | low) : is_irreducible_rabin(word_bits, low);
    if (ok) out.push_back(lead | low);
  }
  return out;
}

std::uint64_t default_reduction_low(unsigned word_bits) {
  require(word_bits >= 1 && word_bits <= kMaxWordBits, ErrorKind::domain, "binary field degree out of range");
  if (word_bits == 1) return 1;  // x + 1; p(x) = x would make x nilpotent
  for (std::uint64_t low = 1;; low += 2)
    if (is_irreducible_rabin(word_bits, low)) return low;
}

std::string poly_hex(unsigned word_bits, std::uint64_t low) {
  std::ostringstream os;
  os << "0x" << std::hex;
  if (word_bits < 64) {
    os << ((std::uint64_t{1} << word_bits) | low);
  } else {
    os << '1' << std::setw(16) << std::setfill('0') << low;
  }
  return os.str();
}

}  // namespace gf2

namespace modp {

std::uint64_t pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  base %= p;
  while (exp != 0) {
    if (exp & 1U) r = mul(r, base, p);
    base = mul(base, base, p);
    exp >>= 1;
  }
  return r;
}

}  // namespace modp

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = modp::pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = modp::mul(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

BigInt lcm_upto(std::uint64_t k) {
  require(k >= 1, ErrorKind::domain, "lcm_upto: k must be positive");
  require(k <= (std::uint64_t{1} << 28), ErrorKind::capacity, "lcm_upto: k beyond 2^28");
  std::vector<bool> composite(k + 1, false);
  BigInt out = 1;
  for (std::uint64_t q = 2; q <= k; ++q) {
    if (composite[q]) continue;
    for (std::uint64_t m = q * q; m <= k; m += q) composite[m] = true;
    std::uint64_t power = q;
    while (power <= k / q) power *= q;
    out *= power;
  }
  return out;
}

std::uint64_t divisor_count(std::uint64_t n) {
  require(n >= 1, ErrorKind::domain, "divisor_count: n must be positive");
  std::uint64_t count = 0;
  for (std::uint64_t i = 1; i * i <= n; ++i) {
    if (n % i == 0) count += (i * i == n) ? 1 : 2;
  }
  return count;
}

std::uint64_t divisor_max(std::uint64_t n) {
  require(n >= 2, ErrorKind::domain, "divisor_max: n must be at least 2");
  require(n <= 100'000'000, ErrorKind::capacity, "divisor_max: n beyond 10^8");
  std::vector<std::uint32_t> d(n, 0);
  for (std::uint64_t i = 1; i < n; ++i)
    for (std::uint64_t m = i; m < n; m += i) ++d[m];
  std::uint64_t best = 0;
  for (std::uint64_t i = 1; i < n; ++i) best = std::max<std::uint64_t>(best, d[i]);
  return best;
}

std::string to_string(AlgebraKind kind) {
  switch (kind) {
    case AlgebraKind::prime_field: return "prime-field";
    case AlgebraKind::binary_field: return "binary-field";
    case AlgebraKind::binary_ring: return "binary-ring";
    case AlgebraKind::mod2L: return "mod2L";
  }
  return "?";
}

AlgebraSpec AlgebraSpec::prime_field(std::uint64_t p) {
  require(is_prime(p), ErrorKind::domain, "prime-field modulus " + std::to_string(p) + " is not prime");
  AlgebraSpec a;
  a.kind = AlgebraKind::prime_field;
  a.modulus = p;
  a.word_bits = static_cast<unsigned>(std::bit_width(p - 1));
  return a;
}

AlgebraSpec AlgebraSpec::binary_field(unsigned word_bits) {
  return binary_field(word_bits, gf2::default_reduction_low(word_bits));
}

AlgebraSpec AlgebraSpec::binary_field(unsigned word_bits, std::uint64_t reduction_low) {
  require(word_bits >= 1 && word_bits <= kMaxWordBits, ErrorKind::domain, "binary field degree out of range");
  require(reduction_low <= word_mask(word_bits), ErrorKind::domain, "reduction polynomial degree differs from L");
  require(gf2::is_irreducible_rabin(word_bits, reduction_low), ErrorKind::domain,
          "reduction polynomial " + gf2::poly_hex(word_bits, reduction_low) + " is not irreducible");
  AlgebraSpec a;
  a.kind = AlgebraKind::binary_field;
  a.modulus = BigInt(1) << word_bits;
  a.reduction_low = reduction_low;
  a.word_bits = word_bits;
  return a;
}

AlgebraSpec AlgebraSpec::binary_ring(unsigned word_bits) {
  require(word_bits >= 1 && word_bits <= kMaxWordBits, ErrorKind::domain, "binary ring degree out of range");
  AlgebraSpec a;
  a.kind = AlgebraKind::binary_ring;
  a.modulus = BigInt(1) << word_bits;
  a.reduction_low = 1;
  a.word_bits = word_bits;
  return a;
}

AlgebraSpec AlgebraSpec::mod2L(unsigned word_bits) {
  require(word_bits >= 1 && word_bits <= kMaxWordBits, ErrorKind::domain, "word size out of range");
  AlgebraSpec a;
  a.kind = AlgebraKind::mod2L;
  a.modulus = BigInt(1) << word_bits;
  a.word_bits = word_bits;
  return a;
}

std::uint64_t AlgebraSpec::size() const {
  require(modulus <= BigInt(std::numeric_limits<std::uint64_t>::max()), ErrorKind::capacity,
          "algebra has 2^64 or more elements");
  return static_cast<std::uint64_t>(modulus);
}

std::uint64_t AlgebraSpec::prime() const {
  require(kind == AlgebraKind::prime_field, ErrorKind::unsupported, "not a prime field");
  return static_cast<std::uint64_t>(modulus);
}

std::string AlgebraSpec::describe() const {
  switch (kind) {
    case AlgebraKind::prime_field: return "F_" + modulus.str();
    case AlgebraKind::binary_field:
      return "GF(2^" + std::to_string(word_bits) + ") mod " + gf2::poly_hex(word_bits, reduction_low);
    case AlgebraKind::binary_ring: return "GF(2)[x]/(x^" + std::to_string(word_bits) + "+1)";
    case AlgebraKind::mod2L: return "Z/2^" + std::to_string(word_bits);
  }
  return "?";
}

std::uint64_t alg_add(const AlgebraSpec& a, std::uint64_t x, std::uint64_t y) {
  switch (a.kind) {
    case AlgebraKind::prime_field: return modp::add(x, y, a.prime());
    case AlgebraKind::binary_field:
    case AlgebraKind::binary_ring: return x ^ y;
    case AlgebraKind::mod2L: return (x + y) & word_mask(a.word_bits);
  }
  return 0;
}

std::uint64_t alg_sub(const AlgebraSpec& a, std::uint64_t x, std::uint64_t y) {
  switch (a.kind) {
    case AlgebraKind::prime_field: return modp::sub(x, y, a.prime());
    case AlgebraKind::binary_field:
    case AlgebraKind::binary_ring: return x ^ y;
    case AlgebraKind::mod2L: return (x - y) & word_mask(a.word_bits);
  }
  return 0;
}

std::uint64_t alg_neg(const AlgebraSpec& a, std::uint64_t x) { return alg_sub(a, 0, x); }

std::uint64_t alg_mul(const AlgebraSpec& a, std::uint64_t x, std::uint64_t y) {
  switch (a.kind) {
    case AlgebraKind::prime_field: return modp::mul(x, y, a.prime());
    case AlgebraKind::binary_field:
    case AlgebraKind::binary_ring: return gf2::mulmod(x, y, a.reduction_low, a.word_bits);
    case AlgebraKind::mod2L: return (x * y) & word_mask(a.word_bits);
  }
  return 0;
}

std::uint64_t alg_pow(const AlgebraSpec& a, std::uint64_t x, std::uint64_t exp) {
  std::uint64_t r = 1;
  while (exp != 0) {
    if (exp & 1U) r = alg_mul(a, r, x);
    x = alg_mul(a, x, x);
    exp >>= 1;
  }
  return r;
}

std::uint64_t alg_inv(const AlgebraSpec& a, std::uint64_t x) {
  require(a.is_field(), ErrorKind::unsupported, "inverse requested in " + a.describe() + ", which is not a field");
  require(x != 0, ErrorKind::domain, "inverse of zero");
  if (a.kind == AlgebraKind::prime_field) return modp::pow(x, a.prime() - 2, a.prime());
  // |GF(2^L)^*| = 2^L - 1, so x^(2^L - 2) = x^-1.
  const std::uint64_t exp = a.word_bits == 64 ? ~std::uint64_t{0} - 1 : (std::uint64_t{1} << a.word_bits) - 2;
  return alg_pow(a, x, exp);
}

Element::Element(AlgebraRef algebra, std::uint64_t value) : algebra_(std::move(algebra)), value_(value) {
  require(algebra_ != nullptr, ErrorKind::structural, "element without an algebra");
  require(BigInt(value) < algebra_->modulus, ErrorKind::domain,
          "value " + std::to_string(value) + " is not canonical in " + algebra_->describe());
}

namespace {

const AlgebraRef& common(const Element& a, const Element& b) {
  require(a.algebra_ref() == b.algebra_ref() || a.algebra() == b.algebra(), ErrorKind::structural,
          "operands belong to different algebras (" + a.algebra().describe() + " vs " + b.algebra().describe() +
              ")");
  return a.algebra_ref();
}

}  // namespace

Element add(const Element& a, const Element& b) {
  const auto& alg = common(a, b);
  return Element(alg, alg_add(*alg, a.value(), b.value()));
}

Element sub(const Element& a, const Element& b) {
  const auto& alg = common(a, b);
  return Element(alg, alg_sub(*alg, a.value(), b.value()));
}

Element mul(const Element& a, const Element& b) {
  const auto& alg = common(a, b);
  return Element(alg, alg_mul(*alg, a.value(), b.value()));
}

Element inv(const Element& a) { return Element(a.algebra_ref(), alg_inv(a.algebra(), a.value())); }

}  // namespace iterhash
