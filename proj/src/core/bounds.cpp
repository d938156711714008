#include "core/bounds.hpp"

#include <cmath>

#include "core/algebra.hpp"
#include "core/error.hpp"

namespace iterhash {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

BigInt pow2(std::uint64_t e) { return BigInt(1) << static_cast<unsigned>(e); }

BigInt ceil_div(const BigInt& a, const BigInt& b) { return (a + b - 1) / b; }

BigInt factorial(std::uint64_t n) {
  // balanced product tree
  std::vector<BigInt> terms;
  terms.reserve(n);
  for (std::uint64_t k = 2; k <= n; ++k) terms.emplace_back(k);
  if (terms.empty()) return 1;
  while (terms.size() > 1) {
    std::vector<BigInt> next;
    next.reserve(terms.size() / 2 + 1);
    for (std::size_t i = 0; i + 1 < terms.size(); i += 2) next.push_back(terms[i] * terms[i + 1]);
    if (terms.size() % 2) next.push_back(terms.back());
    terms = std::move(next);
  }
  return terms[0];
}

BigInt card_strong(unsigned L) {
  const std::uint64_t n = std::uint64_t{1} << L;
  const long double x = L + 2 * log2_factorial(n) - std::log2(static_cast<long double>(n - 1)) - 1;
  BigInt k(static_cast<std::uint64_t>(std::floor(x)));
  const long double frac = x - std::floor(x);
  if (frac > 1e-6L && frac < 1 - 1e-6L) return k;
  // x >= k  <=>  2^(L-1) (n!)^2 >= 2^k (n - 1)
  const BigInt f = factorial(n);
  const BigInt lhs = f * f << (L - 1);
  auto at_least = [&](const BigInt& k) { return lhs >= (BigInt(n - 1) << static_cast<unsigned>(k)); };
  while (!at_least(k)) --k;
  while (at_least(k + 1)) ++k;
  return k;
}

}  // namespace

long double log2_factorial(std::uint64_t n) {
  long double sum = 0, comp = 0;
  for (std::uint64_t k = 2; k <= n; ++k) {
    const long double y = std::log2(static_cast<long double>(k)) - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

BoundsRow table_bounds(unsigned L, const Rational& epsilon) {
  require(L >= 1 && L <= 24, ErrorKind::domain, "table bounds need 1 <= L <= 24");
  require(epsilon > 0 && epsilon < 1, ErrorKind::domain, "epsilon must lie in (0, 1)");
  BoundsRow row;
  row.L = L;
  row.epsilon = epsilon;
  const std::uint64_t n = std::uint64_t{1} << L;
  row.card_universal = BigInt(2 * L) + BigInt(L) * pow2(L + 1);
  row.card_strong = card_strong(L);

  const std::uint64_t exponent = static_cast<std::uint64_t>(L) * (2 * n + 1);
  row.card_almost_log2 = std::log2(static_cast<double>(L)) + static_cast<double>(exponent) +
                         std::log2(static_cast<double>(numerator(epsilon))) -
                         std::log2(static_cast<double>(denominator(epsilon)));
  if (exponent <= 1'000'000) {
    const BigInt num = numerator(epsilon) * pow2(exponent) + denominator(epsilon);
    row.card_almost = BigInt(L) * num / denominator(epsilon);
  }

  row.struct_universal = BigInt(n) + 1;
  row.struct_strong = BigInt(n) + 1;
  row.struct_almost = BigInt(n) + lcm_upto(n) - 1;
  return row;
}

BigInt min_family_size(std::uint64_t K, unsigned L, const Rational& epsilon) {
  require(L >= 1 && K >= L, ErrorKind::domain, "min family size needs K >= L >= 1");
  require(epsilon > 0, ErrorKind::domain, "epsilon must be positive");
  const BigInt blocks = BigInt((K + L - 1) / L) - 1;
  return ceil_div(blocks * denominator(epsilon), numerator(epsilon));
}

BigInt stinson_min_size(const BigInt& num_strings, const BigInt& num_values, bool strong) {
  require(num_strings >= 1 && num_values >= 1, ErrorKind::domain, "string and value counts must be positive");
  return strong ? 1 + num_strings * (num_values - 1) : ceil_div(num_strings, num_values);
}

BigInt epsilon_impossible_length(unsigned L, const Rational& epsilon) {
  require(L >= 1 && L <= 20, ErrorKind::domain, "epsilon length needs 1 <= L <= 20");
  const std::uint64_t n = std::uint64_t{1} << L;
  require(epsilon > Rational(1, n) && epsilon < 1, ErrorKind::domain, "epsilon must lie in (1/2^L, 1)");
  const Rational inv = 1 / epsilon;
  require(denominator(inv) != 1, ErrorKind::domain, "1/epsilon must not be an integer");
  const BigInt fl = numerator(inv) / denominator(inv);
  return BigInt(n) + lcm_upto(n + 1 - static_cast<std::uint64_t>(fl));
}

BigInt iterated_family_log2_bound(unsigned L, std::uint64_t alphabet_size) {
  return BigInt(L) * (pow2(L) * alphabet_size + 1);
}

}  // namespace iterhash
