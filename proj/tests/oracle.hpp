#pragma once

// Reference implementations for the tests: direct recurrences and brute-force
// enumeration, sharing no code with the library.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using Str = std::vector<std::uint32_t>;
using Fn = std::function<u64(const Str&)>;

// carry-less product, then long division by the full polynomial
inline u64 gf2_mul(u64 a, u64 b, u64 poly, unsigned L) {
  unsigned __int128 prod = 0;
  for (unsigned i = 0; i < 64; ++i)
    if ((b >> i) & 1) prod ^= static_cast<unsigned __int128>(a) << i;
  for (int d = 127; d >= static_cast<int>(L); --d)
    if ((prod >> d) & 1) prod ^= static_cast<unsigned __int128>(poly) << (d - L);
  return static_cast<u64>(prod);
}

inline bool irreducible(u64 poly, unsigned L) {
  // no factor of degree 1..L/2
  for (u64 q = 2; q < (u64{1} << (L / 2 + 1)); ++q) {
    unsigned dq = 63 - __builtin_clzll(q);
    if (dq == 0 || dq > L / 2) continue;
    u64 r = poly;
    for (int d = L; d >= static_cast<int>(dq); --d)
      if ((r >> d) & 1) r ^= q << (d - dq);
    if (r == 0) return false;
  }
  return true;
}

inline u64 smallest_irreducible(unsigned L) {
  for (u64 p = (u64{1} << L) | 1; p < (u64{2} << L); ++p)
    if (irreducible(p, L)) return p;
  return 0;
}

inline u64 divisors(u64 n) {
  u64 c = 0;
  for (u64 i = 1; i <= n; ++i) c += n % i == 0;
  return c;
}

inline u64 lcm_upto(u64 k) {
  u64 l = 1;
  for (u64 i = 2; i <= k; ++i) l = std::lcm(l, i);
  return l;
}

inline std::vector<Str> all_strings(u64 sigma, unsigned min_len, unsigned max_len) {
  std::vector<Str> out;
  for (unsigned len = min_len; len <= max_len; ++len) {
    Str s(len, 0);
    while (true) {
      out.push_back(s);
      int i = static_cast<int>(len) - 1;
      while (i >= 0 && s[i] == sigma - 1) s[i--] = 0;
      if (i < 0) break;
      ++s[i];
    }
  }
  return out;
}

// all tuples in [0, base)^n
inline std::vector<std::vector<u64>> tuples(u64 base, unsigned n) {
  std::vector<std::vector<u64>> out;
  std::vector<u64> t(n, 0);
  while (true) {
    out.push_back(t);
    int i = static_cast<int>(n) - 1;
    while (i >= 0 && t[i] == base - 1) t[i--] = 0;
    if (i < 0) break;
    ++t[i];
  }
  return out;
}

inline std::vector<Fn> generalized_pearson(unsigned L, bool permutations_only = false) {
  const u64 m = u64{1} << L;
  std::vector<std::vector<u64>> arrays;
  if (permutations_only) {
    std::vector<u64> a(m);
    std::iota(a.begin(), a.end(), 0);
    do arrays.push_back(a);
    while (std::next_permutation(a.begin(), a.end()));
  } else {
    arrays = tuples(m, static_cast<unsigned>(m));
  }
  std::vector<Fn> out;
  for (const auto& a : arrays)
    for (u64 h0 = 0; h0 < m; ++h0)
      out.push_back([a, h0](const Str& s) {
        u64 y = h0;
        for (auto c : s) y = a[y ^ c];
        return y;
      });
  return out;
}

inline std::vector<Fn> tabulated(unsigned L, u64 sigma, bool shift) {
  const u64 m = u64{1} << L, poly = smallest_irreducible(L);
  std::vector<Fn> out;
  for (const auto& g : tuples(m, static_cast<unsigned>(sigma)))
    for (u64 h0 = 0; h0 < m; ++h0)
      out.push_back([=](const Str& s) {
        u64 y = h0;
        for (auto c : s) {
          const u64 moved = shift ? ((y << 1) | (y >> (L - 1))) & (m - 1) : gf2_mul(y, 2, poly, L);
          y = moved ^ g[c];
        }
        return y;
      });
  return out;
}

// h(s) = m_1 + sum m_{i+1} s_i mod p
inline std::vector<Fn> multilinear(u64 p, unsigned max_len) {
  std::vector<Fn> out;
  for (const auto& m : tuples(p, max_len + 1))
    out.push_back([=](const Str& s) {
      u64 y = m[0];
      for (std::size_t i = 0; i < s.size(); ++i) y = (y + m[i + 1] * s[i]) % p;
      return y;
    });
  return out;
}

// XOR of independent random tables per position, H_0 = 0
inline std::vector<Fn> zobrist(unsigned L, u64 sigma, unsigned max_len) {
  const u64 m = u64{1} << L;
  std::vector<Fn> out;
  for (const auto& h : tuples(m, static_cast<unsigned>(sigma * max_len)))
    out.push_back([=](const Str& s) {
      u64 y = 0;
      for (std::size_t i = 0; i < s.size(); ++i) y ^= h[i * sigma + s[i]];
      return y;
    });
  return out;
}

struct Field {
  u64 p = 0;      // prime, or 0 for GF(2^L)
  unsigned L = 0;
  u64 poly = 0;
  u64 size() const { return p ? p : u64{1} << L; }
  u64 add(u64 a, u64 b) const { return p ? (a + b) % p : a ^ b; }
  u64 sub(u64 a, u64 b) const { return p ? (a + p - b) % p : a ^ b; }
  u64 mul(u64 a, u64 b) const { return p ? a * b % p : gf2_mul(a, b, poly, L); }
  u64 neg(u64 a) const { return p ? (p - a) % p : a; }
};

inline Field prime_field(u64 p) { return {p, 0, 0}; }
inline Field binary_field(unsigned L) { return {0, L, smallest_irreducible(L)}; }

// Horner: h = t h + c from H_0
inline std::vector<Fn> cwpoly(const Field& F, u64 h0) {
  std::vector<Fn> out;
  for (u64 t = 0; t < F.size(); ++t)
    out.push_back([=](const Str& s) {
      u64 y = h0;
      for (auto c : s) y = F.add(F.mul(t, y), c);
      return y;
    });
  return out;
}

// t^(n+1) + sum t^i s_i + zeta, t != 0
inline std::vector<Fn> cwpoly_strong(const Field& F) {
  std::vector<Fn> out;
  for (u64 t = 1; t < F.size(); ++t)
    for (u64 z = 0; z < F.size(); ++z)
      out.push_back([=](const Str& s) {
        u64 acc = z, pw = 1;
        for (auto c : s) {
          pw = F.mul(pw, t);
          acc = F.add(acc, F.mul(pw, c));
        }
        return F.add(acc, F.mul(pw, t));
      });
  return out;
}

inline std::vector<Fn> power_of_two(unsigned L) {
  const u64 m = u64{1} << L;
  std::vector<Fn> out;
  for (u64 b = 1; b < m; b += 2)
    for (u64 h0 = 0; h0 < m; ++h0)
      out.push_back([=](const Str& s) {
        u64 y = h0;
        for (auto c : s) y = (b * y + c) & (m - 1);
        return y;
      });
  return out;
}

inline u64 java(const Str& s) {
  std::uint32_t h = 0;
  for (auto c : s) h = 31u * h + c;
  return h;
}

struct Q {
  u64 num = 0, den = 1;
  bool operator==(const Q& o) const { return num * o.den == o.num * den; }
  bool operator<(const Q& o) const { return num * o.den < o.num * den; }
};

inline std::vector<std::vector<u64>> matrix(const std::vector<Fn>& fam, const std::vector<Str>& strings) {
  std::vector<std::vector<u64>> v(fam.size(), std::vector<u64>(strings.size()));
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t j = 0; j < strings.size(); ++j) v[i][j] = fam[i](strings[j]);
  return v;
}

inline Q collision(const std::vector<Fn>& fam, const Str& a, const Str& b) {
  Q q{0, fam.size()};
  for (const auto& h : fam) q.num += h(a) == h(b);
  return q;
}

// max over distinct pairs of P(h(s) = h(s'))
inline Q eps_au(const std::vector<Fn>& fam, const std::vector<Str>& strings) {
  const auto v = matrix(fam, strings);
  u64 best = 0;
  for (std::size_t a = 0; a < strings.size(); ++a)
    for (std::size_t b = a + 1; b < strings.size(); ++b) {
      u64 c = 0;
      for (const auto& row : v) c += row[a] == row[b];
      best = std::max(best, c);
    }
  return {best, fam.size()};
}

// max over pairs and d of P(h(s) - h(s') = d)
inline Q eps_axu(const std::vector<Fn>& fam, const std::vector<Str>& strings, const Field& F) {
  const auto v = matrix(fam, strings);
  u64 best = 0;
  for (std::size_t a = 0; a < strings.size(); ++a)
    for (std::size_t b = a + 1; b < strings.size(); ++b) {
      std::map<u64, u64> diff;
      for (const auto& row : v) best = std::max(best, ++diff[F.sub(row[a], row[b])]);
    }
  return {best, fam.size()};
}

// every (y, y') cell over every distinct pair, on the low `bits` bits
inline std::pair<Q, Q> joint_range(const std::vector<Fn>& fam, const std::vector<Str>& strings, u64 values,
                                   u64 mask = ~u64{0}) {
  const auto v = matrix(fam, strings);
  u64 lo = ~u64{0}, hi = 0;
  for (std::size_t a = 0; a < strings.size(); ++a)
    for (std::size_t b = a + 1; b < strings.size(); ++b) {
      std::map<std::pair<u64, u64>, u64> cells;
      for (const auto& row : v) ++cells[{row[a] & mask, row[b] & mask}];
      const u64 present = cells.size();
      for (const auto& [k, c] : cells) {
        lo = std::min(lo, c);
        hi = std::max(hi, c);
      }
      if (present < values * values) lo = 0;
    }
  return {{lo, fam.size()}, {hi, fam.size()}};
}

}  // namespace oracle
