#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

#include "core/error.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"
#include "core/verifier.hpp"

namespace iterhash {

namespace {

constexpr std::uint64_t kFrontierBytes = std::uint64_t{1} << 31;

struct Key {
  std::uint64_t a, b;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const { return k.a; }
};

Key key_of(const std::uint64_t* w, std::size_t n) {
  std::uint64_t a = 0x243f6a8885a308d3ULL;
  std::uint64_t b = 0x13198a2e03707344ULL;
  for (std::size_t i = 0; i < n; ++i) {
    a = splitmix64(a ^ w[i]);
    b = splitmix64(b + w[i] * 0x9e3779b97f4a7c15ULL);
  }
  return {a, b};
}

HashString decode(std::uint64_t lexindex, unsigned len, std::uint64_t sigma) {
  HashString s(len);
  for (unsigned i = len; i-- > 0;) {
    s[i] = static_cast<Char>(lexindex % sigma);
    lexindex /= sigma;
  }
  return s;
}

// Hash values of every instance, each packed into `bits` bits; fields never
// straddle a word and the padding is zero.
class Packing {
 public:
  Packing(std::uint64_t instances, std::uint64_t value_count)
      : bits_(std::max(1U, static_cast<unsigned>(std::bit_width(value_count - 1)))),
        per_word_(64 / bits_),
        words_((instances + per_word_ - 1) / per_word_) {
    for (unsigned f = 0; f < per_word_; ++f) low_bits_ |= std::uint64_t{1} << (f * bits_);
  }
  unsigned bits() const { return bits_; }
  std::size_t words() const { return words_; }
  std::uint64_t low_bits() const { return low_bits_; }

  void pack(const std::uint32_t* values, std::uint64_t n, std::uint64_t* out) const {
    std::fill(out, out + words_, 0);
    for (std::uint64_t i = 0; i < n; ++i) out[i / per_word_] |= std::uint64_t{values[i]} << ((i % per_word_) * bits_);
  }
  void unpack(const std::uint64_t* in, std::uint64_t n, std::uint32_t* values) const {
    const std::uint64_t mask = word_mask(bits_);
    for (std::uint64_t i = 0; i < n; ++i)
      values[i] = static_cast<std::uint32_t>((in[i / per_word_] >> ((i % per_word_) * bits_)) & mask);
  }

 private:
  unsigned bits_;
  unsigned per_word_;
  std::size_t words_;
  std::uint64_t low_bits_ = 0;
};

// All instances of an enumerable family with their transition tables when
// those fit; walks strings level by level in length-lexicographic order.
class SignatureWalker {
 public:
  SignatureWalker(const FamilySpec& spec, std::uint64_t budget) : space_(spec, budget), pack_(space_.size(), value_count(spec)) {
    const FamilySpec& f = space_.family();
    require(space_.size() <= (std::uint64_t{1} << 24), ErrorKind::capacity, "signature search limited to 2^24 instances");
    require(f.value_count() <= (std::uint64_t{1} << 32), ErrorKind::capacity, "signature search needs values below 2^32");
    insts_.reserve(space_.size());
    for (std::uint64_t i = 0; i < space_.size(); ++i) insts_.push_back(space_.at(i));
    const std::uint64_t m = f.value_count();
    stride_ = m * f.alphabet_size;
    if (f.iterated() && stride_ * insts_.size() <= (std::uint64_t{1} << 26)) {
      tables_.reserve(stride_ * insts_.size());
      for (const auto& inst : insts_) {
        const auto t = transition_table(inst);
        if (t.empty()) {
          tables_.clear();
          starts_.clear();
          break;
        }
        tables_.insert(tables_.end(), t.begin(), t.end());
        starts_.push_back(static_cast<std::uint32_t>(start_state(inst)));
      }
    }
  }

  const FamilySpec& family() const { return space_.family(); }
  std::uint64_t instances() const { return insts_.size(); }
  const Packing& packing() const { return pack_; }
  const HashInstance& instance(std::uint64_t i) const { return insts_[i]; }

  // Visits every string of length 1..max_len as
  // visit(len, lexindex, packed hash values); visit returns false to stop.
  template <class Visit>
  void walk(unsigned max_len, std::uint64_t budget, Visit&& visit) const {
    const FamilySpec& f = family();
    const std::uint64_t I = insts_.size();
    const std::size_t W = pack_.words();
    const std::uint64_t sigma = f.alphabet_size;
    std::vector<std::uint32_t> parent(I), child(I), finals(I);
    std::vector<std::uint64_t> frontier(W), next, sig(W), packed(W);
    for (std::uint64_t i = 0; i < I; ++i) parent[i] = static_cast<std::uint32_t>(start_state(insts_[i]));
    pack_.pack(parent.data(), I, frontier.data());
    std::uint64_t count = 1;
    BigInt explored = 0;
    for (unsigned len = 1; len <= max_len; ++len) {
      explored += BigInt(count) * sigma;
      require(explored * I <= budget, ErrorKind::capacity,
              "signature search: " + BigInt(explored * I).str() + " evaluations exceed the budget of " +
                  std::to_string(budget));
      const bool keep = len < max_len;
      if (keep) {
        const BigInt bytes = BigInt(count) * sigma * W * 8;
        require(bytes <= kFrontierBytes, ErrorKind::capacity, "signature frontier beyond 2 GiB at length " +
                                                                  std::to_string(len));
        next.assign(count * sigma * W, 0);
      }
      for (std::uint64_t p = 0; p < count; ++p) {
        pack_.unpack(frontier.data() + p * W, I, parent.data());
        for (Char c = 0; c < sigma; ++c) {
          if (!tables_.empty()) {
            const std::uint32_t* t = tables_.data();
            for (std::uint64_t i = 0; i < I; ++i, t += stride_) child[i] = t[parent[i] * sigma + c];
          } else {
            for (std::uint64_t i = 0; i < I; ++i)
              child[i] = static_cast<std::uint32_t>(step(insts_[i], parent[i], c, len));
          }
          std::uint64_t* out = keep ? next.data() + (p * sigma + c) * W : packed.data();
          pack_.pack(child.data(), I, out);
          const std::uint64_t* signature = out;
          if (!f.iterated()) {
            for (std::uint64_t i = 0; i < I; ++i) finals[i] = static_cast<std::uint32_t>(finalize(insts_[i], child[i], len));
            pack_.pack(finals.data(), I, sig.data());
            signature = sig.data();
          }
          if (!visit(len, p * sigma + c, signature)) return;
        }
      }
      if (keep) {
        frontier.swap(next);
        count *= sigma;
      }
    }
  }

  // Packed hash values of one string, computed directly.
  std::vector<std::uint64_t> signature(const HashString& s) const {
    std::vector<std::uint32_t> v(insts_.size());
    for (std::size_t i = 0; i < insts_.size(); ++i) v[i] = static_cast<std::uint32_t>(hash(insts_[i], s));
    std::vector<std::uint64_t> out(pack_.words());
    pack_.pack(v.data(), v.size(), out.data());
    return out;
  }

  std::uint64_t collisions(const HashString& s, const HashString& t) const {
    std::uint64_t n = 0;
    if (tables_.empty()) {
      for (const auto& inst : insts_) n += hash(inst, s) == hash(inst, t);
      return n;
    }
    const std::uint64_t sigma = family().alphabet_size;
    const std::uint32_t* table = tables_.data();
    for (std::size_t i = 0; i < insts_.size(); ++i, table += stride_) {
      std::uint32_t a = starts_[i], b = starts_[i];
      for (Char c : s) a = table[a * sigma + c];
      for (Char c : t) b = table[b * sigma + c];
      n += a == b;
    }
    return n;
  }

 private:
  static std::uint64_t value_count(const FamilySpec& f) { return f.value_count(); }

  InstanceSpace space_;
  Packing pack_;
  std::vector<HashInstance> insts_;
  std::uint64_t stride_ = 0;
  std::vector<std::uint32_t> tables_;
  std::vector<std::uint32_t> starts_;
};

bool excluded(const FamilySpec& f, Char last) { return f.rejects_trailing_zero() && last == 0; }

std::uint64_t fold_fields(std::uint64_t x, unsigned bits, std::uint64_t low) {
  std::uint64_t y = x;
  for (unsigned k = 1; k < bits; ++k) y |= x >> k;
  return y & low;
}

std::uint64_t differing_fields_generic(const std::uint64_t* a, const std::uint64_t* b, std::size_t W, unsigned bits,
                                       std::uint64_t low) {
  std::uint64_t n = 0;
  for (std::size_t w = 0; w < W; ++w) n += static_cast<std::uint64_t>(std::popcount(fold_fields(a[w] ^ b[w], bits, low)));
  return n;
}

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
__attribute__((target("popcnt"))) std::uint64_t differing_fields_popcnt(const std::uint64_t* a, const std::uint64_t* b,
                                                                        std::size_t W, unsigned bits,
                                                                        std::uint64_t low) {
  std::uint64_t n = 0;
  for (std::size_t w = 0; w < W; ++w) n += static_cast<std::uint64_t>(__builtin_popcountll(fold_fields(a[w] ^ b[w], bits, low)));
  return n;
}
using DiffFn = std::uint64_t (*)(const std::uint64_t*, const std::uint64_t*, std::size_t, unsigned, std::uint64_t);
DiffFn pick_diff() { return __builtin_cpu_supports("popcnt") ? differing_fields_popcnt : differing_fields_generic; }
#else
using DiffFn = std::uint64_t (*)(const std::uint64_t*, const std::uint64_t*, std::size_t, unsigned, std::uint64_t);
DiffFn pick_diff() { return differing_fields_generic; }
#endif

struct ScoredPair {
  std::uint64_t count = 0;
  HashString s, t;
};

unsigned pair_len(const ScoredPair& p) { return static_cast<unsigned>(std::max(p.s.size(), p.t.size())); }

void keep_top(std::vector<ScoredPair>& top, ScoredPair p, std::size_t width) {
  if (p.s > p.t) std::swap(p.s, p.t);
  for (const auto& q : top)
    if (q.s == p.s && q.t == p.t) return;
  top.push_back(std::move(p));
  std::stable_sort(top.begin(), top.end(), [](const ScoredPair& a, const ScoredPair& b) {
    if (a.count != b.count) return a.count > b.count;
    if (a.s.size() != b.s.size()) return a.s.size() < b.s.size();
    return a.s < b.s;
  });
  if (top.size() > width) top.resize(width);
}

}  // namespace

CertainCollision find_certain_collision(const FamilySpec& spec, unsigned max_len, std::uint64_t budget) {
  if (spec.position_dependent())
    require(max_len <= spec.max_len, ErrorKind::capacity, "search length beyond the family's maxlen");
  const SignatureWalker walker(spec, budget);
  const std::size_t W = walker.packing().words();
  std::unordered_map<Key, std::uint64_t, KeyHash> seen;
  CertainCollision out;
  walker.walk(max_len, budget, [&](unsigned len, std::uint64_t lexindex, const std::uint64_t* sig) {
    ++out.strings_explored;
    out.searched_len = len;
    const HashString s = decode(lexindex, len, spec.alphabet_size);
    if (excluded(spec, s.back())) return true;
    const Key key = key_of(sig, W);
    const std::uint64_t code = (std::uint64_t{len} << 58) | lexindex;
    const auto [it, inserted] = seen.try_emplace(key, code);
    if (inserted) return true;
    const HashString earlier = decode(it->second & word_mask(58), static_cast<unsigned>(it->second >> 58), spec.alphabet_size);
    if (walker.signature(earlier) != walker.signature(s)) return true;  // 128-bit key collision
    out.pair = std::make_pair(earlier, s);
    return false;
  });
  return out;
}

std::vector<CollisionRow> collision_table(const FamilySpec& spec, unsigned n_max, const CollisionTableOptions& opt) {
  require(n_max >= 1, ErrorKind::domain, "table needs n_max >= 1");
  const unsigned exact_n = std::min(opt.exact_max_n, n_max);
  const SignatureWalker walker(spec, opt.budget);
  const std::uint64_t I = walker.instances();
  const Packing& pack = walker.packing();
  const std::size_t W = pack.words();
  const std::uint64_t sigma = spec.alphabet_size;

  // Exact rows: every pair of distinct strings of length <= exact_n, packed.
  std::vector<std::uint64_t> sigs;
  std::vector<HashString> strs;
  const std::uint64_t n_strings = count_strings(sigma, 1, exact_n);
  require(BigInt(n_strings) * I <= opt.budget, ErrorKind::capacity,
          "exact rows up to n=" + std::to_string(exact_n) + " need " + (BigInt(n_strings) * I).str() +
              " evaluations, over the budget");
  require(n_strings * W * 8 <= kFrontierBytes, ErrorKind::capacity, "exact rows exceed the signature memory limit");
  walker.walk(exact_n, opt.budget, [&](unsigned len, std::uint64_t lexindex, const std::uint64_t* sig) {
    HashString s = decode(lexindex, len, sigma);
    if (excluded(spec, s.back())) return true;
    strs.push_back(std::move(s));
    sigs.insert(sigs.end(), sig, sig + W);
    return true;
  });

  const std::size_t N = strs.size();
  const DiffFn diff = pick_diff();
  struct BlockBest {
    std::vector<std::uint64_t> best;
    std::vector<std::pair<std::size_t, std::size_t>> arg;
    std::vector<char> has;
    std::vector<ScoredPair> top;
  };
  constexpr std::size_t kBlock = 64;
  const std::size_t blocks = (N + kBlock - 1) / kBlock;
  std::vector<BlockBest> per(blocks);
  parallel_blocks(blocks, 0, [&](std::size_t blk) {
    BlockBest& bb = per[blk];
    bb.best.assign(exact_n + 1, 0);
    bb.arg.assign(exact_n + 1, {0, 0});
    bb.has.assign(exact_n + 1, 0);
    std::uint64_t floor_count = 0;
    for (std::size_t b = blk * kBlock; b < std::min(N, (blk + 1) * kBlock); ++b) {
      const unsigned row = static_cast<unsigned>(strs[b].size());
      const std::uint64_t* sb = sigs.data() + b * W;
      for (std::size_t a = 0; a < b; ++a) {
        const std::uint64_t eq = I - diff(sigs.data() + a * W, sb, W, pack.bits(), pack.low_bits());
        if (!bb.has[row] || eq > bb.best[row]) {
          bb.best[row] = eq;
          bb.arg[row] = {a, b};
          bb.has[row] = 1;
        }
        if (eq > floor_count || bb.top.size() < opt.search_width) {
          keep_top(bb.top, {eq, strs[a], strs[b]}, opt.search_width);
          if (bb.top.size() == opt.search_width) floor_count = bb.top.back().count;
        }
      }
    }
  });

  std::vector<CollisionRow> rows;
  std::vector<std::uint64_t> best(exact_n + 1, 0);
  std::vector<std::pair<std::size_t, std::size_t>> arg(exact_n + 1, {0, 0});
  std::vector<bool> have(exact_n + 1, false);
  std::vector<ScoredPair> top;
  for (const auto& bb : per) {
    for (unsigned r = 1; r <= exact_n; ++r) {
      if (!bb.has[r]) continue;
      if (!have[r] || bb.best[r] > best[r]) best[r] = bb.best[r], arg[r] = bb.arg[r], have[r] = true;
    }
    for (const auto& p : bb.top) keep_top(top, p, opt.search_width);
  }
  // prefix maximum: a row covers all shorter strings too
  for (unsigned r = 1; r <= exact_n; ++r) {
    if (r > 1 && (!have[r] || best[r - 1] > best[r]) && have[r - 1]) {
      best[r] = best[r - 1];
      arg[r] = arg[r - 1];
      have[r] = true;
    }
    CollisionRow row{r, Probability{best[r], I}, {}, {}, RowMode::exact};
    if (have[r]) row.s = strs[arg[r].first], row.t = strs[arg[r].second];
    rows.push_back(row);
  }
  if (n_max == exact_n) return rows;

  CertainCollision certain;
  try {
    certain = find_certain_collision(spec, n_max, opt.budget);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::capacity) throw;
  }
  const unsigned certain_len =
      certain.pair ? static_cast<unsigned>(std::max(certain.pair->first.size(), certain.pair->second.size())) : n_max + 1;

  // Lower-bound rows: local search from the best pairs seen so far; each
  // reported value is the exact probability of a concrete pair.
  std::vector<ScoredPair> pool = top;
  if (certain.pair) {
    // trimmed copies of the certain pair
    const HashString& cs = certain.pair->first;
    const HashString& ct = certain.pair->second;
    const std::size_t shortest = std::min(cs.size(), ct.size());
    for (std::size_t head = 0; head < shortest; ++head)
      for (std::size_t tail = 0; head + tail < shortest; ++tail) {
        HashString s(cs.begin() + head, cs.end() - tail), t(ct.begin() + head, ct.end() - tail);
        if (s == t || excluded(spec, s.back()) || excluded(spec, t.back())) continue;
        keep_top(pool, {walker.collisions(s, t), s, t}, opt.search_width * 2);
      }
  }
  for (unsigned n = exact_n + 1; n <= n_max; ++n) {
    if (n >= certain_len) {
      rows.push_back({n, Probability{I, I}, certain.pair->first, certain.pair->second, RowMode::certain});
      continue;
    }
    std::vector<ScoredPair> cur;
    for (const auto& p : pool)
      if (pair_len(p) <= n) keep_top(cur, p, opt.search_width);
    // periodic seeds p w^a vs p w^b: they collide once the orbit under w cycles
    for (unsigned wl = 1; wl <= 3; ++wl) {
      const std::uint64_t words = static_cast<std::uint64_t>(std::pow(double(sigma), double(wl)));
      if (words > 256) break;
      for (unsigned pl = 0; pl <= 2 && pl + wl <= n; ++pl) {
        const std::uint64_t prefixes = static_cast<std::uint64_t>(std::pow(double(sigma), double(pl)));
        if (prefixes * words > 4096) break;
        for (std::uint64_t wi = 0; wi < words; ++wi) {
          const HashString w = decode(wi, wl, sigma);
          for (std::uint64_t pi = 0; pi < prefixes; ++pi) {
            const HashString pre = decode(pi, pl, sigma);
            const unsigned b = (n - pl) / wl;  // longest power that fits
            HashString t = pre;
            for (unsigned r = 0; r < b; ++r) t.insert(t.end(), w.begin(), w.end());
            for (unsigned a = (pl == 0 ? 1 : 0); a < b; ++a) {
              HashString s = pre;
              for (unsigned r = 0; r < a; ++r) s.insert(s.end(), w.begin(), w.end());
              if (excluded(spec, s.back()) || excluded(spec, t.back())) continue;
              keep_top(cur, {walker.collisions(s, t), s, t}, opt.search_width);
            }
          }
        }
      }
    }
    for (int round = 0; round < 4; ++round) {
      std::vector<ScoredPair> next = cur;
      const std::uint64_t before = cur.empty() ? 0 : cur.front().count;
      for (const auto& p : cur) {
        std::vector<std::pair<HashString, HashString>> cand;
        for (Char c = 0; c < sigma; ++c) {
          auto s = p.s, t = p.t;
          s.push_back(c);
          t.push_back(c);
          cand.emplace_back(s, t);
          cand.emplace_back(s, p.t);
          cand.emplace_back(p.s, t);
          HashString ps{c}, pt{c};
          ps.insert(ps.end(), p.s.begin(), p.s.end());
          pt.insert(pt.end(), p.t.begin(), p.t.end());
          cand.emplace_back(ps, pt);
          for (Char d = 0; d < sigma; ++d) {
            auto s2 = s, t2 = t;
            s2.push_back(d);
            t2.push_back(d);
            cand.emplace_back(s2, t2);
          }
        }
        for (int side = 0; side < 2; ++side) {
          const HashString& base = side ? p.t : p.s;
          auto add = [&](const HashString& m) { side ? cand.emplace_back(p.s, m) : cand.emplace_back(m, p.t); };
          for (std::size_t i = 0; i <= base.size(); ++i) {
            if (i < base.size()) {
              HashString m = base;
              m.erase(m.begin() + static_cast<std::ptrdiff_t>(i));
              add(m);
            }
            for (Char c = 0; c < sigma; ++c) {
              HashString ins = base;
              ins.insert(ins.begin() + static_cast<std::ptrdiff_t>(i), c);
              add(ins);
              if (i < base.size() && c != base[i]) {
                HashString m = base;
                m[i] = c;
                add(m);
              }
            }
          }
        }
        for (auto& [s, t] : cand) {
          if (s == t || s.empty() || t.empty() || std::max(s.size(), t.size()) > n) continue;
          if (excluded(spec, s.back()) || excluded(spec, t.back())) continue;
          keep_top(next, {walker.collisions(s, t), s, t}, opt.search_width);
        }
      }
      cur = std::move(next);
      if (!cur.empty() && cur.front().count == before && round > 0) break;
    }
    const std::uint64_t prev = rows.back().probability.count;
    CollisionRow row{n, Probability{prev, I}, rows.back().s, rows.back().t, RowMode::lower_bound};
    if (!cur.empty() && cur.front().count >= prev) row.probability.count = cur.front().count, row.s = cur.front().s, row.t = cur.front().t;
    rows.push_back(row);
    for (const auto& p : cur) keep_top(pool, p, opt.search_width * 2);
  }
  return rows;
}

}  // namespace iterhash
