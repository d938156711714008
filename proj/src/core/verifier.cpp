#include "core/verifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "core/error.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace iterhash {

namespace {

constexpr std::uint64_t kMatrixLimit = std::uint64_t{1} << 27;
constexpr std::uint64_t kDenseJoint = std::uint64_t{1} << 16;
constexpr std::uint64_t kDenseValues = std::uint64_t{1} << 20;

using InstanceAt = std::function<HashInstance(std::uint64_t)>;

struct Source {
  std::uint64_t size = 0;
  InstanceAt at;
};

// Hash values laid out string-major: v[s * I + i].
struct ValueMatrix {
  std::uint64_t instances = 0;
  std::size_t strings = 0;
  std::vector<std::uint64_t> v;

  const std::uint64_t* row(std::size_t s) const { return v.data() + s * instances; }
};

BigInt choose(std::uint64_t n, unsigned k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (unsigned i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

ValueMatrix build_matrix(const Source& src, const StringSet& strings, const VerifyOptions& opt) {
  const std::uint64_t I = src.size;
  const std::size_t N = strings.size();
  const BigInt work = BigInt(I) * N;
  require(work <= opt.budget, ErrorKind::capacity,
          work.str() + " hash evaluations exceed the budget of " + std::to_string(opt.budget) +
              "; use the Monte Carlo mode");
  require(work <= kMatrixLimit, ErrorKind::capacity,
          "value matrix of " + work.str() + " entries exceeds the memory limit of 2^27");
  if (N > 0 && I > 0) {
    const HashInstance probe = src.at(0);
    for (const auto& s : strings.strings()) hash(probe, s);  // surface domain errors here
  }
  ValueMatrix m{I, N, std::vector<std::uint64_t>(I * N)};
  constexpr std::uint64_t block = 256;
  parallel_blocks((I + block - 1) / block, opt.threads, [&](std::size_t b) {
    const std::uint64_t end = std::min(I, (b + 1) * block);
    for (std::uint64_t i = b * block; i < end; ++i) {
      const HashInstance inst = src.at(i);
      for (std::size_t s = 0; s < N; ++s) m.v[s * I + i] = hash(inst, strings[s]);
    }
  });
  return m;
}

struct PairResult {
  bool have = false;
  std::uint64_t coll = 0;
  std::size_t ca = 0, cb = 0;
  std::uint64_t diff = 0, diff_value = 0;
  std::size_t da = 0, db = 0;
  std::uint64_t joint = 0, jy = 0, jy2 = 0;
  std::size_t ja = 0, jb = 0;
  bool independent = true;
  bool have_fail = false;
  std::size_t fa = 0, fb = 0;
  std::uint64_t fcount = 0, fy = 0, fy2 = 0;

  void merge(const PairResult& o) {
    if (!o.have) return;
    if (!have || o.coll > coll) coll = o.coll, ca = o.ca, cb = o.cb;
    if (!have || o.diff > diff) diff = o.diff, diff_value = o.diff_value, da = o.da, db = o.db;
    if (!have || o.joint > joint) joint = o.joint, jy = o.jy, jy2 = o.jy2, ja = o.ja, jb = o.jb;
    if (!o.independent) {
      if (!have_fail) have_fail = true, fa = o.fa, fb = o.fb, fcount = o.fcount, fy = o.fy, fy2 = o.fy2;
      independent = false;
    }
    have = true;
  }
};

struct PairScratch {
  std::vector<std::uint64_t> joint, diff;
  std::vector<std::uint64_t> codes;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
};

// Collision, difference and joint statistics for one pair of strings.
void analyse_pair(const std::uint64_t* x, const std::uint64_t* y, std::uint64_t I, std::uint64_t m,
                  std::uint64_t prime, PairScratch& sc, PairResult& r, std::size_t a, std::size_t b) {
  PairResult p;
  p.have = true;
  p.ca = p.da = p.ja = p.fa = a;
  p.cb = p.db = p.jb = p.fb = b;
  for (std::uint64_t i = 0; i < I; ++i) p.coll += x[i] == y[i];

  auto diff_of = [&](std::uint64_t u, std::uint64_t v) { return prime ? (u >= v ? u - v : prime - (v - u)) : u ^ v; };
  if (m <= kDenseJoint) {
    sc.diff.assign(m, 0);
    for (std::uint64_t i = 0; i < I; ++i) ++sc.diff[diff_of(x[i], y[i])];
    for (std::uint64_t d = 0; d < m; ++d)
      if (sc.diff[d] > p.diff) p.diff = sc.diff[d], p.diff_value = d;
  } else {
    sc.codes.resize(I);
    for (std::uint64_t i = 0; i < I; ++i) sc.codes[i] = diff_of(x[i], y[i]);
    std::sort(sc.codes.begin(), sc.codes.end());
    for (std::uint64_t i = 0; i < I;) {
      std::uint64_t j = i;
      while (j < I && sc.codes[j] == sc.codes[i]) ++j;
      if (j - i > p.diff) p.diff = j - i, p.diff_value = sc.codes[i];
      i = j;
    }
  }

  const bool m_squared_fits = m < (std::uint64_t{1} << 32);
  const std::uint64_t cells = m_squared_fits ? m * m : 0;
  const bool can_be_uniform = m_squared_fits && I % cells == 0;
  const std::uint64_t expected = can_be_uniform ? I / cells : 0;
  if (m_squared_fits && cells <= kDenseJoint) {
    sc.joint.assign(cells, 0);
    for (std::uint64_t i = 0; i < I; ++i) ++sc.joint[x[i] * m + y[i]];
    for (std::uint64_t c = 0; c < cells; ++c) {
      if (sc.joint[c] > p.joint) p.joint = sc.joint[c], p.jy = c / m, p.jy2 = c % m;
      if (sc.joint[c] != expected) p.independent = false;
    }
    if (!can_be_uniform) p.independent = false;
  } else {
    sc.pairs.resize(I);
    for (std::uint64_t i = 0; i < I; ++i) sc.pairs[i] = {x[i], y[i]};
    std::sort(sc.pairs.begin(), sc.pairs.end());
    std::uint64_t distinct = 0;
    for (std::uint64_t i = 0; i < I;) {
      std::uint64_t j = i;
      while (j < I && sc.pairs[j] == sc.pairs[i]) ++j;
      ++distinct;
      if (j - i > p.joint) p.joint = j - i, p.jy = sc.pairs[i].first, p.jy2 = sc.pairs[i].second;
      if (j - i != expected) p.independent = false;
      i = j;
    }
    if (!can_be_uniform || distinct != cells) p.independent = false;
  }
  if (!p.independent) p.have_fail = true, p.fcount = p.joint, p.fy = p.jy, p.fy2 = p.jy2;
  r.merge(p);
}

struct TupleResult {
  bool enumerated = false;
  bool independent = true;
  std::vector<std::size_t> fail;
  std::vector<std::uint64_t> fail_values;
  std::uint64_t fail_count = 0;
  bool have_coll = false;
  std::uint64_t coll = 0;
  std::vector<std::size_t> coll_tuple;
};

// Smallest assignment (lexicographic) that no instance produces, given the
// sorted distinct tuples that do occur.
std::vector<std::uint64_t> first_missing(const std::vector<std::array<std::uint64_t, 4>>& sorted_unique, unsigned k,
                                         std::uint64_t m) {
  std::array<std::uint64_t, 4> cand{};
  for (const auto& t : sorted_unique) {
    if (t != cand) break;
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && cand[i] + 1 == m) cand[i--] = 0;
    if (i < 0) return {};
    ++cand[i];
  }
  return std::vector<std::uint64_t>(cand.begin(), cand.begin() + k);
}

TupleResult analyse_tuples(const ValueMatrix& mat, std::uint64_t m, unsigned k, unsigned threads) {
  const std::size_t N = mat.strings;
  const std::uint64_t I = mat.instances;
  // number of cells m^k, saturating
  BigInt cells_big = boost::multiprecision::pow(BigInt(m), k);
  const bool divisible = BigInt(I) % cells_big == 0;
  const std::uint64_t expected = divisible ? static_cast<std::uint64_t>(BigInt(I) / cells_big) : 0;

  std::vector<TupleResult> per_a(N);
  parallel_blocks(N, threads, [&](std::size_t a) {
    TupleResult& res = per_a[a];
    std::vector<std::array<std::uint64_t, 4>> codes(I);
    std::array<std::size_t, 4> idx{a, 0, 0, 0};
    auto visit = [&]() {
      res.enumerated = true;
      for (std::uint64_t i = 0; i < I; ++i) {
        auto& c = codes[i];
        c = {0, 0, 0, 0};
        for (unsigned j = 0; j < k; ++j) c[j] = mat.row(idx[j])[i];
      }
      std::sort(codes.begin(), codes.end());
      std::uint64_t distinct = 0;
      bool indep = divisible;
      std::uint64_t top = 0;
      std::array<std::uint64_t, 4> top_code{};
      std::vector<std::array<std::uint64_t, 4>> unique;
      std::uint64_t all_equal = 0;
      for (std::uint64_t i = 0; i < I;) {
        std::uint64_t j = i;
        while (j < I && codes[j] == codes[i]) ++j;
        ++distinct;
        unique.push_back(codes[i]);
        if (j - i != expected) indep = false;
        if (j - i > top) top = j - i, top_code = codes[i];
        bool eq = true;
        for (unsigned q = 1; q < k; ++q) eq = eq && codes[i][q] == codes[i][0];
        if (eq) {
          all_equal += j - i;
        }
        i = j;
      }
      if (BigInt(distinct) != cells_big) indep = false;
      if (!indep && res.independent) {
        res.independent = false;
        res.fail.assign(idx.begin(), idx.begin() + k);
        if (BigInt(distinct) < cells_big) {
          res.fail_values = first_missing(unique, k, m);
          res.fail_count = 0;
        } else {
          res.fail_values.assign(top_code.begin(), top_code.begin() + k);
          res.fail_count = top;
        }
      }
      if (!res.have_coll || all_equal > res.coll) {
        res.have_coll = true;
        res.coll = all_equal;
        res.coll_tuple.assign(idx.begin(), idx.begin() + k);
      }
    };
    for (idx[1] = a + 1; idx[1] < N; ++idx[1]) {
      for (idx[2] = idx[1] + 1; idx[2] < N; ++idx[2]) {
        if (k == 3) {
          visit();
          continue;
        }
        for (idx[3] = idx[2] + 1; idx[3] < N; ++idx[3]) visit();
      }
    }
  });
  TupleResult out;
  for (const auto& r : per_a) {
    if (!r.enumerated) continue;
    out.enumerated = true;
    if (!r.independent && out.independent) {
      out.independent = false;
      out.fail = r.fail;
      out.fail_values = r.fail_values;
      out.fail_count = r.fail_count;
    }
    if (r.have_coll && (!out.have_coll || r.coll > out.coll)) {
      out.have_coll = true;
      out.coll = r.coll;
      out.coll_tuple = r.coll_tuple;
    }
  }
  return out;
}

std::vector<HashString> pick(const StringSet& strings, std::initializer_list<std::size_t> idx) {
  std::vector<HashString> out;
  for (std::size_t i : idx) out.push_back(strings[i]);
  return out;
}

VerificationReport run_report(const FamilySpec& spec, const Source& src, const StringSet& strings,
                              const VerifyOptions& opt, bool exact) {
  require(opt.k_max >= 2 && opt.k_max <= 4, ErrorKind::usage, "k_max must be 2, 3 or 4");
  VerificationReport rep;
  rep.family = to_string(spec);
  rep.strings = strings.describe();
  rep.string_count = strings.size();
  rep.instances = src.size;
  rep.value_count = spec.value_count();
  rep.exact = exact;
  rep.axu_kind = spec.prime_valued() ? "field-difference" : "bitwise-xor";

  const std::uint64_t I = src.size;
  const std::uint64_t m = rep.value_count;
  const std::size_t N = strings.size();
  const ValueMatrix mat = build_matrix(src, strings, opt);
  auto prob = [&](std::uint64_t count) { return Probability{count, I}; };
  auto interval = [&](std::uint64_t count) -> std::optional<Interval> {
    if (exact) return std::nullopt;
    return wilson_interval(count, I);
  };

  // uniformity
  {
    std::vector<std::uint64_t> counts;
    std::vector<std::uint64_t> sorted;
    bool uniform = I % m == 0;
    const std::uint64_t expected = I / m;
    std::uint64_t best = 0, worst = I + 1;
    std::size_t best_s = 0, worst_s = 0;
    std::uint64_t best_y = 0, worst_y = 0;
    for (std::size_t s = 0; s < N; ++s) {
      const std::uint64_t* v = mat.row(s);
      if (m <= kDenseValues) {
        counts.assign(m, 0);
        for (std::uint64_t i = 0; i < I; ++i) ++counts[v[i]];
        for (std::uint64_t y = 0; y < m; ++y) {
          if (counts[y] != expected) uniform = false;
          if (counts[y] > best) best = counts[y], best_s = s, best_y = y;
          if (counts[y] < worst) worst = counts[y], worst_s = s, worst_y = y;
        }
      } else {
        sorted.assign(v, v + I);
        std::sort(sorted.begin(), sorted.end());
        std::uint64_t distinct = 0;
        std::uint64_t missing = 0;
        bool found_missing = false;
        for (std::uint64_t i = 0; i < I;) {
          std::uint64_t j = i;
          while (j < I && sorted[j] == sorted[i]) ++j;
          if (!found_missing) {
            if (sorted[i] == missing) {
              ++missing;
            } else {
              found_missing = true;
            }
          }
          ++distinct;
          if (j - i != expected) uniform = false;
          if (j - i > best) best = j - i, best_s = s, best_y = sorted[i];
          i = j;
        }
        if (distinct != m) {
          uniform = false;
          if (worst > 0) worst = 0, worst_s = s, worst_y = missing;
        }
      }
    }
    if (N > 0) {
      rep.max_value = Extremum{prob(best), {strings[best_s]}, {best_y}, interval(best)};
      rep.min_value = Extremum{prob(worst), {strings[worst_s]}, {worst_y}, interval(worst)};
    }
    if (!exact || I == 1 || N == 0) {
      rep.uniformity = Uniformity::not_applicable;
    } else {
      rep.uniformity = uniform ? Uniformity::uniform : Uniformity::not_uniform;
    }
  }

  // pairs
  KwiseVerdict k2{2, std::nullopt, "", {}, {}, std::nullopt};
  if (N >= 2) {
    const BigInt pair_work = choose(N, 2) * I;
    require(pair_work <= opt.budget, ErrorKind::capacity,
            pair_work.str() + " pair evaluations exceed the budget of " + std::to_string(opt.budget) +
                "; use the Monte Carlo mode");
    const std::uint64_t prime = spec.prime_valued() ? m : 0;
    std::vector<PairResult> per_a(N);
    parallel_blocks(N, opt.threads, [&](std::size_t a) {
      PairScratch sc;
      for (std::size_t b = a + 1; b < N; ++b) analyse_pair(mat.row(a), mat.row(b), I, m, prime, sc, per_a[a], a, b);
    });
    PairResult r;
    for (const auto& p : per_a) r.merge(p);
    rep.eps_au = Extremum{prob(r.coll), pick(strings, {r.ca, r.cb}), {}, interval(r.coll)};
    rep.eps_axu = Extremum{prob(r.diff), pick(strings, {r.da, r.db}), {r.diff_value}, interval(r.diff)};
    rep.max_joint = Extremum{prob(r.joint), pick(strings, {r.ja, r.jb}), {r.jy, r.jy2}, interval(r.joint)};
    if (exact) {
      k2.independent = r.independent && rep.uniformity != Uniformity::not_uniform;
      if (!r.independent) {
        k2.witness = pick(strings, {r.fa, r.fb});
        k2.values = {r.fy, r.fy2};
        k2.witness_probability = prob(r.fcount);
      } else if (rep.uniformity == Uniformity::not_uniform) {
        k2.note = "not uniform";
      }
    } else {
      k2.note = "not decided by sampling";
    }
  } else {
    k2.note = "fewer than 2 strings";
  }
  rep.kwise.push_back(k2);
  rep.kwise_collision.push_back({2, rep.eps_au, N >= 2 ? "" : "fewer than 2 strings"});

  for (unsigned k = 3; k <= 4; ++k) {
    KwiseVerdict v{k, std::nullopt, "", {}, {}, std::nullopt};
    KCollision kc{k, std::nullopt, ""};
    const std::optional<bool> prev = rep.kwise.back().independent;
    if (N < k) {
      v.note = kc.note = "fewer than " + std::to_string(k) + " strings";
    } else if (k > opt.k_max) {
      v.note = kc.note = "not requested";
      if (exact && prev == false) v.independent = false, v.note = "implied by " + std::to_string(k - 1) + "-wise failure";
    } else {
      const BigInt work = choose(N, k) * I;
      if (work > opt.budget) {
        v.note = kc.note = "over budget (" + work.str() + " evaluations)";
        if (exact && prev == false) v.independent = false, v.note = "implied by " + std::to_string(k - 1) + "-wise failure";
      } else {
        const TupleResult t = analyse_tuples(mat, m, k, opt.threads);
        if (exact) {
          v.independent = t.independent && prev != false;
          if (!t.independent) {
            for (std::size_t i : t.fail) v.witness.push_back(strings[i]);
            v.values = t.fail_values;
            v.witness_probability = prob(t.fail_count);
          } else if (prev == false) {
            v.note = "implied by " + std::to_string(k - 1) + "-wise failure";
          }
        } else {
          v.note = "not decided by sampling";
        }
        Extremum e{prob(t.coll), {}, {}, interval(t.coll)};
        for (std::size_t i : t.coll_tuple) e.strings.push_back(strings[i]);
        kc.max = e;
      }
    }
    if (!exact && v.note.empty()) v.note = "not decided by sampling";
    rep.kwise.push_back(v);
    rep.kwise_collision.push_back(kc);
  }
  return rep;
}

}  // namespace

std::string to_string(Uniformity u) {
  switch (u) {
    case Uniformity::uniform: return "uniform";
    case Uniformity::not_uniform: return "not-uniform";
    case Uniformity::not_applicable: return "not-applicable";
  }
  return "?";
}

std::string to_string(RowMode m) {
  switch (m) {
    case RowMode::exact: return "exact";
    case RowMode::lower_bound: return "lower-bound";
    case RowMode::certain: return "certain";
  }
  return "?";
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return {0, 1};
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1 + z2 / n;
  const double centre = (p + z2 / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

std::optional<Rational> VerificationReport::eps_asu() const {
  if (!max_joint) return std::nullopt;
  return max_joint->probability.rational() * value_count;
}

std::optional<bool> VerificationReport::pairwise_independent() const {
  for (const auto& v : kwise)
    if (v.k == 2) return v.independent;
  return std::nullopt;
}

VerificationReport exact_report(const FamilySpec& spec, const StringSet& strings, const VerifyOptions& options) {
  auto space = std::make_shared<InstanceSpace>(spec, options.budget);
  Source src{space->size(), [space](std::uint64_t i) { return space->at(i); }};
  return run_report(spec, src, strings, options, true);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return splitmix64(seed ^ splitmix64(trial + 0x5bd1e995ULL));
}

VerificationReport monte_carlo_report(const FamilySpec& spec, const StringSet& strings, std::uint64_t trials,
                                      std::uint64_t seed, const VerifyOptions& options) {
  require(trials >= 1, ErrorKind::domain, "at least one trial");
  auto shared = std::make_shared<const FamilySpec>(spec);
  Source src{trials, [shared, seed](std::uint64_t t) { return sample_instance(shared, trial_seed(seed, t)); }};
  VerificationReport rep = run_report(spec, src, strings, options, false);
  rep.trials = trials;
  rep.seed = seed;
  return rep;
}

Estimate monte_carlo_collision(const FamilySpec& spec, const HashString& s, const HashString& t, std::uint64_t trials,
                               std::uint64_t seed) {
  require(trials >= 1, ErrorKind::domain, "at least one trial");
  auto shared = std::make_shared<const FamilySpec>(spec);
  Estimate e{0, trials};
  for (std::uint64_t i = 0; i < trials; ++i) {
    const HashInstance inst = sample_instance(shared, trial_seed(seed, i));
    e.hits += hash(inst, s) == hash(inst, t);
  }
  return e;
}

Probability collision_probability(const FamilySpec& spec, const HashString& s, const HashString& t,
                                  std::uint64_t budget) {
  const InstanceSpace space(spec, budget);
  Probability p{0, space.size()};
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    const HashInstance inst = space.at(i);
    p.count += hash(inst, s) == hash(inst, t);
  }
  return p;
}

bool JointTable::all_equal() const {
  return std::all_of(counts.begin(), counts.end(), [&](std::uint64_t c) { return c == counts.front(); });
}

JointTable pairwise_joint(const FamilySpec& spec, const HashString& s, const HashString& t, unsigned masked_bits,
                          std::uint64_t budget) {
  require(masked_bits <= spec.word_bits, ErrorKind::domain, "masked bits exceed the word size");
  require(masked_bits <= 12, ErrorKind::capacity, "joint table limited to 12 masked bits");
  const InstanceSpace space(spec, budget);
  JointTable table{masked_bits, space.size(), std::vector<std::uint64_t>(std::size_t{1} << (2 * masked_bits), 0)};
  const std::uint64_t mask = word_mask(masked_bits) & (masked_bits ? ~std::uint64_t{0} : 0);
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    const HashInstance inst = space.at(i);
    const std::uint64_t a = hash(inst, s) & mask;
    const std::uint64_t b = hash(inst, t) & mask;
    ++table.counts[(a << masked_bits) | b];
  }
  return table;
}

Probability unary_collision_prob(const FamilySpec& spec, std::uint64_t r, std::uint64_t r2, Char c,
                                 std::uint64_t budget) {
  const InstanceSpace space(spec, budget);
  const bool fast = spec.iterated();
  Probability p{0, space.size()};
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    const HashInstance inst = space.at(i);
    if (fast) {
      p.count += hash_unary(inst, c, r) == hash_unary(inst, c, r2);
    } else {
      p.count += hash(inst, HashString(r, c)) == hash(inst, HashString(r2, c));
    }
  }
  return p;
}

}  // namespace iterhash
