#include "iterhash/iterhash.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "core/bench.hpp"
#include "core/bounds.hpp"
#include "core/error.hpp"
#include "core/report.hpp"
#include "core/strings.hpp"
#include "core/verifier.hpp"
#include "core/witnesses.hpp"

using namespace iterhash;

struct ih_family {
  std::shared_ptr<const FamilySpec> spec;
};
struct ih_instance {
  HashInstance inst;
};
struct ih_strings {
  StringSet set;
};

namespace {

thread_local std::string last_error;

ih_status code(ErrorKind k) {
  switch (k) {
    case ErrorKind::domain: return IH_ERR_DOMAIN;
    case ErrorKind::capacity: return IH_ERR_CAPACITY;
    case ErrorKind::structural: return IH_ERR_STRUCTURAL;
    case ErrorKind::unsupported: return IH_ERR_UNSUPPORTED;
    case ErrorKind::usage: return IH_ERR_USAGE;
  }
  return IH_ERR_INTERNAL;
}

template <class F>
ih_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return IH_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return code(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return IH_ERR_CAPACITY;
  } catch (const std::exception& e) {
    last_error = e.what();
    return IH_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorKind::usage, std::string(what) + " must not be null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Format fmt_of(ih_format f) {
  switch (f) {
    case IH_FORMAT_JSON: return Format::json;
    case IH_FORMAT_CSV: return Format::csv;
    case IH_FORMAT_TEXT: return Format::text;
  }
  fail(ErrorKind::usage, "unknown output format");
}

Rational eps_of(const char* text) { return text ? parse_rational(text) : Rational(1, 2); }

HashString to_string_vec(const uint32_t* chars, size_t len) {
  if (len) need(chars, "chars");
  return HashString(chars, chars + len);
}

}  // namespace

extern "C" {

const char* ih_version(void) { return "1.0.0"; }
const char* ih_last_error(void) { return last_error.c_str(); }
const char* ih_family_grammar(void) { return family_grammar(); }
void ih_string_free(char* s) { std::free(s); }

ih_status ih_family_parse(const char* spec, ih_family** out) {
  return guard([&] {
    need(spec, "spec");
    need(out, "out");
    *out = new ih_family{std::make_shared<const FamilySpec>(parse_family(spec))};
  });
}

void ih_family_free(ih_family* f) { delete f; }

ih_status ih_family_describe(const ih_family* f, char** out) {
  return guard([&] {
    need(f, "family");
    need(out, "out");
    *out = dup(to_string(*f->spec));
  });
}

uint64_t ih_family_value_count(const ih_family* f) { return f ? f->spec->value_count() : 0; }
uint64_t ih_family_alphabet_size(const ih_family* f) { return f ? f->spec->alphabet_size : 0; }
unsigned ih_family_word_bits(const ih_family* f) { return f ? f->spec->word_bits : 0; }

ih_status ih_family_cardinality(const ih_family* f, char** out) {
  return guard([&] {
    need(f, "family");
    need(out, "out");
    *out = dup(family_cardinality(*f->spec).str());
  });
}

ih_status ih_instance_at(const ih_family* f, uint64_t index, ih_instance** out) {
  return guard([&] {
    need(f, "family");
    need(out, "out");
    const InstanceSpace space(*f->spec, ~std::uint64_t{0});
    require(index < space.size(), ErrorKind::domain, "instance index out of range");
    *out = new ih_instance{space.at(index)};
  });
}

ih_status ih_instance_sample(const ih_family* f, uint64_t seed, ih_instance** out) {
  return guard([&] {
    need(f, "family");
    need(out, "out");
    *out = new ih_instance{sample_instance(f->spec, seed)};
  });
}

void ih_instance_free(ih_instance* h) { delete h; }

ih_status ih_hash(const ih_instance* h, const uint32_t* chars, size_t len, uint64_t* out) {
  return guard([&] {
    need(h, "instance");
    need(out, "out");
    if (len) need(chars, "chars");
    *out = hash(h->inst, std::span<const Char>(chars, len));
  });
}

ih_status ih_hash_bytes(const ih_instance* h, const char* bytes, size_t len, uint64_t* out) {
  return guard([&] {
    need(h, "instance");
    need(out, "out");
    if (len) need(bytes, "bytes");
    HashString s(len);
    for (size_t i = 0; i < len; ++i) s[i] = static_cast<unsigned char>(bytes[i]);
    *out = hash(h->inst, s);
  });
}

ih_status ih_compress(const ih_instance* h, uint64_t state, uint32_t c, size_t position, uint64_t* out) {
  return guard([&] {
    need(h, "instance");
    need(out, "out");
    *out = compress(h->inst, state, c, position);
  });
}

ih_status ih_is_strongly_permuting(const ih_instance* h, int* out) {
  return guard([&] {
    need(h, "instance");
    need(out, "out");
    *out = is_strongly_permuting(h->inst) ? 1 : 0;
  });
}

ih_status ih_strings_for_family(const ih_family* f, unsigned min_len, unsigned max_len, ih_strings** out) {
  return guard([&] {
    need(f, "family");
    need(out, "out");
    *out = new ih_strings{StringSet::for_family(*f->spec, max_len, min_len)};
  });
}

ih_status ih_strings_all(uint64_t sigma, unsigned min_len, unsigned max_len, ih_strings** out) {
  return guard([&] {
    need(out, "out");
    *out = new ih_strings{StringSet::all_up_to(sigma, max_len, min_len)};
  });
}

ih_status ih_strings_explicit(uint64_t sigma, const uint32_t* chars, const size_t* lengths, size_t count,
                              ih_strings** out) {
  return guard([&] {
    need(out, "out");
    if (count) need(lengths, "lengths");
    std::vector<HashString> list;
    list.reserve(count);
    size_t at = 0;
    for (size_t i = 0; i < count; ++i) {
      list.push_back(to_string_vec(chars ? chars + at : nullptr, lengths[i]));
      at += lengths[i];
    }
    *out = new ih_strings{StringSet::explicit_list(std::move(list), sigma)};
  });
}

size_t ih_strings_size(const ih_strings* s) { return s ? s->set.size() : 0; }
void ih_strings_free(ih_strings* s) { delete s; }

ih_status ih_verify_exact(const ih_family* f, const ih_strings* s, uint64_t budget, unsigned k_max, ih_format fmt,
                          char** out) {
  return guard([&] {
    need(f, "family");
    need(s, "strings");
    need(out, "out");
    VerifyOptions o;
    if (budget) o.budget = budget;
    if (k_max) o.k_max = k_max;
    *out = dup(render(exact_report(*f->spec, s->set, o), fmt_of(fmt)));
  });
}

ih_status ih_verify_monte_carlo(const ih_family* f, const ih_strings* s, uint64_t trials, uint64_t seed,
                                unsigned k_max, ih_format fmt, char** out) {
  return guard([&] {
    need(f, "family");
    need(s, "strings");
    need(out, "out");
    VerifyOptions o;
    if (k_max) o.k_max = k_max;
    *out = dup(render(monte_carlo_report(*f->spec, s->set, trials, seed, o), fmt_of(fmt)));
  });
}

ih_status ih_collision_probability(const ih_family* f, const uint32_t* a, size_t alen, const uint32_t* b,
                                   size_t blen, uint64_t budget, uint64_t* num, uint64_t* den) {
  return guard([&] {
    need(f, "family");
    need(num, "num");
    need(den, "den");
    const Probability p =
        collision_probability(*f->spec, to_string_vec(a, alen), to_string_vec(b, blen), budget ? budget : kDefaultBudget);
    *num = p.count;
    *den = p.total;
  });
}

ih_status ih_unary_collision_probability(const ih_family* f, uint64_t r1, uint64_t r2, uint32_t c, uint64_t* num,
                                         uint64_t* den) {
  return guard([&] {
    need(f, "family");
    need(num, "num");
    need(den, "den");
    const Probability p = unary_collision_prob(*f->spec, r1, r2, c);
    *num = p.count;
    *den = p.total;
  });
}

ih_status ih_collision_table(const ih_family* f, unsigned n_max, unsigned exact_max_n, uint64_t budget, ih_format fmt,
                             char** out) {
  return guard([&] {
    need(f, "family");
    need(out, "out");
    CollisionTableOptions o;
    if (exact_max_n) o.exact_max_n = exact_max_n;
    if (budget) o.budget = budget;
    *out = dup(render_collision_table(to_string(*f->spec), collision_table(*f->spec, n_max, o), fmt_of(fmt)));
  });
}

ih_status ih_certain_collision(const ih_family* f, unsigned max_len, uint64_t budget, char** out) {
  return guard([&] {
    need(f, "family");
    need(out, "out");
    const CertainCollision c = find_certain_collision(*f->spec, max_len, budget ? budget : kDefaultBudget);
    nlohmann::json j = {{"family", to_string(*f->spec)},
                        {"max_len", max_len},
                        {"strings_explored", c.strings_explored},
                        {"searched_len", c.searched_len},
                        {"pair", nullptr}};
    if (c.pair) {
      j["pair"] = {c.pair->first, c.pair->second};
      j["probability"] = to_json(collision_probability(*f->spec, c.pair->first, c.pair->second, ~std::uint64_t{0}));
    }
    *out = dup(j.dump(2) + "\n");
  });
}

ih_status ih_bounds_table(const unsigned* L, size_t count, const char* epsilon, ih_format fmt, char** out) {
  return guard([&] {
    need(out, "out");
    if (count) need(L, "L");
    const Rational eps = eps_of(epsilon);
    std::vector<BoundsRow> rows;
    for (size_t i = 0; i < count; ++i) rows.push_back(table_bounds(L[i], eps));
    *out = dup(render_bounds(rows, fmt_of(fmt)));
  });
}

ih_status ih_min_family_size(uint64_t K, unsigned L, const char* epsilon, char** out) {
  return guard([&] {
    need(out, "out");
    *out = dup(min_family_size(K, L, eps_of(epsilon)).str());
  });
}

ih_status ih_stinson_min_size(const char* num_strings, const char* num_values, int strong, char** out) {
  return guard([&] {
    need(num_strings, "num_strings");
    need(num_values, "num_values");
    need(out, "out");
    BigInt a, b;
    try {
      a = BigInt(num_strings);
      b = BigInt(num_values);
    } catch (const std::exception&) {
      fail(ErrorKind::usage, "counts must be decimal integers");
    }
    *out = dup(stinson_min_size(a, b, strong != 0).str());
  });
}

ih_status ih_epsilon_impossible_length(unsigned L, const char* epsilon, char** out) {
  return guard([&] {
    need(epsilon, "epsilon");
    need(out, "out");
    *out = dup(epsilon_impossible_length(L, parse_rational(epsilon)).str());
  });
}

ih_status ih_divisor_table(uint64_t n_max, ih_format fmt, char** out) {
  return guard([&] {
    need(out, "out");
    *out = dup(render_divisor_table(n_max, fmt_of(fmt)));
  });
}

ih_status ih_ht_table(unsigned L, uint64_t max_len, ih_format fmt, char** out) {
  return guard([&] {
    need(out, "out");
    *out = dup(render_ht_table(L, max_len, fmt_of(fmt)));
  });
}

ih_status ih_witness(const char* kind, const char* target, uint64_t n, ih_format fmt, char** out) {
  return guard([&] {
    need(kind, "kind");
    need(out, "out");
    const std::string k = kind;
    auto bits = [&] {
      require(n >= 1 && n <= 64, ErrorKind::domain, "L must be in 1..64");
      return static_cast<unsigned>(n);
    };
    Witness w;
    if (k == "tau-pair") {
      need(target, "field");
      const FamilySpec spec = parse_family(std::string("cwpoly:") + target);
      w = tau_collision_pair(n, *spec.algebra);
    } else if (k == "binomial-pair") {
      w = binomial_collision_pair(bits());
    } else if (k == "unary-forced") {
      w = unary_forced_collision(bits());
    } else if (k == "perfect-unary") {
      w = perfect_unary_witness(bits());
    } else if (k == "hT-family") {
      w = ht_family_witness(bits());
    } else if (k == "threewise-break") {
      need(target, "family");
      w = threewise_break(parse_family(target));
    } else if (k == "fourwise-break") {
      need(target, "family");
      w = fourwise_break(parse_family(target));
    } else {
      fail(ErrorKind::usage,
           "witness kind must be tau-pair, binomial-pair, unary-forced, perfect-unary, hT-family, threewise-break "
           "or fourwise-break");
    }
    *out = dup(render(w, fmt_of(fmt)));
  });
}

ih_status ih_bench(const char* const* families, size_t count, uint64_t compressions, ih_format fmt, char** out) {
  return guard([&] {
    need(out, "out");
    std::vector<std::string> names;
    if (families) {
      for (size_t i = 0; i < count; ++i) {
        need(families[i], "family");
        names.emplace_back(families[i]);
      }
    } else {
      names = default_bench_families();
    }
    std::vector<BenchResult> rows;
    for (const auto& name : names) rows.push_back(bench_compress(parse_family(name), compressions ? compressions : 10'000'000));
    *out = dup(render_bench(rows, fmt_of(fmt)));
  });
}

}  // extern "C"
