// iterhash command line: hash, verify, table, witness, bounds, bench.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "iterhash/iterhash.h"

namespace {

constexpr std::uint64_t kDefaultSeed = 0x1badb002;

struct Failure {
  ih_status status;
};

void check(ih_status s) {
  if (s != IH_OK) throw Failure{s};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  ih_string_free(s);
  return out;
}

int exit_code(ih_status s) {
  switch (s) {
    case IH_OK: return 0;
    case IH_ERR_CAPACITY: return 2;
    case IH_ERR_USAGE: return 3;
    default: return 1;
  }
}

ih_format format_of(const std::string& f) {
  if (f == "json") return IH_FORMAT_JSON;
  if (f == "csv") return IH_FORMAT_CSV;
  return IH_FORMAT_TEXT;
}

struct Family {
  ih_family* f = nullptr;
  ~Family() { ih_family_free(f); }
};

struct Instance {
  ih_instance* h = nullptr;
  ~Instance() { ih_instance_free(h); }
};

struct Strings {
  ih_strings* s = nullptr;
  ~Strings() { ih_strings_free(s); }
};

// --L / --sigma fill in keys the spec string leaves out.
std::string with_defaults(std::string spec, int L, long long sigma) {
  auto has = [&](const std::string& key) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) return false;
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ','))
      if (item.rfind(key + "=", 0) == 0) return true;
    return false;
  };
  auto add = [&](const std::string& kv) { spec += (spec.find(':') == std::string::npos ? ":" : ",") + kv; };
  if (L > 0 && !has("L") && !has("p")) add("L=" + std::to_string(L));
  if (sigma > 0 && !has("sigma")) add("sigma=" + std::to_string(sigma));
  return spec;
}

std::vector<std::uint32_t> parse_chars(const std::string& text, std::uint64_t sigma) {
  static const std::regex list("^\\s*\\d+(\\s*,\\s*\\d+)*\\s*$");
  std::vector<std::uint32_t> out;
  if (sigma < 256) {
    if (text.empty()) return out;
    if (!std::regex_match(text, list)) {
      throw CLI::ValidationError("string", "expected comma-separated integers below sigma=" + std::to_string(sigma) +
                                               ", got '" + text + "'");
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(static_cast<std::uint32_t>(std::stoull(item)));
    return out;
  }
  for (unsigned char c : text) out.push_back(c);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"iterated string hashing laboratory"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format, out_path;
  std::uint64_t seed = kDefaultSeed, budget = 0;
  int L = 0;
  long long sigma = 0;
  app.add_option("--format", format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", out_path, "write output to a file");
  app.add_option("--seed", seed, "random seed (default 0x1badb002)");
  app.add_option("--budget", budget, "enumeration budget (0: default)");

  // hash
  auto* hash = app.add_subcommand("hash", "hash strings with one family member");
  std::string family;
  std::vector<std::string> inputs;
  long long index = -1;
  hash->add_option("family", family, "family spec")->required();
  hash->add_option("strings", inputs, "integer lists (sigma < 256) or byte text");
  hash->add_option("--L", L, "word size when the spec omits it");
  hash->add_option("--sigma", sigma, "alphabet size when the spec omits it");
  hash->add_option("--index", index, "instance index in enumeration order (default: sampled from --seed)");

  // verify
  auto* verify = app.add_subcommand("verify", "measure uniformity, universality and k-wise independence");
  unsigned max_len = 2, min_len = 1, k_max = 2;
  bool exact = false, mc = false;
  std::uint64_t trials = 10000;
  std::vector<std::string> explicit_strings;
  verify->add_option("family", family, "family spec")->required();
  verify->add_option("--L", L, "word size when the spec omits it");
  verify->add_option("--sigma", sigma, "alphabet size when the spec omits it");
  verify->add_option("--max-len", max_len, "longest string");
  verify->add_option("--min-len", min_len, "shortest string");
  verify->add_option("--string", explicit_strings, "explicit string (repeatable) instead of all strings");
  auto* ex = verify->add_flag("--exact", exact, "exhaustive enumeration (default)");
  verify->add_flag("--mc", mc, "Monte Carlo sampling")->excludes(ex);
  verify->add_option("--trials", trials, "Monte Carlo trials");
  verify->add_option("--k", k_max, "highest k for k-wise checks (2..4)")->check(CLI::Range(2, 4));

  // table
  auto* table = app.add_subcommand("table", "emit tables as CSV");
  table->require_subcommand(1);
  std::vector<unsigned> Ls{2, 4, 8, 16};
  std::string epsilon;
  unsigned max_n = 11, exact_max_n = 7;
  std::uint64_t rows = 64, ht_len = 0;
  auto* t_bounds = table->add_subcommand("bounds", "string-length bounds per word size");
  t_bounds->add_option("--L", Ls, "word sizes")->delimiter(',')->capture_default_str();
  t_bounds->add_option("--epsilon", epsilon, "epsilon for the almost-universal column");
  auto* t_gp = table->add_subcommand("gp", "max collision probability by string length, generalized Pearson");
  t_gp->add_option("--L", L, "word size")->required();
  t_gp->add_option("--max-n", max_n, "longest string length");
  t_gp->add_option("--exact-max-n", exact_max_n, "longest length enumerated exactly");
  auto* t_div = table->add_subcommand("divisor", "divisor function and its running maximum");
  t_div->add_option("--max-n", rows, "last n");
  auto* t_ht = table->add_subcommand("ht", "h_T values on unary strings");
  t_ht->add_option("--L", L, "word size")->required();
  t_ht->add_option("--max-len", ht_len, "last length (default 2^L + lcm)");

  // witness
  auto* witness = app.add_subcommand("witness", "construct and certify a forced-collision witness");
  std::string kind, target;
  std::uint64_t n = 0;
  witness->add_option("kind", kind, "tau-pair | binomial-pair | unary-forced | perfect-unary | hT-family | "
                                    "threewise-break | fourwise-break")
      ->required();
  witness->add_option("target", target, "field (p=3, L=2) for tau-pair; family spec for the break witnesses");
  witness->add_option("--n", n, "tau-pair length parameter");
  witness->add_option("--L", L, "word size");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "impossibility bounds and minimum family sizes");
  bounds->require_subcommand(1);
  auto* b_table = bounds->add_subcommand("table", "all bound columns per word size");
  b_table->add_option("--L", Ls, "word sizes")->delimiter(',')->capture_default_str();
  b_table->add_option("--epsilon", epsilon, "epsilon for the almost-universal column");
  auto* b_min = bounds->add_subcommand("min-family", "hash functions needed for eps-almost universality");
  std::uint64_t K = 0;
  b_min->add_option("--K", K, "log2 of the number of items")->required();
  b_min->add_option("--L", L, "word size")->required();
  b_min->add_option("--epsilon", epsilon, "epsilon")->required();
  auto* b_stinson = bounds->add_subcommand("stinson", "minimum size of a (strongly) universal family");
  std::string a_count, b_count;
  bool strong = false;
  b_stinson->add_option("--strings", a_count, "number of strings")->required();
  b_stinson->add_option("--values", b_count, "number of hash values")->required();
  b_stinson->add_flag("--strong", strong, "strongly universal");
  auto* b_eps = bounds->add_subcommand("epsilon-length", "string length at which eps-almost universality fails");
  b_eps->add_option("--L", L, "word size")->required();
  b_eps->add_option("--epsilon", epsilon, "epsilon")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "compressions per second");
  std::vector<std::string> bench_families;
  std::uint64_t compressions = 10'000'000;
  bench->add_option("families", bench_families, "family specs (default: 32- and 64-bit set)");
  bench->add_option("--compressions", compressions, "compressions per family");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  std::string output;
  try {
    if (*hash) {
      const ih_format fmt = format_of(format.empty() ? "text" : format);
      Family fam;
      check(ih_family_parse(with_defaults(family, L, sigma).c_str(), &fam.f));
      Instance inst;
      const std::string card = [&] {
        char* s = nullptr;
        check(ih_family_cardinality(fam.f, &s));
        return take(s);
      }();
      if (index >= 0)
        check(ih_instance_at(fam.f, static_cast<std::uint64_t>(index), &inst.h));
      else if (card == "1")
        check(ih_instance_at(fam.f, 0, &inst.h));
      else
        check(ih_instance_sample(fam.f, seed, &inst.h));
      std::ostringstream o;
      if (fmt == IH_FORMAT_CSV) o << "string,value\n";
      if (fmt == IH_FORMAT_JSON) o << "[";
      for (std::size_t i = 0; i < inputs.size(); ++i) {
        const auto chars = parse_chars(inputs[i], ih_family_alphabet_size(fam.f));
        std::uint64_t v = 0;
        check(ih_hash(inst.h, chars.data(), chars.size(), &v));
        if (fmt == IH_FORMAT_JSON) {
          o << (i ? "," : "") << "\n  {\"string\": [";
          for (std::size_t j = 0; j < chars.size(); ++j) o << (j ? ", " : "") << chars[j];
          o << "], \"value\": " << v << "}";
        } else if (fmt == IH_FORMAT_CSV) {
          o << '"' << inputs[i] << "\"," << v << '\n';
        } else {
          o << v << '\n';
        }
      }
      if (fmt == IH_FORMAT_JSON) o << "\n]\n";
      output = o.str();
    } else if (*verify) {
      const ih_format fmt = format_of(format.empty() ? "text" : format);
      Family fam;
      check(ih_family_parse(with_defaults(family, L, sigma).c_str(), &fam.f));
      Strings strings;
      if (!explicit_strings.empty()) {
        std::vector<std::uint32_t> flat;
        std::vector<std::size_t> lengths;
        for (const auto& s : explicit_strings) {
          const auto chars = parse_chars(s, ih_family_alphabet_size(fam.f));
          flat.insert(flat.end(), chars.begin(), chars.end());
          lengths.push_back(chars.size());
        }
        check(ih_strings_explicit(ih_family_alphabet_size(fam.f), flat.data(), lengths.data(), lengths.size(),
                                  &strings.s));
      } else {
        check(ih_strings_for_family(fam.f, min_len, max_len, &strings.s));
      }
      char* s = nullptr;
      if (mc)
        check(ih_verify_monte_carlo(fam.f, strings.s, trials, seed, k_max, fmt, &s));
      else
        check(ih_verify_exact(fam.f, strings.s, budget, k_max, fmt, &s));
      output = take(s);
    } else if (*table) {
      const ih_format fmt = format_of(format.empty() ? "csv" : format);
      char* s = nullptr;
      if (*t_bounds) {
        check(ih_bounds_table(Ls.data(), Ls.size(), epsilon.empty() ? nullptr : epsilon.c_str(), fmt, &s));
      } else if (*t_gp) {
        Family fam;
        check(ih_family_parse(("generalized-pearson:L=" + std::to_string(L)).c_str(), &fam.f));
        check(ih_collision_table(fam.f, max_n, exact_max_n, budget, fmt, &s));
      } else if (*t_div) {
        check(ih_divisor_table(rows, fmt, &s));
      } else {
        if (ht_len == 0) {
          std::uint64_t lcm = 1;
          for (std::uint64_t k = 2; k <= (std::uint64_t{1} << L) && lcm < (1u << 20); ++k) lcm = std::lcm(lcm, k);
          ht_len = (std::uint64_t{1} << L) + lcm;
        }
        check(ih_ht_table(L, ht_len, fmt, &s));
      }
      output = take(s);
    } else if (*witness) {
      const ih_format fmt = format_of(format.empty() ? "text" : format);
      char* s = nullptr;
      const std::uint64_t param = kind == "tau-pair" ? n : static_cast<std::uint64_t>(L);
      check(ih_witness(kind.c_str(), target.empty() ? nullptr : target.c_str(), param, fmt, &s));
      output = take(s);
    } else if (*bounds) {
      const ih_format fmt = format_of(format.empty() ? "text" : format);
      char* s = nullptr;
      if (*b_table) {
        check(ih_bounds_table(Ls.data(), Ls.size(), epsilon.empty() ? nullptr : epsilon.c_str(), fmt, &s));
        output = take(s);
      } else {
        if (*b_min)
          check(ih_min_family_size(K, static_cast<unsigned>(L), epsilon.c_str(), &s));
        else if (*b_stinson)
          check(ih_stinson_min_size(a_count.c_str(), b_count.c_str(), strong, &s));
        else
          check(ih_epsilon_impossible_length(static_cast<unsigned>(L), epsilon.c_str(), &s));
        output = take(s) + "\n";
      }
    } else if (*bench) {
      const ih_format fmt = format_of(format.empty() ? "text" : format);
      std::vector<const char*> names;
      for (const auto& f : bench_families) names.push_back(f.c_str());
      char* s = nullptr;
      check(ih_bench(names.empty() ? nullptr : names.data(), names.size(), compressions, fmt, &s));
      output = take(s);
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << ih_last_error() << '\n';
    return exit_code(f.status);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }

  if (out_path.empty()) {
    std::cout << output;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << out_path << '\n';
      return 1;
    }
    f << output;
  }
  return 0;
}
