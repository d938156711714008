#include "core/report.hpp"

#include <cstdio>
#include <sstream>

#include "core/algebra.hpp"
#include "core/error.hpp"

namespace iterhash {

using nlohmann::json;

Format parse_format(const std::string& name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  if (name == "text") return Format::text;
  fail(ErrorKind::usage, "format must be json, csv or text");
}

namespace {

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

json strings_json(const std::vector<HashString>& ss) {
  json a = json::array();
  for (const auto& s : ss) a.push_back(s);
  return a;
}

std::string chars(const HashString& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + std::to_string(s[i]);
  return out;
}

json to_json(const Extremum& e) {
  json j = {{"probability", to_json(e.probability)},
            {"value", e.probability.value()},
            {"strings", strings_json(e.strings)},
            {"values", e.values}};
  if (e.interval) j["interval"] = {e.interval->low, e.interval->high};
  return j;
}

json optional_json(const std::optional<Extremum>& e) { return e ? to_json(*e) : json(nullptr); }

template <class T>
json optional_bool(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

std::string text_extremum(const std::optional<Extremum>& e) {
  if (!e) return "n/a";
  std::string out = std::to_string(e->probability.count) + "/" + std::to_string(e->probability.total) + " = " +
                    format_rational(e->probability.rational()) + " (" + fixed(e->probability.value()) + ")";
  if (e->interval) out += " 95% [" + fixed(e->interval->low) + ", " + fixed(e->interval->high) + "]";
  if (!e->strings.empty()) {
    out += " at";
    for (const auto& s : e->strings) out += " " + format_string(s);
  }
  if (!e->values.empty()) {
    out += " values";
    for (auto v : e->values) out += " " + std::to_string(v);
  }
  return out;
}

std::string verdict(const std::optional<bool>& v) { return v ? (*v ? "true" : "false") : "undecided"; }

}  // namespace

std::string format_rational(const Rational& q) {
  const BigInt d = boost::multiprecision::denominator(q);
  return boost::multiprecision::numerator(q).str() + (d == 1 ? "" : "/" + d.str());
}

json to_json(const Probability& p) { return {{"num", p.count}, {"den", p.total}}; }

json to_json(const BigInt& v) {
  if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(v);
  return v.str();
}

json to_json(const Rational& q) {
  return {{"num", to_json(BigInt(boost::multiprecision::numerator(q)))},
          {"den", to_json(BigInt(boost::multiprecision::denominator(q)))}};
}

json to_json(const VerificationReport& r) {
  json j = {{"family", r.family},
            {"strings", r.strings},
            {"string_count", r.string_count},
            {"instances", r.instances},
            {"value_count", r.value_count},
            {"mode", r.exact ? "exact" : "monte-carlo"},
            {"uniformity", to_string(r.uniformity)},
            {"max_value", optional_json(r.max_value)},
            {"min_value", optional_json(r.min_value)},
            {"eps_au", optional_json(r.eps_au)},
            {"eps_axu", optional_json(r.eps_axu)},
            {"axu_kind", r.axu_kind},
            {"max_joint", optional_json(r.max_joint)},
            {"pairwise_independent", optional_bool(r.pairwise_independent())}};
  if (!r.exact) {
    j["trials"] = r.trials;
    j["seed"] = r.seed;
  }
  const auto asu = r.eps_asu();
  j["eps_asu"] = asu ? to_json(*asu) : json(nullptr);
  json kw = json::array();
  for (const auto& v : r.kwise) {
    json e = {{"k", v.k}, {"independent", optional_bool(v.independent)}, {"note", v.note}};
    if (!v.witness.empty()) {
      e["witness"] = strings_json(v.witness);
      e["values"] = v.values;
    }
    if (v.witness_probability) e["witness_probability"] = to_json(*v.witness_probability);
    kw.push_back(e);
  }
  j["kwise"] = kw;
  json kc = json::array();
  for (const auto& c : r.kwise_collision)
    kc.push_back({{"k", c.k}, {"max", optional_json(c.max)}, {"note", c.note}});
  j["kwise_collision"] = kc;
  return j;
}

json to_json(const Witness& w) {
  json params = json::object();
  for (const auto& [k, v] : w.parameters) params[k] = v;
  json measured = json::array();
  for (const auto& m : w.measured)
    measured.push_back({{"name", m.name}, {"probability", to_json(m.probability)}, {"value", m.probability.value()}});
  return {{"kind", to_string(w.kind)},
          {"family", w.family},
          {"strings", strings_json(w.strings)},
          {"values", w.values},
          {"parameters", params},
          {"claimed", w.claimed ? to_json(*w.claimed) : json(nullptr)},
          {"measured", measured},
          {"certificate", to_string(w.certificate)},
          {"holds", w.holds},
          {"note", w.note}};
}

json to_json(const BoundsRow& row) {
  return {{"L", row.L},
          {"epsilon", to_json(row.epsilon)},
          {"card_universal", to_json(row.card_universal)},
          {"card_strong", to_json(row.card_strong)},
          {"card_almost", row.card_almost ? to_json(*row.card_almost) : json(nullptr)},
          {"card_almost_log2", row.card_almost_log2},
          {"struct_universal", to_json(row.struct_universal)},
          {"struct_strong", to_json(row.struct_strong)},
          {"struct_almost", to_json(row.struct_almost)}};
}

json to_json(const CollisionRow& row) {
  return {{"n", row.n},
          {"probability", to_json(row.probability)},
          {"rounded", round_half_up_2(row.probability.rational())},
          {"mode", to_string(row.mode)},
          {"strings", {row.s, row.t}}};
}

std::string render(const VerificationReport& r, Format f) {
  if (f == Format::json) return to_json(r).dump(2) + "\n";
  if (f == Format::csv) {
    std::ostringstream o;
    o << "metric,num,den,value\n";
    auto row = [&](const char* name, const std::optional<Extremum>& e) {
      if (e) o << name << ',' << e->probability.count << ',' << e->probability.total << ','
               << fixed(e->probability.value()) << '\n';
    };
    row("max_value", r.max_value);
    row("min_value", r.min_value);
    row("eps_au", r.eps_au);
    row("eps_axu", r.eps_axu);
    row("max_joint", r.max_joint);
    return o.str();
  }
  std::ostringstream o;
  o << "family: " << r.family << '\n'
    << "strings: " << r.strings << " (" << r.string_count << ")\n"
    << "instances: " << r.instances << (r.exact ? " (exact)" : " (monte-carlo)") << '\n';
  if (!r.exact) o << "trials: " << r.trials << "  seed: " << r.seed << '\n';
  o << "uniformity: " << to_string(r.uniformity) << '\n'
    << "max P(h(s)=y): " << text_extremum(r.max_value) << '\n'
    << "min P(h(s)=y): " << text_extremum(r.min_value) << '\n'
    << "eps_au: " << text_extremum(r.eps_au) << '\n'
    << "eps_axu (" << r.axu_kind << "): " << text_extremum(r.eps_axu) << '\n'
    << "max joint: " << text_extremum(r.max_joint) << '\n';
  if (const auto asu = r.eps_asu()) o << "eps_asu: " << format_rational(*asu) << '\n';
  for (const auto& v : r.kwise) {
    o << v.k << "-wise independent: " << verdict(v.independent);
    if (!v.note.empty()) o << " (" << v.note << ")";
    o << '\n';
  }
  for (const auto& c : r.kwise_collision) o << c.k << "-collision: " << (c.max ? text_extremum(c.max) : c.note) << '\n';
  return o.str();
}

std::string render(const Witness& w, Format f) {
  if (f == Format::json) return to_json(w).dump(2) + "\n";
  std::ostringstream o;
  if (f == Format::csv) {
    o << "kind,family,certificate,holds,measure,num,den\n";
    for (const auto& m : w.measured)
      o << to_string(w.kind) << ",\"" << w.family << "\"," << to_string(w.certificate) << ',' << w.holds << ",\""
        << m.name << "\"," << m.probability.count << ',' << m.probability.total << '\n';
    if (w.measured.empty())
      o << to_string(w.kind) << ",\"" << w.family << "\"," << to_string(w.certificate) << ',' << w.holds << ",,,\n";
    return o.str();
  }
  o << to_string(w.kind) << " on " << w.family << '\n';
  for (const auto& [k, v] : w.parameters) o << "  " << k << ": " << v << '\n';
  for (std::size_t i = 0; i < w.strings.size(); ++i) {
    const auto& s = w.strings[i];
    o << "  string " << i << ": " << (s.size() <= 64 ? format_string(s) : "length " + std::to_string(s.size())) << '\n';
  }
  if (!w.values.empty()) {
    o << "  values:";
    for (auto v : w.values) o << ' ' << v;
    o << '\n';
  }
  if (w.claimed) o << "  claimed: " << format_rational(*w.claimed) << '\n';
  for (const auto& m : w.measured)
    o << "  " << m.name << ": " << m.probability.count << '/' << m.probability.total << " = "
      << format_rational(m.probability.rational()) << '\n';
  o << "  certificate: " << to_string(w.certificate) << (w.holds ? ", holds" : ", FAILS") << '\n';
  if (!w.note.empty()) o << "  " << w.note << '\n';
  return o.str();
}

std::string render_bounds(const std::vector<BoundsRow>& rows, Format f) {
  if (f == Format::json) {
    json a = json::array();
    for (const auto& r : rows) a.push_back(to_json(r));
    return a.dump(2) + "\n";
  }
  std::ostringstream o;
  if (f == Format::csv) {
    o << "L,card_universal,card_strong,struct_universal\n";
    for (const auto& r : rows) o << r.L << ',' << r.card_universal << ',' << r.card_strong << ',' << r.struct_universal << '\n';
    return o.str();
  }
  char line[256];
  std::snprintf(line, sizeof line, "%3s %16s %16s %16s %24s %22s\n", "L", "card_universal", "card_strong",
                "struct_universal", "struct_almost", "lg card_almost");
  o << line;
  for (const auto& r : rows) {
    const std::string sa = r.struct_almost.str();
    std::snprintf(line, sizeof line, "%3u %16s %16s %16s %24s %22.1f\n", r.L, r.card_universal.str().c_str(),
                  r.card_strong.str().c_str(), r.struct_universal.str().c_str(),
                  sa.size() <= 24 ? sa.c_str() : ("~2^" + std::to_string(msb(r.struct_almost))).c_str(),
                  r.card_almost_log2);
    o << line;
  }
  return o.str();
}

std::string render_collision_table(const std::string& family, const std::vector<CollisionRow>& rows, Format f) {
  if (f == Format::json) {
    json a = json::array();
    for (const auto& r : rows) a.push_back(to_json(r));
    return json{{"family", family}, {"rows", a}}.dump(2) + "\n";
  }
  std::ostringstream o;
  if (f == Format::csv) {
    o << "n,probability,mode,num,den,s,t\n";
    for (const auto& r : rows)
      o << r.n << ',' << round_half_up_2(r.probability.rational()) << ',' << to_string(r.mode) << ','
        << r.probability.count << ',' << r.probability.total << ',' << chars(r.s) << ',' << chars(r.t) << '\n';
    return o.str();
  }
  o << family << '\n';
  for (const auto& r : rows) {
    o << (r.n < 10 ? " " : "") << r.n << "  " << (r.mode == RowMode::lower_bound ? ">=" : "  ")
      << round_half_up_2(r.probability.rational()) << "  " << to_string(r.mode);
    if (!r.s.empty()) o << "  " << format_string(r.s) << " " << format_string(r.t);
    o << '\n';
  }
  return o.str();
}

std::string render_bench(const std::vector<BenchResult>& rows, Format f) {
  if (f == Format::json) {
    json a = json::array();
    for (const auto& r : rows)
      a.push_back({{"family", r.family},
                   {"compressions", r.compressions},
                   {"seconds", r.seconds},
                   {"per_second", r.per_second()},
                   {"checksum", r.checksum}});
    return a.dump(2) + "\n";
  }
  std::ostringstream o;
  if (f == Format::csv) {
    o << "family,compressions,seconds,per_second\n";
    for (const auto& r : rows)
      o << '"' << r.family << "\"," << r.compressions << ',' << fixed(r.seconds) << ',' << fixed(r.per_second(), 0) << '\n';
    return o.str();
  }
  for (const auto& r : rows) {
    char line[256];
    std::snprintf(line, sizeof line, "%-48s %10.1f M/s\n", r.family.c_str(), r.per_second() / 1e6);
    o << line;
  }
  return o.str();
}

std::string render_divisor_table(std::uint64_t n_max, Format f) {
  require(n_max >= 1 && n_max <= (1 << 24), ErrorKind::capacity, "divisor table limited to n <= 2^24");
  json a = json::array();
  std::ostringstream o;
  if (f != Format::json) o << (f == Format::csv ? "n,d,max_d_below\n" : "     n     d  max_d_below\n");
  std::uint64_t best = 0;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const std::uint64_t d = divisor_count(n);
    if (f == Format::json) {
      a.push_back({{"n", n}, {"d", d}, {"max_d_below", best}});
    } else if (f == Format::csv) {
      o << n << ',' << d << ',' << best << '\n';
    } else {
      char line[64];
      std::snprintf(line, sizeof line, "%6llu %5llu %12llu\n", static_cast<unsigned long long>(n),
                    static_cast<unsigned long long>(d), static_cast<unsigned long long>(best));
      o << line;
    }
    best = std::max(best, d);
  }
  return f == Format::json ? a.dump(2) + "\n" : o.str();
}

std::string render_ht_table(unsigned L, std::uint64_t max_len, Format f) {
  const HTFamily fam(L);
  require(max_len <= (1 << 20), ErrorKind::capacity, "hT table limited to lengths <= 2^20");
  json a = json::array();
  std::ostringstream o;
  if (f != Format::json) o << "r,T,value,literal\n";
  for (std::uint64_t r = 0; r <= max_len; ++r)
    for (std::uint64_t t = 1; t <= fam.members(); ++t) {
      if (f == Format::json)
        a.push_back({{"r", r}, {"T", t}, {"value", fam.value(t, r)}, {"literal", fam.literal(t, r)}});
      else
        o << r << ',' << t << ',' << fam.value(t, r) << ',' << fam.literal(t, r) << '\n';
    }
  return f == Format::json ? a.dump(2) + "\n" : o.str();
}

}  // namespace iterhash
