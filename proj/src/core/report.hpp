#pragma once

// JSON, CSV and text renderings of reports, tables and witnesses.

#include <string>
#include <vector>

#include <json.hpp>

#include "core/bench.hpp"
#include "core/bounds.hpp"
#include "core/verifier.hpp"
#include "core/witnesses.hpp"

namespace iterhash {

enum class Format { json, csv, text };

Format parse_format(const std::string& name);

// Rationals keep the unreduced denominator, so "den" is the family size.
nlohmann::json to_json(const Probability& p);
nlohmann::json to_json(const Rational& q);
nlohmann::json to_json(const BigInt& v);
nlohmann::json to_json(const VerificationReport& r);
nlohmann::json to_json(const Witness& w);
nlohmann::json to_json(const BoundsRow& row);
nlohmann::json to_json(const CollisionRow& row);

std::string render(const VerificationReport& r, Format f);
std::string render(const Witness& w, Format f);
std::string render_bounds(const std::vector<BoundsRow>& rows, Format f);
std::string render_collision_table(const std::string& family, const std::vector<CollisionRow>& rows, Format f);
std::string render_bench(const std::vector<BenchResult>& rows, Format f);

// n, d(n), max_{i<n} d(i)
std::string render_divisor_table(std::uint64_t n_max, Format f);
// r, T, h_T(r) for T = 1..2^L over lengths 0..2^L + lcm + extra
std::string render_ht_table(unsigned L, std::uint64_t max_len, Format f);

std::string format_rational(const Rational& q);

}  // namespace iterhash
