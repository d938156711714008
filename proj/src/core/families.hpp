#pragma once

// Iterated string hash families. A family is described by a FamilySpec; one
// member is a HashInstance (compression parameters plus initial value).
// Characters are integers 0..|Sigma|-1 and hash values integers below the
// family's value count (2^L, or p for prime fields).

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "core/algebra.hpp"
#include "core/numeric.hpp"

namespace iterhash {

using Char = std::uint32_t;
using HashString = std::vector<Char>;

enum class Construction {
  multilinear,
  zobrist,
  cwpoly,
  cwpoly_strong,
  tabulated,
  shift_tabulated,
  pearson,
  generalized_pearson,
  division,
  bernstein,
  fnv1,
  fnv1a,
  sax,
  sxx,
  gcc_cpp,
  java_string,
  power_of_two,
};

std::string to_string(Construction c);
std::optional<Construction> construction_from_string(std::string_view name);
std::span<const Construction> all_constructions();

enum class InitPolicy { fixed_zero, fixed_one, uniform_random };

std::string to_string(InitPolicy p);

// Optional knobs accepted by build_family; unset fields take the
// construction's defaults.
struct FamilyOptions {
  std::optional<std::uint64_t> alphabet_size;
  std::optional<std::uint64_t> poly;  // full L+1-bit mask of an irreducible p(x)
  std::optional<std::uint64_t> prime;  // prime-field modulus
  std::optional<unsigned> shift_left;
  std::optional<unsigned> shift_right;
  std::optional<std::uint64_t> multiplier;  // power-of-two B
  std::optional<std::uint64_t> fnv_prime;
  std::optional<unsigned> max_len;
  std::optional<InitPolicy> init;
};

struct FamilySpec {
  Construction construction = Construction::pearson;
  unsigned word_bits = 0;          // L
  std::uint64_t alphabet_size = 0; // |Sigma|
  std::optional<AlgebraSpec> algebra;
  unsigned shift_left = 0;   // bernstein, sax, sxx
  unsigned shift_right = 0;  // sax, sxx
  std::uint64_t fnv_prime = 0;
  std::optional<std::uint64_t> multiplier;   // power-of-two: fixed B, else all odd B
  std::optional<std::uint64_t> division_low; // division: fixed p(x) - x^L, else all irreducibles
  unsigned max_len = 0;                      // multilinear / zobrist capacity
  InitPolicy init = InitPolicy::uniform_random;

  // Size of the hash-value range: p for prime fields, 2^L otherwise.
  std::uint64_t value_count() const;
  std::uint64_t value_mask() const { return word_mask(word_bits); }
  bool prime_valued() const { return algebra && algebra->kind == AlgebraKind::prime_field; }
  // Generalized iterated hashing: a compression function per position.
  bool position_dependent() const;
  // Conventional iterated hashing (one compression function, no finalizer).
  bool iterated() const { return !position_dependent() && construction != Construction::cwpoly_strong; }
  bool rejects_trailing_zero() const { return construction == Construction::multilinear; }
};

FamilySpec build_family(Construction c, unsigned word_bits, const FamilyOptions& options = {});

// Grammar: <construction>:L=<bits>[,sigma=<n>][,poly=0x..][,p=<prime>]
//          [,l=..,r=..][,init=zero|one|random][,maxlen=..][,B=..][,prime=..]
FamilySpec parse_family(std::string_view text);
std::string to_string(const FamilySpec& spec);
const char* family_grammar();

struct NoParams {};
struct PolyParams {
  std::uint64_t t = 0;
};
struct StrongPolyParams {
  std::uint64_t t = 1;
  std::uint64_t zeta = 0;
};
// Gamma: Sigma -> [0, 2^L) for tabulated / shift-tabulated.
struct TableParams {
  std::vector<std::uint64_t> gamma;
};
// A over [0, 2^L) for pearson / generalized-pearson.
struct ArrayParams {
  std::vector<std::uint64_t> a;
};
// m_2..m_{n+1} for multilinear (m_1 is the initial value).
struct CoefficientParams {
  std::vector<std::uint64_t> m;
};
// h_i(c) stored at (i - 1) * |Sigma| + c for zobrist.
struct PositionTableParams {
  std::vector<std::uint64_t> h;
};
struct DivisionParams {
  std::uint64_t poly_low = 0;
};
struct MultiplierParams {
  std::uint64_t b = 1;
};

using InstanceParams = std::variant<NoParams, PolyParams, StrongPolyParams, TableParams, ArrayParams,
                                    CoefficientParams, PositionTableParams, DivisionParams, MultiplierParams>;

struct HashInstance {
  std::shared_ptr<const FamilySpec> spec;
  InstanceParams params;
  std::uint64_t init_value = 0;  // H_0

  const FamilySpec& family() const { return *spec; }
};

// Construct an instance from explicit parameters; validates them against the spec.
HashInstance make_instance(std::shared_ptr<const FamilySpec> spec, InstanceParams params, std::uint64_t init_value);

// Unchecked state update; position counts from 1. cwpoly-strong accumulates
// sum t^i s_i and needs finalize().
std::uint64_t step(const HashInstance& inst, std::uint64_t state, Char c, std::size_t position);
std::uint64_t start_state(const HashInstance& inst);
std::uint64_t finalize(const HashInstance& inst, std::uint64_t state, std::size_t length);

// Checked single compression step.
std::uint64_t compress(const HashInstance& inst, std::uint64_t state, Char c, std::size_t position = 1);

std::uint64_t hash(const HashInstance& inst, std::span<const Char> s);

// Hash of the unary string made of `c` repeated `length` times, for
// arbitrarily large lengths (iterated families only): the orbit is walked
// until it cycles and the remainder is taken modulo the period.
std::uint64_t hash_unary(const HashInstance& inst, Char c, const BigInt& length);

// Java renders the 32-bit pattern as a signed int.
std::int32_t as_signed32(std::uint64_t value);

// Random-access enumeration of a whole family: index = param_index *
// init_count + init_index, so all initial values of one compression
// function are adjacent.
class InstanceSpace {
 public:
  InstanceSpace(FamilySpec spec, std::uint64_t budget);

  std::uint64_t size() const { return size_; }
  std::uint64_t param_count() const { return param_count_; }
  std::uint64_t init_count() const { return init_count_; }
  HashInstance at(std::uint64_t index) const;
  const FamilySpec& family() const { return *spec_; }
  const std::shared_ptr<const FamilySpec>& spec_ptr() const { return spec_; }

 private:
  InstanceParams params_at(std::uint64_t index) const;
  std::uint64_t init_at(std::uint64_t index) const;

  std::shared_ptr<const FamilySpec> spec_;
  std::uint64_t param_count_ = 0;
  std::uint64_t init_count_ = 0;
  std::uint64_t size_ = 0;
  std::vector<std::uint64_t> division_polys_;
};

// Exact family cardinality, unbounded.
BigInt family_cardinality(const FamilySpec& spec);

std::vector<HashInstance> enumerate_instances(const FamilySpec& spec, std::uint64_t budget);

HashInstance sample_instance(const FamilySpec& spec, std::uint64_t seed);
HashInstance sample_instance(std::shared_ptr<const FamilySpec> spec, std::uint64_t seed);

// True iff y -> F(y, c) is injective on `states` for every character c.
bool is_permuting(const HashInstance& inst, std::span<const std::uint64_t> states);
bool is_permuting(const HashInstance& inst);  // over every hash value
// Additionally c -> F(y, c) injective at every state.
bool is_strongly_permuting(const HashInstance& inst, std::span<const std::uint64_t> states);
bool is_strongly_permuting(const HashInstance& inst);

// Flat transition table next[state * |Sigma| + c] for small iterated
// families; empty when the family is position dependent or too large.
std::vector<std::uint32_t> transition_table(const HashInstance& inst);

}  // namespace iterhash
