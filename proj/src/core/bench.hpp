#pragma once

// Compression throughput over a fixed pseudo-random corpus.

#include <cstdint>
#include <string>
#include <vector>

#include "core/families.hpp"

namespace iterhash {

struct BenchResult {
  std::string family;
  std::uint64_t compressions = 0;
  double seconds = 0;
  std::uint64_t checksum = 0;  // folded final states; keeps the loop honest

  double per_second() const { return seconds > 0 ? static_cast<double>(compressions) / seconds : 0.0; }
};

BenchResult bench_compress(const FamilySpec& spec, std::uint64_t compressions, std::uint64_t seed = 1);

// Every construction defined at 32 and 64 bits, with byte alphabet.
std::vector<std::string> default_bench_families();

}  // namespace iterhash
