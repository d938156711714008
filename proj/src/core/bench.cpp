#include "core/bench.hpp"

#include <chrono>

#include "core/rng.hpp"

namespace iterhash {

BenchResult bench_compress(const FamilySpec& spec, std::uint64_t compressions, std::uint64_t seed) {
  constexpr std::size_t kCorpus = 4096;
  const HashInstance inst = sample_instance(spec, seed);
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  HashString corpus(kCorpus);
  for (auto& c : corpus) c = static_cast<Char>(rng.below(spec.alphabet_size));

  const bool positional = spec.position_dependent();
  std::uint64_t state = start_state(inst), checksum = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::uint64_t i = 0; i < compressions; ++i) {
    const std::size_t j = i % kCorpus;
    if (j == 0 && i) {
      checksum ^= state;
      state = start_state(inst);
    }
    state = step(inst, state, corpus[j], positional ? j % spec.max_len + 1 : j + 1);
  }
  const auto t1 = std::chrono::steady_clock::now();
  return {to_string(spec), compressions, std::chrono::duration<double>(t1 - t0).count(), checksum ^ state};
}

std::vector<std::string> default_bench_families() {
  std::vector<std::string> out;
  for (const char* name : {"cwpoly", "tabulated", "shift-tabulated", "division", "bernstein", "fnv1", "fnv1a", "sax",
                           "sxx", "power-of-two"})
    for (int L : {32, 64}) out.push_back(std::string(name) + ":L=" + std::to_string(L) + ",sigma=256");
  out.push_back("gcc-cpp");
  out.push_back("java-string");
  return out;
}

}  // namespace iterhash
