#pragma once

#include <cstdint>
#include <vector>

#include "btcst/defs.hpp"
#include "btcst/suffix.hpp"

namespace btcst {

// Deterministic 64-bit generator (splitmix64); used instead of <random>
// distributions so that generated corpora are identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform value in [0, bound) by 128-bit multiply; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  // Bernoulli with probability num / 2^32.
  bool chance(std::uint32_t num) { return (next() >> 32) < num; }

 private:
  std::uint64_t state_;
};

// k copies of a random lowercase base string, copies after the first mutated
// by per-position substitutions at `rate`; rate = 0 yields identical copies.
std::vector<std::uint8_t> gen_corpus_bytes(Pos base_size, int copies, double rate,
                                           std::uint64_t seed);

// Same, wrapped as an indexable Text (terminator appended).
Text gen_corpus(Pos base_size, int copies, double rate, std::uint64_t seed);

}  // namespace btcst
