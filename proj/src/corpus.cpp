#include "btcst/corpus.hpp"

#include <cmath>
#include <stdexcept>

namespace btcst {

std::vector<std::uint8_t> gen_corpus_bytes(Pos base_size, int copies, double rate,
                                           std::uint64_t seed) {
  if (base_size < 1 || copies < 1) {
    throw std::invalid_argument("gen_corpus: base size and copy count must be >= 1");
  }
  if (rate < 0.0 || rate >= 1.0) {
    throw std::invalid_argument("gen_corpus: mutation rate must be in [0, 1)");
  }
  Rng rng(seed);
  std::vector<std::uint8_t> base(static_cast<std::size_t>(base_size));
  for (auto& b : base) b = static_cast<std::uint8_t>('a' + rng.below(26));

  const auto threshold = static_cast<std::uint32_t>(std::llround(rate * 4294967296.0));
  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(base_size) * static_cast<std::size_t>(copies));
  out.insert(out.end(), base.begin(), base.end());
  for (int k = 1; k < copies; ++k) {
    for (std::uint8_t b : base) {
      out.push_back(rng.chance(threshold) ? static_cast<std::uint8_t>('a' + rng.below(26)) : b);
    }
  }
  return out;
}

Text gen_corpus(Pos base_size, int copies, double rate, std::uint64_t seed) {
  return Text::from_bytes(gen_corpus_bytes(base_size, copies, rate, seed));
}

}  // namespace btcst
