#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "btcst/defs.hpp"

namespace btcst {

// Plain bitvector with rank/select. Rank uses one absolute sample per 64-bit
// word plus popcount; select binary-searches the samples and scans one word.
class BitVector {
 public:
  BitVector() = default;

  explicit BitVector(const std::vector<bool>& bits) : n_(static_cast<Pos>(bits.size())) {
    words_.assign((bits.size() + 63) / 64 + 1, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i]) words_[i / 64] |= (1ULL << (i % 64));
    }
    build_rank_samples();
  }

  Pos size() const { return n_; }

  // i in [1, n]
  bool get(Pos i) const {
    check_pos(i);
    return bit_at(i - 1);
  }

  // Number of c's in the first i symbols, i in [0, n].
  Pos rank(bool c, Pos i) const {
    if (i < 0 || i > n_) throw std::out_of_range("BitVector::rank: position out of range");
    Pos ones = rank1_prefix(i);
    return c ? ones : i - ones;
  }

  // Position of the j-th c (j >= 1), or nothing if there are fewer than j.
  MaybePos select(bool c, Pos j) const {
    if (j < 1) throw std::out_of_range("BitVector::select: occurrence index must be >= 1");
    if (j > rank(c, n_)) return std::nullopt;
    // Binary search the word whose prefix rank first reaches j.
    std::size_t lo = 0, hi = words_.size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      Pos r = c ? rank_samples_[mid] : static_cast<Pos>(mid) * 64 - rank_samples_[mid];
      if (r >= j) hi = mid; else lo = mid + 1;
    }
    std::size_t w = lo - 1;
    Pos r = c ? rank_samples_[w] : static_cast<Pos>(w) * 64 - rank_samples_[w];
    std::uint64_t word = c ? words_[w] : ~words_[w];
    for (int b = 0; b < 64; ++b) {
      if (word & (1ULL << b)) {
        if (++r == j) return static_cast<Pos>(w) * 64 + b + 1;
      }
    }
    throw std::logic_error("BitVector::select: inconsistent rank samples");
  }

  Pos count(bool c) const { return rank(c, n_); }

 private:
  void check_pos(Pos i) const {
    if (i < 1 || i > n_) throw std::out_of_range("BitVector: position out of range");
  }

  bool bit_at(Pos idx0) const {
    return (words_[idx0 / 64] >> (idx0 % 64)) & 1ULL;
  }

  Pos rank1_prefix(Pos i) const {
    Pos w = i / 64, rem = i % 64;
    Pos r = rank_samples_[w];
    if (rem) r += std::popcount(words_[w] & ((1ULL << rem) - 1));
    return r;
  }

  void build_rank_samples() {
    rank_samples_.assign(words_.size() + 1, 0);
    for (std::size_t w = 0; w < words_.size(); ++w) {
      rank_samples_[w + 1] = rank_samples_[w] + std::popcount(words_[w]);
    }
  }

  Pos n_ = 0;
  std::vector<std::uint64_t> words_;
  std::vector<Pos> rank_samples_;  // ones before each word
};

}  // namespace btcst
