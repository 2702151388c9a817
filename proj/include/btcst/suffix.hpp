#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "btcst/defs.hpp"
#include "btcst/paren.hpp"

namespace btcst {

// Input text over a dense alphabet [1, sigma], terminated by symbol 0, which
// is strictly smaller than every alphabet symbol and occurs exactly once.
struct Text {
  std::vector<Sym> symbols;              // length n, symbols[n-1] == 0
  int sigma = 0;                          // alphabet size without terminator
  std::vector<std::uint8_t> sym_to_byte;  // sym_to_byte[0] == 0 (terminator)
  std::array<int, 256> byte_to_sym{};     // -1 entries are absent bytes

  Pos n() const { return static_cast<Pos>(symbols.size()); }
  Sym at(Pos i) const { return symbols[static_cast<std::size_t>(i - 1)]; }

  // Remaps raw bytes to [1, sigma] and appends the terminator. Byte 0 may not
  // occur inside the input.
  static Text from_bytes(std::span<const std::uint8_t> bytes);
  static Text from_string(std::string_view s);
};

// A[i] (1-based rank i) is the starting position of the i-th suffix in
// lexicographic order; A[1] = n. Stored 0-based: sa[i-1] = A[i].
std::vector<Pos> build_suffix_array(const Text& text);

// LCP[1] = 0, LCP[i] = lcp of the suffixes of rank i-1 and i.
std::vector<Pos> build_lcp(const Text& text, const std::vector<Pos>& sa);

// Preorder BP of the suffix tree: one leaf per suffix in lexicographic order,
// internal nodes with >= 2 children (the root may have one on a 1-symbol
// text). Single left-to-right sweep over LCP with a stack of open depths.
ParenSeq build_bp_topology(const std::vector<Pos>& lcp);

// Run-length representation of the bitvector H[1, 2n] encoding PLCP, the LCP
// array in text order: PLCP[i] = select_1(H, i) - 2i.
class HBitvector {
 public:
  struct Run {
    Pos zeros;
    Pos ones;
  };

  static HBitvector build(const std::vector<Pos>& sa, const std::vector<Pos>& lcp);
  static HBitvector from_runs(std::vector<Run> runs);

  Pos n() const { return n_; }
  Pos plcp(Pos i) const;  // PLCP[i], 1 <= i <= n
  const std::vector<Run>& runs() const { return runs_; }

 private:
  void build_directory();

  static constexpr Pos kDirSample = 32;

  Pos n_ = 0;
  std::vector<Run> runs_;
  // Sampled prefix sums every kDirSample runs: ones and total bits emitted
  // before that run, for select_1 by binary search.
  std::vector<Pos> dir_ones_;
  std::vector<Pos> dir_bits_;
};

}  // namespace btcst
