#include "btcst/paren.hpp"

#include <stdexcept>

namespace btcst {

ParenSeq ParenSeq::from_bits(const std::vector<bool>& bits) {
  if (bits.empty() || bits.size() % 2 != 0) {
    throw std::invalid_argument("ParenSeq: length must be positive and even");
  }
  Pos exc = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    exc += bits[i] ? 1 : -1;
    if (i + 1 < bits.size() ? exc < 1 : exc != 0) {
      throw std::invalid_argument("ParenSeq: sequence is not a balanced single-rooted tree");
    }
  }
  return ParenSeq(BitVector(bits));
}

ParenSeq ParenSeq::from_string(std::string_view parens) {
  std::vector<bool> bits;
  bits.reserve(parens.size());
  for (char c : parens) bits.push_back(c == '1' || c == '(');
  return from_bits(bits);
}

Pos ParenSeq::excess(Pos i) const {
  if (i < 0 || i > length()) throw std::out_of_range("ParenSeq::excess: position out of range");
  if (i == 0) return 0;
  return 2 * bv_.rank(true, i) - i;
}

MaybePos ParenSeq::scan_fwd_search(Pos i, Pos d) const {
  if (i < 0 || i > length()) throw std::out_of_range("ParenSeq::scan_fwd_search: position out of range");
  if (d > 0) throw std::invalid_argument("ParenSeq::scan_fwd_search: only d <= 0 is supported");
  Pos e = 0;
  for (Pos j = i + 1; j <= length(); ++j) {
    e += bv_.get(j) ? 1 : -1;
    if (e == d) return j;
  }
  return std::nullopt;
}

MaybePos ParenSeq::scan_bwd_search(Pos i, Pos d) const {
  if (i < 1 || i > length()) throw std::out_of_range("ParenSeq::scan_bwd_search: position out of range");
  if (d > 0) throw std::invalid_argument("ParenSeq::scan_bwd_search: only d <= 0 is supported");
  Pos e = 0;  // excess of (j, i]
  for (Pos j = i - 1; j >= 0; --j) {
    e += bv_.get(j + 1) ? 1 : -1;
    if (e == -d) return j;
  }
  return std::nullopt;
}

Pos ParenSeq::scan_min_excess(Pos i, Pos j) const {
  if (i < 1 || j > length()) throw std::out_of_range("ParenSeq::scan_min_excess: range out of bounds");
  if (i > j) throw std::out_of_range("ParenSeq::scan_min_excess: empty range");
  Pos e = 0, m = length() + 1;
  for (Pos k = i; k <= j; ++k) {
    e += bv_.get(k) ? 1 : -1;
    if (e < m) m = e;
  }
  return m;
}

Pos ParenSeq::scan_leaf_rank(Pos i) const {
  if (i < 0 || i > length()) throw std::out_of_range("ParenSeq::scan_leaf_rank: position out of range");
  Pos count = 0;
  for (Pos j = 1; j <= i - 1; ++j) {
    if (bv_.get(j) && !bv_.get(j + 1)) ++count;
  }
  return count;
}

MaybePos ParenSeq::scan_leaf_select(Pos j) const {
  if (j < 1) throw std::out_of_range("ParenSeq::scan_leaf_select: leaf index must be >= 1");
  Pos count = 0;
  for (Pos p = 1; p + 1 <= length(); ++p) {
    if (bv_.get(p) && !bv_.get(p + 1)) {
      if (++count == j) return p;
    }
  }
  return std::nullopt;
}

}  // namespace btcst
