#include "btcst/suffix.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace btcst {

Text Text::from_bytes(std::span<const std::uint8_t> bytes) {
  Text t;
  t.byte_to_sym.fill(-1);
  bool seen[256] = {};
  for (std::uint8_t b : bytes) {
    if (b == 0) throw std::invalid_argument("Text: byte 0 may not occur inside the input");
    seen[b] = true;
  }
  t.sym_to_byte.push_back(0);  // terminator
  for (int b = 1; b < 256; ++b) {
    if (seen[b]) {
      t.byte_to_sym[b] = static_cast<int>(t.sym_to_byte.size());
      t.sym_to_byte.push_back(static_cast<std::uint8_t>(b));
    }
  }
  t.sigma = static_cast<int>(t.sym_to_byte.size()) - 1;
  t.symbols.reserve(bytes.size() + 1);
  for (std::uint8_t b : bytes) t.symbols.push_back(static_cast<Sym>(t.byte_to_sym[b]));
  t.symbols.push_back(0);
  return t;
}

Text Text::from_string(std::string_view s) {
  return from_bytes(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

// Prefix doubling; correctness, not construction speed, is the contract here.
std::vector<Pos> build_suffix_array(const Text& text) {
  const Pos n = text.n();
  if (n == 0) throw std::invalid_argument("build_suffix_array: empty text");
  std::vector<Pos> sa(n), rank(n), tmp(n);
  std::iota(sa.begin(), sa.end(), 0);
  for (Pos i = 0; i < n; ++i) rank[i] = text.symbols[static_cast<std::size_t>(i)];
  for (Pos k = 1;; k *= 2) {
    auto key = [&](Pos i) {
      return std::pair<Pos, Pos>(rank[i], i + k < n ? rank[i + k] + 1 : 0);
    };
    std::sort(sa.begin(), sa.end(), [&](Pos a, Pos b) { return key(a) < key(b); });
    tmp[sa[0]] = 0;
    for (Pos i = 1; i < n; ++i) {
      tmp[sa[i]] = tmp[sa[i - 1]] + (key(sa[i - 1]) < key(sa[i]) ? 1 : 0);
    }
    rank.swap(tmp);
    if (rank[sa[n - 1]] == n - 1) break;
  }
  for (auto& v : sa) v += 1;  // 1-based text positions
  return sa;
}

// Kasai's algorithm.
std::vector<Pos> build_lcp(const Text& text, const std::vector<Pos>& sa) {
  const Pos n = text.n();
  std::vector<Pos> inv(n), lcp(n, 0);
  for (Pos i = 0; i < n; ++i) inv[sa[static_cast<std::size_t>(i)] - 1] = i;
  Pos h = 0;
  for (Pos j = 0; j < n; ++j) {  // text position j (0-based)
    if (inv[j] > 0) {
      Pos p = sa[static_cast<std::size_t>(inv[j] - 1)] - 1;  // previous suffix, 0-based
      while (j + h < n && p + h < n &&
             text.symbols[static_cast<std::size_t>(j + h)] ==
                 text.symbols[static_cast<std::size_t>(p + h)]) {
        ++h;
      }
      lcp[static_cast<std::size_t>(inv[j])] = h;
      if (h > 0) --h;
    } else {
      h = 0;
    }
  }
  return lcp;
}

// Every internal node's opening parenthesis sits directly before the opening
// of its leftmost leaf, so one sweep over LCP with a stack of open string
// depths can count, per leaf, how many internal nodes open before it and how
// many close after it.
ParenSeq build_bp_topology(const std::vector<Pos>& lcp) {
  const Pos n = static_cast<Pos>(lcp.size());
  if (n == 0) throw std::invalid_argument("build_bp_topology: empty LCP array");
  std::vector<Pos> opens(static_cast<std::size_t>(n) + 1, 0);
  std::vector<Pos> closes(static_cast<std::size_t>(n) + 1, 0);
  struct Open {
    Pos depth;
    Pos leftmost;  // leaf index of the node's leftmost leaf
  };
  std::vector<Open> stack;
  stack.push_back({0, 1});  // the root
  opens[1] += 1;
  for (Pos i = 2; i <= n; ++i) {
    const Pos l = lcp[static_cast<std::size_t>(i - 1)];
    Pos last_leftmost = -1;
    while (stack.back().depth > l) {
      last_leftmost = stack.back().leftmost;
      stack.pop_back();
      closes[static_cast<std::size_t>(i - 1)] += 1;
    }
    if (stack.back().depth < l) {
      const Pos leftmost = last_leftmost >= 0 ? last_leftmost : i - 1;
      stack.push_back({l, leftmost});
      opens[static_cast<std::size_t>(leftmost)] += 1;
    }
  }
  while (!stack.empty()) {
    stack.pop_back();
    closes[static_cast<std::size_t>(n)] += 1;
  }
  std::vector<bool> bits;
  for (Pos i = 1; i <= n; ++i) {
    for (Pos k = 0; k < opens[static_cast<std::size_t>(i)]; ++k) bits.push_back(true);
    bits.push_back(true);
    bits.push_back(false);
    for (Pos k = 0; k < closes[static_cast<std::size_t>(i)]; ++k) bits.push_back(false);
  }
  return ParenSeq::from_bits(bits);
}

HBitvector HBitvector::build(const std::vector<Pos>& sa, const std::vector<Pos>& lcp) {
  const Pos n = static_cast<Pos>(sa.size());
  std::vector<Pos> plcp(static_cast<std::size_t>(n) + 1, 0);
  for (Pos i = 0; i < n; ++i) {
    plcp[static_cast<std::size_t>(sa[static_cast<std::size_t>(i)])] =
        lcp[static_cast<std::size_t>(i)];
  }
  // H = concat over i of 0^{PLCP[i] - PLCP[i-1] + 1} 1, with PLCP[0] = 0;
  // consecutive equal-gap ones collapse into runs.
  std::vector<Run> runs;
  Pos pending_zeros = 0, pending_ones = 0;
  for (Pos i = 1; i <= n; ++i) {
    const Pos gap = plcp[static_cast<std::size_t>(i)] - plcp[static_cast<std::size_t>(i - 1)] + 1;
    if (gap == 0) {
      pending_ones += 1;
    } else {
      if (pending_ones > 0) runs.push_back({pending_zeros, pending_ones});
      pending_zeros = gap;
      pending_ones = 1;
    }
  }
  runs.push_back({pending_zeros, pending_ones});
  HBitvector h = from_runs(std::move(runs));
  if (h.n_ != n) throw std::logic_error("HBitvector::build: inconsistent run encoding");
  return h;
}

HBitvector HBitvector::from_runs(std::vector<Run> runs) {
  HBitvector h;
  h.runs_ = std::move(runs);
  for (const Run& r : h.runs_) h.n_ += r.ones;
  h.build_directory();
  return h;
}

void HBitvector::build_directory() {
  dir_ones_.clear();
  dir_bits_.clear();
  Pos ones = 0, bits = 0;
  for (std::size_t r = 0; r < runs_.size(); ++r) {
    if (r % kDirSample == 0) {
      dir_ones_.push_back(ones);
      dir_bits_.push_back(bits);
    }
    ones += runs_[r].ones;
    bits += runs_[r].zeros + runs_[r].ones;
  }
}

Pos HBitvector::plcp(Pos i) const {
  if (i < 1 || i > n_) throw std::out_of_range("HBitvector::plcp: position out of range");
  // select_1(H, i) via the sampled directory, then PLCP[i] = select - 2i.
  std::size_t block =
      std::upper_bound(dir_ones_.begin(), dir_ones_.end(), i - 1) - dir_ones_.begin() - 1;
  Pos ones = dir_ones_[block];
  Pos bits = dir_bits_[block];
  for (std::size_t r = block * kDirSample; r < runs_.size(); ++r) {
    if (ones + runs_[r].ones >= i) {
      const Pos select = bits + runs_[r].zeros + (i - ones);
      return select - 2 * i;
    }
    ones += runs_[r].ones;
    bits += runs_[r].zeros + runs_[r].ones;
  }
  throw std::logic_error("HBitvector::plcp: inconsistent directory");
}

}  // namespace btcst
