#pragma once

#include <span>
#include <vector>

#include "btcst/cst.hpp"
#include "btcst/defs.hpp"

namespace btcst {

// A substring S[start, end] of the query that occurs in the indexed text and
// can be extended neither left nor right while still occurring. `occ` is one
// occurrence position (1-based) in the text.
struct MaximalMatch {
  Pos start;
  Pos end;
  Pos occ;
};

// Matching-statistics walk over the suffix tree: extend with child/letter,
// shrink with suffix_link + string_ancestor. Query bytes outside the index
// alphabet never match and restart the walk behind them.
std::vector<MaximalMatch> maximal_substrings(const BtCst& cst, std::span<const std::uint8_t> query);

std::vector<MaximalMatch> maximal_substrings(const BtCst& cst, std::string_view query);

}  // namespace btcst
