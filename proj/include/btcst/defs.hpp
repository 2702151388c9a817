#pragma once

#include <cstdint>
#include <optional>

namespace btcst {

// Positions and ranks are 1-based throughout the public API; 0 is a virtual
// sentinel position with excess 0 so that bwd-search may return it.
using Pos = std::int64_t;

// Remapped alphabet symbol: 0 is the terminator, 1..sigma the dense alphabet.
using Sym = std::uint8_t;

// "Not found" results are empty optionals, never a large integer that could
// alias a valid position.
using MaybePos = std::optional<Pos>;

}  // namespace btcst
