#pragma once

#include "btcst/cst.hpp"
#include "btcst/defs.hpp"

namespace btcst {

// Idealized packed-size accounting per component: every stored field counted
// at the minimal fixed width its level admits, not at its in-RAM width.
struct SpaceReport {
  Pos n = 0;           // text length (= suffix tree leaves)
  Pos node_count = 0;  // suffix tree nodes (= BP length / 2)
  std::int64_t topology_bits = 0;
  std::int64_t csa_bits = 0;
  std::int64_t h_bits = 0;

  std::int64_t total_bits() const { return topology_bits + csa_bits + h_bits; }
  double bits_per_symbol() const { return static_cast<double>(total_bits()) / static_cast<double>(n); }
  double topology_bpn() const {
    return static_cast<double>(topology_bits) / static_cast<double>(node_count);
  }
  double pct(std::int64_t part) const {
    return 100.0 * static_cast<double>(part) / static_cast<double>(total_bits());
  }
};

SpaceReport measure_space(const BtCst& cst);

}  // namespace btcst
