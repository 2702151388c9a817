#include "btcst/space.hpp"

#include <bit>

namespace btcst {

namespace {

// Bits needed to store values in [0, v].
std::int64_t width_for(Pos v) {
  return v <= 0 ? 1 : static_cast<std::int64_t>(std::bit_width(static_cast<std::uint64_t>(v)));
}

}  // namespace

SpaceReport measure_space(const BtCst& cst) {
  SpaceReport rep;
  rep.n = cst.n();
  const Btct& topo = cst.topology();
  rep.node_count = topo.length() / 2;

  const auto& levels = topo.tree().levels();
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const Pos b = levels[l].block_size;
    const std::int64_t wb = width_for(b);       // counts in [0, b]
    const std::int64_t we = wb + 1;             // excess-like values in [-b, b]
    const std::int64_t wptr = width_for(static_cast<Pos>(levels[l].nodes.size()) - 1);
    for (const BtNode& v : levels[l].nodes) {
      rep.topology_bits += 2;                   // kind
      rep.topology_bits += wb;                  // rank1
      rep.topology_bits += wb;                  // lrank
      rep.topology_bits += 1;                   // lbreaker
      rep.topology_bits += we;                  // mexcess
      switch (v.kind) {
        case BlockKind::Back:
          rep.topology_bits += wptr;            // target
          rep.topology_bits += width_for(b - 1);  // offset
          rep.topology_bits += wb;              // prefix rank1 before the occurrence
          rep.topology_bits += wb;              // fb_lrank
          rep.topology_bits += 1;               // fb_lbreaker
          rep.topology_bits += we;              // fb_mexcess or sb_mexcess
          rep.topology_bits += 1;               // m_fb
          break;
        case BlockKind::Leaf:
          rep.topology_bits += v.extent;        // verbatim bits
          break;
        case BlockKind::Internal:
          break;                                // children are implicit
      }
    }
  }

  const CsaIndex& csa = cst.csa();
  const std::int64_t wn = width_for(cst.n());
  rep.csa_bits += static_cast<std::int64_t>(csa.first_char_bounds().size()) * wn;
  rep.csa_bits += csa.total_psi_runs() * 2 * wn;  // (value0, len) per run
  rep.csa_bits += cst.n();                        // sampled-rank marks
  rep.csa_bits += static_cast<std::int64_t>(csa.sa_samples().size()) * wn;
  rep.csa_bits += static_cast<std::int64_t>(csa.isa_samples().size()) * wn;

  rep.h_bits = static_cast<std::int64_t>(cst.h().runs().size()) * 2 * width_for(2 * cst.n());
  return rep;
}

}  // namespace btcst
