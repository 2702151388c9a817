#pragma once

#include <vector>

#include "btcst/bitvector.hpp"
#include "btcst/defs.hpp"
#include "btcst/suffix.hpp"

namespace btcst {

// Simplified repetition-aware compressed suffix array: run-length-encoded Psi
// split by first character, with sampled A and A^{-1}. A functional stand-in
// for the published RLCSA; any CSA with A, A^{-1}, Psi and extract satisfies
// the suffix-tree layer.
class CsaIndex {
 public:
  struct PsiRun {
    Pos rank0;   // first rank of the run (global, 1-based)
    Pos value0;  // Psi at that rank; the run continues with +1 increments
    Pos len;
  };

  CsaIndex() = default;

  static CsaIndex build(const Text& text, const std::vector<Pos>& sa, Pos sa_rate, Pos text_rate);

  Pos n() const { return n_; }
  int sigma() const { return sigma_; }
  Pos sa_rate() const { return sa_rate_; }
  Pos text_rate() const { return text_rate_; }

  // Psi[i] = A^{-1}[(A[i] mod n) + 1].
  Pos psi(Pos i) const;

  // A[i], by walking Psi to the next sampled rank.
  Pos sa_access(Pos i) const;

  // A^{-1}[j], from the nearest preceding sampled text position.
  Pos isa_access(Pos j) const;

  // T[i..j] as remapped symbols, via isa_access then first-character lookups.
  std::vector<Sym> extract(Pos i, Pos j) const;

  // First symbol of the rank-i suffix.
  Sym first_char(Pos i) const;

  // Suffix ranks whose suffix starts with c form (bounds[c], bounds[c+1]].
  const std::vector<Pos>& first_char_bounds() const { return bounds_; }
  const std::vector<std::vector<PsiRun>>& psi_runs() const { return runs_; }
  Pos total_psi_runs() const;

  // Serialization support; samples_ are keyed by marked ranks in order.
  const BitVector& sampled_ranks() const { return sampled_ranks_; }
  const std::vector<Pos>& sa_samples() const { return sa_samples_; }
  const std::vector<Pos>& isa_samples() const { return isa_samples_; }

  static CsaIndex from_parts(Pos n, int sigma, Pos sa_rate, Pos text_rate,
                             std::vector<Pos> bounds, std::vector<std::vector<PsiRun>> runs,
                             BitVector sampled_ranks, std::vector<Pos> sa_samples,
                             std::vector<Pos> isa_samples);

 private:
  Pos n_ = 0;
  int sigma_ = 0;
  Pos sa_rate_ = 32;
  Pos text_rate_ = 128;
  std::vector<Pos> bounds_;                // size sigma + 2
  std::vector<std::vector<PsiRun>> runs_;  // per first character 0..sigma
  BitVector sampled_ranks_;                // ranks with A[i] == 1 (mod rate) or A[i] == n
  std::vector<Pos> sa_samples_;            // A at marked ranks, in rank order
  std::vector<Pos> isa_samples_;           // A^{-1} at text positions 1, 1+rate, ...
};

}  // namespace btcst
