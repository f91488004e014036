#pragma once

// Codes for reciprocal networks: the transposed code, the duality check
// Gamma'_lk = Gamma_kl^T, and the flip-conjugated code that runs the
// reciprocal scheme over the physical (untransposed) shift channels.

#include "ldnet/coding.hpp"
#include "ldnet/network.hpp"

namespace ldnet {

/// C'_k = D_k^T, D'_k = C_k^T, F'_j = F_j^T; the result is bound to
/// reciprocal(ln).
LinearCode transpose_code(const LayeredNetwork& ln, const LinearCode& code);

struct ReciprocityReport {
  bool solves = false;
  TransferMap gamma;
  TransferMap gamma_reciprocal;
  /// Gamma'_lk == Gamma_kl^T for every pair.
  bool duality = false;
  /// transpose_code(code) solves reciprocal(ln).
  bool transposed_solves = false;

  /// Solving forward implies solving in reverse.
  bool consistent() const noexcept { return !solves || transposed_solves; }
};

ReciprocityReport verify_reciprocity(const LayeredNetwork& ln,
                                     const LinearCode& code);

/// Edges reversed and sessions swapped, gains left untouched: the network a
/// reciprocal physical medium presents in the reverse direction.
LayeredNetwork physical_reverse(const LayeredNetwork& ln);

/// Every gain replaced by its transpose, nothing else changed.
LayeredNetwork transpose_gains(const LayeredNetwork& ln);

/// `physical` must carry only shift gains. Given a code `rcode` for
/// transpose_gains(physical), returns the code for `physical` obtained by
/// flipping at every node boundary: C -> J C, D -> D J, F -> J F J, which
/// realises every S^T as J S J. Throws non_shift_gain otherwise.
LinearCode physical_code(const LayeredNetwork& physical,
                         const LinearCode& rcode);

}  // namespace ldnet
