// Numeric oracle: realize a degree pattern by random homogeneous matrices
// over a prime field, measure kernel dimensions on graded pieces twist by
// twist, and reconstruct the generic kernel splitting type by finite
// differences.  Probabilistic support for the combinatorial formulas — never
// used inside them.
#pragma once

#include <cstdint>

#include "quotkit/splitting_type.hpp"

namespace quotkit {

struct OracleConfig {
  Int prime = 32003;
  int trials = 20;
  std::uint64_t seed = 0;
  // Extra twists scanned beyond the forced window, for consistency checks.
  int twist_margin = 2;
};

// Splitting type of the kernel of a generic surjection O(e) ->> O(a) over
// F_p: per trial, sample entry (i,j) as a random homogeneous polynomial of
// degree a_i - e_j, compute h(t) = dim ker of the induced map on degree-t
// graded pieces for each twist t in a window, and recover b from the finite
// differences of h.  Returns the dominance-maximum over trials (which must
// dominate every trial's result — InternalError otherwise).
// Requires surjection_exists(e, a); prime > 2 * max degree; trials >= 1.
SplittingType generic_kernel_split_numeric(const SplittingType& e,
                                           const SplittingType& a,
                                           const OracleConfig& cfg = {});

// Mirror computation via duality (reverse-negate both types, compute the
// generic kernel, reverse-negate back).  Requires injection_lf_exists(b, e).
SplittingType generic_cokernel_split_numeric(const SplittingType& b,
                                             const SplittingType& e,
                                             const OracleConfig& cfg = {});

}  // namespace quotkit
