// Stable pairs and the component census: enumerate the pairs (b, a) that are
// simultaneously generic kernel and generic cokernel inside a fixed middle
// type e, via their combinatorial packages; measure stratum dimension D and
// tangent dimension T; the strongly stable pairs (D = T) index the
// irreducible components of the locally free Quot locus.
#pragma once

#include <optional>
#include <vector>

#include "quotkit/realizability.hpp"
#include "quotkit/splitting_type.hpp"

namespace quotkit {

// Closed 1-based index interval [lo, hi] into the entries of e.
struct Block {
  int lo = 0, hi = 0;
  int size() const { return hi - lo + 1; }
  bool operator==(const Block& o) const { return lo == o.lo && hi == o.hi; }
};

// Combinatorial recipe for a stable pair: keep the first n' entries of e in
// the quotient and the last m' in the kernel; partition the middle window
// [n'+1, m+n-m'] into consecutive alternating blocks P_1 Q_1 ... P_r Q_r;
// move delta_i degree units from P_i down to Q_i, rebalancing both.
struct StablePackage {
  int m_prime = 0, n_prime = 0;
  std::vector<Block> P, Q;  // equal lengths r, alternating P_i then Q_i
  std::vector<Int> delta;   // size r, delta_i >= 0

  int r() const { return static_cast<int>(P.size()); }
};

// Stable pair with its measurements:
//   D = hom_dim(e,a) - end_dim(a) = hom_dim(b,e) - end_dim(b)  (stratum dim)
//   T = hom_dim(b,a)                                           (tangent dim)
struct ComponentRecord {
  SplittingType b, a;
  Int D = 0, T = 0;
  bool strongly_stable = false;
  std::vector<StablePackage> packages;  // all witnessing packages
};

// Package validity against e (n and m are implied by n', m' and the block
// layout): contiguity, alternation, separation e_{P_i last} < e_{Q_{i+1} 1},
// and 0 <= delta_i <= min(DeltaP_i, DeltaQ_i) with the out-of-range
// neighbor entries of e read as -infinity (left) / +infinity (right).
bool package_valid(const SplittingType& e, const StablePackage& pkg);

// Expands a valid package to its pair:
//   a = (e_1..e_{n'}, alpha_balance(e_{Q_1}, delta_1), ...)
//   b = (beta_balance(e_{P_1}, delta_1), ..., e_{m+n-m'+1}..e_{m+n}).
// Throws ContractError on an invalid package.
std::pair<SplittingType, SplittingType> package_expand(const SplittingType& e,
                                                       const StablePackage& pkg);

// The three strict separation inequalities making the pair strongly stable:
// e_{n'} < first entry of beta(P_1); last entry of alpha(Q_i) < first entry
// of beta(P_{i+1}); last entry of alpha(Q_r) < e_{m+n-m'+1} (sentinels
// +-infinity when an index leaves the range).  Equivalent to D = T.
bool is_strongly_stable(const SplittingType& e, const StablePackage& pkg);

// All stable pairs for quotients of rank n and degree d: enumerate (n', m'),
// alternating partitions, and delta vectors; expand; deduplicate by (b, a).
// Sorted by (D, T, a, b).  Requires 1 <= n < rank(e).
std::vector<ComponentRecord> enumerate_stable_pairs(const SplittingType& e,
                                                    int n, Int d);

// The strongly stable subset: one record per irreducible component of the
// locally free Quot locus.
std::vector<ComponentRecord> component_census(const SplittingType& e, int n,
                                              Int d);

// Dominance-maximum realizable completion: the unique most balanced a' with
// (b, e, a') realizable, found by bounded enumeration (the maximum is
// asserted to dominate every candidate; failure is an InternalError).
// Throws ContractError when no realizable completion exists.
SplittingType generic_cokernel(const SplittingType& b, const SplittingType& e);
SplittingType generic_kernel(const SplittingType& e, const SplittingType& a);

// Stability test straight from the definition.
bool is_stable(const SplittingType& e, const SplittingType& b,
               const SplittingType& a);

// All realizable completions a' of (b, e, _) with the complementary rank and
// degree (guarded enumeration); support for dominance-maximum assertions.
std::vector<SplittingType> exhaustive_quotients(const SplittingType& b,
                                                const SplittingType& e);

}  // namespace quotkit
