// Geometry of the locally free Quot locus: the most-balanced quotient/kernel
// formulas, the irreducibility test, iterative balancing, and connectedness
// certificates built from explicit chains of realizable pairs.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quotkit/realizability.hpp"
#include "quotkit/splitting_type.hpp"
#include "quotkit/stable_pairs.hpp"

namespace quotkit {

// The dominance-maximum splitting type among all quotients of O(e) of rank n
// and degree d (computed by a closed formula: keep a maximal balanced-forcing
// prefix e_1..e_{n'}, water-fill the window (n'+2 .. n+1) with the degree
// slack).  Throws ContractError when no locally free quotient of that rank
// and degree exists.
SplittingType most_balanced_quotient(const SplittingType& e, int n, Int d);
// Mirror formula for kernels of rank m and degree dprime.
SplittingType most_balanced_kernel(const SplittingType& e, int m, Int dprime);

struct IrreducibilityReport {
  bool irreducible = false;
  SplittingType mb_quotient, mb_kernel;
  // The sufficient bound d >= n(e_max - 1) + 1 and d' <= m(e_min + 1) - 1;
  // when true, irreducibility is guaranteed.
  bool sufficient_bound = false;
};

// True iff the locus is irreducible: the pair (most_balanced_kernel,
// most_balanced_quotient) is realizable.  Cross-checks two equivalent
// formulations (census size one; the window-balancing display, whose
// boundary comparisons admit ties) and asserts agreement.  Requires
// 1 <= n < rank(e) and a nonempty locus.
IrreducibilityReport irreducible_report(const SplittingType& e, int n, Int d);
bool irreducible(const SplittingType& e, int n, Int d);

struct PairBA {
  SplittingType b, a;
  bool operator==(const PairBA& o) const { return b == o.b && a == o.a; }
  bool operator<(const PairBA& o) const {
    return b != o.b ? b < o.b : a < o.a;
  }
  std::string str() const;
};

enum class BalanceOrder { kernel_first, quotient_first };

struct IBTrace {
  std::vector<PairBA> states;  // starting pair first, fixed point last
  PairBA fixed_point() const { return states.back(); }
};

// Iterative balancing: alternately replace one side by the most balanced
// completion keeping the pair realizable, until a fixed point (a stable
// pair).  Every update is recorded in the trace.  Default order updates the
// kernel first (the order used by the worked chain this library reproduces);
// quotient_first is also available.  Throws ContractError when the input
// pair is not realizable.
IBTrace iterative_balancing(const SplittingType& e, const SplittingType& b,
                            const SplittingType& a,
                            BalanceOrder order = BalanceOrder::kernel_first);

// A chain of realizable pairs in which consecutive states share b or share a
// (the non-shared side moving monotonically in dominance), connecting
// `from` (first state) to `to` (last state).
struct ConnChain {
  std::vector<PairBA> states;
};

struct ConnectivityCertificate {
  SplittingType e;
  int n = 0;
  Int d = 0;
  std::vector<ComponentRecord> nodes;  // strongly stable pairs
  PairBA root;                         // the most-balanced-quotient node
  // chains[i] connects nodes[i] to the root.
  std::vector<ConnChain> chains;
  bool connected = false;
  std::string failure;  // nonempty iff !connected
};

// Builds chains from every strongly stable pair to the most-balanced root
// using the rebalancing moves (transfer a surplus unit down, merge the last
// window block, iterative balancing, or a direct dominance bridge), then
// verifies every chain.  A disconnect is reported loudly in `failure`, never
// patched over.  Requires a nonempty census.
ConnectivityCertificate connectedness_certificate(const SplittingType& e,
                                                  int n, Int d);

// Independent re-verification of a certificate: every chain state realizable,
// consecutive states share a side with the moving side dominance-monotone,
// chains start at the nodes and end at the root, and the root is a node.
bool verify_certificate(const ConnectivityCertificate& cert,
                        std::string* why = nullptr);

}  // namespace quotkit
