// Balancing-datum operations: verification against a triple, deterministic
// construction from a realizable triple, exhaustive search (an independent
// oracle for realizability), and tau-minimality.
#pragma once

#include <optional>

#include "quotkit/datum.hpp"
#include "quotkit/realizability.hpp"

namespace quotkit {

// True iff the datum certifies the triple: sigma/tau partition the middle
// indices, gamma is nonnegative with row sums e_{tau(i)} - b_i and column
// sums a_j - e_{sigma(j)}, and every positive gamma(i,j) sits on a support
// cell b_i < e_{tau(i)} <= e_{sigma(j)} < a_j (with gamma(i,j) at most
// min(e_{tau(i)} - b_i, a_j - e_{sigma(j)})).
// Throws ContractError when sizes or index ranges do not match the ranks.
bool verify_datum(const Triple& t, const BalancingDatum& d);

// Deterministic construction of a datum for a realizable triple:
// tau(i) = h_i + i - 1 for i <= m - m', tau(i) = n + i above; sigma(j) =
// j + max{ k in [1, m-m'] : h_k <= j } (0 when none); gamma filled greedily
// by increasing quotient column, drawing from kernel rows in increasing
// order.  Throws ContractError naming the failed criterion when the triple
// is not realizable.
BalancingDatum construct_datum(const Triple& t);

// Exhaustive independent search: enumerates all ordered assignments of the
// middle indices to tau and sigma slots and, for each, decides gamma
// feasibility as a transportation problem.  Because the support condition
// e_{tau(i)} <= e_{sigma(j)} nests the admissible cells into a staircase,
// a sorted greedy fill is exact for the feasibility test.  Returns the
// first datum found in a fixed deterministic order, or nullopt.  Guarded;
// throws GuardError when the state space exceeds the limit.
std::optional<BalancingDatum> search_datum(const Triple& t);

// True iff no valid datum exists with tau'(i) <= tau(i) for all i and at
// least one strict inequality.  Guarded like search_datum.
bool is_minimal(const Triple& t, const BalancingDatum& d);

}  // namespace quotkit
