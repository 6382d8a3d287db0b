// Internal helpers shared between translation units; not part of the API.
#pragma once

#include <vector>

#include "quotkit/realizability.hpp"

namespace quotkit::detail {

// Threshold profile computed from the S table: for each mu in [1, m] the
// largest nu in [1, n+1] with S(mu, nu) >= 0, defaulting to 1.
std::vector<int> h_from_tables(const QuantityTables& q);

// Length of the maximal shared prefix a_i = e_i.
int n_prime(const Triple& t);

// Length of the maximal shared suffix b_{m-k+i} = e_{m+n-k+i}.
int m_prime(const Triple& t);

// h extended by one slot: h_extended(t)[mu-1] = h_mu for mu in [1, m+1],
// where h_{m+1} = n+1 unconditionally (S(m+1, n+1) = 0).
std::vector<int> h_extended(const Triple& t);

}  // namespace quotkit::detail
