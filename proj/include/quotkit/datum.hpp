// Balancing datum: the combinatorial certificate of realizability.  sigma
// assigns each quotient slot a middle summand, tau does the same for kernel
// slots (together a bijection onto the middle indices), and gamma records how
// many degree units each kernel row donates to each quotient column.
#pragma once

#include <cstdint>
#include <vector>

namespace quotkit {

struct BalancingDatum {
  std::vector<int> sigma;  // size n, 1-based values in [1, m+n]
  std::vector<int> tau;    // size m, 1-based values in [1, m+n]
  // Dense m x n matrix of nonnegative transfer amounts, gamma[i][j] for the
  // (i+1)-th kernel row and (j+1)-th quotient column.
  std::vector<std::vector<std::int64_t>> gamma;

  bool operator==(const BalancingDatum& o) const {
    return sigma == o.sigma && tau == o.tau && gamma == o.gamma;
  }
};

}  // namespace quotkit
