// Realizability of a triple (b, e, a) in a short exact sequence
// 0 -> O(b) -> O(e) -> O(a) -> 0 of bundles on the projective line, decided
// by sign conditions on four integer tables (A, B, S, T) derived from the
// entries, with a machine-checkable witness either way.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quotkit/datum.hpp"
#include "quotkit/splitting_type.hpp"

namespace quotkit {

// Candidate kernel/middle/quotient splitting types.  Rank compatibility is
// *not* required at construction; the eligibility tests report on it.
struct Triple {
  SplittingType b, e, a;

  int m() const { return b.rank(); }
  int n() const { return a.rank(); }
  std::string str() const;  // "(b | e | a)" display form
};

// The integer tables controlling realizability:
//   A(mu,nu) = a_nu - e_{mu+nu}            1 <= mu <= m, 1 <= nu <= n
//   B(mu,nu) = e_{mu+nu-1} - b_mu          1 <= mu <= m, 1 <= nu <= n
//   S(mu,nu) = sum_{i>=nu} a_i + sum_{i>=mu} b_i - sum_{i>=mu+nu-1} e_i
//                                          1 <= mu <= m+1, 1 <= nu <= n+1
//   T(mu,nu) = sum_{i<=nu} a_i + sum_{i<=mu} b_i - sum_{i<=mu+nu} e_i
//                                          0 <= mu <= m, 0 <= nu <= n
// satisfying the complementarity S(mu+1, nu+1) + T(mu, nu) = 0.
class QuantityTables {
 public:
  explicit QuantityTables(const Triple& t);  // ContractError on rank mismatch

  int m() const { return m_; }
  int n() const { return n_; }

  // A is additionally defined for mu = 0 (same formula, A(0,nu) = a_nu - e_nu);
  // the matrix builder uses that natural extension.
  Int A(int mu, int nu) const;
  Int B(int mu, int nu) const;
  Int S(int mu, int nu) const;
  Int T(int mu, int nu) const;

 private:
  int m_ = 0, n_ = 0;
  std::vector<Int> bpre_, apre_, epre_;  // prefix sums, index i -> sum_{j<=i}
  std::vector<Int> bv_, ev_, av_;
};

// Threshold profile: h_mu = min{ nu in [1, n+1] : S(mu, nu') < 0 for all
// nu' > nu }, i.e. the largest nu with S(mu, nu) >= 0, or 1 when S(mu, .) is
// everywhere negative.  Returned for mu = 1..m.
std::vector<int> h_profile(const Triple& t);

// True iff the degree pattern admits a surjection O(e) ->> O(a) of bundles:
// for every i, either a_i >= e_{i+1} or a_j = e_j for all j <= i.
// Requires rank(a) < rank(e).
bool surjection_exists(const SplittingType& e, const SplittingType& a);
// Mirror test for a locally free (subbundle) inclusion O(b) -> O(e):
// for every i, either b_i <= e_{r-k+i-1} or b_j = e_{r-k+j} for all j >= i.
// Requires rank(b) < rank(e).
bool injection_lf_exists(const SplittingType& b, const SplittingType& e);

// The four cheap necessary conditions: rank sum, degree sum, a_i >= e_i for
// i <= n, and b_i <= e_{n+i} for i <= m.
bool weakly_eligible(const Triple& t);

// Failure witness: the first violated condition in the documented evaluation
// order (rank, degree, weak-eligibility entries, S-conditions in
// lexicographic (mu, nu) order, then the surjection/injection patterns).
struct Failure {
  enum class Kind {
    rank,
    degree,
    weak_eligibility,
    s_condition,
    hong_larson_surjection,
    hong_larson_injection,
  };
  Kind kind = Kind::rank;
  // For weak_eligibility: side 'a' or 'b' and the 1-based entry index.
  char side = 0;
  int index = 0;
  // For s_condition: the cell (mu, nu) and its (negative) value.
  int mu = 0, nu = 0;
  Int value = 0;

  std::string describe() const;
};

struct Verdict {
  bool value = false;
  std::optional<Failure> failure;        // engaged iff !value
  std::optional<BalancingDatum> datum;   // engaged iff value
};

// Realizability decision with witness.  Evaluates the threshold criterion
// (weak eligibility plus A(mu,nu) >= 0 and B(mu,nu) >= 0 whenever
// nu >= h_mu), cross-checks the independent S-requirement form of the same
// criterion, and on success attaches a balancing datum via construct_datum.
Verdict realizable(const Triple& t);

// Boolean-only variant without datum construction (cheaper; used in sweeps).
bool realizable_bool(const Triple& t);

// Failure witness only (first violated condition); nullopt when realizable.
std::optional<Failure> realizability_witness(const Triple& t);

}  // namespace quotkit
