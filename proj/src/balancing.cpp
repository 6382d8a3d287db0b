// Balancing data: verification, deterministic construction from the
// threshold profile, exhaustive search (independent oracle), minimality.
#include "quotkit/balancing.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "internal.hpp"
#include "quotkit/guard.hpp"

namespace quotkit {

namespace {

// Exact feasibility + fill for the transportation problem with staircase
// support: row i may feed column j iff e_{tau(i)} <= e_{sigma(j)}.  Both
// slot lists are increasing, so the usable rows for each column form a
// prefix that only grows with j; serving columns left to right from the
// lowest usable rows is then exact.  Returns the fill, or nullopt.
std::optional<std::vector<std::vector<Int>>> staircase_fill(
    const SplittingType& e, const std::vector<int>& tau, const std::vector<int>& sigma,
    std::vector<Int> row_supply, const std::vector<Int>& col_demand) {
  const int m = static_cast<int>(tau.size());
  const int n = static_cast<int>(sigma.size());
  std::vector<std::vector<Int>> gamma(static_cast<std::size_t>(m),
                                      std::vector<Int>(static_cast<std::size_t>(n), 0));
  for (int j = 0; j < n; ++j) {
    Int rem = col_demand[static_cast<std::size_t>(j)];
    for (int i = 0; i < m && rem > 0; ++i) {
      if (e.at(tau[static_cast<std::size_t>(i)]) > e.at(sigma[static_cast<std::size_t>(j)])) {
        break;  // rows are sorted by threshold; none further can serve j
      }
      Int give = std::min(row_supply[static_cast<std::size_t>(i)], rem);
      if (give > 0) {
        gamma[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = give;
        row_supply[static_cast<std::size_t>(i)] -= give;
        rem -= give;
      }
    }
    if (rem > 0) return std::nullopt;
  }
  for (Int r : row_supply) {
    if (r != 0) return std::nullopt;  // unreachable when total supply = demand
  }
  return gamma;
}

}  // namespace

bool verify_datum(const Triple& t, const BalancingDatum& d) {
  const int m = t.m(), n = t.n();
  if (m + n != t.e.rank()) {
    throw ContractError("datum verification requires rank(b) + rank(a) = rank(e)");
  }
  if (static_cast<int>(d.sigma.size()) != n || static_cast<int>(d.tau.size()) != m) {
    throw ContractError("datum slot lists have the wrong lengths");
  }
  if (static_cast<int>(d.gamma.size()) != m) {
    throw ContractError("gamma has the wrong number of rows");
  }
  for (const auto& row : d.gamma) {
    if (static_cast<int>(row.size()) != n) {
      throw ContractError("gamma has a row of the wrong length");
    }
    for (Int v : row) {
      if (v < 0) throw ContractError("gamma has a negative entry");
    }
  }
  for (int v : d.sigma) {
    if (v < 1 || v > m + n) throw ContractError("sigma value out of range");
  }
  for (int v : d.tau) {
    if (v < 1 || v > m + n) throw ContractError("tau value out of range");
  }

  // sigma and tau together must hit every middle index exactly once, and
  // each list must be strictly increasing.
  std::vector<int> seen(static_cast<std::size_t>(m + n), 0);
  for (int v : d.sigma) seen[static_cast<std::size_t>(v - 1)] += 1;
  for (int v : d.tau) seen[static_cast<std::size_t>(v - 1)] += 1;
  for (int c : seen) {
    if (c != 1) return false;
  }
  for (int i = 1; i < n; ++i) {
    if (d.sigma[static_cast<std::size_t>(i - 1)] >= d.sigma[static_cast<std::size_t>(i)]) {
      return false;
    }
  }
  for (int i = 1; i < m; ++i) {
    if (d.tau[static_cast<std::size_t>(i - 1)] >= d.tau[static_cast<std::size_t>(i)]) {
      return false;
    }
  }

  for (int i = 1; i <= m; ++i) {
    Int row_sum = 0;
    for (int j = 1; j <= n; ++j) {
      row_sum = checked_add(row_sum, d.gamma[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)]);
    }
    Int want = checked_sub(t.e.at(d.tau[static_cast<std::size_t>(i - 1)]), t.b.at(i));
    if (row_sum != want) return false;
  }
  for (int j = 1; j <= n; ++j) {
    Int col_sum = 0;
    for (int i = 1; i <= m; ++i) {
      col_sum = checked_add(col_sum, d.gamma[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)]);
    }
    Int want = checked_sub(t.a.at(j), t.e.at(d.sigma[static_cast<std::size_t>(j - 1)]));
    if (col_sum != want) return false;
  }
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= n; ++j) {
      Int g = d.gamma[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
      if (g == 0) continue;
      Int et = t.e.at(d.tau[static_cast<std::size_t>(i - 1)]);
      Int es = t.e.at(d.sigma[static_cast<std::size_t>(j - 1)]);
      if (!(t.b.at(i) < et && et <= es && es < t.a.at(j))) return false;
      if (g > std::min(checked_sub(et, t.b.at(i)), checked_sub(t.a.at(j), es))) return false;
    }
  }
  return true;
}

BalancingDatum construct_datum(const Triple& t) {
  if (auto w = realizability_witness(t)) {
    throw ContractError("triple is not realizable: " + w->describe());
  }
  const int m = t.m(), n = t.n();
  const int mp = detail::m_prime(t);
  std::vector<int> h;
  if (m + n > 0 && m > 0) {
    QuantityTables q(t);
    h = detail::h_from_tables(q);
  }

  BalancingDatum d;
  d.tau.resize(static_cast<std::size_t>(m));
  for (int i = 1; i <= m; ++i) {
    d.tau[static_cast<std::size_t>(i - 1)] =
        (i <= m - mp) ? h[static_cast<std::size_t>(i - 1)] + i - 1 : n + i;
  }
  d.sigma.resize(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    int kmax = 0;
    for (int k = 1; k <= m - mp; ++k) {
      if (h[static_cast<std::size_t>(k - 1)] <= j) kmax = k;
    }
    d.sigma[static_cast<std::size_t>(j - 1)] = j + kmax;
  }

  std::vector<Int> supply(static_cast<std::size_t>(m)), demand(static_cast<std::size_t>(n));
  for (int i = 1; i <= m; ++i) {
    supply[static_cast<std::size_t>(i - 1)] =
        checked_sub(t.e.at(d.tau[static_cast<std::size_t>(i - 1)]), t.b.at(i));
    if (supply[static_cast<std::size_t>(i - 1)] < 0) {
      throw InternalError("negative kernel supply in datum construction on " + t.str());
    }
  }
  for (int j = 1; j <= n; ++j) {
    demand[static_cast<std::size_t>(j - 1)] =
        checked_sub(t.a.at(j), t.e.at(d.sigma[static_cast<std::size_t>(j - 1)]));
    if (demand[static_cast<std::size_t>(j - 1)] < 0) {
      throw InternalError("negative quotient demand in datum construction on " + t.str());
    }
  }
  auto gamma = staircase_fill(t.e, d.tau, d.sigma, supply, demand);
  if (!gamma) {
    throw InternalError("datum construction could not route degree transfers on " + t.str());
  }
  d.gamma = *gamma;
  if (!verify_datum(t, d)) {
    throw InternalError("constructed datum failed verification on " + t.str());
  }
  return d;
}

namespace {

// DFS over strictly increasing tau-slot assignments.  bound[i] (if present)
// caps tau(i+1); with exclude_avoid set, the exact assignment `avoid` is
// rejected (used by the minimality test).
struct SlotSearch {
  const Triple& t;
  GuardCounter& guard;
  std::vector<int> bound;   // per-slot upper bound on tau values; empty = m+n
  std::vector<int> avoid;   // assignment to exclude when exclude_avoid is set
  bool exclude_avoid = false;
  std::vector<int> tau;

  std::optional<BalancingDatum> found;

  void run() {
    tau.clear();
    dfs();
  }

  void dfs() {
    if (found) return;
    const int m = t.m(), n = t.n();
    int i = static_cast<int>(tau.size());
    if (i == m) {
      leaf();
      return;
    }
    int lo = tau.empty() ? 1 : tau.back() + 1;
    int hi = m + n - (m - i - 1);  // leave room for the remaining slots
    if (!bound.empty()) hi = std::min(hi, bound[static_cast<std::size_t>(i)]);
    for (int v = lo; v <= hi; ++v) {
      guard.tick();
      if (checked_sub(t.e.at(v), t.b.at(i + 1)) < 0) continue;  // supply would be negative
      tau.push_back(v);
      dfs();
      tau.pop_back();
      if (found) return;
    }
  }

  void leaf() {
    const int m = t.m(), n = t.n();
    if (exclude_avoid && tau == avoid) return;
    std::vector<int> sigma;
    sigma.reserve(static_cast<std::size_t>(n));
    std::vector<bool> used(static_cast<std::size_t>(m + n + 1), false);
    for (int v : tau) used[static_cast<std::size_t>(v)] = true;
    for (int v = 1; v <= m + n; ++v) {
      if (!used[static_cast<std::size_t>(v)]) sigma.push_back(v);
    }
    std::vector<Int> supply(static_cast<std::size_t>(m)), demand(static_cast<std::size_t>(n));
    for (int i = 1; i <= m; ++i) {
      supply[static_cast<std::size_t>(i - 1)] =
          checked_sub(t.e.at(tau[static_cast<std::size_t>(i - 1)]), t.b.at(i));
    }
    for (int j = 1; j <= n; ++j) {
      Int c = checked_sub(t.a.at(j), t.e.at(sigma[static_cast<std::size_t>(j - 1)]));
      if (c < 0) return;
      demand[static_cast<std::size_t>(j - 1)] = c;
    }
    auto gamma = staircase_fill(t.e, tau, sigma, supply, demand);
    if (!gamma) return;
    BalancingDatum d;
    d.tau = tau;
    d.sigma = sigma;
    d.gamma = *gamma;
    found = d;
  }
};

}  // namespace

std::optional<BalancingDatum> search_datum(const Triple& t) {
  if (t.m() + t.n() != t.e.rank()) {
    throw ContractError("datum search requires rank(b) + rank(a) = rank(e)");
  }
  if (checked_add(t.b.degree(), t.a.degree()) != t.e.degree()) return std::nullopt;
  GuardCounter guard("balancing datum");
  SlotSearch s{t, guard, {}, {}, false, {}, std::nullopt};
  s.run();
  return s.found;
}

bool is_minimal(const Triple& t, const BalancingDatum& d) {
  if (!verify_datum(t, d)) {
    throw ContractError("datum does not certify the triple");
  }
  GuardCounter guard("datum minimality");
  SlotSearch s{t, guard, d.tau, d.tau, true, {}, std::nullopt};
  s.run();
  return !s.found.has_value();
}

}  // namespace quotkit
