// Numeric kernel oracle over a prime field.  Independent of the
// combinatorial formulas: only linear algebra on graded pieces.
#include "quotkit/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

#include "quotkit/errors.hpp"
#include "quotkit/realizability.hpp"

namespace quotkit {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

bool is_prime(Int p) {
  if (p < 2) return false;
  for (Int q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

// Dense matrix over F_p with int64 entries in [0, p).
struct ModMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Int> v;

  ModMatrix(int r, int c) : rows(r), cols(c), v(static_cast<std::size_t>(r) * c, 0) {}
  Int& at(int r, int c) { return v[static_cast<std::size_t>(r) * cols + c]; }
};

Int mod_pow(Int base, Int exp, Int p) {
  Int result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1) result = (result * base) % p;
    base = (base * base) % p;
    exp >>= 1;
  }
  return result;
}

int rank_mod_p(ModMatrix& m, Int p) {
  int rank = 0;
  for (int c = 0; c < m.cols && rank < m.rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < m.rows; ++r) {
      if (m.at(r, c) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      for (int j = c; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
    }
    Int inv = mod_pow(m.at(rank, c), p - 2, p);
    for (int j = c; j < m.cols; ++j) m.at(rank, j) = (m.at(rank, j) * inv) % p;
    for (int r = rank + 1; r < m.rows; ++r) {
      Int factor = m.at(r, c);
      if (factor == 0) continue;
      Int neg = p - factor;
      for (int j = c; j < m.cols; ++j) {
        m.at(r, j) = (m.at(r, j) + neg * m.at(rank, j)) % p;
      }
    }
    ++rank;
  }
  return rank;
}

// One trial: sample the matrix, then measure h(t) = dim ker on the degree-t
// graded piece for ascending t until the finite differences stabilize at m.
SplittingType kernel_trial(const SplittingType& e, const SplittingType& a,
                           const OracleConfig& cfg, std::uint64_t state) {
  const int re = e.rank();
  const int ra = a.rank();
  const int m = re - ra;
  const Int dprime = e.degree() - a.degree();
  const Int p = cfg.prime;
  const Int e_max = e.entries().back();

  // coeff[i][j] holds the a_i - e_j + 1 coefficients of entry (i, j); empty
  // when the degree is negative (forced zero entry).
  std::vector<std::vector<std::vector<Int>>> coeff(static_cast<std::size_t>(ra));
  for (int i = 0; i < ra; ++i) {
    coeff[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(re));
    for (int j = 0; j < re; ++j) {
      Int deg = a.at(i + 1) - e.at(j + 1);
      if (deg < 0) continue;
      auto& cs = coeff[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      cs.resize(static_cast<std::size_t>(deg) + 1);
      for (Int k = 0; k <= deg; ++k) {
        cs[static_cast<std::size_t>(k)] = static_cast<Int>(splitmix64(state) % static_cast<std::uint64_t>(p));
      }
    }
  }

  auto h_of = [&](Int t) -> Int {
    std::vector<Int> col_off(static_cast<std::size_t>(re) + 1, 0);
    for (int j = 0; j < re; ++j) {
      col_off[static_cast<std::size_t>(j) + 1] =
          col_off[static_cast<std::size_t>(j)] + std::max<Int>(0, e.at(j + 1) + t + 1);
    }
    std::vector<Int> row_off(static_cast<std::size_t>(ra) + 1, 0);
    for (int i = 0; i < ra; ++i) {
      row_off[static_cast<std::size_t>(i) + 1] =
          row_off[static_cast<std::size_t>(i)] + std::max<Int>(0, a.at(i + 1) + t + 1);
    }
    const Int cols = col_off[static_cast<std::size_t>(re)];
    const Int rows = row_off[static_cast<std::size_t>(ra)];
    if (cols == 0) return 0;
    ModMatrix mat(static_cast<int>(rows), static_cast<int>(cols));
    for (int i = 0; i < ra; ++i) {
      if (a.at(i + 1) + t < 0) continue;
      for (int j = 0; j < re; ++j) {
        const auto& cs = coeff[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (cs.empty() || e.at(j + 1) + t < 0) continue;
        // Multiplying x^s y^{e_j + t - s} by the entry sends source basis
        // index s to target indices u = s..s+deg with coefficient cs[u - s].
        for (Int s = 0; s <= e.at(j + 1) + t; ++s) {
          for (Int k = 0; k < static_cast<Int>(cs.size()); ++k) {
            Int u = s + k;
            mat.at(static_cast<int>(row_off[static_cast<std::size_t>(i)] + u),
                   static_cast<int>(col_off[static_cast<std::size_t>(j)] + s)) =
                cs[static_cast<std::size_t>(k)];
          }
        }
      }
    }
    return cols - rank_mod_p(mat, p);
  };

  // b_i <= e_max entrywise and sum(b) = d', so min(b) >= d' - (m-1) e_max.
  const Int lo_b = dprime - static_cast<Int>(m - 1) * e_max;
  const Int t_start = -e_max - 2 - cfg.twist_margin;
  const Int t_stop = -lo_b + 1 + cfg.twist_margin;

  std::vector<Int> delta;  // delta[idx] = h(t) - h(t-1) at t = t_start+1+idx
  Int h_prev = h_of(t_start);
  if (h_prev != 0) {
    throw InternalError("kernel oracle: nonzero section count below the twist window");
  }
  Int first_t = t_start + 1;
  Int stabilized_at = t_stop + 1;
  for (Int t = first_t; t <= t_stop; ++t) {
    Int h = h_of(t);
    delta.push_back(h - h_prev);
    h_prev = h;
    if (delta.back() == m && stabilized_at > t_stop) stabilized_at = t;
    if (stabilized_at <= t_stop && t >= stabilized_at + cfg.twist_margin) break;
  }

  // delta(t) counts entries b_i >= -t: check monotonicity and the cap.
  for (std::size_t idx = 0; idx < delta.size(); ++idx) {
    if (delta[idx] < 0 || delta[idx] > m) {
      throw InternalError("kernel oracle: section-count differences out of range");
    }
    if (idx > 0 && delta[idx] < delta[idx - 1]) {
      throw InternalError("kernel oracle: section-count differences not monotone");
    }
  }
  if (delta.empty() || delta.back() != m) {
    throw InternalError("kernel oracle: twist window did not capture every kernel entry");
  }

  std::vector<Int> b_entries;
  for (std::size_t idx = 0; idx < delta.size(); ++idx) {
    Int prev = (idx == 0) ? 0 : delta[idx - 1];
    Int jump = delta[idx] - prev;
    Int t = first_t + static_cast<Int>(idx);
    for (Int k = 0; k < jump; ++k) b_entries.push_back(-t);
  }
  if (static_cast<int>(b_entries.size()) != m) {
    throw InternalError("kernel oracle: recovered the wrong number of kernel entries");
  }
  SplittingType b(b_entries);
  if (b.degree() != dprime) {
    throw InternalError("kernel oracle: recovered kernel entries with the wrong degree sum");
  }
  return b;
}

}  // namespace

SplittingType generic_kernel_split_numeric(const SplittingType& e,
                                           const SplittingType& a,
                                           const OracleConfig& cfg) {
  if (!surjection_exists(e, a)) {
    throw ContractError("kernel oracle requires a surjective degree pattern");
  }
  if (cfg.trials < 1) throw ContractError("kernel oracle requires trials >= 1");
  Int max_deg = 1;
  for (int i = 1; i <= a.rank(); ++i) {
    for (int j = 1; j <= e.rank(); ++j) {
      max_deg = std::max(max_deg, a.at(i) - e.at(j));
    }
  }
  if (cfg.prime <= 2 * max_deg) {
    throw ContractError("kernel oracle prime is too small for the entry degrees");
  }
  if (cfg.prime >= (Int{1} << 31) || !is_prime(cfg.prime)) {
    throw ContractError("kernel oracle requires a prime below 2^31");
  }

  std::vector<SplittingType> results;
  results.reserve(static_cast<std::size_t>(cfg.trials));
  for (int trial = 0; trial < cfg.trials; ++trial) {
    std::uint64_t state =
        cfg.seed + static_cast<std::uint64_t>(trial + 1) * 0x9E3779B97F4A7C15ULL;
    results.push_back(kernel_trial(e, a, cfg, state));
  }
  SplittingType best = results.front();
  for (const auto& r : results) {
    if (more_balanced_geq(r, best)) best = r;
  }
  for (const auto& r : results) {
    if (!more_balanced_geq(best, r)) {
      throw InternalError("kernel oracle trials have no dominance maximum");
    }
  }
  return best;
}

SplittingType generic_cokernel_split_numeric(const SplittingType& b,
                                             const SplittingType& e,
                                             const OracleConfig& cfg) {
  if (!injection_lf_exists(b, e)) {
    throw ContractError("cokernel oracle requires a locally free injection pattern");
  }
  return reverse_negate(
      generic_kernel_split_numeric(reverse_negate(e), reverse_negate(b), cfg));
}

}  // namespace quotkit
