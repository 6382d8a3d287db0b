// Realizability decision: the threshold criterion over the A/B/S/T tables,
// with an independent S-requirement cross-check and witness extraction.
#include "quotkit/realizability.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "internal.hpp"
#include "quotkit/balancing.hpp"

namespace quotkit {

std::string Triple::str() const {
  return "(" + b.str() + " | " + e.str() + " | " + a.str() + ")";
}

QuantityTables::QuantityTables(const Triple& t) : m_(t.m()), n_(t.n()) {
  if (m_ + n_ != t.e.rank()) {
    throw ContractError("quantity tables require rank(b) + rank(a) = rank(e); got " +
                        std::to_string(m_) + " + " + std::to_string(n_) + " != " +
                        std::to_string(t.e.rank()));
  }
  bv_ = t.b.entries();
  ev_ = t.e.entries();
  av_ = t.a.entries();
  auto prefix = [](const std::vector<Int>& v) {
    std::vector<Int> p(v.size() + 1, 0);  // p[i] = sum of first i entries
    for (std::size_t i = 0; i < v.size(); ++i) p[i + 1] = checked_add(p[i], v[i]);
    return p;
  };
  bpre_ = prefix(bv_);
  epre_ = prefix(ev_);
  apre_ = prefix(av_);
}

namespace {
Int suffix_of(const std::vector<Int>& pre, int from) {
  // sum of entries with 1-based index >= from; pre has size rank+1
  int r = static_cast<int>(pre.size()) - 1;
  int lo = std::clamp(from, 1, r + 1);
  return checked_sub(pre[static_cast<std::size_t>(r)], pre[static_cast<std::size_t>(lo - 1)]);
}
Int prefix_of(const std::vector<Int>& pre, int upto) {
  // sum of entries with 1-based index <= upto
  int r = static_cast<int>(pre.size()) - 1;
  int hi = std::clamp(upto, 0, r);
  return pre[static_cast<std::size_t>(hi)];
}
}  // namespace

Int QuantityTables::A(int mu, int nu) const {
  if (mu < 0 || mu > m_ || nu < 1 || nu > n_) {
    throw InternalError("A(" + std::to_string(mu) + "," + std::to_string(nu) + ") out of range");
  }
  return checked_sub(av_[static_cast<std::size_t>(nu - 1)],
                     ev_[static_cast<std::size_t>(mu + nu - 1)]);
}

Int QuantityTables::B(int mu, int nu) const {
  if (mu < 1 || mu > m_ || nu < 1 || nu > n_) {
    throw InternalError("B(" + std::to_string(mu) + "," + std::to_string(nu) + ") out of range");
  }
  return checked_sub(ev_[static_cast<std::size_t>(mu + nu - 2)],
                     bv_[static_cast<std::size_t>(mu - 1)]);
}

Int QuantityTables::S(int mu, int nu) const {
  if (mu < 1 || mu > m_ + 1 || nu < 1 || nu > n_ + 1) {
    throw InternalError("S(" + std::to_string(mu) + "," + std::to_string(nu) + ") out of range");
  }
  Int s = checked_add(suffix_of(apre_, nu), suffix_of(bpre_, mu));
  return checked_sub(s, suffix_of(epre_, mu + nu - 1));
}

Int QuantityTables::T(int mu, int nu) const {
  if (mu < 0 || mu > m_ || nu < 0 || nu > n_) {
    throw InternalError("T(" + std::to_string(mu) + "," + std::to_string(nu) + ") out of range");
  }
  Int s = checked_add(prefix_of(apre_, nu), prefix_of(bpre_, mu));
  return checked_sub(s, prefix_of(epre_, mu + nu));
}

namespace detail {

std::vector<int> h_from_tables(const QuantityTables& q) {
  // h_mu = the largest nu in [1, n+1] with S(mu, nu) >= 0, clamped to 1 when
  // every S(mu, .) is negative; equivalently the least nu such that
  // S(mu, nu') < 0 for all nu' > nu.
  std::vector<int> h(static_cast<std::size_t>(q.m()), 1);
  for (int mu = 1; mu <= q.m(); ++mu) {
    for (int nu = q.n() + 1; nu >= 1; --nu) {
      if (q.S(mu, nu) >= 0) {
        h[static_cast<std::size_t>(mu - 1)] = nu;
        break;
      }
    }
  }
  return h;
}

int n_prime(const Triple& t) {
  int np = 0;
  while (np < t.n() && t.a.at(np + 1) == t.e.at(np + 1)) ++np;
  return np;
}

int m_prime(const Triple& t) {
  int mn = t.e.rank();
  int mp = 0;
  while (mp < t.m() && t.b.at(t.m() - mp) == t.e.at(mn - mp)) ++mp;
  return mp;
}

std::vector<int> h_extended(const Triple& t) {
  QuantityTables q(t);
  std::vector<int> h = h_from_tables(q);
  h.push_back(q.n() + 1);  // h_{m+1} = n+1 always, since S(m+1, n+1) = 0
  return h;
}

}  // namespace detail

std::vector<int> h_profile(const Triple& t) {
  QuantityTables q(t);
  return detail::h_from_tables(q);
}

bool surjection_exists(const SplittingType& e, const SplittingType& a) {
  if (a.rank() >= e.rank()) {
    throw ContractError("surjection test requires rank(a) < rank(e)");
  }
  bool prefix_equal = true;
  for (int i = 1; i <= a.rank(); ++i) {
    prefix_equal = prefix_equal && a.at(i) == e.at(i);
    if (a.at(i) < e.at(i + 1) && !prefix_equal) return false;
  }
  return true;
}

bool injection_lf_exists(const SplittingType& b, const SplittingType& e) {
  if (b.rank() >= e.rank()) {
    throw ContractError("injection test requires rank(b) < rank(e)");
  }
  const int k = b.rank(), r = e.rank();
  // suffix_equal[i]: b_j = e_{r-k+j} for all j in [i, k]
  bool suffix_equal = true;
  std::vector<bool> seq(static_cast<std::size_t>(k + 2), true);
  for (int i = k; i >= 1; --i) {
    suffix_equal = suffix_equal && b.at(i) == e.at(r - k + i);
    seq[static_cast<std::size_t>(i)] = suffix_equal;
  }
  for (int i = 1; i <= k; ++i) {
    if (b.at(i) > e.at(r - k + i - 1) && !seq[static_cast<std::size_t>(i)]) return false;
  }
  return true;
}

bool weakly_eligible(const Triple& t) {
  const int m = t.m(), n = t.n();
  if (m + n != t.e.rank()) return false;
  if (checked_add(t.b.degree(), t.a.degree()) != t.e.degree()) return false;
  for (int i = 1; i <= n; ++i) {
    if (t.a.at(i) < t.e.at(i)) return false;
  }
  for (int i = 1; i <= m; ++i) {
    if (t.b.at(i) > t.e.at(n + i)) return false;
  }
  return true;
}

std::string Failure::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::rank:
      out << "rank(b) + rank(a) != rank(e)";
      break;
    case Kind::degree:
      out << "degree(b) + degree(a) != degree(e)";
      break;
    case Kind::weak_eligibility:
      if (side == 'a') {
        out << "weak eligibility: a_" << index << " < e_" << index;
      } else {
        out << "weak eligibility: b_" << index << " > e_{n+" << index << "}";
      }
      break;
    case Kind::s_condition:
      out << "S(" << mu << "," << nu << ") = " << value << " < 0";
      break;
    case Kind::hong_larson_surjection:
      out << "no surjection onto the quotient type (degree pattern)";
      break;
    case Kind::hong_larson_injection:
      out << "no subbundle inclusion of the kernel type (degree pattern)";
      break;
  }
  return out.str();
}

namespace {

struct Eval {
  bool value = false;
  std::optional<Failure> failure;
};

Eval fail(Failure f) { return Eval{false, f}; }

Eval evaluate(const Triple& t) {
  const int m = t.m(), n = t.n();
  if (m + n != t.e.rank()) {
    return fail(Failure{Failure::Kind::rank});
  }
  if (checked_add(t.b.degree(), t.a.degree()) != t.e.degree()) {
    return fail(Failure{Failure::Kind::degree});
  }
  for (int i = 1; i <= n; ++i) {
    if (t.a.at(i) < t.e.at(i)) {
      Failure f{Failure::Kind::weak_eligibility};
      f.side = 'a';
      f.index = i;
      f.value = checked_sub(t.a.at(i), t.e.at(i));
      return fail(f);
    }
  }
  for (int i = 1; i <= m; ++i) {
    if (t.b.at(i) > t.e.at(n + i)) {
      Failure f{Failure::Kind::weak_eligibility};
      f.side = 'b';
      f.index = i;
      f.value = checked_sub(t.b.at(i), t.e.at(n + i));
      return fail(f);
    }
  }
  if (m == 0 || n == 0) {
    // Degree equality plus the entrywise bounds force b = e (resp. a = e).
    if ((m == 0 && t.a != t.e) || (n == 0 && t.b != t.e)) {
      throw InternalError("degenerate triple passed weak eligibility without equality");
    }
    return Eval{true, std::nullopt};
  }

  QuantityTables q(t);
  std::vector<int> h = detail::h_from_tables(q);

  // Threshold criterion: A and B nonnegative at and beyond the threshold.
  bool cond3 = true;
  for (int mu = 1; mu <= m && cond3; ++mu) {
    for (int nu = h[static_cast<std::size_t>(mu - 1)]; nu <= n; ++nu) {
      if (q.A(mu, nu) < 0 || q.B(mu, nu) < 0) {
        cond3 = false;
        break;
      }
    }
  }

  // Independent S-requirement form: where a row of A (resp. a column of B)
  // last goes negative, the adjacent S value must be nonnegative.
  std::set<std::pair<int, int>> required;
  for (int mu = 1; mu <= m; ++mu) {
    for (int nu = n; nu >= 1; --nu) {
      if (q.A(mu, nu) < 0) {
        required.insert({mu, nu + 1});
        break;
      }
    }
  }
  for (int nu = 1; nu <= n; ++nu) {
    for (int mu = 1; mu <= m; ++mu) {
      if (q.B(mu, nu) < 0) {
        required.insert({mu, nu + 1});
        break;
      }
    }
  }
  std::vector<std::pair<int, int>> violated;
  for (const auto& [mu, nu] : required) {
    if (q.S(mu, nu) < 0) violated.push_back({mu, nu});
  }
  std::sort(violated.begin(), violated.end());

  bool hl_surj = surjection_exists(t.e, t.a);
  bool hl_inj = injection_lf_exists(t.b, t.e);
  bool cond2 = violated.empty() && hl_surj && hl_inj;

  if (cond2 != cond3) {
    throw InternalError("realizability criteria disagree on " + t.str());
  }
  if (cond3) return Eval{true, std::nullopt};

  if (!violated.empty()) {
    Failure f{Failure::Kind::s_condition};
    f.mu = violated.front().first;
    f.nu = violated.front().second;
    f.value = q.S(f.mu, f.nu);
    return fail(f);
  }
  if (!hl_surj) return fail(Failure{Failure::Kind::hong_larson_surjection});
  if (!hl_inj) return fail(Failure{Failure::Kind::hong_larson_injection});
  throw InternalError("criterion failed without witness on " + t.str());
}

}  // namespace

bool realizable_bool(const Triple& t) { return evaluate(t).value; }

std::optional<Failure> realizability_witness(const Triple& t) {
  return evaluate(t).failure;
}

Verdict realizable(const Triple& t) {
  Eval ev = evaluate(t);
  Verdict v;
  v.value = ev.value;
  v.failure = ev.failure;
  if (ev.value) v.datum = construct_datum(t);
  return v;
}

}  // namespace quotkit
