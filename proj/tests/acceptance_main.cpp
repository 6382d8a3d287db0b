// Acceptance gate: eight end-to-end criteria covering the whole library,
// printed as one PASS/FAIL line each.  Exits nonzero when any criterion
// fails.  Sweeps are exhaustive over the documented windows.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "quotkit/balancing.hpp"
#include "quotkit/betti.hpp"
#include "quotkit/errors.hpp"
#include "quotkit/matrixgen.hpp"
#include "quotkit/oracle.hpp"
#include "quotkit/quot_geometry.hpp"
#include "quotkit/realizability.hpp"
#include "quotkit/splitting_type.hpp"
#include "quotkit/stable_pairs.hpp"

using namespace quotkit;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

// First-failure collector: cheap in the hot loops (no allocation unless a
// check actually fails).
struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const char* what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

// All weakly increasing sequences of `size` entries from [lo, hi].
void each_type(Int lo, Int hi, int size,
               const std::function<void(const std::vector<Int>&)>& fn) {
  std::vector<Int> cur;
  std::function<void(Int)> rec = [&](Int from) {
    if (static_cast<int>(cur.size()) == size) {
      fn(cur);
      return;
    }
    for (Int v = from; v <= hi; ++v) {
      cur.push_back(v);
      rec(v);
      cur.pop_back();
    }
  };
  rec(lo);
}

// Weakly increasing sequences with per-slot upper bounds cap[i], entries
// >= lo, and a fixed total.  cap must be weakly increasing.
void each_bounded_sum(Int lo, const std::vector<Int>& cap, Int total,
                      const std::function<void(const std::vector<Int>&)>& fn) {
  const int size = static_cast<int>(cap.size());
  std::vector<Int> suffix_cap(static_cast<std::size_t>(size) + 1, 0);
  for (int i = size - 1; i >= 0; --i) {
    suffix_cap[static_cast<std::size_t>(i)] =
        suffix_cap[static_cast<std::size_t>(i) + 1] +
        cap[static_cast<std::size_t>(i)];
  }
  std::vector<Int> cur;
  std::function<void(int, Int, Int)> rec = [&](int idx, Int prev, Int rem) {
    if (idx == size) {
      if (rem == 0) fn(cur);
      return;
    }
    int left = size - idx - 1;
    for (Int v = std::max(prev, lo); v <= cap[static_cast<std::size_t>(idx)];
         ++v) {
      Int rest = rem - v;
      if (rest < v * left) break;  // future entries are all >= v
      if (rest > suffix_cap[static_cast<std::size_t>(idx) + 1]) continue;
      cur.push_back(v);
      rec(idx + 1, v, rest);
      cur.pop_back();
    }
  };
  rec(0, lo, total);
}

// --- the worked six-pair family -------------------------------------------

const SplittingType kGoldenE{0, 4, 5, 6, 8, 12};

struct GoldenPair {
  SplittingType b, a;
  Int D, T;
  bool strong;
};

std::vector<GoldenPair> golden_pairs() {
  return {
      {{4, 4, 7}, {0, 7, 13}, 35, 36, false},
      {{5, 5, 5}, {0, 4, 16}, 36, 36, true},
      {{4, 5, 6}, {0, 8, 12}, 36, 36, true},
      {{0, 3, 12}, {6, 6, 8}, 37, 37, true},
      {{1, 2, 12}, {0, 10, 10}, 38, 38, true},
      {{-5, 8, 12}, {6, 7, 7}, 38, 38, true},
  };
}

// --- state shared between criteria ----------------------------------------

std::vector<Triple> g_realizable;  // criterion 2 -> criterion 3
struct SweepInstance {
  SplittingType e;
  int n;
  Int d;
};
std::vector<SweepInstance> g_instances;  // criterion 5 -> criterion 6

// --- the two public-facing forms of the realizability criterion ------------

// Threshold form: beyond the h-profile threshold, the A and B tables are
// nonnegative.
bool threshold_form(const Triple& t) {
  QuantityTables q(t);
  std::vector<int> h = h_profile(t);
  for (int mu = 1; mu <= t.m(); ++mu) {
    for (int nu = h[static_cast<std::size_t>(mu - 1)]; nu <= t.n(); ++nu) {
      if (q.A(mu, nu) < 0 || q.B(mu, nu) < 0) return false;
    }
  }
  return true;
}

// S-requirement form: wherever a row of A (resp. a column of B) last goes
// negative, the adjacent S cell must be nonnegative; plus the two
// one-sided surjection/injection degree patterns.
bool s_requirement_form(const Triple& t) {
  QuantityTables q(t);
  const int m = t.m(), n = t.n();
  for (int mu = 1; mu <= m; ++mu) {
    for (int nu = n; nu >= 1; --nu) {
      if (q.A(mu, nu) < 0) {
        if (q.S(mu, nu + 1) < 0) return false;
        break;
      }
    }
  }
  for (int nu = 1; nu <= n; ++nu) {
    for (int mu = 1; mu <= m; ++mu) {
      if (q.B(mu, nu) < 0) {
        if (q.S(mu, nu + 1) < 0) return false;
        break;
      }
    }
  }
  return surjection_exists(t.e, t.a) && injection_lf_exists(t.b, t.e);
}

// --- criteria ---------------------------------------------------------------

bool criterion1(std::string& note) {
  auto start = Clock::now();
  auto recs = enumerate_stable_pairs(kGoldenE, 3, 20);
  auto census = component_census(kGoldenE, 3, 20);
  double secs = seconds_since(start);

  Check c;
  auto want = golden_pairs();
  c.require(recs.size() == want.size(), "expected exactly 6 stable pairs");
  for (std::size_t i = 0; i < recs.size() && i < want.size(); ++i) {
    c.require(recs[i].b == want[i].b && recs[i].a == want[i].a &&
                  recs[i].D == want[i].D && recs[i].T == want[i].T &&
                  recs[i].strongly_stable == want[i].strong,
              "stable pair " + std::to_string(i + 1) + " is " +
                  recs[i].b.str() + " | " + recs[i].a.str());
  }
  c.require(census.size() == 5, "expected exactly 5 components");
  for (std::size_t i = 0; i < census.size() && i + 1 < want.size(); ++i) {
    c.require(census[i].b == want[i + 1].b && census[i].a == want[i + 1].a &&
                  census[i].D == want[i + 1].D && census[i].strongly_stable,
              "census row " + std::to_string(i + 1) + " mismatch");
  }
  c.require(secs < 1.0, "runtime " + fmt_secs(secs) + " exceeds 1 s");
  note = c.ok ? "6 stable pairs and the 5-component census exact in " +
                    fmt_secs(secs)
              : c.detail;
  return c.ok;
}

bool criterion2(std::string& note) {
  auto start = Clock::now();
  const Int lo = -5, hi = 9;  // window around the e-entry range [0,4]
  long long eligible = 0, disagreements = 0;
  std::string example;

  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 3; ++n) {
      each_type(0, 4, m + n, [&](const std::vector<Int>& ev) {
        SplittingType e(ev);
        std::vector<Int> bcap(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) {
          bcap[static_cast<std::size_t>(i)] = ev[static_cast<std::size_t>(n + i)];
        }
        each_type(lo, hi, n, [&](const std::vector<Int>& av) {
          for (int i = 0; i < n; ++i) {         // entrywise lower bounds on a:
            if (av[static_cast<std::size_t>(i)] <
                ev[static_cast<std::size_t>(i)]) {
              return;
            }
          }
          SplittingType a(av);
          Int bsum = e.degree() - a.degree();
          // Entrywise caps b_i <= e_{n+i} make every emitted b weakly
          // eligible by construction.
          each_bounded_sum(lo, bcap, bsum, [&](const std::vector<Int>& bv) {
            Triple t{SplittingType(bv), e, a};
            ++eligible;
            if (!weakly_eligible(t)) {
              ++disagreements;
              if (example.empty()) example = t.str() + " (not weakly eligible)";
              return;
            }
            bool form_s = s_requirement_form(t);
            bool form_h = threshold_form(t);
            bool lib = realizable_bool(t);  // cross-checks both internally
            bool datum = search_datum(t).has_value();
            if (form_s != form_h || form_h != lib || lib != datum) {
              ++disagreements;
              if (example.empty()) example = t.str();
            } else if (lib) {
              g_realizable.push_back(t);
            }
          });
        });
      });
    }
  }
  double secs = seconds_since(start);

  Check c;
  c.require(eligible > 10000, "sweep unexpectedly small");
  c.require(disagreements == 0,
            "criteria disagree on " + std::to_string(disagreements) +
                " triples, first " + example);
  c.require(secs < 300.0, "runtime " + fmt_secs(secs) + " exceeds 5 min");
  note = c.ok ? "S-form, threshold form, and datum search agree on " +
                    std::to_string(eligible) + " weakly eligible triples (" +
                    std::to_string(g_realizable.size()) + " realizable) in " +
                    fmt_secs(secs)
              : c.detail;
  return c.ok;
}

bool criterion3(std::string& note) {
  auto start = Clock::now();
  Check c;
  c.require(!g_realizable.empty(), "criterion 2 produced no realizable triples");
  long long certified = 0;
  for (const Triple& t : g_realizable) {
    SESCertificate cert = certify_ses(t);
    if (!(cert.composition_zero && cert.G_surjective && cert.C_injective_lf &&
          cert.degrees_ok && cert.all_checks())) {
      c.require(false, "certificate failed for " + t.str());
      break;
    }
    ++certified;
  }
  double secs = seconds_since(start);
  note = c.ok ? "full matrix certificates for all " +
                    std::to_string(certified) + " realizable triples in " +
                    fmt_secs(secs)
              : c.detail;
  return c.ok;
}

bool criterion4(std::string& note) {
  Triple t{{0, 3, 9}, {2, 7, 8, 11, 20}, {13, 23}};
  BalancingDatum paper;
  paper.sigma = {3, 5};
  paper.tau = {1, 2, 4};
  paper.gamma = {{2, 0}, {3, 1}, {0, 2}};

  Check c;
  c.require(verify_datum(t, paper), "the published datum fails verification");
  BalancingDatum built = construct_datum(t);
  c.require(verify_datum(t, built), "construct_datum output fails verification");
  note = c.ok ? "published balancing datum verified; constructed datum verified"
              : c.detail;
  return c.ok;
}

bool criterion5(std::string& note) {
  auto start = Clock::now();
  Check c;

  IrreducibilityReport named = irreducible_report({1, 7, 8, 9, 20}, 3, 20);
  c.require(named.irreducible, "named case is not irreducible");
  c.require(named.mb_kernel == SplittingType{5, 20} &&
                named.mb_quotient == SplittingType{1, 9, 10},
            "named case has the wrong most-balanced pair");
  auto named_census = component_census({1, 7, 8, 9, 20}, 3, 20);
  c.require(named_census.size() == 1 &&
                named_census[0].b == SplittingType{5, 20} &&
                named_census[0].a == SplittingType{1, 9, 10},
            "named case census is not the unique pair ((5,20),(1,9,10))");
  c.require(!irreducible(kGoldenE, 3, 20), "golden case should be reducible");

  // Boundary regression: with repeated extreme entries the generic slack
  // bound does not suffice.  Here both one-unit slacks are exactly used up,
  // yet the most balanced pair ((0,1),(1,2)) is not realizable and the locus
  // has two components.
  IrreducibilityReport tied = irreducible_report({0, 0, 2, 2}, 2, 3);
  c.require(!tied.irreducible && !tied.sufficient_bound &&
                component_census({0, 0, 2, 2}, 2, 3).size() == 2,
            "repeated-extreme boundary case must be reducible");

  long long instances = 0, corollary_hits = 0;
  for (int rank = 2; rank <= 5 && c.ok; ++rank) {
    each_type(0, 3, rank, [&](const std::vector<Int>& ev) {
      SplittingType e(ev);
      for (int n = 1; n < rank; ++n) {
        int m = rank - n;
        for (Int d = -2; d <= 20; ++d) {
          IrreducibilityReport rep;
          try {
            rep = irreducible_report(e, n, d);
          } catch (const ContractError&) {
            continue;  // empty locus for this (n, d)
          }
          ++instances;
          bool by_census = component_census(e, n, d).size() == 1;
          bool by_pair =
              realizable_bool(Triple{rep.mb_kernel, e, rep.mb_quotient});
          if (rep.irreducible != by_census || by_census != by_pair) {
            c.require(false, "three-way disagreement at e=(" + e.str() +
                                 "), n=" + std::to_string(n) +
                                 ", d=" + std::to_string(d));
            return;
          }
          Int dprime = e.degree() - d;
          // Degree thresholds for the fast sufficient condition; both sides
          // tighten by one unit per row when the extreme middle entry
          // repeats (the slack of the generic form is not absorbable then).
          bool top_rep = e.at(rank - 1) == e.at(rank);
          bool bottom_rep = e.at(2) == e.at(1);
          bool bound =
              (top_rep ? d >= static_cast<Int>(n) * e.at(rank)
                       : d >= static_cast<Int>(n) * (e.at(rank) - 1) + 1) &&
              (bottom_rep ? dprime <= static_cast<Int>(m) * e.at(1)
                          : dprime <= static_cast<Int>(m) * (e.at(1) + 1) - 1);
          if (rep.sufficient_bound != bound) {
            c.require(false, "sufficient-bound flag mismatch at e=(" + e.str() +
                                 "), n=" + std::to_string(n) +
                                 ", d=" + std::to_string(d));
            return;
          }
          if (bound) {
            ++corollary_hits;
            if (!rep.irreducible) {
              c.require(false, "corollary bound violated at e=(" + e.str() +
                                   "), n=" + std::to_string(n) +
                                   ", d=" + std::to_string(d));
              return;
            }
          }
          g_instances.push_back({e, n, d});
        }
      }
    });
  }
  double secs = seconds_since(start);
  c.require(instances > 500, "sweep unexpectedly small");
  c.require(corollary_hits > 50, "corollary region unexpectedly small");
  c.require(secs < 300.0, "runtime " + fmt_secs(secs) + " exceeds 5 min");
  note = c.ok ? "named cases exact; three-way agreement and the sufficient "
                "bound hold on " +
                    std::to_string(instances) + " instances (" +
                    std::to_string(corollary_hits) + " in the bound region) in " +
                    fmt_secs(secs)
              : c.detail;
  return c.ok;
}

bool criterion6(std::string& note) {
  auto start = Clock::now();
  Check c;
  c.require(!g_instances.empty(), "criterion 5 produced no sweep instances");

  long long verified = 0;
  for (const SweepInstance& inst : g_instances) {
    ConnectivityCertificate cert =
        connectedness_certificate(inst.e, inst.n, inst.d);
    std::string why;
    if (!cert.connected || !verify_certificate(cert, &why)) {
      if (!cert.connected) why = cert.failure;
      c.require(false, "certificate failed at e=(" + inst.e.str() + "), n=" +
                           std::to_string(inst.n) + ", d=" +
                           std::to_string(inst.d) + ": " + why);
      break;
    }
    ++verified;
  }

  ConnectivityCertificate big =
      connectedness_certificate({0, 4, 10, 13, 15, 20}, 3, 40);
  std::string why;
  c.require(big.connected && verify_certificate(big, &why),
            "worked six-entry certificate failed: " + why);
  PairBA terminal{SplittingType{-13, 15, 20}, SplittingType{13, 13, 14}};
  c.require(big.root == terminal,
            "root is " + big.root.str() + ", expected the balanced terminal");
  PairBA milestone{SplittingType{-4, 6, 20}, SplittingType{8, 16, 16}};
  bool milestone_seen = false;
  bool all_end_at_root = !big.chains.empty();
  for (const ConnChain& ch : big.chains) {
    if (std::find(ch.states.begin(), ch.states.end(), milestone) !=
        ch.states.end()) {
      milestone_seen = true;
    }
    if (ch.states.empty() || !(ch.states.back() == big.root)) {
      all_end_at_root = false;
    }
  }
  c.require(milestone_seen,
            "chains never pass through b=(-4,6,20), a=(8,16,16)");
  c.require(all_end_at_root, "some chain does not end at the terminal pair");

  double secs = seconds_since(start);
  note = c.ok ? "verified connected certificates on " +
                    std::to_string(verified) +
                    " sweep instances; worked instance hits the published "
                    "milestone and terminal pair (" +
                    fmt_secs(secs) + ")"
              : c.detail;
  return c.ok;
}

bool criterion7(std::string& note) {
  auto start = Clock::now();
  Check c;
  OracleConfig cfg;  // prime 32003, 20 trials, fixed seed 0
  for (const GoldenPair& g : golden_pairs()) {
    if (generic_kernel_split_numeric(kGoldenE, g.a, cfg) != g.b) {
      c.require(false, "kernel oracle disagrees for a=(" + g.a.str() + ")");
      break;
    }
    if (generic_cokernel_split_numeric(g.b, kGoldenE, cfg) != g.a) {
      c.require(false, "cokernel oracle disagrees for b=(" + g.b.str() + ")");
      break;
    }
  }
  double secs = seconds_since(start);
  c.require(secs < 30.0, "runtime " + fmt_secs(secs) + " exceeds 30 s");
  note = c.ok ? "prime-field oracle reproduces all six kernel and cokernel "
                "types in " +
                    fmt_secs(secs)
              : c.detail;
  return c.ok;
}

bool criterion8(std::string& note) {
  auto start = Clock::now();
  Check c;

  BettiDiagram koszul;
  koszul.add(0, 0, 1);
  koszul.add(1, 1, 2);
  koszul.add(2, 2, 1);
  Decomposition dk = decompose(koszul);
  c.require(dk.in_cone && dk.parts.size() == 1 && dk.parts[0].first == Rat(1) &&
                dk.parts[0].second == pure_from_degrees(0, 1, 2),
            "Koszul diagram is not one pure diagram");
  c.require(lattice_point_realizable(koszul), "Koszul diagram not realizable");

  long long diagrams = 0, inside = 0;
  for (int t1 = 2; t1 <= 6 && c.ok; ++t1) {
    each_type(0, 4, t1, [&](const std::vector<Int>& col1) {
      Int w1 = 0;
      for (Int v : col1) w1 += v;
      for (int t0 = 1; t0 < t1; ++t0) {
        each_type(0, 4, t0, [&](const std::vector<Int>& col0) {
          Int w0 = 0;
          for (Int v : col0) w0 += v;
          int t2 = t1 - t0;
          Int w2 = w1 - w0;
          if (w2 < 0 || w2 > 4 * t2) return;
          std::vector<Int> caps(static_cast<std::size_t>(t2), 4);
          each_bounded_sum(0, caps, w2, [&](const std::vector<Int>& col2) {
            BettiDiagram beta;
            for (Int v : col0) beta.add(0, v, 1);
            for (Int v : col1) beta.add(1, v, 1);
            for (Int v : col2) beta.add(2, v, 1);
            ++diagrams;
            bool in = in_cone(beta);
            for (Int k : {Int{2}, Int{3}}) {
              if (in_cone(beta.scaled(Rat(k))) != in) {
                c.require(false, "cone membership is not scale invariant");
                return;
              }
            }
            if (in) {
              ++inside;
              if (!lattice_point_realizable(beta)) {
                c.require(false, "in-cone integral diagram not realizable");
                return;
              }
              for (Int k : {Int{2}, Int{3}}) {
                if (!lattice_point_realizable(beta.scaled(Rat(k)))) {
                  c.require(false, "scaled lattice point not realizable");
                  return;
                }
              }
            }
          });
        });
      }
    });
  }
  double secs = seconds_since(start);
  c.require(diagrams > 10000, "sweep unexpectedly small");
  c.require(inside > 100, "cone slice unexpectedly small");
  c.require(secs < 300.0, "runtime " + fmt_secs(secs) + " exceeds 5 min");
  note = c.ok ? "Koszul exact; in-cone implies realizable and scaling holds "
                "on " +
                    std::to_string(diagrams) + " diagrams (" +
                    std::to_string(inside) + " in the cone) in " +
                    fmt_secs(secs)
              : c.detail;
  return c.ok;
}

struct Criterion {
  int number;
  const char* title;
  bool (*fn)(std::string&);
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "golden stable-pair enumeration and component census", criterion1},
      {2, "realizability criteria equivalence sweep", criterion2},
      {3, "matrix certificates for every realizable sweep triple", criterion3},
      {4, "published balancing datum verified and reconstructed", criterion4},
      {5, "irreducibility: named cases, three-way sweep, sufficient bound",
       criterion5},
      {6, "connectedness certificates on the sweep and the worked example",
       criterion6},
      {7, "prime-field oracle concordance on the six golden pairs", criterion7},
      {8, "Betti diagrams: cone decomposition, realizability, scaling",
       criterion8},
  };

  int failures = 0;
  for (const Criterion& cr : criteria) {
    std::string note;
    bool ok = false;
    try {
      ok = cr.fn(note);
    } catch (const std::exception& ex) {
      ok = false;
      note = std::string("exception: ") + ex.what();
    }
    if (!ok) ++failures;
    std::printf("%s criterion %d — %s: %s\n", ok ? "PASS" : "FAIL", cr.number,
                cr.title, note.c_str());
    std::fflush(stdout);
  }
  if (failures > 0) {
    std::printf("%d of 8 criteria failed\n", failures);
    return 1;
  }
  std::printf("all 8 criteria passed\n");
  return 0;
}
