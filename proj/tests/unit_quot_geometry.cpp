#include <doctest.h>

#include <algorithm>
#include <vector>

#include "quotkit/errors.hpp"
#include "quotkit/quot_geometry.hpp"
#include "quotkit/splitting_type.hpp"

using namespace quotkit;

namespace {
const SplittingType kE{0, 4, 5, 6, 8, 12};
const SplittingType kE5{0, 4, 10, 13, 15, 20};  // six-entry connectedness run
}  // namespace

TEST_CASE("most balanced quotient and kernel") {
  CHECK(most_balanced_quotient({1, 7, 8, 9, 20}, 3, 20) ==
        SplittingType{1, 9, 10});
  CHECK(most_balanced_kernel({1, 7, 8, 9, 20}, 2, 25) == SplittingType{5, 20});
  CHECK(most_balanced_quotient({0, 0}, 1, 0) == SplittingType{0});
  CHECK(most_balanced_quotient(kE, 3, 20) == SplittingType{6, 7, 7});
  CHECK(most_balanced_kernel(kE, 3, 15) == SplittingType{5, 5, 5});

  SUBCASE("no locally free quotient exists") {
    // Rank-1 degree-3 quotients of O(0)+O(5) would need a = (3), but a
    // surjection forces either a >= 5 or the split value 0.
    CHECK_THROWS_AS(most_balanced_quotient({0, 5}, 1, 3), ContractError);
  }

  SUBCASE("the result is a dominance maximum over all quotients") {
    std::vector<SplittingType> qs = exhaustive_quotients(
        generic_kernel(kE, most_balanced_quotient(kE, 3, 20)), kE);
    SplittingType mbq = most_balanced_quotient(kE, 3, 20);
    for (const auto& q : qs) CHECK(more_balanced_geq(mbq, q));
  }
}

TEST_CASE("irreducibility") {
  IrreducibilityReport yes = irreducible_report({1, 7, 8, 9, 20}, 3, 20);
  CHECK(yes.irreducible);
  CHECK(yes.mb_quotient == SplittingType{1, 9, 10});
  CHECK(yes.mb_kernel == SplittingType{5, 20});

  IrreducibilityReport no = irreducible_report(kE, 3, 20);
  CHECK_FALSE(no.irreducible);
  CHECK(no.mb_quotient == SplittingType{6, 7, 7});
  CHECK(no.mb_kernel == SplittingType{5, 5, 5});

  IrreducibilityReport tiny = irreducible_report({0, 1}, 1, 1);
  CHECK(tiny.irreducible);
  CHECK(tiny.sufficient_bound);  // d >= 1*(1-1)+1 and d' = 0 <= 1*(0+1)-1

  CHECK(irreducible({1, 7, 8, 9, 20}, 3, 20));
  CHECK_FALSE(irreducible(kE, 3, 20));
}

TEST_CASE("iterative balancing") {
  SUBCASE("reaches the fixed point from the worked chain") {
    IBTrace tr = iterative_balancing(kE5, {-8, 10, 20}, {8, 13, 19});
    CHECK(tr.fixed_point() ==
          PairBA{SplittingType{-4, 6, 20}, SplittingType{8, 16, 16}});
    CHECK(tr.states.front() ==
          PairBA{SplittingType{-8, 10, 20}, SplittingType{8, 13, 19}});
    // Quotient side ascends in dominance along the trace.
    for (std::size_t i = 1; i < tr.states.size(); ++i) {
      if (tr.states[i].a != tr.states[i - 1].a) {
        CHECK(more_balanced_geq(tr.states[i].a, tr.states[i - 1].a));
      }
    }
  }
  SUBCASE("stable pairs are fixed points") {
    IBTrace tr = iterative_balancing(kE, {5, 5, 5}, {0, 4, 16});
    CHECK(tr.states.size() == 1);
    CHECK(tr.fixed_point() ==
          PairBA{SplittingType{5, 5, 5}, SplittingType{0, 4, 16}});
    IBTrace euler = iterative_balancing({0, 0}, {-1}, {1});
    CHECK(euler.states.size() == 1);
  }
  SUBCASE("non-realizable pairs are a contract error") {
    CHECK_THROWS_AS(iterative_balancing(kE, {5, 5, 5}, {6, 7, 7}),
                    ContractError);
  }
}

TEST_CASE("connectedness certificates") {
  SUBCASE("golden example over five components") {
    ConnectivityCertificate cert = connectedness_certificate(kE, 3, 20);
    CHECK(cert.connected);
    CHECK(cert.failure.empty());
    CHECK(cert.nodes.size() == 5);
    CHECK(cert.root ==
          PairBA{SplittingType{-5, 8, 12}, SplittingType{6, 7, 7}});
    std::string why;
    CHECK(verify_certificate(cert, &why));
    CHECK(why.empty());
  }

  SUBCASE("worked six-entry example hits the published milestones") {
    ConnectivityCertificate cert = connectedness_certificate(kE5, 3, 40);
    REQUIRE(cert.connected);
    CHECK(cert.root ==
          PairBA{SplittingType{-13, 15, 20}, SplittingType{13, 13, 14}});
    PairBA milestone{SplittingType{-4, 6, 20}, SplittingType{8, 16, 16}};
    bool seen = false;
    for (const auto& ch : cert.chains) {
      if (std::find(ch.states.begin(), ch.states.end(), milestone) !=
          ch.states.end()) {
        seen = true;
      }
      REQUIRE_FALSE(ch.states.empty());
      CHECK(ch.states.back() == cert.root);
    }
    CHECK(seen);
    CHECK(verify_certificate(cert));
  }

  SUBCASE("tied middle entries walk through the root bridge") {
    // The block-merge move aims at the non-realizable ((0,0,2),(1,1)) here;
    // the walk must fall through to the root bridge instead of giving up.
    ConnectivityCertificate cert = connectedness_certificate({0, 0, 0, 2, 2}, 2, 2);
    REQUIRE(cert.connected);
    CHECK(cert.nodes.size() == 2);
    CHECK(cert.root == PairBA{SplittingType{-2, 2, 2}, SplittingType{1, 1}});
    CHECK(verify_certificate(cert));
  }

  SUBCASE("tied middle entries never stall the walk in place") {
    // At the e_3 = e_4 tie the merge's raise-and-drop cancel, so the merge
    // target equals the current pair; the progress guard must skip it rather
    // than loop until the state guard trips.
    ConnectivityCertificate cert = connectedness_certificate({0, 0, 1, 1, 2}, 3, 3);
    REQUIRE(cert.connected);
    CHECK(cert.nodes.size() == 2);
    CHECK(cert.root == PairBA{SplittingType{-1, 2}, SplittingType{1, 1, 1}});
    CHECK(verify_certificate(cert));
  }

  SUBCASE("single-component input gives a one-node certificate") {
    ConnectivityCertificate cert = connectedness_certificate({0, 1}, 1, 1);
    CHECK(cert.connected);
    REQUIRE(cert.nodes.size() == 1);
    REQUIRE(cert.chains.size() == 1);
    CHECK(cert.chains[0].states.size() == 1);
    CHECK(cert.chains[0].states[0] == cert.root);
  }

  SUBCASE("empty locus is a contract error") {
    CHECK_THROWS_AS(connectedness_certificate({0, 5}, 1, 3), ContractError);
  }

  SUBCASE("verification rejects tampered certificates") {
    ConnectivityCertificate cert = connectedness_certificate(kE, 3, 20);
    REQUIRE(cert.connected);

    ConnectivityCertificate broken = cert;
    broken.chains[0].states.back().a = SplittingType{0, 0, 20};
    std::string why;
    CHECK_FALSE(verify_certificate(broken, &why));
    CHECK_FALSE(why.empty());

    ConnectivityCertificate moved_root = cert;
    moved_root.root = PairBA{SplittingType{5, 5, 5}, SplittingType{0, 4, 16}};
    CHECK_FALSE(verify_certificate(moved_root));
  }
}
