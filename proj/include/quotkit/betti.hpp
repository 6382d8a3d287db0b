// Projective-dimension-2 Betti diagram layer: exact-rational diagrams,
// translation to and from splitting-type triples (generator degree d in
// homological position 0/1/2 corresponds to twist -d in a/e/b), greedy
// decomposition into pure diagrams, cone membership, and realizability of
// integral lattice points.
#pragma once

#include <array>
#include <map>
#include <string>

#include "quotkit/realizability.hpp"
#include "quotkit/splitting_type.hpp"

namespace quotkit {

// Exact rational with overflow-checked int64 arithmetic, always canonical
// (den > 0, reduced).
struct Rat {
  Int num = 0;
  Int den = 1;

  Rat() = default;
  Rat(Int n) : num(n), den(1) {}  // NOLINT(google-explicit-constructor)
  Rat(Int n, Int d);              // reduces; ContractError when d == 0

  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }
  std::string str() const;  // "3" or "3/2"

  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rat& o) const { return !(*this == o); }
  bool operator<(const Rat& o) const;
};

Rat rat_add(const Rat& p, const Rat& q);
Rat rat_sub(const Rat& p, const Rat& q);
Rat rat_mul(const Rat& p, const Rat& q);
Rat rat_div(const Rat& p, const Rat& q);

// Betti diagram of homological width 3: column i maps degree -> positive
// multiplicity.  Zero multiplicities are never stored.
struct BettiDiagram {
  std::array<std::map<Int, Rat>, 3> col;

  bool operator==(const BettiDiagram& o) const { return col == o.col; }
  void add(int i, Int degree, const Rat& mult);  // accumulate, drop zeros
  bool integral() const;
  BettiDiagram scaled(const Rat& c) const;
};

// The finite-length consistency identities: alternating sums of total ranks
// and of degree-weighted ranks both vanish.
bool identities_hold(const BettiDiagram& beta);

// Pure diagram on degrees d0 < d1 < d2 with the smallest integral
// multiplicities proportional to prod_{j != i} 1/|d_j - d_i|.
struct PureDiagram {
  Int d0 = 0, d1 = 0, d2 = 0;
  Int m0 = 0, m1 = 0, m2 = 0;

  BettiDiagram diagram() const;
  bool operator==(const PureDiagram& o) const {
    return d0 == o.d0 && d1 == o.d1 && d2 == o.d2;
  }
};
PureDiagram pure_from_degrees(Int d0, Int d1, Int d2);  // requires d0<d1<d2

// Translation between integral diagrams and triples; throws ContractError
// ("not a finite-length diagram shape") when the identities fail, and on
// non-integral input.
Triple diagram_to_triple(const BettiDiagram& beta);
BettiDiagram triple_to_diagram(const Triple& t);

struct Decomposition {
  bool in_cone = false;
  std::vector<std::pair<Rat, PureDiagram>> parts;  // valid iff in_cone
};

// Greedy decomposition along top degree sequences: repeatedly read off the
// maximal degree in each column, require them to be strictly increasing,
// subtract the largest admissible multiple of that pure diagram, and recurse.
// Exact; reconstruction is asserted.  Not-in-cone is a value, not an error.
Decomposition decompose(const BettiDiagram& beta);
bool in_cone(const BettiDiagram& beta);

// For an integral diagram: in the cone AND the translated triple realizable.
// (For projective dimension 2 these agree; the conjunction is computed so a
// disagreement would surface in tests.)  Throws on non-integral input.
bool lattice_point_realizable(const BettiDiagram& beta);

}  // namespace quotkit
