// Betti diagram layer: exact rationals, width-3 diagrams, pure diagrams,
// greedy top-degree decomposition, and lattice-point realizability.
#include "quotkit/betti.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace quotkit {

Rat::Rat(Int n, Int d) {
  if (d == 0) throw ContractError("rational with zero denominator");
  if (d < 0) {
    n = checked_sub(0, n);
    d = checked_sub(0, d);
  }
  Int g = std::gcd(n < 0 ? checked_sub(0, n) : n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num = n;
  den = d;
}

std::string Rat::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

bool Rat::operator<(const Rat& o) const {
  return checked_mul(num, o.den) < checked_mul(o.num, den);
}

Rat rat_add(const Rat& p, const Rat& q) {
  return Rat(checked_add(checked_mul(p.num, q.den), checked_mul(q.num, p.den)),
             checked_mul(p.den, q.den));
}

Rat rat_sub(const Rat& p, const Rat& q) {
  return Rat(checked_sub(checked_mul(p.num, q.den), checked_mul(q.num, p.den)),
             checked_mul(p.den, q.den));
}

Rat rat_mul(const Rat& p, const Rat& q) {
  return Rat(checked_mul(p.num, q.num), checked_mul(p.den, q.den));
}

Rat rat_div(const Rat& p, const Rat& q) {
  if (q.is_zero()) throw ContractError("rational division by zero");
  return Rat(checked_mul(p.num, q.den), checked_mul(p.den, q.num));
}

void BettiDiagram::add(int i, Int degree, const Rat& mult) {
  if (i < 0 || i > 2) throw ContractError("diagram column index out of range");
  if (mult.is_zero()) return;
  auto& column = col[static_cast<std::size_t>(i)];
  auto it = column.find(degree);
  if (it == column.end()) {
    column.emplace(degree, mult);
    return;
  }
  it->second = rat_add(it->second, mult);
  if (it->second.is_zero()) column.erase(it);
}

bool BettiDiagram::integral() const {
  for (const auto& column : col) {
    for (const auto& [deg, mult] : column) {
      (void)deg;
      if (!mult.is_integer()) return false;
    }
  }
  return true;
}

BettiDiagram BettiDiagram::scaled(const Rat& c) const {
  BettiDiagram out;
  if (c.is_zero()) return out;
  for (int i = 0; i < 3; ++i) {
    for (const auto& [deg, mult] : col[static_cast<std::size_t>(i)]) {
      out.add(i, deg, rat_mul(mult, c));
    }
  }
  return out;
}

bool identities_hold(const BettiDiagram& beta) {
  Rat rank_sum, degree_sum;
  for (int i = 0; i < 3; ++i) {
    Rat sign = (i % 2 == 0) ? Rat(1) : Rat(-1);
    for (const auto& [deg, mult] : beta.col[static_cast<std::size_t>(i)]) {
      rank_sum = rat_add(rank_sum, rat_mul(sign, mult));
      degree_sum = rat_add(degree_sum, rat_mul(sign, rat_mul(Rat(deg), mult)));
    }
  }
  return rank_sum.is_zero() && degree_sum.is_zero();
}

BettiDiagram PureDiagram::diagram() const {
  BettiDiagram out;
  out.add(0, d0, Rat(m0));
  out.add(1, d1, Rat(m1));
  out.add(2, d2, Rat(m2));
  return out;
}

PureDiagram pure_from_degrees(Int d0, Int d1, Int d2) {
  if (!(d0 < d1 && d1 < d2)) {
    throw ContractError("pure diagram degrees must be strictly increasing");
  }
  Int g10 = checked_sub(d1, d0), g20 = checked_sub(d2, d0), g21 = checked_sub(d2, d1);
  // Multiplicities proportional to 1/(g10*g20), 1/(g10*g21), 1/(g20*g21):
  // scale by g10*g20*g21 to get g21, g20, g10, then divide by the gcd.
  Int m0 = g21, m1 = g20, m2 = g10;
  Int g = std::gcd(std::gcd(m0, m1), m2);
  PureDiagram p;
  p.d0 = d0;
  p.d1 = d1;
  p.d2 = d2;
  p.m0 = m0 / g;
  p.m1 = m1 / g;
  p.m2 = m2 / g;
  return p;
}

Triple diagram_to_triple(const BettiDiagram& beta) {
  if (!beta.integral()) {
    throw ContractError("diagram is not integral");
  }
  for (const auto& column : beta.col) {
    for (const auto& [deg, mult] : column) {
      (void)deg;
      if (mult.num < 0) {
        throw ContractError("diagram has a negative multiplicity");
      }
    }
  }
  if (!identities_hold(beta)) {
    throw ContractError("not a finite-length diagram shape");
  }
  auto column_type = [](const std::map<Int, Rat>& column) {
    std::vector<Int> v;
    for (const auto& [deg, mult] : column) {
      for (Int k = 0; k < mult.num; ++k) v.push_back(checked_sub(0, deg));
    }
    return SplittingType(v);
  };
  Triple t;
  t.a = column_type(beta.col[0]);
  t.e = column_type(beta.col[1]);
  t.b = column_type(beta.col[2]);
  return t;
}

BettiDiagram triple_to_diagram(const Triple& t) {
  BettiDiagram out;
  for (Int v : t.a.entries()) out.add(0, checked_sub(0, v), Rat(1));
  for (Int v : t.e.entries()) out.add(1, checked_sub(0, v), Rat(1));
  for (Int v : t.b.entries()) out.add(2, checked_sub(0, v), Rat(1));
  return out;
}

Decomposition decompose(const BettiDiagram& beta) {
  Decomposition out;
  BettiDiagram work = beta;
  while (true) {
    bool empty0 = work.col[0].empty();
    bool empty1 = work.col[1].empty();
    bool empty2 = work.col[2].empty();
    if (empty0 && empty1 && empty2) {
      out.in_cone = true;
      break;
    }
    if (empty0 || empty1 || empty2) {
      out.in_cone = false;
      return out;
    }
    Int d0 = work.col[0].rbegin()->first;
    Int d1 = work.col[1].rbegin()->first;
    Int d2 = work.col[2].rbegin()->first;
    if (!(d0 < d1 && d1 < d2)) {
      out.in_cone = false;
      return out;
    }
    PureDiagram pure = pure_from_degrees(d0, d1, d2);
    Rat c = rat_div(work.col[0].rbegin()->second, Rat(pure.m0));
    c = std::min(c, rat_div(work.col[1].rbegin()->second, Rat(pure.m1)));
    c = std::min(c, rat_div(work.col[2].rbegin()->second, Rat(pure.m2)));
    if (!(Rat(0) < c)) {
      out.in_cone = false;  // a nonpositive top multiplicity
      return out;
    }
    work.add(0, d0, rat_mul(Rat(checked_sub(0, pure.m0)), c));
    work.add(1, d1, rat_mul(Rat(checked_sub(0, pure.m1)), c));
    work.add(2, d2, rat_mul(Rat(checked_sub(0, pure.m2)), c));
    out.parts.emplace_back(c, pure);
  }
  // Reconstruction must be exact.
  BettiDiagram rebuilt;
  for (const auto& [c, pure] : out.parts) {
    BettiDiagram scaled = pure.diagram().scaled(c);
    for (int i = 0; i < 3; ++i) {
      for (const auto& [deg, mult] : scaled.col[static_cast<std::size_t>(i)]) {
        rebuilt.add(i, deg, mult);
      }
    }
  }
  if (!(rebuilt == beta)) {
    throw InternalError("pure-diagram decomposition failed to reconstruct its input");
  }
  return out;
}

bool in_cone(const BettiDiagram& beta) { return decompose(beta).in_cone; }

bool lattice_point_realizable(const BettiDiagram& beta) {
  if (!beta.integral()) {
    throw ContractError("diagram is not integral");
  }
  if (!identities_hold(beta)) return false;
  if (!in_cone(beta)) return false;
  return realizable_bool(diagram_to_triple(beta));
}

}  // namespace quotkit
