// Splitting types: weakly increasing integer tuples recording the degrees of
// the line-bundle summands of a vector bundle on the projective line, plus
// the combinatorial operations on them (dominance order, hom/ext dimension
// counts, merge, and the two water-filling balance operators).
#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "quotkit/errors.hpp"

namespace quotkit {

using Int = std::int64_t;

// Overflow-checked arithmetic on Int; throws ContractError on overflow so
// adversarial inputs fail loudly instead of wrapping.
Int checked_add(Int x, Int y);
Int checked_sub(Int x, Int y);
Int checked_mul(Int x, Int y);

// A multiset of integers stored weakly increasing.  Rank 0 (empty) is legal.
class SplittingType {
 public:
  SplittingType() = default;
  explicit SplittingType(std::vector<Int> entries);  // sorts its argument
  SplittingType(std::initializer_list<Int> entries);

  // Parses a comma-separated list of integers; "" denotes rank 0.
  static SplittingType parse(const std::string& text);
  // Inverse of parse: "0,4,5" style; "" for rank 0.
  std::string str() const;

  int rank() const { return static_cast<int>(entries_.size()); }
  Int degree() const;  // sum of entries (overflow-checked)

  // 1-based access, matching the index conventions used throughout.
  Int at(int i) const;
  const std::vector<Int>& entries() const { return entries_; }

  bool operator==(const SplittingType& o) const { return entries_ == o.entries_; }
  bool operator!=(const SplittingType& o) const { return entries_ != o.entries_; }
  // Lexicographic order on the entry vectors; used only for canonical sorting.
  bool operator<(const SplittingType& o) const { return entries_ < o.entries_; }

 private:
  std::vector<Int> entries_;
};

// Dominance ("more balanced") partial order on splitting types of equal rank
// and degree: f >= g iff every prefix sum of f is >= the matching prefix sum
// of g.  Throws ContractError when ranks or degrees differ, since the order
// is only defined within one rank-and-degree class.
bool more_balanced_geq(const SplittingType& f, const SplittingType& g);

// dim Hom(F, G) = sum_{i,j} max(0, g_j - f_i + 1) for F, G with splitting
// types f, g; ext1_dim is the companion sum max(0, f_i - g_j - 1).
Int hom_dim(const SplittingType& f, const SplittingType& g);
Int ext1_dim(const SplittingType& f, const SplittingType& g);
Int end_dim(const SplittingType& f);  // hom_dim(f, f)

// Merge two splitting types into one weakly increasing tuple.
SplittingType sort_concat(const SplittingType& x, const SplittingType& y);

// Water-filling balance operators.  alpha_balance(q, delta) distributes
// delta unit increments over q so the result is the dominance-maximum among
// all entrywise-geq tuples with increment sum delta: raise everything to a
// common level, spilling the remainder one extra unit at a time.
// beta_balance is the mirror image (distributes decrements).
// Preconditions: delta >= 0, and rank >= 1 unless delta == 0.
SplittingType alpha_balance(const SplittingType& q, Int delta);
SplittingType beta_balance(const SplittingType& p, Int delta);

// Entrywise negation plus reversal; an involution exchanging the two ends of
// a short exact sequence under duality.
SplittingType reverse_negate(const SplittingType& f);

}  // namespace quotkit
