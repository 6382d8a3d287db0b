// Splitting-type core: dominance order, hom/ext dimension counts, merge, and
// the water-filling balance operators.
#include "quotkit/splitting_type.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace quotkit {

Int checked_add(Int x, Int y) {
  Int r;
  if (__builtin_add_overflow(x, y, &r)) {
    throw ContractError("integer overflow in addition");
  }
  return r;
}

Int checked_sub(Int x, Int y) {
  Int r;
  if (__builtin_sub_overflow(x, y, &r)) {
    throw ContractError("integer overflow in subtraction");
  }
  return r;
}

Int checked_mul(Int x, Int y) {
  Int r;
  if (__builtin_mul_overflow(x, y, &r)) {
    throw ContractError("integer overflow in multiplication");
  }
  return r;
}

SplittingType::SplittingType(std::vector<Int> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
}

SplittingType::SplittingType(std::initializer_list<Int> entries)
    : SplittingType(std::vector<Int>(entries)) {}

SplittingType SplittingType::parse(const std::string& text) {
  std::vector<Int> vals;
  std::size_t pos = 0;
  // Skip surrounding whitespace; an empty (or all-space) string is rank 0.
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  skip_ws();
  if (pos == text.size()) return SplittingType();
  while (true) {
    skip_ws();
    std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    std::size_t digits_start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == digits_start) {
      throw ContractError("cannot parse splitting type entry in \"" + text + "\"");
    }
    Int v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + start, text.data() + pos, v);
    if (ec != std::errc() || ptr != text.data() + pos) {
      throw ContractError("splitting type entry out of range in \"" + text + "\"");
    }
    vals.push_back(v);
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] != ',') {
      throw ContractError("expected ',' in splitting type \"" + text + "\"");
    }
    ++pos;
  }
  return SplittingType(std::move(vals));
}

std::string SplittingType::str() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out << ',';
    out << entries_[i];
  }
  return out.str();
}

Int SplittingType::degree() const {
  Int sum = 0;
  for (Int v : entries_) sum = checked_add(sum, v);
  return sum;
}

Int SplittingType::at(int i) const {
  if (i < 1 || i > rank()) {
    throw InternalError("splitting type index " + std::to_string(i) +
                        " out of range 1.." + std::to_string(rank()));
  }
  return entries_[static_cast<std::size_t>(i - 1)];
}

bool more_balanced_geq(const SplittingType& f, const SplittingType& g) {
  if (f.rank() != g.rank()) {
    throw ContractError("dominance comparison requires equal ranks (" +
                        std::to_string(f.rank()) + " vs " + std::to_string(g.rank()) + ")");
  }
  if (f.degree() != g.degree()) {
    throw ContractError("dominance comparison requires equal degrees (" +
                        std::to_string(f.degree()) + " vs " + std::to_string(g.degree()) + ")");
  }
  Int pf = 0, pg = 0;
  for (int i = 0; i < f.rank(); ++i) {
    pf = checked_add(pf, f.entries()[static_cast<std::size_t>(i)]);
    pg = checked_add(pg, g.entries()[static_cast<std::size_t>(i)]);
    if (pf < pg) return false;
  }
  return true;
}

Int hom_dim(const SplittingType& f, const SplittingType& g) {
  Int total = 0;
  for (Int fi : f.entries()) {
    for (Int gj : g.entries()) {
      Int c = checked_add(checked_sub(gj, fi), 1);
      if (c > 0) total = checked_add(total, c);
    }
  }
  return total;
}

Int ext1_dim(const SplittingType& f, const SplittingType& g) {
  Int total = 0;
  for (Int fi : f.entries()) {
    for (Int gj : g.entries()) {
      Int c = checked_sub(checked_sub(fi, gj), 1);
      if (c > 0) total = checked_add(total, c);
    }
  }
  return total;
}

Int end_dim(const SplittingType& f) { return hom_dim(f, f); }

SplittingType sort_concat(const SplittingType& x, const SplittingType& y) {
  std::vector<Int> merged;
  merged.reserve(x.entries().size() + y.entries().size());
  std::merge(x.entries().begin(), x.entries().end(), y.entries().begin(),
             y.entries().end(), std::back_inserter(merged));
  return SplittingType(std::move(merged));
}

SplittingType alpha_balance(const SplittingType& q, Int delta) {
  if (delta < 0) {
    throw ContractError("alpha_balance requires a nonnegative increment, got " +
                        std::to_string(delta));
  }
  if (q.rank() == 0) {
    if (delta != 0) {
      throw ContractError("alpha_balance on a rank-0 type requires increment 0");
    }
    return q;
  }
  // Water filling: find the largest level L with
  // need(L) = sum_j max(0, L - q_j) <= delta, then bump the remainder of
  // leveled entries by one extra unit.
  auto need = [&](Int level) {
    Int total = 0;
    for (Int v : q.entries()) {
      if (level > v) total = checked_add(total, checked_sub(level, v));
    }
    return total;
  };
  Int lo = q.entries().front();                  // need(lo) = 0 <= delta
  Int hi = checked_add(q.entries().back(), delta);  // need(hi) >= delta always
  while (lo < hi) {
    Int mid = lo + (hi - lo + 1) / 2;
    if (need(mid) <= delta) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  Int level = lo;
  Int rem = checked_sub(delta, need(level));
  std::vector<Int> out;
  out.reserve(q.entries().size());
  Int leveled = 0;
  for (Int v : q.entries()) {
    if (v <= level) ++leveled;
    out.push_back(std::max(v, level));
  }
  if (rem > leveled) {
    throw InternalError("water-fill remainder exceeds leveled entry count");
  }
  // Bump `rem` of the leveled entries; the entries above `level` are at
  // least level+1 already, so sortedness survives the constructor's re-sort.
  int bumped = 0;
  for (std::size_t i = 0; i < out.size() && bumped < rem; ++i) {
    if (out[i] == level && q.entries()[i] <= level) {
      out[i] = checked_add(level, 1);
      ++bumped;
    }
  }
  return SplittingType(std::move(out));
}

SplittingType beta_balance(const SplittingType& p, Int delta) {
  return reverse_negate(alpha_balance(reverse_negate(p), delta));
}

SplittingType reverse_negate(const SplittingType& f) {
  std::vector<Int> out;
  out.reserve(f.entries().size());
  for (auto it = f.entries().rbegin(); it != f.entries().rend(); ++it) {
    out.push_back(checked_sub(0, *it));
  }
  return SplittingType(std::move(out));
}

}  // namespace quotkit
