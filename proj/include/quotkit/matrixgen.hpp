// Explicit certifying matrices: for a realizable triple, build the quotient
// matrix G (an n x (m+n) homogeneous polynomial matrix presenting
// O(e) ->> O(a)) and the kernel matrix C ((m+n) x m, presenting
// O(b) -> O(e)), then verify G C = 0, surjectivity of G, and injectivity of
// C as bundle maps, all in exact integer arithmetic.
#pragma once

#include <string>
#include <vector>

#include "quotkit/realizability.hpp"
#include "quotkit/splitting_type.hpp"

namespace quotkit {

// Sparse homogeneous polynomial in two variables x, y with exact integer
// coefficients: term list sorted by decreasing x-exponent, no zero
// coefficients.  (Homogeneity is a property of how entries are built and is
// validated by HomogMatrix::degrees_ok, not enforced term-by-term.)
struct Poly {
  struct Term {
    Int xe = 0, ye = 0, coeff = 0;
    bool operator==(const Term& o) const {
      return xe == o.xe && ye == o.ye && coeff == o.coeff;
    }
  };
  std::vector<Term> terms;

  static Poly zero() { return {}; }
  static Poly monomial(Int coeff, Int xe, Int ye);
  static Poly constant(Int c) { return monomial(c, 0, 0); }

  bool is_zero() const { return terms.empty(); }
  // Nonzero constant (degree-0) polynomial.
  bool is_unit_constant() const;
  std::string str() const;  // "x^2*y - 3*y^3" style; "0" when zero

  bool operator==(const Poly& o) const { return terms == o.terms; }
};

Poly poly_add(const Poly& p, const Poly& q);
Poly poly_mul(const Poly& p, const Poly& q);
Poly poly_neg(const Poly& p);

// gcd of two homogeneous polynomials, up to sign: strip the common monomial
// factor, dehomogenize, take a univariate primitive-remainder gcd, and
// rehomogenize.  gcd_hom(0, q) = q.  Both arguments must be homogeneous.
Poly gcd_hom(const Poly& p, const Poly& q);

// Matrix of homogeneous polynomials with row degrees `target` and column
// degrees `source`; entry (i,j) is homogeneous of degree target_i - source_j
// (and must be zero when that degree is negative).
struct HomogMatrix {
  SplittingType target;  // row degrees
  SplittingType source;  // column degrees
  std::vector<std::vector<Poly>> entries;  // [rows][cols]

  int rows() const { return target.rank(); }
  int cols() const { return source.rank(); }
  const Poly& at(int i, int j) const { return entries[i - 1][j - 1]; }  // 1-based

  // Every nonzero entry homogeneous of the required degree, zero where the
  // degree is negative.
  bool degrees_ok() const;
};

struct SESCertificate {
  Triple triple;
  HomogMatrix G, C;
  bool composition_zero = false;
  bool G_surjective = false;
  bool C_injective_lf = false;
  bool degrees_ok = false;

  bool all_checks() const {
    return composition_zero && G_surjective && C_injective_lf && degrees_ok;
  }
};

// The explicit quotient matrix: identity block on the leading a_i = e_i
// slots, then for each kernel step k a band with a starred monomial
// x^{T(k-1,h_k)} y^{S(k,h_k)} at (h_k, h_k+k-1), pure x-powers x^{A(k-1,rho)}
// on the diagonal and pure y-powers y^{A(k,rho)} on the superdiagonal.
// Throws ContractError when the triple is not realizable.
HomogMatrix build_quotient_matrix(const Triple& t);

// The explicit kernel matrix: identity block on the trailing b_i = e_{n+i}
// slots; column k carries y^{B(k,h_k)} on top, then alternating-sign entries
// x^{-S(k,h_k+l)} y^{-T(k,h_k+l-1)}, and a closing pure x-power
// x^{B(k,h_{k+1}+1)} when its row exists.  Throws ContractError when the
// triple is not realizable.
HomogMatrix build_kernel_matrix(const Triple& t);

// Exact product check G * C == 0.  Requires source(G) == target(C).
bool compose_is_zero(const HomogMatrix& G, const HomogMatrix& C);

// True iff the maximal minors have no common projective root, i.e. their gcd
// is a nonzero constant.  Fast path: a nonzero pure x-power minor and a
// nonzero pure y-power minor suffice.  Requires rows <= cols.
bool is_surjective_bundle_map(const HomogMatrix& G);
// Same gcd test on the maximal minors of a tall matrix (rows >= cols):
// injectivity with locally free (subbundle) cokernel.
bool is_injective_lf(const HomogMatrix& C);

// Builds both matrices and runs all checks.  Throws ContractError with the
// realizability witness when the triple is not realizable; on a realizable
// triple all four checks hold (InternalError otherwise — that would be a
// construction bug).
SESCertificate certify_ses(const Triple& t);

// All k x k minors (k = min(rows, cols)) by exact cofactor expansion.
std::vector<Poly> maximal_minors(const HomogMatrix& M);

}  // namespace quotkit
