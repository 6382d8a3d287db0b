// Certifying matrices and exact polynomial arithmetic: sparse bivariate
// polynomials over the integers, the explicit quotient/kernel matrices of a
// realizable triple, composition and minor-gcd checks.
#include "quotkit/matrixgen.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <vector>

#include "internal.hpp"

namespace quotkit {

namespace {

void normalize(std::vector<Poly::Term>& terms) {
  std::sort(terms.begin(), terms.end(), [](const Poly::Term& s, const Poly::Term& t) {
    if (s.xe != t.xe) return s.xe > t.xe;
    return s.ye > t.ye;
  });
  std::vector<Poly::Term> out;
  for (const Poly::Term& t : terms) {
    if (!out.empty() && out.back().xe == t.xe && out.back().ye == t.ye) {
      out.back().coeff = checked_add(out.back().coeff, t.coeff);
      if (out.back().coeff == 0) out.pop_back();
    } else if (t.coeff != 0) {
      out.push_back(t);
    }
  }
  terms = std::move(out);
}

}  // namespace

Poly Poly::monomial(Int coeff, Int xe, Int ye) {
  if (coeff == 0) return {};
  if (xe < 0 || ye < 0) {
    throw InternalError("monomial with negative exponent");
  }
  Poly p;
  p.terms.push_back(Term{xe, ye, coeff});
  return p;
}

bool Poly::is_unit_constant() const {
  return terms.size() == 1 && terms[0].xe == 0 && terms[0].ye == 0;
}

std::string Poly::str() const {
  if (terms.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const Term& t : terms) {
    Int c = t.coeff;
    if (first) {
      if (c < 0) out << "-";
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    Int mag = c < 0 ? checked_sub(0, c) : c;
    std::string mon;
    if (t.xe > 0) mon += (t.xe == 1) ? "x" : "x^" + std::to_string(t.xe);
    if (t.ye > 0) {
      if (!mon.empty()) mon += "*";
      mon += (t.ye == 1) ? "y" : "y^" + std::to_string(t.ye);
    }
    if (mon.empty()) {
      out << mag;
    } else if (mag == 1) {
      out << mon;
    } else {
      out << mag << "*" << mon;
    }
  }
  return out.str();
}

Poly poly_add(const Poly& p, const Poly& q) {
  std::vector<Poly::Term> terms = p.terms;
  terms.insert(terms.end(), q.terms.begin(), q.terms.end());
  normalize(terms);
  Poly r;
  r.terms = std::move(terms);
  return r;
}

Poly poly_mul(const Poly& p, const Poly& q) {
  std::vector<Poly::Term> terms;
  terms.reserve(p.terms.size() * q.terms.size());
  for (const Poly::Term& s : p.terms) {
    for (const Poly::Term& t : q.terms) {
      terms.push_back(Poly::Term{checked_add(s.xe, t.xe), checked_add(s.ye, t.ye),
                                 checked_mul(s.coeff, t.coeff)});
    }
  }
  normalize(terms);
  Poly r;
  r.terms = std::move(terms);
  return r;
}

Poly poly_neg(const Poly& p) {
  Poly r = p;
  for (Poly::Term& t : r.terms) t.coeff = checked_sub(0, t.coeff);
  return r;
}

namespace {

// --- univariate integer polynomials for the gcd (coeffs[i] is the x^i
// coefficient; empty vector = zero) -------------------------------------

using UPoly = std::vector<Int>;

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

UPoly primitive(UPoly p) {
  trim(p);
  if (p.empty()) return p;
  Int g = 0;
  for (Int c : p) g = std::gcd(g, c < 0 ? checked_sub(0, c) : c);
  for (Int& c : p) c /= g;
  if (p.back() < 0) {
    for (Int& c : p) c = checked_sub(0, c);
  }
  return p;
}

// Primitive pseudo-remainder of a by b (b nonzero, deg a >= deg b allowed to
// fail into just a).  Content is stripped every step to bound growth.
UPoly prem_primitive(UPoly a, const UPoly& b) {
  trim(a);
  const Int lb = b.back();
  while (!a.empty() && a.size() >= b.size()) {
    const Int la = a.back();
    const std::size_t shift = a.size() - b.size();
    for (Int& c : a) c = checked_mul(c, lb);
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = checked_sub(a[shift + i], checked_mul(b[i], la));
    }
    trim(a);
    a = primitive(a);
  }
  return a;
}

UPoly gcd_uni(UPoly a, UPoly b) {
  a = primitive(std::move(a));
  b = primitive(std::move(b));
  while (!b.empty()) {
    UPoly r = prem_primitive(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Int homog_degree(const Poly& p) {
  Int d = checked_add(p.terms[0].xe, p.terms[0].ye);
  for (const Poly::Term& t : p.terms) {
    if (checked_add(t.xe, t.ye) != d) {
      throw InternalError("gcd requires homogeneous polynomials");
    }
  }
  return d;
}

}  // namespace

Poly gcd_hom(const Poly& p, const Poly& q) {
  if (p.is_zero()) return q;
  if (q.is_zero()) return p;
  homog_degree(p);  // validates homogeneity
  homog_degree(q);

  auto strip = [](const Poly& f, Int& sx, Int& sy) {
    sx = f.terms[0].xe;
    sy = f.terms[0].ye;
    for (const Poly::Term& t : f.terms) {
      sx = std::min(sx, t.xe);
      sy = std::min(sy, t.ye);
    }
    Poly g;
    for (const Poly::Term& t : f.terms) {
      g.terms.push_back(Poly::Term{t.xe - sx, t.ye - sy, t.coeff});
    }
    return g;
  };
  Int px = 0, py = 0, qx = 0, qy = 0;
  Poly ph = strip(p, px, py);
  Poly qh = strip(q, qx, qy);

  auto dehom = [](const Poly& f) {
    Int dx = 0;
    for (const Poly::Term& t : f.terms) dx = std::max(dx, t.xe);
    UPoly u(static_cast<std::size_t>(dx + 1), 0);
    for (const Poly::Term& t : f.terms) u[static_cast<std::size_t>(t.xe)] = t.coeff;
    return u;
  };
  UPoly g = gcd_uni(dehom(ph), dehom(qh));
  Int gd = static_cast<Int>(g.size()) - 1;

  Int cx = std::min(px, qx), cy = std::min(py, qy);
  std::vector<Poly::Term> terms;
  for (Int i = 0; i <= gd; ++i) {
    Int c = g[static_cast<std::size_t>(i)];
    if (c != 0) terms.push_back(Poly::Term{cx + i, cy + gd - i, c});
  }
  normalize(terms);
  Poly r;
  r.terms = std::move(terms);
  return r;
}

bool HomogMatrix::degrees_ok() const {
  for (int i = 1; i <= rows(); ++i) {
    for (int j = 1; j <= cols(); ++j) {
      Int d = checked_sub(target.at(i), source.at(j));
      const Poly& p = at(i, j);
      if (d < 0) {
        if (!p.is_zero()) return false;
        continue;
      }
      for (const Poly::Term& t : p.terms) {
        if (t.xe < 0 || t.ye < 0 || checked_add(t.xe, t.ye) != d) return false;
      }
    }
  }
  return true;
}

namespace {

HomogMatrix zero_matrix(SplittingType target, SplittingType source) {
  HomogMatrix M;
  M.target = std::move(target);
  M.source = std::move(source);
  M.entries.assign(static_cast<std::size_t>(M.target.rank()),
                   std::vector<Poly>(static_cast<std::size_t>(M.source.rank())));
  return M;
}

void set_entry(HomogMatrix& M, int i, int j, Poly p) {
  Poly& slot = M.entries[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
  if (!slot.is_zero()) {
    throw InternalError("matrix builder wrote the same entry twice at (" +
                        std::to_string(i) + "," + std::to_string(j) + ")");
  }
  slot = std::move(p);
}

Int require_nonneg(Int v, const char* what) {
  if (v < 0) {
    throw InternalError(std::string("negative exponent for ") + what +
                        " in matrix construction");
  }
  return v;
}

void require_realizable(const Triple& t, const char* what) {
  if (auto w = realizability_witness(t)) {
    throw ContractError(std::string(what) + " requires a realizable triple; " +
                        w->describe());
  }
}

}  // namespace

HomogMatrix build_quotient_matrix(const Triple& t) {
  require_realizable(t, "quotient matrix");
  const int m = t.m(), n = t.n();
  const int np = detail::n_prime(t);
  const int mp = detail::m_prime(t);
  HomogMatrix G = zero_matrix(t.a, t.e);
  for (int i = 1; i <= np; ++i) set_entry(G, i, i, Poly::constant(1));
  if (m > 0 && n > 0) {
    QuantityTables q(t);
    std::vector<int> hext = detail::h_extended(t);
    for (int k = 1; k <= m - mp; ++k) {
      const int hk = hext[static_cast<std::size_t>(k - 1)];
      const int hk1 = hext[static_cast<std::size_t>(k)];
      set_entry(G, hk, hk + k - 1,
                Poly::monomial(1, require_nonneg(q.T(k - 1, hk), "star x"),
                               require_nonneg(q.S(k, hk), "star y")));
      for (int rho = hk + 1; rho <= std::min(hk1, n); ++rho) {
        set_entry(G, rho, rho + k - 1,
                  Poly::monomial(1, require_nonneg(q.A(k - 1, rho), "diagonal"), 0));
      }
      for (int rho = hk; rho <= std::min(hk1 - 1, n); ++rho) {
        set_entry(G, rho, rho + k,
                  Poly::monomial(1, 0, require_nonneg(q.A(k, rho), "superdiagonal")));
      }
    }
  }
  if (!G.degrees_ok()) {
    throw InternalError("quotient matrix has inhomogeneous entries on " + t.str());
  }
  return G;
}

HomogMatrix build_kernel_matrix(const Triple& t) {
  require_realizable(t, "kernel matrix");
  const int m = t.m(), n = t.n();
  const int mp = detail::m_prime(t);
  HomogMatrix C = zero_matrix(t.e, t.b);
  for (int i = 1; i <= mp; ++i) set_entry(C, m + n - mp + i, m - mp + i, Poly::constant(1));
  if (m > 0 && n > 0) {
    QuantityTables q(t);
    std::vector<int> hext = detail::h_extended(t);
    for (int k = 1; k <= m - mp; ++k) {
      const int hk = hext[static_cast<std::size_t>(k - 1)];
      const int hk1 = hext[static_cast<std::size_t>(k)];
      set_entry(C, hk + k - 1, k,
                Poly::monomial(1, 0, require_nonneg(q.B(k, hk), "column top")));
      for (int l = 1; l <= hk1 - hk; ++l) {
        Int sign = (l % 2 == 0) ? 1 : -1;
        Int ex = require_nonneg(checked_sub(0, q.S(k, hk + l)), "band x");
        Int ey = require_nonneg(checked_sub(0, q.T(k, hk + l - 1)), "band y");
        set_entry(C, hk + k - 1 + l, k, Poly::monomial(sign, ex, ey));
      }
      const int rb = hk1 + k;
      if (rb <= m + n) {
        Int sign = ((hk1 - hk + 1) % 2 == 0) ? 1 : -1;
        Int ex = require_nonneg(checked_sub(t.e.at(k + hk1), t.b.at(k)), "column bottom");
        set_entry(C, rb, k, Poly::monomial(sign, ex, 0));
      }
    }
  }
  if (!C.degrees_ok()) {
    throw InternalError("kernel matrix has inhomogeneous entries on " + t.str());
  }
  return C;
}

bool compose_is_zero(const HomogMatrix& G, const HomogMatrix& C) {
  if (G.source.entries() != C.target.entries()) {
    throw ContractError("composition requires source(G) = target(C)");
  }
  for (int i = 1; i <= G.rows(); ++i) {
    for (int k = 1; k <= C.cols(); ++k) {
      Poly acc;
      for (int j = 1; j <= G.cols(); ++j) {
        acc = poly_add(acc, poly_mul(G.at(i, j), C.at(j, k)));
      }
      if (!acc.is_zero()) return false;
    }
  }
  return true;
}

namespace {

Poly det(const std::vector<std::vector<Poly>>& M) {
  const std::size_t k = M.size();
  if (k == 0) return Poly::constant(1);
  if (k == 1) return M[0][0];
  Poly acc;
  for (std::size_t j = 0; j < k; ++j) {
    if (M[0][j].is_zero()) continue;
    std::vector<std::vector<Poly>> sub(k - 1, std::vector<Poly>(k - 1));
    for (std::size_t r = 1; r < k; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < k; ++c) {
        if (c == j) continue;
        sub[r - 1][cc++] = M[r][c];
      }
    }
    Poly term = poly_mul(M[0][j], det(sub));
    acc = poly_add(acc, (j % 2 == 0) ? term : poly_neg(term));
  }
  return acc;
}

void subsets(int total, int pick, std::vector<int>& cur,
             const std::function<void(const std::vector<int>&)>& emit) {
  if (static_cast<int>(cur.size()) == pick) {
    emit(cur);
    return;
  }
  int start = cur.empty() ? 0 : cur.back() + 1;
  for (int v = start; v <= total - (pick - static_cast<int>(cur.size())); ++v) {
    cur.push_back(v);
    subsets(total, pick, cur, emit);
    cur.pop_back();
  }
}

bool minors_coprime(const std::vector<Poly>& minors) {
  std::vector<const Poly*> nz;
  for (const Poly& p : minors) {
    if (p.is_unit_constant()) return true;
    if (!p.is_zero()) nz.push_back(&p);
  }
  if (nz.empty()) return false;
  bool pure_x = false, pure_y = false;
  for (const Poly* p : nz) {
    if (p->terms.size() == 1) {
      if (p->terms[0].ye == 0) pure_x = true;
      if (p->terms[0].xe == 0) pure_y = true;
    }
  }
  if (pure_x && pure_y) return true;
  Poly g = *nz[0];
  for (std::size_t i = 1; i < nz.size(); ++i) {
    g = gcd_hom(g, *nz[i]);
    if (g.is_unit_constant()) return true;
  }
  return g.is_unit_constant();
}

}  // namespace

std::vector<Poly> maximal_minors(const HomogMatrix& M) {
  const int r = M.rows(), c = M.cols();
  const int k = std::min(r, c);
  std::vector<Poly> out;
  std::vector<int> cur;
  if (r <= c) {
    subsets(c, k, cur, [&](const std::vector<int>& cols) {
      std::vector<std::vector<Poly>> sub(static_cast<std::size_t>(k),
                                         std::vector<Poly>(static_cast<std::size_t>(k)));
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
          sub[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
              M.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols[static_cast<std::size_t>(j)])];
        }
      }
      out.push_back(det(sub));
    });
  } else {
    subsets(r, k, cur, [&](const std::vector<int>& rows) {
      std::vector<std::vector<Poly>> sub(static_cast<std::size_t>(k),
                                         std::vector<Poly>(static_cast<std::size_t>(k)));
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
          sub[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
              M.entries[static_cast<std::size_t>(rows[static_cast<std::size_t>(i)])][static_cast<std::size_t>(j)];
        }
      }
      out.push_back(det(sub));
    });
  }
  return out;
}

bool is_surjective_bundle_map(const HomogMatrix& G) {
  if (G.rows() > G.cols()) {
    throw ContractError("surjectivity test requires rows <= cols");
  }
  return minors_coprime(maximal_minors(G));
}

bool is_injective_lf(const HomogMatrix& C) {
  if (C.rows() < C.cols()) {
    throw ContractError("injectivity test requires rows >= cols");
  }
  return minors_coprime(maximal_minors(C));
}

SESCertificate certify_ses(const Triple& t) {
  require_realizable(t, "certificate");
  SESCertificate cert;
  cert.triple = t;
  cert.G = build_quotient_matrix(t);
  cert.C = build_kernel_matrix(t);
  cert.composition_zero = compose_is_zero(cert.G, cert.C);
  cert.G_surjective = is_surjective_bundle_map(cert.G);
  cert.C_injective_lf = is_injective_lf(cert.C);
  cert.degrees_ok = cert.G.degrees_ok() && cert.C.degrees_ok();
  if (!cert.all_checks()) {
    throw InternalError("certificate checks failed on realizable triple " + t.str());
  }
  return cert;
}

}  // namespace quotkit
