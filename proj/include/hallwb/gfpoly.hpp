#pragma once
// Univariate polynomials over F_q: arithmetic, gcd, factorization
// (squarefree + distinct-degree + Cantor-Zassenhaus equal-degree), minimal
// polynomials of matrices, and enumeration of monic irreducibles (closed
// points of the projective line).

#include <cstdint>
#include <string>
#include <vector>

#include "hallwb/gf.hpp"
#include "hallwb/linalg.hpp"

namespace hallwb {

// Coefficients low-to-high; invariant: no trailing zeros (zero poly = {}).
struct GFPoly {
  const GF* F = nullptr;
  std::vector<GF::El> c;

  GFPoly() = default;
  explicit GFPoly(const GF& f) : F(&f) {}
  GFPoly(const GF& f, std::vector<GF::El> cc);

  int deg() const { return int(c.size()) - 1; }  // deg(0) = -1
  bool is_zero() const { return c.empty(); }
  GF::El lead() const { return c.back(); }
  bool monic() const { return !c.empty() && c.back() == 1; }
  bool operator==(const GFPoly& o) const { return c == o.c; }

  static GFPoly x(const GF& f);
  static GFPoly constant(const GF& f, GF::El v);
  std::string to_string() const;  // e.g. "x^2+x+1"
};

GFPoly poly_add(const GFPoly& a, const GFPoly& b);
GFPoly poly_sub(const GFPoly& a, const GFPoly& b);
GFPoly poly_mul(const GFPoly& a, const GFPoly& b);
GFPoly poly_scale(const GFPoly& a, GF::El s);
// a = q*b + r with deg r < deg b.
void poly_divmod(const GFPoly& a, const GFPoly& b, GFPoly* q, GFPoly* r);
GFPoly poly_mod(const GFPoly& a, const GFPoly& b);
GFPoly poly_gcd(GFPoly a, GFPoly b);  // monic gcd
// Monic g = gcd(a,b) together with u,v such that u*a + v*b = g.
GFPoly poly_ext_gcd(const GFPoly& a, const GFPoly& b, GFPoly* u, GFPoly* v);
GFPoly poly_powmod(const GFPoly& base, unsigned long long e, const GFPoly& mod);
GFPoly poly_derivative(const GFPoly& a);
GF::El poly_eval(const GFPoly& a, GF::El x);
GFPoly poly_make_monic(const GFPoly& a);

// Inverse of to_string: sums of "<coef>*x^<k>" terms with the coefficient
// and exponent parts optional, e.g. "x^2+3*x+1".  Throws UsageError.
GFPoly poly_parse(const GF& F, const std::string& s);

// Irreducible factors with multiplicity, deterministic (seeded internally).
std::vector<std::pair<GFPoly, int>> poly_factor(const GFPoly& f);
bool poly_irreducible(const GFPoly& f);
// All monic irreducibles of degree d over F (lexicographic order).
std::vector<GFPoly> monic_irreducibles(const GF& F, int d);

// Minimal polynomial of a square matrix.
GFPoly min_poly(const Mat& A);
// Evaluate p(A).
Mat mat_poly_eval(const GFPoly& p, const Mat& A);

}  // namespace hallwb
