#include "hallwb/gfpoly.hpp"

#include <cassert>
#include <random>
#include <stdexcept>

namespace hallwb {

namespace {
void trim(std::vector<GF::El>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}
}  // namespace

GFPoly::GFPoly(const GF& f, std::vector<GF::El> cc) : F(&f), c(std::move(cc)) {
  trim(c);
}

GFPoly GFPoly::x(const GF& f) { return GFPoly(f, {0, 1}); }
GFPoly GFPoly::constant(const GF& f, GF::El v) { return GFPoly(f, {v}); }

std::string GFPoly::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = deg(); i >= 0; --i) {
    if (!c[i]) continue;
    if (!s.empty()) s += "+";
    bool coef = (c[i] != 1) || i == 0;
    if (coef) s += std::to_string(c[i]);
    if (i > 0) {
      if (coef) s += "*";
      s += "x";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

GFPoly poly_parse(const GF& F, const std::string& s) {
  std::vector<GF::El> coef;
  size_t pos = 0;
  auto fail = [&] { throw UsageError("bad polynomial: " + s); };
  while (pos < s.size()) {
    size_t end = s.find('+', pos);
    if (end == std::string::npos) end = s.size();
    std::string term = s.substr(pos, end - pos);
    pos = end + 1;
    while (!term.empty() && term.front() == ' ') term.erase(term.begin());
    while (!term.empty() && term.back() == ' ') term.pop_back();
    if (term.empty()) fail();
    unsigned long cv = 1;
    size_t i = 0;
    if (isdigit(term[0])) {
      size_t used = 0;
      cv = std::stoul(term, &used);
      i = used;
      if (i < term.size() && term[i] == '*') ++i;
    }
    int e = 0;
    if (i < term.size()) {
      if (term[i] != 'x') fail();
      ++i;
      e = 1;
      if (i < term.size()) {
        if (term[i] != '^') fail();
        e = std::stoi(term.substr(i + 1));
        i = term.size();
      }
    }
    if (cv >= F.q) fail();
    if (e < 0 || e > 4096) fail();
    if (int(coef.size()) <= e) coef.resize(e + 1, 0);
    coef[e] = F.add(coef[e], GF::El(cv));
  }
  return GFPoly(F, std::move(coef));
}

GFPoly poly_add(const GFPoly& a, const GFPoly& b) {
  const GF& F = *(a.F ? a.F : b.F);
  std::vector<GF::El> c(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < a.c.size(); ++i) c[i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) c[i] = F.add(c[i], b.c[i]);
  return GFPoly(F, std::move(c));
}

GFPoly poly_sub(const GFPoly& a, const GFPoly& b) {
  const GF& F = *(a.F ? a.F : b.F);
  std::vector<GF::El> c(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < a.c.size(); ++i) c[i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) c[i] = F.sub(c[i], b.c[i]);
  return GFPoly(F, std::move(c));
}

GFPoly poly_mul(const GFPoly& a, const GFPoly& b) {
  const GF& F = *(a.F ? a.F : b.F);
  if (a.is_zero() || b.is_zero()) return GFPoly(F);
  std::vector<GF::El> c(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (!a.c[i]) continue;
    for (size_t j = 0; j < b.c.size(); ++j)
      c[i + j] = F.add(c[i + j], F.mul(a.c[i], b.c[j]));
  }
  return GFPoly(F, std::move(c));
}

GFPoly poly_scale(const GFPoly& a, GF::El s) {
  GFPoly r = a;
  for (auto& x : r.c) x = a.F->mul(x, s);
  trim(r.c);
  return r;
}

void poly_divmod(const GFPoly& a, const GFPoly& b, GFPoly* q, GFPoly* r) {
  assert(!b.is_zero());
  const GF& F = *b.F;
  std::vector<GF::El> rem = a.c, quot;
  int db = b.deg();
  if (a.deg() >= db) quot.assign(a.deg() - db + 1, 0);
  GF::El li = F.inv(b.lead());
  for (int i = a.deg(); i >= db; --i) {
    if (int(rem.size()) <= i || !rem[i]) continue;
    GF::El f = F.mul(rem[i], li);
    quot[i - db] = f;
    for (int j = 0; j <= db; ++j)
      rem[i - db + j] = F.sub(rem[i - db + j], F.mul(f, b.c[j]));
  }
  trim(rem);
  *q = GFPoly(F, std::move(quot));
  *r = GFPoly(F, std::move(rem));
}

GFPoly poly_mod(const GFPoly& a, const GFPoly& b) {
  GFPoly q, r;
  poly_divmod(a, b, &q, &r);
  return r;
}

GFPoly poly_make_monic(const GFPoly& a) {
  if (a.is_zero() || a.monic()) return a;
  return poly_scale(a, a.F->inv(a.lead()));
}

GFPoly poly_gcd(GFPoly a, GFPoly b) {
  while (!b.is_zero()) {
    GFPoly r = poly_mod(a, b);
    a = b;
    b = r;
  }
  return poly_make_monic(a);
}

GFPoly poly_ext_gcd(const GFPoly& a, const GFPoly& b, GFPoly* u, GFPoly* v) {
  const GF& F = *a.F;
  GFPoly r0 = a, r1 = b;
  GFPoly u0 = GFPoly::constant(F, 1), u1(F);
  GFPoly v0(F), v1 = GFPoly::constant(F, 1);
  while (!r1.is_zero()) {
    GFPoly q, r;
    poly_divmod(r0, r1, &q, &r);
    r0 = r1;
    r1 = r;
    GFPoly u2 = poly_sub(u0, poly_mul(q, u1));
    u0 = u1;
    u1 = u2;
    GFPoly v2 = poly_sub(v0, poly_mul(q, v1));
    v0 = v1;
    v1 = v2;
  }
  if (r0.is_zero()) {
    *u = GFPoly(F);
    *v = GFPoly(F);
    return r0;
  }
  GF::El s = F.inv(r0.lead());
  *u = poly_scale(u0, s);
  *v = poly_scale(v0, s);
  return poly_make_monic(r0);
}

GFPoly poly_powmod(const GFPoly& base, unsigned long long e,
                   const GFPoly& mod) {
  const GF& F = *mod.F;
  GFPoly r = GFPoly::constant(F, 1);
  GFPoly b = poly_mod(base, mod);
  while (e) {
    if (e & 1) r = poly_mod(poly_mul(r, b), mod);
    b = poly_mod(poly_mul(b, b), mod);
    e >>= 1;
  }
  return r;
}

GFPoly poly_derivative(const GFPoly& a) {
  const GF& F = *a.F;
  if (a.deg() <= 0) return GFPoly(F);
  std::vector<GF::El> c(a.c.size() - 1, 0);
  for (size_t i = 1; i < a.c.size(); ++i)
    c[i - 1] = F.mul(a.c[i], F.from_int(long(i)));
  return GFPoly(F, std::move(c));
}

GF::El poly_eval(const GFPoly& a, GF::El x) {
  const GF& F = *a.F;
  GF::El r = 0;
  for (int i = a.deg(); i >= 0; --i) r = F.add(F.mul(r, x), a.c[i]);
  return r;
}

namespace {

// p-th root of a polynomial of the form g(x^p) (all exponents divisible
// by p): coefficientwise c -> c^{q/p}.
GFPoly pth_root(const GFPoly& f) {
  const GF& F = *f.F;
  unsigned p = F.p;
  std::vector<GF::El> c(f.c.size() / p + 1, 0);
  for (size_t i = 0; i < f.c.size(); i += p)
    c[i / p] = F.pow(f.c[i], (long long)(F.q / p));
  return GFPoly(F, std::move(c));
}

// Squarefree decomposition: returns list of (g, m) with f = prod g^m,
// g squarefree pairwise coprime.
void squarefree_decomp(const GFPoly& f, int mult,
                       std::vector<std::pair<GFPoly, int>>* out) {
  const GF& F = *f.F;
  if (f.deg() <= 0) return;
  GFPoly d = poly_derivative(f);
  if (d.is_zero()) {
    squarefree_decomp(pth_root(f), mult * int(F.p), out);
    return;
  }
  GFPoly g = poly_gcd(f, d);
  GFPoly w, r;
  poly_divmod(f, g, &w, &r);  // w = squarefree part (times...)
  int i = 1;
  while (w.deg() > 0) {
    GFPoly y = poly_gcd(w, g);
    GFPoly fac, rr;
    poly_divmod(w, y, &fac, &rr);
    if (fac.deg() > 0) out->emplace_back(poly_make_monic(fac), mult * i);
    GFPoly gq;
    poly_divmod(g, y, &gq, &rr);
    g = gq;
    w = y;
    ++i;
  }
  if (g.deg() > 0) squarefree_decomp(g, mult, out);
}

// Distinct-degree factorization of a squarefree monic f:
// list of (product of irreducibles of degree d, d).
std::vector<std::pair<GFPoly, int>> ddf(GFPoly f) {
  const GF& F = *f.F;
  std::vector<std::pair<GFPoly, int>> out;
  GFPoly x = GFPoly::x(F);
  GFPoly h = x;
  int d = 0;
  while (f.deg() > 0 && f.deg() >= 2 * (d + 1)) {
    ++d;
    h = poly_powmod(h, F.q, f);  // h = x^{q^d} mod f
    GFPoly g = poly_gcd(poly_sub(h, x), f);
    if (g.deg() > 0) {
      out.emplace_back(g, d);
      GFPoly q, r;
      poly_divmod(f, g, &q, &r);
      f = q;
      h = poly_mod(h, f);
    }
  }
  if (f.deg() > 0) out.emplace_back(f, f.deg());
  return out;
}

// Equal-degree splitting (Cantor-Zassenhaus), deterministic seed.
void edf(const GFPoly& f, int d, std::vector<GFPoly>* out,
         std::mt19937_64* rng) {
  const GF& F = *f.F;
  if (f.deg() == d) {
    out->push_back(poly_make_monic(f));
    return;
  }
  GFPoly g(F);
  while (true) {
    // random polynomial of degree < deg f
    std::vector<GF::El> rc(f.deg(), 0);
    for (auto& x : rc) x = GF::El((*rng)() % F.q);
    GFPoly r(F, std::move(rc));
    if (r.deg() < 1) continue;
    g = poly_gcd(r, f);
    if (g.deg() > 0 && g.deg() < f.deg()) break;
    if (F.p == 2) {
      // trace map: r + r^2 + r^4 + ... + r^{2^{d*e-1}} mod f
      GFPoly t = r, acc = r;
      long long steps = (long long)d * F.e - 1;
      for (long long i = 0; i < steps; ++i) {
        t = poly_mod(poly_mul(t, t), f);
        acc = poly_add(acc, t);
      }
      g = poly_gcd(acc, f);
    } else {
      unsigned long long qe = 1;
      for (int i = 0; i < d; ++i) qe *= F.q;
      GFPoly s = poly_powmod(r, (qe - 1) / 2, f);
      g = poly_gcd(poly_sub(s, GFPoly::constant(F, 1)), f);
    }
    if (g.deg() > 0 && g.deg() < f.deg()) break;
  }
  GFPoly q, rr;
  poly_divmod(f, g, &q, &rr);
  edf(g, d, out, rng);
  edf(poly_make_monic(q), d, out, rng);
}

}  // namespace

std::vector<std::pair<GFPoly, int>> poly_factor(const GFPoly& f) {
  std::vector<std::pair<GFPoly, int>> out;
  if (f.deg() <= 0) return out;
  GFPoly m = poly_make_monic(f);
  std::vector<std::pair<GFPoly, int>> sf;
  squarefree_decomp(m, 1, &sf);
  std::mt19937_64 rng(0x9a11u);  // deterministic
  for (auto& [g, mult] : sf) {
    for (auto& [h, d] : ddf(g)) {
      std::vector<GFPoly> irr;
      edf(h, d, &irr, &rng);
      for (auto& p : irr) out.emplace_back(p, mult);
    }
  }
  return out;
}

bool poly_irreducible(const GFPoly& f) {
  if (f.deg() <= 0) return false;
  if (f.deg() == 1) return true;
  auto fs = poly_factor(f);
  return fs.size() == 1 && fs[0].second == 1;
}

std::vector<GFPoly> monic_irreducibles(const GF& F, int d) {
  std::vector<GFPoly> out;
  unsigned long long n = 1;
  for (int i = 0; i < d; ++i) n *= F.q;
  for (unsigned long long idx = 0; idx < n; ++idx) {
    std::vector<GF::El> c(d + 1, 0);
    unsigned long long t = idx;
    for (int i = 0; i < d; ++i) {
      c[i] = GF::El(t % F.q);
      t /= F.q;
    }
    c[d] = 1;
    GFPoly f(F, std::move(c));
    if (poly_irreducible(f)) out.push_back(f);
  }
  return out;
}

GFPoly min_poly(const Mat& A) {
  assert(A.r == A.c);
  const GF& F = *A.F;
  int n = A.r;
  if (n == 0) return GFPoly::constant(F, 1);
  // Krylov on the flattened powers of A: find the first linear dependence
  // among I, A, A^2, ...
  Mat pw = Mat::identity(F, n);
  Mat stack(F, 0, n * n);
  std::vector<Mat> pows;
  for (int k = 0;; ++k) {
    Mat row(F, 1, n * n);
    for (int i = 0; i < n * n; ++i) row.a[i] = pw.a[i];
    Mat cand = vstack(stack, row);
    Mat test = cand;
    if (rank(test) < cand.r) {
      // pw is a combination of previous powers: solve stack^T x = pw
      Mat Amat = transpose(stack);
      Mat b(F, n * n, 1);
      for (int i = 0; i < n * n; ++i) b.at(i, 0) = pw.a[i];
      bool ok = false;
      Mat x = solve(Amat, b, &ok);
      assert(ok);
      std::vector<GF::El> c(k + 1, 0);
      for (int i = 0; i < k; ++i) c[i] = F.neg(x.at(i, 0));
      c[k] = 1;
      return GFPoly(F, std::move(c));
    }
    stack = cand;
    pows.push_back(pw);
    pw = mat_mul(pw, A);
    if (k > n) throw std::logic_error("min_poly did not terminate");
  }
}

Mat mat_poly_eval(const GFPoly& p, const Mat& A) {
  const GF& F = *A.F;
  int n = A.r;
  Mat r(F, n, n);
  for (int i = p.deg(); i >= 0; --i) {
    r = mat_mul(r, A);
    if (p.c[i]) r = mat_add(r, mat_scale(Mat::identity(F, n), p.c[i]));
  }
  return r;
}

}  // namespace hallwb
