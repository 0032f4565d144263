#include "hallwb/hallalg.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <tuple>
#include <functional>

#include <json.hpp>

#include "hallwb/budget.hpp"

namespace hallwb {

namespace {

Dim dim_neg(const Dim& a) {
  Dim r = a;
  for (int& x : r) x = -x;
  return r;
}

Dim dim_scale(int n, const Dim& a) {
  Dim r = a;
  for (int& x : r) x *= n;
  return r;
}

// All e with 0 <= e <= cap componentwise, in increasing total order.
std::vector<Dim> degrees_below(const Dim& cap) {
  std::vector<Dim> out;
  Dim e(cap.size(), 0);
  for (;;) {
    out.push_back(e);
    int i = 0;
    while (i < int(e.size()) && e[i] == cap[i]) e[i++] = 0;
    if (i == int(e.size())) break;
    ++e[i];
  }
  std::stable_sort(out.begin(), out.end(), [](const Dim& a, const Dim& b) {
    return dim_total(a) < dim_total(b);
  });
  return out;
}

nlohmann::json coeff_json(const Coeff& c) {
  nlohmann::json j;
  if (c.mode() == CoeffMode::FixedQ) {
    j["a"] = rat_to_string(c.fixed().a());
    j["b"] = rat_to_string(c.fixed().b());
  } else {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [e, r] : c.generic().terms())
      arr.push_back({e, rat_to_string(r)});
    j["laurent"] = arr;
  }
  return j;
}

// Row echelon with representative tracking over the fixed-q field.
struct Ech {
  std::vector<int> piv;
  std::vector<std::vector<Coeff>> rows;
  std::vector<HallElement> reps;

  void reduce(std::vector<Coeff>& vec, HallElement* rep) const {
    for (size_t r = 0; r < rows.size(); ++r) {
      Coeff c = vec[piv[r]];
      if (c.is_zero()) continue;
      for (size_t j = 0; j < vec.size(); ++j)
        vec[j] = vec[j] - c * rows[r][j];
      if (rep) *rep = HallAlg::sub(*rep, HallAlg::scale(c, reps[r]));
    }
  }

  bool insert(std::vector<Coeff> vec, HallElement rep, const Coeff& one) {
    reduce(vec, &rep);
    int j = -1;
    for (size_t k = 0; k < vec.size(); ++k)
      if (!vec[k].is_zero()) {
        j = int(k);
        break;
      }
    if (j < 0) return false;
    Coeff inv = one / vec[j];
    for (auto& x : vec) x = x * inv;
    piv.push_back(j);
    rows.push_back(std::move(vec));
    reps.push_back(HallAlg::scale(inv, rep));
    return true;
  }
};

// Null-space basis of the matrix M (rows x cols) over the fixed-q field.
std::vector<std::vector<Coeff>> kernel_coeff(std::vector<std::vector<Coeff>> M,
                                             int cols, const Coeff& one,
                                             const Coeff& zero) {
  int rows = int(M.size());
  std::vector<int> pivcol;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (!M[i][c].is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(M[r], M[p]);
    Coeff inv = one / M[r][c];
    for (int j = 0; j < cols; ++j) M[r][j] = M[r][j] * inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || M[i][c].is_zero()) continue;
      Coeff f = M[i][c];
      for (int j = 0; j < cols; ++j) M[i][j] = M[i][j] - f * M[r][j];
    }
    pivcol.push_back(c);
    ++r;
  }
  std::vector<bool> is_piv(cols, false);
  for (int c : pivcol) is_piv[c] = true;
  std::vector<std::vector<Coeff>> out;
  for (int fc = 0; fc < cols; ++fc) {
    if (is_piv[fc]) continue;
    std::vector<Coeff> w(cols, zero);
    w[fc] = one;
    for (int i = 0; i < int(pivcol.size()); ++i)
      w[pivcol[i]] = -M[i][fc];
    out.push_back(std::move(w));
  }
  return out;
}

// Inverse of a square Coeff matrix; empty result when singular.
std::vector<std::vector<Coeff>> invert_coeff(std::vector<std::vector<Coeff>> M,
                                             const Coeff& one,
                                             const Coeff& zero) {
  int n = int(M.size());
  std::vector<std::vector<Coeff>> inv(n, std::vector<Coeff>(n, zero));
  for (int i = 0; i < n; ++i) inv[i][i] = one;
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (!M[i][c].is_zero()) {
        p = i;
        break;
      }
    if (p < 0) return {};
    std::swap(M[c], M[p]);
    std::swap(inv[c], inv[p]);
    Coeff f = one / M[c][c];
    for (int j = 0; j < n; ++j) {
      M[c][j] = M[c][j] * f;
      inv[c][j] = inv[c][j] * f;
    }
    for (int i = 0; i < n; ++i) {
      if (i == c || M[i][c].is_zero()) continue;
      Coeff g = M[i][c];
      for (int j = 0; j < n; ++j) {
        M[i][j] = M[i][j] - g * M[c][j];
        inv[i][j] = inv[i][j] - g * inv[c][j];
      }
    }
  }
  return inv;
}

}  // namespace

Coeff HallAlg::qint(long p) const {
  Coeff s = czero();
  for (long k = 0; k < p; ++k) s = s + cv(p - 1 - 2 * k);
  return s;
}

Coeff HallAlg::qfact(long p) const {
  Coeff s = cone();
  for (long k = 2; k <= p; ++k) s = s * qint(k);
  return s;
}

HallElement HallAlg::one() const {
  HallElement e;
  e.terms[{Dim(cat().quiver().n(), 0), cat().zero_class()}] = cone();
  return e;
}

HallElement HallAlg::u(int cls) const {
  HallElement e;
  e.terms[{Dim(cat().quiver().n(), 0), cls}] = cone();
  return e;
}

HallElement HallAlg::u_simple(int vertex) const {
  Dim d(cat().quiver().n(), 0);
  d[vertex] = 1;
  auto cls = cat().classes_of_dim(d);
  assert(cls.size() == 1 && "unit dimension vector has a unique class");
  return u(cls[0]);
}

HallElement HallAlg::k(const Dim& mu) const {
  HallElement e;
  e.terms[{mu, cat().zero_class()}] = cone();
  return e;
}

HallElement HallAlg::ku(const Dim& mu, int cls, const Coeff& c) const {
  HallElement e;
  if (!c.is_zero()) e.terms[{mu, cls}] = c;
  return e;
}

HallElement HallAlg::add(const HallElement& a, const HallElement& b) {
  HallElement out = a;
  for (const auto& [t, c] : b.terms) {
    auto it = out.terms.find(t);
    if (it == out.terms.end()) {
      out.terms.emplace(t, c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) out.terms.erase(it);
    }
  }
  return out;
}

HallElement HallAlg::sub(const HallElement& a, const HallElement& b) {
  HallElement out = a;
  for (const auto& [t, c] : b.terms) {
    auto it = out.terms.find(t);
    if (it == out.terms.end()) {
      out.terms.emplace(t, -c);
    } else {
      it->second = it->second - c;
      if (it->second.is_zero()) out.terms.erase(it);
    }
  }
  return out;
}

HallElement HallAlg::scale(const Coeff& c, const HallElement& a) {
  HallElement out;
  if (c.is_zero()) return out;
  for (const auto& [t, x] : a.terms) {
    Coeff y = c * x;
    if (!y.is_zero()) out.terms.emplace(t, y);
  }
  return out;
}

bool HallAlg::eq(const HallElement& a, const HallElement& b) {
  return sub(a, b).terms.empty();
}

std::optional<Dim> HallAlg::degree(const HallElement& a) const {
  std::optional<Dim> d;
  for (const auto& [t, c] : a.terms) {
    (void)c;
    Dim dt = cat().dim_of(t.cls);
    if (!d) {
      d = dt;
    } else if (*d != dt) {
      return std::nullopt;
    }
  }
  return d;
}

HallElement HallAlg::multiply(const HallElement& a, const HallElement& b) const {
  const Quiver& Q = cat().quiver();
  HallElement out;
  for (const auto& [ta, ca] : a.terms) {
    const Dim da = cat().dim_of(ta.cls);
    for (const auto& [tb, cb] : b.terms) {
      const Dim db = cat().dim_of(tb.cls);
      // (K_mu u_A)(K_nu u_B) = v^{-(nu,A)+<A,B>} K_{mu+nu} sum_L g^L_{AB} u_L
      Coeff base = ca * cb * cv(-Q.sym(tb.mu, da) + Q.euler(da, db));
      if (base.is_zero()) continue;
      Dim mu = dim_add(ta.mu, tb.mu);
      for (int L : cat().classes_of_dim(dim_add(da, db))) {
        BigInt g = eng_.hall_sub(ta.cls, tb.cls, L);
        if (g == 0) continue;
        Coeff c = base * crat(BigRat(g));
        HTerm t{mu, L};
        auto it = out.terms.find(t);
        if (it == out.terms.end()) {
          out.terms.emplace(t, c);
        } else {
          it->second = it->second + c;
          if (it->second.is_zero()) out.terms.erase(it);
        }
      }
    }
  }
  return out;
}

HallElement HallAlg::power(const HallElement& a, int p) const {
  HallElement out = one();
  for (int i = 0; i < p; ++i) out = multiply(out, a);
  return out;
}

Coeff HallAlg::angle_factor(int cls) const {
  return cv(-dim_total(cat().dim_of(cls)) + cat().end_dim(cls));
}

HallElement HallAlg::angle_basis(int cls) const {
  return scale(angle_factor(cls), u(cls));
}

HallElement HallAlg::divided_power(const HallElement& x, int p) const {
  return scale(cone() / qfact(p), power(x, p));
}

HallElement HallAlg::serre_check(int i, int j,
                                 const std::vector<GenEntry>& gens) const {
  if (i == j) throw UsageError("serre_check requires distinct generators");
  long aij = cat().quiver().sym(gens[i].theta, gens[j].theta);
  long top = 1 - aij;
  HallElement acc = zero();
  for (long p = 0; p <= top; ++p) {
    HallElement t = multiply(
        divided_power(gens[i].x, int(p)),
        multiply(gens[j].x, divided_power(gens[i].x, int(top - p))));
    acc = (p % 2 == 0) ? add(acc, t) : sub(acc, t);
  }
  return acc;
}

HallElement HallAlg::serre_check(int i, int j) const {
  std::vector<GenEntry> gens;
  for (int v = 0; v < cat().quiver().n(); ++v) {
    Dim th(cat().quiver().n(), 0);
    th[v] = 1;
    gens.push_back({th, u_simple(v)});
  }
  return serre_check(i, j, gens);
}

Coeff HallAlg::counit(const HallElement& a) const {
  Coeff s = czero();
  for (const auto& [t, c] : a.terms)
    if (t.cls == cat().zero_class()) s = s + c;
  return s;
}

Coeff HallAlg::aut_rat(int cls) const { return crat(BigRat(cat().aut_order(cls))); }

TensorElement HallAlg::comultiply(const HallElement& a, int dim_guard) const {
  const Quiver& Q = cat().quiver();
  TensorElement out;
  for (const auto& [t, c] : a.terms) {
    const Dim dA = cat().dim_of(t.cls);
    if (dim_total(dA) > dim_guard)
      throw UsageError("comultiply refused: total dimension " +
                       std::to_string(dim_total(dA)) + " exceeds guard " +
                       std::to_string(dim_guard));
    const BigInt aA = cat().aut_order(t.cls);
    // Delta(K_mu u_A) = sum v^{<a,b>-(b,a)} (a_alpha a_beta / a_A) g^A
    //                   K_{mu+b} u_alpha (x) K_mu u_beta
    for (const Dim& beta : degrees_below(dA)) {
      Dim alpha = dim_sub(dA, beta);
      Coeff tw = c * cv(Q.euler(alpha, beta) - Q.sym(beta, alpha));
      for (int qc : cat().classes_of_dim(alpha)) {
        for (int sc : cat().classes_of_dim(beta)) {
          BigInt g = eng_.hall_sub(qc, sc, t.cls);
          if (g == 0) continue;
          Coeff coef =
              tw * crat(BigRat(cat().aut_order(qc) * cat().aut_order(sc) * g,
                               aA));
          std::pair<HTerm, HTerm> key{{dim_add(t.mu, beta), qc}, {t.mu, sc}};
          auto it = out.find(key);
          if (it == out.end()) {
            out.emplace(key, coef);
          } else {
            it->second = it->second + coef;
            if (it->second.is_zero()) out.erase(it);
          }
        }
      }
    }
  }
  return out;
}

TensorElement HallAlg::tensor_multiply(const TensorElement& a,
                                       const TensorElement& b) const {
  TensorElement out;
  for (const auto& [ka, ca] : a) {
    for (const auto& [kb, cb] : b) {
      HallElement l = multiply(ku(ka.first.mu, ka.first.cls, cone()),
                               ku(kb.first.mu, kb.first.cls, cone()));
      HallElement r = multiply(ku(ka.second.mu, ka.second.cls, cone()),
                               ku(kb.second.mu, kb.second.cls, cone()));
      Coeff f = ca * cb;
      for (const auto& [tl, cl] : l.terms) {
        for (const auto& [tr, cr] : r.terms) {
          Coeff c = f * cl * cr;
          if (c.is_zero()) continue;
          std::pair<HTerm, HTerm> key{tl, tr};
          auto it = out.find(key);
          if (it == out.end()) {
            out.emplace(key, c);
          } else {
            it->second = it->second + c;
            if (it->second.is_zero()) out.erase(it);
          }
        }
      }
    }
  }
  return out;
}

TensorElement HallAlg::tensor_add(const TensorElement& a,
                                  const TensorElement& b) {
  TensorElement out = a;
  for (const auto& [k, c] : b) {
    auto it = out.find(k);
    if (it == out.end()) {
      out.emplace(k, c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) out.erase(it);
    }
  }
  return out;
}

bool HallAlg::tensor_eq(const TensorElement& a, const TensorElement& b) {
  TensorElement d = a;
  for (const auto& [k, c] : b) {
    auto it = d.find(k);
    if (it == d.end()) {
      d.emplace(k, -c);
    } else {
      it->second = it->second - c;
      if (it->second.is_zero()) d.erase(it);
    }
  }
  return d.empty();
}

HallElement HallAlg::antipode(const HallElement& a, int method,
                              int dim_guard) const {
  const Quiver& Q = cat().quiver();
  // Antipode of a plain u_A, memoized per method.
  // Method 1 evaluates the closed filtration formula
  //   S(u_A) = sum_m (-1)^m sum_pi (J_m(A,pi)/a_A) K_{-dim A} u_pi
  // where J_m pairs weighted filtration chains of A and pi; method 2 runs the
  // recursion obtained by applying mult(S x 1) to Delta(u_A).
  std::function<HallElement(int)> s_u = [&](int cls) -> HallElement {
    if (cls == cat().zero_class()) return one();
    auto key = std::make_pair(cls, method);
    auto hit = antipode_cache_.find(key);
    if (hit != antipode_cache_.end()) return hit->second;
    const Dim dA = cat().dim_of(cls);
    HallElement out;
    if (method == 1) {
      std::map<std::tuple<int, int, int>, Coeff> jmemo;
      std::function<Coeff(int, int, int)> J = [&](int m, int X,
                                                  int Y) -> Coeff {
        if (m == 0)
          return (X == cat().zero_class() && Y == cat().zero_class()) ? cone()
                                                                      : czero();
        auto jk = std::make_tuple(m, X, Y);
        auto jit = jmemo.find(jk);
        if (jit != jmemo.end()) return jit->second;
        const Dim dX = cat().dim_of(X);
        Coeff acc = czero();
        for (const Dim& g1 : degrees_below(dX)) {
          if (dim_is_zero(g1)) continue;
          Dim rest = dim_sub(dX, g1);
          Coeff tw = cv(2 * Q.euler(g1, rest));
          for (int l1 : cat().classes_of_dim(g1)) {
            Coeff al = aut_rat(l1);
            for (int mx : cat().classes_of_dim(rest)) {
              BigInt gx = eng_.hall_sub(l1, mx, X);
              if (gx == 0) continue;
              for (int my : cat().classes_of_dim(rest)) {
                BigInt gy = eng_.hall_sub(l1, my, Y);
                if (gy == 0) continue;
                Coeff inner = J(m - 1, mx, my);
                if (inner.is_zero()) continue;
                acc = acc + tw * al * crat(BigRat(gx * gy)) * inner;
              }
            }
          }
        }
        jmemo.emplace(jk, acc);
        return acc;
      };
      Coeff invA = cone() / aut_rat(cls);
      for (int m = 1; m <= dim_total(dA); ++m) {
        for (int pi : cat().classes_of_dim(dA)) {
          Coeff c = J(m, cls, pi) * invA;
          if (c.is_zero()) continue;
          if (m % 2 != 0) c = -c;
          out = add(out, ku(dim_neg(dA), pi, c));
        }
      }
    } else if (method == 2) {
      // S(u_A) = -K_{-A} u_A
      //          - sum_{alpha,beta != 0} v^{<a,b>} (a_a a_b / a_A) g^A_{ab}
      //            K_{-beta} S(u_alpha) u_beta
      out = scale(-cone(), ku(dim_neg(dA), cls, cone()));
      const BigInt aA = cat().aut_order(cls);
      for (const Dim& beta : degrees_below(dA)) {
        if (dim_is_zero(beta)) continue;
        Dim alpha = dim_sub(dA, beta);
        if (dim_is_zero(alpha)) continue;
        Coeff tw = cv(Q.euler(alpha, beta));
        for (int qc : cat().classes_of_dim(alpha)) {
          HallElement sq;  // computed lazily once a g survives
          bool have_sq = false;
          for (int sc : cat().classes_of_dim(beta)) {
            BigInt g = eng_.hall_sub(qc, sc, cls);
            if (g == 0) continue;
            if (!have_sq) {
              sq = s_u(qc);
              have_sq = true;
            }
            Coeff coef =
                tw * crat(BigRat(cat().aut_order(qc) * cat().aut_order(sc) * g,
                                 aA));
            HallElement term =
                multiply(k(dim_neg(beta)), multiply(sq, u(sc)));
            out = sub(out, scale(coef, term));
          }
        }
      }
    } else {
      throw UsageError("unknown antipode method " + std::to_string(method));
    }
    antipode_cache_.emplace(key, out);
    return out;
  };

  HallElement res;
  for (const auto& [t, c] : a.terms) {
    const Dim dA = cat().dim_of(t.cls);
    if (dim_total(dA) > dim_guard)
      throw UsageError("antipode refused: total dimension " +
                       std::to_string(dim_total(dA)) + " exceeds guard " +
                       std::to_string(dim_guard));
    // S(K_mu u_A) = S(u_A) K_{-mu}; (K_nu u_C) K_{-mu} = v^{(mu,C)} K_{nu-mu} u_C
    HallElement su = s_u(t.cls);
    for (const auto& [ts, cs] : su.terms) {
      Coeff coef = c * cs * cv(Q.sym(t.mu, cat().dim_of(ts.cls)));
      res = add(res, ku(dim_sub(ts.mu, t.mu), ts.cls, coef));
    }
  }
  return res;
}

HallElement HallAlg::collapse_s1(const TensorElement& t, int method) const {
  HallElement out = zero();
  for (const auto& [k, c] : t) {
    HallElement l = antipode(ku(k.first.mu, k.first.cls, cone()), method);
    HallElement r = ku(k.second.mu, k.second.cls, cone());
    out = add(out, scale(c, multiply(l, r)));
  }
  return out;
}

HallElement HallAlg::collapse_1s(const TensorElement& t, int method) const {
  HallElement out = zero();
  for (const auto& [k, c] : t) {
    HallElement l = ku(k.first.mu, k.first.cls, cone());
    HallElement r = antipode(ku(k.second.mu, k.second.cls, cone()), method);
    out = add(out, scale(c, multiply(l, r)));
  }
  return out;
}

Coeff HallAlg::green_form(const HallElement& x, const HallElement& y) const {
  // phi(K_mu u_a^+, K_nu u_b^-) = v^{-(mu,nu)-(a,nu)+(mu,b)} (|V_a|/a_a) d_ab;
  // y stores mirror labels: its word K_w u_b stands for omega(K_w u_b^+) =
  // K_{-w} u_b^-, so nu = -w and the exponent flips to +(mu,w)+(a,w)+(mu,b).
  const Quiver& Q = cat().quiver();
  Coeff s = czero();
  for (const auto& [tx, cx] : x.terms) {
    const Dim da = cat().dim_of(tx.cls);
    for (const auto& [ty, cy] : y.terms) {
      if (tx.cls != ty.cls) continue;
      long e = Q.sym(tx.mu, ty.mu) + Q.sym(da, ty.mu) + Q.sym(tx.mu, da);
      long vexp = norm_ == GreenNorm::GradedSpace
                      ? dim_total(da)
                      : variety_dim(Q, da);
      BigRat w(big_pow(BigInt(q()), vexp), cat().aut_order(tx.cls));
      s = s + cx * cy * cv(e) * crat(w);
    }
  }
  return s;
}

GradedSubspace HallAlg::graded_span(const std::vector<HallElement>& generators,
                                    const Dim& gamma) const {
  auto all = graded_span_all(generators, gamma);
  return all.at(gamma);
}

std::map<Dim, GradedSubspace> HallAlg::graded_span_all(
    const std::vector<HallElement>& generators, const Dim& gamma) const {
  if (mode_ != CoeffMode::FixedQ)
    throw UsageError("graded_span requires fixed-q coefficients");
  struct Gen {
    Dim d;
    HallElement x;
  };
  std::vector<Gen> gens;
  for (const HallElement& g : generators) {
    if (g.is_zero()) continue;
    auto d = degree(g);
    if (!d) throw UsageError("graded_span requires homogeneous generators");
    for (const auto& [t, c] : g.terms) {
      (void)c;
      if (!dim_is_zero(t.mu))
        throw UsageError("graded_span requires torus-free generators");
    }
    if (dim_is_zero(*d)) continue;
    if (dim_leq(*d, gamma)) gens.push_back({*d, g});
  }
  std::map<Dim, Ech> spans;
  std::map<Dim, std::vector<int>> cols;
  for (const Dim& e : degrees_below(gamma)) cols[e] = cat().classes_of_dim(e);
  auto coords = [&](const HallElement& x, const Dim& e) {
    const auto& cl = cols[e];
    std::vector<Coeff> v(cl.size(), czero());
    for (const auto& [t, c] : x.terms) {
      auto it = std::find(cl.begin(), cl.end(), t.cls);
      assert(it != cl.end());
      v[it - cl.begin()] = c;
    }
    return v;
  };
  for (const Dim& e : degrees_below(gamma)) {
    Ech& ech = spans[e];
    if (dim_is_zero(e)) {
      ech.insert(coords(one(), e), one(), cone());
      continue;
    }
    for (const Gen& g : gens) {
      if (!dim_leq(g.d, e)) continue;
      const Ech& base = spans[dim_sub(e, g.d)];
      for (const HallElement& b : base.reps) {
        HallElement cand = multiply(b, g.x);
        if (cand.is_zero()) continue;
        ech.insert(coords(cand, e), cand, cone());
      }
    }
  }
  std::map<Dim, GradedSubspace> out;
  for (auto& [e, ech] : spans) {
    GradedSubspace piece;
    piece.degree = e;
    piece.basis = ech.reps;
    piece.rank = int(ech.reps.size());
    out.emplace(e, std::move(piece));
  }
  return out;
}

bool HallAlg::in_span(const GradedSubspace& s, const HallElement& x) const {
  if (mode_ != CoeffMode::FixedQ)
    throw UsageError("span membership requires fixed-q coefficients");
  if (x.is_zero()) return true;
  auto d = degree(x);
  if (!d || *d != s.degree) return false;
  const auto cl = cat().classes_of_dim(s.degree);
  auto coords = [&](const HallElement& e) {
    std::vector<Coeff> v(cl.size(), czero());
    for (const auto& [t, c] : e.terms) {
      if (!dim_is_zero(t.mu))
        throw UsageError("span membership requires torus-free elements");
      auto it = std::find(cl.begin(), cl.end(), t.cls);
      assert(it != cl.end());
      v[it - cl.begin()] = c;
    }
    return v;
  };
  Ech ech;
  for (const HallElement& b : s.basis) ech.insert(coords(b), b, cone());
  std::vector<Coeff> v = coords(x);
  ech.reduce(v, nullptr);
  for (const Coeff& c : v)
    if (!c.is_zero()) return false;
  return true;
}

std::vector<HallElement> HallAlg::composition_generators() const {
  std::vector<HallElement> out;
  for (int v = 0; v < cat().quiver().n(); ++v) out.push_back(u_simple(v));
  return out;
}

std::vector<HallElement> HallAlg::singular_generators(const Dim& cap) const {
  std::set<int> seen;
  std::vector<HallElement> out;
  for (int v = 0; v < cat().quiver().n(); ++v) {
    HallElement e = u_simple(v);
    if (seen.insert(e.terms.begin()->first.cls).second) out.push_back(e);
  }
  if (!cat().is_tame()) return out;
  for (const Dim& e : degrees_below(cap)) {
    if (dim_is_zero(e)) continue;
    for (int cls : cat().classes_of_dim(e)) {
      const Decomp& dec = cat().decomp(cls);
      if (dec.empty()) continue;
      bool tube_only = true;
      int tube = -2;
      for (const auto& [lab, mult] : dec) {
        (void)mult;
        if (lab.kind != PartKind::Tube) {
          tube_only = false;
          break;
        }
        if (tube == -2) tube = lab.tube;
        if (lab.tube != tube) {
          tube_only = false;
          break;
        }
      }
      if (tube_only && seen.insert(cls).second) out.push_back(u(cls));
    }
  }
  return out;
}

GradedSubspace HallAlg::composition_span(const Dim& gamma) const {
  return graded_span(composition_generators(), gamma);
}

GradedSubspace HallAlg::singular_span(const Dim& gamma) const {
  return graded_span(singular_generators(gamma), gamma);
}

std::map<Dim, GradedSubspace> HallAlg::singular_span_all(const Dim& cap) const {
  return graded_span_all(singular_generators(cap), cap);
}

LDeltaResult HallAlg::l_delta(int n) const {
  if (mode_ != CoeffMode::FixedQ)
    throw UsageError("l_delta requires fixed-q coefficients");
  const Dim delta = cat().tame().delta;
  std::vector<std::vector<HallElement>> stages;  // x-bases of L_delta..L_{n d}
  for (int m = 1; m <= n; ++m) {
    Dim md = dim_scale(m, delta);
    GradedSubspace hs = singular_span(md);
    std::vector<HallElement> dgens = composition_generators();
    for (const auto& st : stages)
      for (const HallElement& x : st) dgens.push_back(x);
    GradedSubspace ds = graded_span(dgens, md);
    // x in L_{m delta}  iff  green_form(x, c) = 0 for the whole previous
    // stage D^s(m-1) in this degree; solve for the kernel of the pairing
    // matrix against the H^s basis.
    int r = hs.rank, s = ds.rank;
    std::vector<std::vector<Coeff>> Mt(s, std::vector<Coeff>(r, czero()));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < s; ++j)
        Mt[j][i] = green_form(hs.basis[i], ds.basis[j]);
    std::vector<std::vector<Coeff>> ker = kernel_coeff(Mt, r, cone(), czero());
    std::vector<HallElement> xs;
    for (const auto& w : ker) {
      HallElement x = zero();
      for (int i = 0; i < r; ++i) x = add(x, scale(w[i], hs.basis[i]));
      if (!x.is_zero()) xs.push_back(x);
    }
    stages.push_back(std::move(xs));
  }
  const std::vector<HallElement>& xs = stages.back();
  int l = int(xs.size());
  // Normalized dual bases: with G_{pr} = phi(x^p, omega(x^r)), set
  // y^t = sum_r (G^{-1})_{rt} x^r / (v - v^{-1}); then
  // phi(x^p, y^t) = delta_{pt} / (v - v^{-1}).
  std::vector<std::vector<Coeff>> G(l, std::vector<Coeff>(l, czero()));
  for (int p = 0; p < l; ++p)
    for (int r = 0; r < l; ++r) G[p][r] = green_form(xs[p], xs[r]);
  std::vector<std::vector<Coeff>> Gi = invert_coeff(G, cone(), czero());
  if (Gi.empty())
    throw UsageError("degenerate Green pairing on L_{" + std::to_string(n) +
                     "delta}: dual basis does not exist");
  Coeff vfac = cone() / (cv(1) - cv(-1));
  std::vector<HallElement> ys;
  for (int t = 0; t < l; ++t) {
    HallElement y = zero();
    for (int r = 0; r < l; ++r) y = add(y, scale(Gi[r][t] * vfac, xs[r]));
    ys.push_back(y);
  }
  LDeltaResult out;
  out.space.degree = dim_scale(n, delta);
  out.space.basis = xs;
  out.space.rank = l;
  out.x = xs;
  out.y_mirror = ys;
  return out;
}

bool HallAlg::centrality_check(const HallElement& x,
                               const std::vector<HallElement>& gens,
                               const Dim& degree_bound) const {
  auto dx = degree(x);
  if (!dx) throw UsageError("centrality_check requires a homogeneous element");
  for (const HallElement& g : gens) {
    auto dg = degree(g);
    if (!dg) throw UsageError("centrality_check requires homogeneous generators");
    if (!dim_leq(dim_add(*dx, *dg), degree_bound)) continue;
    if (!eq(multiply(x, g), multiply(g, x))) return false;
  }
  return true;
}

std::string HallAlg::to_string(const HallElement& a) const {
  if (a.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, c] : a.terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    if (!dim_is_zero(t.mu)) os << " K" << dim_to_string(t.mu);
    if (t.cls != cat().zero_class())
      os << " u[" << cat().class_to_string(t.cls) << "]";
    else if (dim_is_zero(t.mu))
      os << " 1";
  }
  return os.str();
}

std::string HallAlg::to_json(const HallElement& a) const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [t, c] : a.terms) {
    nlohmann::json j;
    j["torus"] = t.mu;
    j["module"] = cat().class_to_string(t.cls);
    j["coeff"] = coeff_json(c);
    arr.push_back(j);
  }
  return arr.dump();
}

std::string HallAlg::tensor_to_string(const TensorElement& t) const {
  if (t.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : t) {
    if (!first) os << " + ";
    first = false;
    HallElement l = ku(k.first.mu, k.first.cls, cone());
    HallElement r = ku(k.second.mu, k.second.cls, cone());
    os << "(" << c.to_string() << ") [" << to_string(l) << "] (x) ["
       << to_string(r) << "]";
  }
  return os.str();
}

HopfReport hopf_suite(const HallAlg& alg, int total_dim_bound) {
  HopfReport rep;
  Catalog& cat = alg.cat();
  const int n = cat.quiver().n();
  const int guard = 2 * total_dim_bound;  // pair products reach twice the bound
  const int zcls = cat.zero_class();

  std::vector<int> classes;
  Dim d(n, 0);
  for (;;) {
    if (!dim_is_zero(d))
      for (int cls : cat.classes_of_dim(d)) classes.push_back(cls);
    int i = 0;
    while (i < n) {
      ++d[i];
      if (dim_total(d) <= total_dim_bound) break;
      d[i++] = 0;
    }
    if (i == n) break;
  }
  rep.classes = int(classes.size());

  std::map<int, TensorElement> deltas;
  for (int a : classes) deltas[a] = alg.comultiply(alg.u(a), guard);

  for (int a : classes) {
    HallElement ua = alg.u(a);
    const TensorElement& Da = deltas[a];
    HallElement e1 = alg.zero(), e2 = alg.zero();
    for (const auto& [k, c] : Da) {
      if (k.first.cls == zcls)
        e1 = HallAlg::add(e1, alg.ku(k.second.mu, k.second.cls, c));
      if (k.second.cls == zcls)
        e2 = HallAlg::add(e2, alg.ku(k.first.mu, k.first.cls, c));
    }
    rep.counit_ok =
        rep.counit_ok && HallAlg::eq(e1, ua) && HallAlg::eq(e2, ua);

    HallElement want = HallAlg::scale(alg.counit(ua), alg.one());
    rep.antipode_ax = rep.antipode_ax &&
                      HallAlg::eq(alg.collapse_s1(Da, 1), want) &&
                      HallAlg::eq(alg.collapse_1s(Da, 1), want);
    rep.methods_agree =
        rep.methods_agree &&
        HallAlg::eq(alg.antipode(ua, 1, guard), alg.antipode(ua, 2, guard));
  }

  for (int a : classes)
    for (int b : classes) {
      ++rep.pairs;
      TensorElement lhs =
          alg.comultiply(alg.multiply(alg.u(a), alg.u(b)), guard);
      TensorElement rhs = alg.tensor_multiply(deltas.at(a), deltas.at(b));
      rep.delta_mult = rep.delta_mult && HallAlg::tensor_eq(lhs, rhs);
    }
  return rep;
}

}  // namespace hallwb
