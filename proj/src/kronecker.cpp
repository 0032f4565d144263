#include "hallwb/kronecker.hpp"

#include <cassert>

#include "hallwb/budget.hpp"
#include "hallwb/gfpoly.hpp"

namespace hallwb {

namespace {

Mat companion(const GF& F, const GFPoly& g) {
  int n = g.deg();
  Mat C = Mat::zero(F, n, n);
  for (int i = 0; i + 1 < n; ++i) C.at(i + 1, i) = 1;
  for (int i = 0; i < n; ++i) C.at(i, n - 1) = F.neg(g.c[i]);
  return C;
}

GFPoly poly_pow(const GFPoly& p, int m) {
  GFPoly r = GFPoly::constant(*p.F, 1);
  for (int i = 0; i < m; ++i) r = poly_mul(r, p);
  return r;
}

}  // namespace

Rep kron_regular(QuiverPtr K, const GF* F, const std::string& point, int m) {
  if (K->arrows.size() != 2 || K->n() != 2)
    throw UsageError("kron_regular needs the two-arrow Kronecker quiver");
  if (m < 1) throw UsageError("regular length must be positive");
  Mat fa, fb;
  if (point == "inf") {
    fa = Mat::zero(*F, m, m);
    for (int i = 0; i + 1 < m; ++i) fa.at(i, i + 1) = 1;
    fb = Mat::identity(*F, m);
  } else if (point.find('x') != std::string::npos) {
    GFPoly p = poly_parse(*F, point);
    if (!poly_irreducible(p)) throw UsageError("point is not irreducible: " + point);
    fa = Mat::identity(*F, p.deg() * m);
    fb = companion(*F, poly_pow(p, m));
  } else {
    unsigned long lam = std::stoul(point);
    if (lam >= F->q) throw UsageError("point id out of range: " + point);
    GFPoly lin(*F, {F->neg(GF::El(lam)), 1});  // x - lambda
    fa = Mat::identity(*F, m);
    fb = companion(*F, poly_pow(lin, m));
  }
  Dim d = {fa.c, fa.r};
  return rep_from_maps(K, F, d, {fa, fb});
}

std::vector<std::pair<std::string, int>> closed_points(const GF& F,
                                                       int maxdeg) {
  std::vector<std::pair<std::string, int>> pts;
  pts.push_back({"inf", 1});
  for (unsigned lam = 0; lam < F.q; ++lam)
    pts.push_back({std::to_string(lam), 1});
  for (int d = 2; d <= maxdeg; ++d)
    for (const GFPoly& p : monic_irreducibles(F, d))
      pts.push_back({p.to_string(), d});
  return pts;
}

KroneckerEmbedding KroneckerEmbedding::build(QuiverPtr Q, const GF* F,
                                             const TameData& T, int e) {
  KroneckerEmbedding E;
  E.Q = Q;
  E.F = F;
  if (e < 0) {
    for (int i = 0; i < Q->n(); ++i)
      if (T.delta[i] == 1) {
        e = i;
        break;
      }
  }
  if (e < 0 || T.delta[e] != 1)
    throw UsageError("no vertex with delta = 1 available for the embedding");
  E.e = e;
  E.P = rep_proj(Q, F, e);
  Dim want = dim_add(T.delta, E.P.d);

  // The unique preprojective indecomposable of dimension delta + dim P.
  // tau^- orbit totals can overshoot the target before other orbits reach it,
  // so allow a couple of delta-heights of slack before abandoning an orbit.
  const int cap = dim_total(want) + 2 * dim_total(T.delta);
  bool found = false;
  for (int j = 0; j < Q->n() && !found; ++j) {
    Rep M = rep_proj(Q, F, j);
    while (M.total_dim() > 0 && M.total_dim() <= cap) {
      if (M.d == want) {
        E.L = M;
        found = true;
        break;
      }
      M = tau_minus(M);
    }
  }
  if (!found) throw UsageError("embedding target module not found");

  E.phis = hom_space(E.P, E.L);
  if (E.phis.size() != 2)
    throw UsageError("embedding Hom(P, L) is not two-dimensional");
  // Every nonzero member of the pencil must be a monomorphism.
  for (unsigned c = 0; c <= F->q; ++c) {
    std::vector<Mat> phi;
    for (int x = 0; x < Q->n(); ++x) {
      Mat m = (c == F->q) ? E.phis[1][x]
                          : mat_add(E.phis[0][x],
                                    mat_scale(E.phis[1][x], GF::El(c)));
      phi.push_back(std::move(m));
    }
    int rk = 0;
    Mat st = Mat::zero(*F, 0, E.P.total_dim());
    // vertexwise block diagonal has full column rank iff each block does
    for (int x = 0; x < Q->n(); ++x) rk += rank(phi[x]);
    (void)st;
    if (rk != E.P.total_dim())
      throw UsageError("embedding pencil contains a non-monomorphism");
  }
  return E;
}

Rep KroneckerEmbedding::image(const Mat& fa, const Mat& fb) const {
  int m1 = fa.c, m2 = fa.r;
  assert(fb.c == m1 && fb.r == m2);
  Mat pencil = hstack(fa, fb);
  Mat cs = column_space(pencil);
  int t = m2 - cs.c;
  Mat ext = pencil;
  // complement of the image inside F^{m2}, spanned by standard vectors
  std::vector<int> comp;
  {
    Mat work = cs;
    int have = cs.c;
    for (int j = 0; j < m2 && int(comp.size()) < t; ++j) {
      Mat ej = Mat::zero(*F, m2, 1);
      ej.at(j, 0) = 1;
      Mat tryw = hstack(work, ej);
      if (rank(tryw) > have) {
        work = tryw;
        ++have;
        comp.push_back(j);
        ext = hstack(ext, ej);
      }
    }
    assert(int(comp.size()) == t);
  }
  Mat K = kernel(ext);  // columns (u; v; w), relations of the cover
  int r = K.c;

  // Y = L^{m1} (+) P^t with the L copies first.
  Rep Y = rep_zero(Q, F, Dim(Q->n(), 0));
  {
    bool first = true;
    for (int i = 0; i < m1; ++i) {
      Y = first ? L : direct_sum(Y, L);
      first = false;
    }
    for (int i = 0; i < t; ++i) {
      Y = first ? P : direct_sum(Y, P);
      first = false;
    }
    if (first) Y = rep_zero(Q, F, Dim(Q->n(), 0));
  }

  std::vector<Mat> rows;  // per vertex: row basis of im Phi
  for (int x = 0; x < Q->n(); ++x) {
    int Lx = L.d[x], Px = P.d[x];
    Mat Phi = Mat::zero(*F, m1 * Lx + t * Px, r * Px);
    for (int j = 0; j < r; ++j) {
      for (int i = 0; i < m1; ++i) {
        GF::El u = K.at(i, j), v = K.at(m1 + i, j);
        for (int rr = 0; rr < Lx; ++rr)
          for (int cc = 0; cc < Px; ++cc) {
            GF::El val = F->add(F->mul(u, phis[0][x].at(rr, cc)),
                                F->mul(v, phis[1][x].at(rr, cc)));
            Phi.at(i * Lx + rr, j * Px + cc) = val;
          }
      }
      for (int i = 0; i < t; ++i) {
        GF::El w = K.at(2 * m1 + i, j);
        for (int cc = 0; cc < Px; ++cc)
          Phi.at(m1 * Lx + i * Px + cc, j * Px + cc) = w;
      }
    }
    rows.push_back(transpose(column_space(Phi)));
  }
  return sub_quot(Y, rows).second;
}

}  // namespace hallwb
