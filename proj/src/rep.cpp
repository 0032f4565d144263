#include "hallwb/rep.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>

#include "hallwb/budget.hpp"

namespace hallwb {

namespace {

using Path = std::vector<int>;  // arrow indices, in traversal order

// All paths out of v0 (for projectives) or into v0 (for injectives),
// grouped by the far endpoint, in a deterministic DFS order.
std::vector<std::vector<Path>> paths_from(const Quiver& Q, int v0,
                                          bool forward) {
  std::vector<std::vector<Path>> basis(Q.n());
  Path cur;
  std::function<void(int)> dfs = [&](int at) {
    Budget::charge();
    if (forward) {
      basis[at].push_back(cur);
    } else {
      Path fwd(cur.rbegin(), cur.rend());
      basis[at].push_back(fwd);
    }
    for (int a = 0; a < int(Q.arrows.size()); ++a) {
      int nxt = -1;
      if (forward && Q.arrows[a].s == at) nxt = Q.arrows[a].t;
      if (!forward && Q.arrows[a].t == at) nxt = Q.arrows[a].s;
      if (nxt < 0) continue;
      cur.push_back(a);
      dfs(nxt);
      cur.pop_back();
    }
  };
  dfs(v0);
  return basis;
}

Rep rep_from_path_basis(QuiverPtr Qp, const GF* F,
                        const std::vector<std::vector<Path>>& basis,
                        bool prepend) {
  const Quiver& Q = *Qp;
  Rep M;
  M.Q = Qp;
  M.F = F;
  M.d.resize(Q.n());
  std::vector<std::map<Path, int>> index(Q.n());
  for (int i = 0; i < Q.n(); ++i) {
    M.d[i] = int(basis[i].size());
    for (int k = 0; k < M.d[i]; ++k) index[i][basis[i][k]] = k;
  }
  for (int a = 0; a < int(Q.arrows.size()); ++a) {
    int s = Q.arrows[a].s, t = Q.arrows[a].t;
    Mat A = Mat::zero(*F, M.d[t], M.d[s]);
    for (int col = 0; col < M.d[s]; ++col) {
      Path ext;
      if (prepend) {
        // injective case: the column path starts with arrow a and continues
        // as some basis path of the target vertex.
        const Path& p = basis[s][col];
        if (p.empty() || p[0] != a) continue;
        ext.assign(p.begin() + 1, p.end());
      } else {
        ext = basis[s][col];
        ext.push_back(a);
      }
      auto it = index[t].find(ext);
      if (it != index[t].end()) A.at(it->second, col) = 1;
    }
    M.maps.push_back(std::move(A));
  }
  rep_validate(M);
  return M;
}


}  // namespace

// Extend the columns of V to an invertible square matrix using standard
// basis vectors; returns the full matrix and the original column count.
Mat complete_to_invertible(const Mat& V) {
  const GF* F = V.F;
  int d = V.r;
  Mat C = V;
  int have = rank(C);
  if (have != V.c) throw UsageError("basis columns are dependent");
  for (int j = 0; j < d && C.c < d; ++j) {
    Mat e = Mat::zero(*F, d, 1);
    e.at(j, 0) = 1;
    Mat tryC = hstack(C, e);
    if (rank(tryC) > have) {
      C = tryC;
      ++have;
    }
  }
  if (C.c != d) throw UsageError("failed to complete basis");
  return C;
}

Rep rep_zero(QuiverPtr Qp, const GF* F, Dim d) {
  Rep M;
  M.Q = Qp;
  M.F = F;
  M.d = std::move(d);
  for (const Arrow& a : Qp->arrows)
    M.maps.push_back(Mat::zero(*F, M.d[a.t], M.d[a.s]));
  return M;
}

Rep rep_simple(QuiverPtr Qp, const GF* F, int vertex) {
  Dim d(Qp->n(), 0);
  d[vertex] = 1;
  return rep_zero(Qp, F, d);
}

Rep rep_proj(QuiverPtr Qp, const GF* F, int vertex) {
  return rep_from_path_basis(Qp, F, paths_from(*Qp, vertex, true), false);
}

Rep rep_inj(QuiverPtr Qp, const GF* F, int vertex) {
  return rep_from_path_basis(Qp, F, paths_from(*Qp, vertex, false), true);
}

Rep direct_sum(const Rep& A, const Rep& B) {
  assert(A.Q->name == B.Q->name && A.F == B.F);
  Rep M;
  M.Q = A.Q;
  M.F = A.F;
  M.d = dim_add(A.d, B.d);
  for (size_t a = 0; a < A.maps.size(); ++a)
    M.maps.push_back(block_diag(A.maps[a], B.maps[a]));
  return M;
}

Rep rep_from_maps(QuiverPtr Qp, const GF* F, Dim d, std::vector<Mat> maps) {
  Rep M;
  M.Q = Qp;
  M.F = F;
  M.d = std::move(d);
  M.maps = std::move(maps);
  rep_validate(M);
  return M;
}

void rep_validate(const Rep& M) {
  if (int(M.d.size()) != M.Q->n())
    throw UsageError("dimension vector length mismatch");
  if (M.maps.size() != M.Q->arrows.size())
    throw UsageError("arrow map count mismatch");
  for (size_t a = 0; a < M.maps.size(); ++a) {
    const Arrow& ar = M.Q->arrows[a];
    if (M.maps[a].r != M.d[ar.t] || M.maps[a].c != M.d[ar.s])
      throw UsageError("map shape mismatch on arrow " + ar.name);
  }
}

std::pair<Rep, Rep> sub_quot(const Rep& M, const std::vector<Mat>& rows) {
  const Quiver& Q = *M.Q;
  int n = Q.n();
  std::vector<Mat> C, Cinv;
  Dim k(n);
  for (int i = 0; i < n; ++i) {
    k[i] = rows[i].r;
    Mat full = complete_to_invertible(transpose(rows[i]));
    C.push_back(full);
    Cinv.push_back(inverse(full));
  }
  Rep S = rep_zero(M.Q, M.F, k), T = rep_zero(M.Q, M.F, dim_sub(M.d, k));
  for (size_t a = 0; a < M.maps.size(); ++a) {
    int s = Q.arrows[a].s, t = Q.arrows[a].t;
    Mat hat = mat_mul(Cinv[t], mat_mul(M.maps[a], C[s]));
    for (int r = k[t]; r < M.d[t]; ++r)
      for (int c = 0; c < k[s]; ++c)
        if (hat.at(r, c) != 0)
          throw UsageError("rows do not span an invariant subspace");
    for (int r = 0; r < k[t]; ++r)
      for (int c = 0; c < k[s]; ++c) S.maps[a].at(r, c) = hat.at(r, c);
    for (int r = k[t]; r < M.d[t]; ++r)
      for (int c = k[s]; c < M.d[s]; ++c)
        T.maps[a].at(r - k[t], c - k[s]) = hat.at(r, c);
  }
  return {S, T};
}

Mat ext_presentation_matrix(const Rep& M, const Rep& N) {
  const Quiver& Q = *M.Q;
  const GF* F = M.F;
  int n = Q.n();
  std::vector<int> coloff(n + 1, 0);
  for (int i = 0; i < n; ++i) coloff[i + 1] = coloff[i] + N.d[i] * M.d[i];
  int rows = 0;
  for (const Arrow& a : Q.arrows) rows += N.d[a.t] * M.d[a.s];
  Mat A = Mat::zero(*F, rows, coloff[n]);
  int roff = 0;
  for (size_t ai = 0; ai < Q.arrows.size(); ++ai) {
    const Arrow& ar = Q.arrows[ai];
    const Mat& Na = N.maps[ai];
    const Mat& Ma = M.maps[ai];
    for (int r = 0; r < N.d[ar.t]; ++r)
      for (int c = 0; c < M.d[ar.s]; ++c) {
        int row = roff + r * M.d[ar.s] + c;
        // (N_a f_s)[r][c] contributes N_a[r][k] * f_s[k][c]
        for (int kk = 0; kk < N.d[ar.s]; ++kk)
          if (Na.at(r, kk) != 0)
            A.at(row, coloff[ar.s] + kk * M.d[ar.s] + c) =
                F->add(A.at(row, coloff[ar.s] + kk * M.d[ar.s] + c),
                       Na.at(r, kk));
        // -(f_t M_a)[r][c] contributes -M_a[k][c] * f_t[r][k]
        for (int kk = 0; kk < M.d[ar.t]; ++kk)
          if (Ma.at(kk, c) != 0)
            A.at(row, coloff[ar.t] + r * M.d[ar.t] + kk) =
                F->sub(A.at(row, coloff[ar.t] + r * M.d[ar.t] + kk),
                       Ma.at(kk, c));
      }
    roff += N.d[ar.t] * M.d[ar.s];
  }
  return A;
}

std::vector<std::vector<Mat>> hom_space(const Rep& M, const Rep& N) {
  const Quiver& Q = *M.Q;
  int n = Q.n();
  Mat A = ext_presentation_matrix(M, N);
  Mat K = kernel(A);
  std::vector<int> coloff(n + 1, 0);
  for (int i = 0; i < n; ++i) coloff[i + 1] = coloff[i] + N.d[i] * M.d[i];
  std::vector<std::vector<Mat>> out;
  for (int j = 0; j < K.c; ++j) {
    std::vector<Mat> f;
    for (int i = 0; i < n; ++i) {
      Mat fi = Mat::zero(*M.F, N.d[i], M.d[i]);
      for (int r = 0; r < N.d[i]; ++r)
        for (int c = 0; c < M.d[i]; ++c)
          fi.at(r, c) = K.at(coloff[i] + r * M.d[i] + c, j);
      f.push_back(std::move(fi));
    }
    out.push_back(std::move(f));
  }
  return out;
}

int hom_dim(const Rep& M, const Rep& N) {
  Mat A = ext_presentation_matrix(M, N);
  int dom = A.c;
  return dom - rank(A);
}

int ext_dim_direct(const Rep& M, const Rep& N) {
  Mat A = ext_presentation_matrix(M, N);
  return A.r - rank(A);
}

Rep middle_term(const Rep& M, const Rep& N, const std::vector<GF::El>& z_flat) {
  const Quiver& Q = *M.Q;
  Rep E = rep_zero(M.Q, M.F, dim_add(N.d, M.d));
  int roff = 0;
  for (size_t a = 0; a < Q.arrows.size(); ++a) {
    const Arrow& ar = Q.arrows[a];
    for (int r = 0; r < N.d[ar.t]; ++r)
      for (int c = 0; c < N.d[ar.s]; ++c)
        E.maps[a].at(r, c) = N.maps[a].at(r, c);
    for (int r = 0; r < M.d[ar.t]; ++r)
      for (int c = 0; c < M.d[ar.s]; ++c)
        E.maps[a].at(N.d[ar.t] + r, N.d[ar.s] + c) = M.maps[a].at(r, c);
    for (int r = 0; r < N.d[ar.t]; ++r)
      for (int c = 0; c < M.d[ar.s]; ++c)
        E.maps[a].at(r, N.d[ar.s] + c) = z_flat[roff + r * M.d[ar.s] + c];
    roff += N.d[ar.t] * M.d[ar.s];
  }
  return E;
}

Rep reflect_sink(const Rep& M, int v) {
  const Quiver& Q = *M.Q;
  if (!Q.is_sink(v)) throw UsageError("reflection vertex is not a sink");
  std::vector<int> in;
  for (int a = 0; a < int(Q.arrows.size()); ++a)
    if (Q.arrows[a].t == v) in.push_back(a);
  Mat S = Mat::zero(*M.F, M.d[v], 0);
  for (int a : in) S = hstack(S, M.maps[a]);
  Mat K = kernel(S);  // columns; dim = sum d_s - rank
  auto Q2 = std::make_shared<Quiver>(Q.reversed_at(v));
  Dim d2 = M.d;
  d2[v] = K.c;
  Rep R = rep_zero(Q2, M.F, d2);
  int off = 0;
  for (size_t a = 0; a < Q.arrows.size(); ++a) {
    if (Q.arrows[a].t != v) {
      R.maps[a] = M.maps[a];
      continue;
    }
    int src = Q.arrows[a].s;
    for (int r = 0; r < M.d[src]; ++r)
      for (int c = 0; c < K.c; ++c) R.maps[a].at(r, c) = K.at(off + r, c);
    off += M.d[src];
  }
  return R;
}

Rep reflect_source(const Rep& M, int v) {
  const Quiver& Q = *M.Q;
  if (!Q.is_source(v)) throw UsageError("reflection vertex is not a source");
  std::vector<int> out;
  for (int a = 0; a < int(Q.arrows.size()); ++a)
    if (Q.arrows[a].s == v) out.push_back(a);
  int trows = 0;
  for (int a : out) trows += M.d[Q.arrows[a].t];
  Mat T = Mat::zero(*M.F, 0, M.d[v]);
  for (int a : out) T = vstack(T, M.maps[a]);
  Mat im = column_space(T);
  Mat C = complete_to_invertible(
      im.c ? im : Mat::zero(*M.F, trows, 0));
  Mat Ci = inverse(C);
  int c2 = trows - im.c;  // cokernel dimension
  auto Q2 = std::make_shared<Quiver>(Q.reversed_at(v));
  Dim d2 = M.d;
  d2[v] = c2;
  Rep R = rep_zero(Q2, M.F, d2);
  int off = 0;
  for (size_t a = 0; a < Q.arrows.size(); ++a) {
    if (Q.arrows[a].s != v) {
      R.maps[a] = M.maps[a];
      continue;
    }
    int tgt = Q.arrows[a].t;
    // projection block: last c2 rows of C^{-1}, columns of this summand
    for (int r = 0; r < c2; ++r)
      for (int c = 0; c < M.d[tgt]; ++c)
        R.maps[a].at(r, c) = Ci.at(im.c + r, off + c);
    off += M.d[tgt];
  }
  return R;
}

Rep tau_plus(const Rep& M0) {
  QuiverPtr Q0 = M0.Q;
  auto order = Q0->admissible_sink_order();
  Rep M = M0;
  for (int v : order) M = reflect_sink(M, v);
  assert(M.Q->arrows.size() == Q0->arrows.size());
  for (size_t a = 0; a < Q0->arrows.size(); ++a)
    assert(M.Q->arrows[a].s == Q0->arrows[a].s &&
           M.Q->arrows[a].t == Q0->arrows[a].t);
  M.Q = Q0;
  return M;
}

Rep tau_minus(const Rep& M0) {
  QuiverPtr Q0 = M0.Q;
  auto order = Q0->admissible_sink_order();
  Rep M = M0;
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    M = reflect_source(M, *it);
  assert(M.Q->arrows.size() == Q0->arrows.size());
  for (size_t a = 0; a < Q0->arrows.size(); ++a)
    assert(M.Q->arrows[a].s == Q0->arrows[a].s &&
           M.Q->arrows[a].t == Q0->arrows[a].t);
  M.Q = Q0;
  return M;
}

}  // namespace hallwb
