#include "hallwb/hallnum.hpp"

#include <algorithm>
#include <cassert>

#include "hallwb/budget.hpp"
#include "hallwb/linalg.hpp"

namespace hallwb {

// dim Hom between classes via the cached indecomposable Hom table.
int hom_cls(Catalog& cat, int A, int B) {
  long h = 0;
  for (const auto& [la, ma] : cat.decomp(A))
    for (const auto& [lb, mb] : cat.decomp(B))
      h += long(ma) * mb * cat.hom_indec(cat.indec_id(la), cat.indec_id(lb));
  return int(h);
}

namespace {

// Rows cutting out {x : A x in the row space of U}. U may have 0 rows.
Mat containment_rows(const Mat& A, const Mat& U) {
  const GF& F = *A.F;
  int d = A.r;
  if (U.r == d) return Mat::zero(F, 0, A.c);  // whole space, no constraint
  Mat C = U.r == 0 ? Mat::identity(F, d) : complete_to_invertible(transpose(U));
  Mat proj(F, d - U.r, d);  // last rows of C^{-1}
  Mat Ci = inverse(C);
  for (int i = 0; i < d - U.r; ++i)
    for (int j = 0; j < d; ++j) proj.at(i, j) = Ci.at(U.r + i, j);
  return mat_mul(proj, A);
}

struct SubDfs {
  Catalog& cat;
  const Rep& L;
  const Dim& beta;
  std::vector<int> order;  // vertices, every out-neighbour appears earlier
  std::vector<Mat> rows;   // chosen row bases, indexed by vertex
  std::map<std::pair<int, int>, BigInt>& out;

  void run(size_t k) {
    const GF& F = *L.F;
    const Quiver& Q = cat.quiver();
    if (k == order.size()) {
      Budget::charge();
      auto [sub, quot] = sub_quot(L, rows);
      int cs = cat.classify(sub), cq = cat.classify(quot);
      out[{cs, cq}] += BigInt(1);
      return;
    }
    int v = order[k];
    // Constraint space: x with L_a x inside the chosen U_{t(a)} for every
    // arrow a out of v (targets are all chosen already).
    Mat cons = Mat::zero(F, 0, L.d[v]);
    for (size_t a = 0; a < Q.arrows.size(); ++a)
      if (Q.arrows[a].s == v)
        cons = vstack(cons, containment_rows(L.maps[a], rows[Q.arrows[a].t]));
    Mat V = kernel(cons);  // columns span the admissible space
    if (V.c < beta[v]) return;
    SubspaceIter it(F, V.c, int(beta[v]));
    Mat W;
    while (it.next(&W)) {
      rows[v] = mat_mul(W, transpose(V));
      run(k + 1);
    }
    rows[v] = Mat();
  }
};

}  // namespace

const std::map<std::pair<int, int>, BigInt>& HallEngine::subquot_counts(
    int Lcls, const Dim& beta) {
  auto key = std::make_pair(Lcls, beta);
  auto it = sub_cache_.find(key);
  if (it != sub_cache_.end()) return it->second;
  auto& out = sub_cache_[key];
  Rep L = cat_.rep_of(Lcls);
  bool fits = beta.size() == L.d.size();
  for (size_t i = 0; fits && i < beta.size(); ++i)
    fits = beta[i] >= 0 && beta[i] <= L.d[i];
  if (fits) {
    SubDfs dfs{cat_, L, beta, cat_.quiver().admissible_sink_order(),
               std::vector<Mat>(L.d.size()), out};
    dfs.run(0);
  }
  return out;
}

BigInt HallEngine::hall_sub(int Mcls, int Ncls, int Lcls) {
  Dim dl = cat_.dim_of(Lcls);
  Dim want = dim_add(cat_.dim_of(Mcls), cat_.dim_of(Ncls));
  if (dl != want) return BigInt(0);
  const auto& table = subquot_counts(Lcls, cat_.dim_of(Ncls));
  auto it = table.find({Ncls, Mcls});
  return it == table.end() ? BigInt(0) : it->second;
}

BigInt HallEngine::hall_number_via_sequences(int Mcls, int Ncls, int Lcls) {
  if (cat_.dim_of(Lcls) != dim_add(cat_.dim_of(Mcls), cat_.dim_of(Ncls)))
    return BigInt(0);
  Rep N = cat_.rep_of(Ncls), L = cat_.rep_of(Lcls);
  const GF& F = *N.F;
  auto basis = hom_space(N, L);
  int h = int(basis.size());
  int n = int(N.d.size());
  // Sweep all q^h homomorphisms; keep monos with cokernel in class M.
  std::vector<GF::El> digits(h, 0);
  BigInt monos(0);
  bool more = true;
  if (h == 0) digits.clear();
  while (more) {
    Budget::charge();
    std::vector<Mat> f(n);
    for (int v = 0; v < n; ++v) {
      f[v] = Mat::zero(F, int(L.d[v]), int(N.d[v]));
      for (int k = 0; k < h; ++k)
        if (digits[k]) f[v] = mat_add(f[v], mat_scale(basis[k][v], digits[k]));
    }
    bool mono = true;
    for (int v = 0; v < n && mono; ++v) mono = rank(f[v]) == N.d[v];
    if (mono) {
      std::vector<Mat> rows(n);
      for (int v = 0; v < n; ++v) rows[v] = transpose(f[v]);
      if (cat_.classify(sub_quot(L, rows).second) == Mcls) monos += BigInt(1);
    }
    more = false;
    for (int k = 0; k < h; ++k) {
      digits[k] = GF::El((digits[k] + 1) % F.q);
      if (digits[k]) {
        more = true;
        break;
      }
    }
  }
  BigInt autN = cat_.aut_order(Ncls);
  assert(monos % autN == 0 && "mono count not divisible by |Aut N|");
  return monos / autN;
}

const std::map<int, BigInt>& HallEngine::ext_distribution(int Mcls, int Ncls) {
  auto key = std::make_pair(Mcls, Ncls);
  auto it = ext_cache_.find(key);
  if (it != ext_cache_.end()) return it->second;
  auto& out = ext_cache_[key];
  Rep M = cat_.rep_of(Mcls), N = cat_.rep_of(Ncls);
  const GF& F = *M.F;
  Mat A = ext_presentation_matrix(M, N);
  int R = A.r;
  // Coset representatives of C^1 / im d: standard vectors off the pivot
  // columns of the row-reduced image.
  Mat img = column_space(A);
  Mat red = transpose(img);
  std::vector<bool> pivot(R, false);
  {
    Mat tmp = red;
    rref_inplace(tmp);
    for (int i = 0; i < tmp.r; ++i)
      for (int j = 0; j < tmp.c; ++j)
        if (tmp.at(i, j)) {
          pivot[j] = true;
          break;
        }
  }
  std::vector<int> comp;
  for (int j = 0; j < R; ++j)
    if (!pivot[j]) comp.push_back(j);
  int e = int(comp.size());
  assert(e == ext_dim_direct(M, N));
  std::vector<GF::El> digits(e, 0);
  bool more = true;
  while (more) {
    Budget::charge();
    std::vector<GF::El> z(R, 0);
    for (int k = 0; k < e; ++k) z[comp[k]] = digits[k];
    out[cat_.classify(middle_term(M, N, z))] += BigInt(1);
    more = false;
    for (int k = 0; k < e; ++k) {
      digits[k] = GF::El((digits[k] + 1) % F.q);
      if (digits[k]) {
        more = true;
        break;
      }
    }
  }
  return out;
}

BigInt HallEngine::hall_number_riedtmann(int Mcls, int Ncls, int Lcls) {
  if (cat_.dim_of(Lcls) != dim_add(cat_.dim_of(Mcls), cat_.dim_of(Ncls)))
    return BigInt(0);
  const auto& dist = ext_distribution(Mcls, Ncls);
  auto it = dist.find(Lcls);
  if (it == dist.end()) return BigInt(0);
  // g = |Ext(M,N)_L| |Aut L| / (|Aut M| |Aut N| |Hom(M,N)|)
  BigInt num = it->second * cat_.aut_order(Lcls);
  BigInt den = cat_.aut_order(Mcls) * cat_.aut_order(Ncls) *
               big_pow(BigInt(long(cat_.q())), hom_cls(cat_, Mcls, Ncls));
  assert(num % den == 0 && "Riedtmann quotient not integral");
  return num / den;
}

BigInt HallEngine::hall_number(int Mcls, int Ncls, int Lcls, int route) {
  switch (route) {
    case 1:
      return hall_sub(Mcls, Ncls, Lcls);
    case 2:
      return hall_number_via_sequences(Mcls, Ncls, Lcls);
    case 3:
      return hall_number_riedtmann(Mcls, Ncls, Lcls);
    default:
      throw UsageError("unknown Hall-number route " + std::to_string(route));
  }
}

long variety_dim(const Quiver& Q, const Dim& d) {
  long s = 0;
  for (const Arrow& a : Q.arrows) s += long(d[a.s]) * d[a.t];
  return s;
}

long HallEngine::orbit_dim(int cls) {
  // dim GL_gamma - dim stabilizer; the stabilizer of a point of E_gamma is
  // Aut(L), open in End(L), so its dimension is dim End(L).
  const Dim d = cat_.dim_of(cls);
  long g = 0;
  for (int di : d) g += long(di) * di;
  return g - cat_.end_dim(cls);
}

ExtSet HallEngine::ext_set(int Mcls, int Ncls) {
  ExtSet out;
  out.Mcls = Mcls;
  out.Ncls = Ncls;
  out.degree = dim_add(cat_.dim_of(Mcls), cat_.dim_of(Ncls));
  for (int L : cat_.classes_of_dim(out.degree)) {
    BigInt g = hall_sub(Mcls, Ncls, L);
    if (g != 0) out.members[L] = {g, orbit_dim(L)};
  }
  return out;
}

BigInt HallEngine::filtration_number(const std::vector<int>& parts, int Lcls) {
  if (parts.empty()) return Lcls == cat_.zero_class() ? BigInt(1) : BigInt(0);
  if (parts.size() == 1) return parts[0] == Lcls ? BigInt(1) : BigInt(0);
  auto key = std::make_pair(parts, Lcls);
  auto it = filt_cache_.find(key);
  if (it != filt_cache_.end()) return it->second;
  Dim rest = cat_.dim_of(Lcls);
  rest = dim_sub(rest, cat_.dim_of(parts[0]));
  BigInt total(0);
  bool ok = true;
  for (long x : rest) ok = ok && x >= 0;
  if (ok) {
    std::vector<int> tail(parts.begin() + 1, parts.end());
    for (int mu : cat_.classes_of_dim(rest)) {
      BigInt top = hall_sub(parts[0], mu, Lcls);
      if (top != 0) total += top * filtration_number(tail, mu);
    }
  }
  filt_cache_[key] = total;
  return total;
}

}  // namespace hallwb
