#include "hallwb/tame.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>

#include "hallwb/budget.hpp"
#include "hallwb/numbers.hpp"

namespace hallwb {

namespace {

using RatMat = std::vector<std::vector<BigRat>>;

RatMat sym_cartan(const Quiver& Q) {
  int n = Q.n();
  RatMat B(n, std::vector<BigRat>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Dim ei(n, 0), ej(n, 0);
      ei[i] = 1;
      ej[j] = 1;
      B[i][j] = BigRat(Q.sym(ei, ej));
    }
  return B;
}

BigRat rat_det(RatMat A) {
  int n = int(A.size());
  BigRat det = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (A[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return BigRat(0);
    if (piv != col) {
      std::swap(A[piv], A[col]);
      det = -det;
    }
    det *= A[col][col];
    BigRat inv = BigRat(1) / A[col][col];
    for (int r = col + 1; r < n; ++r) {
      if (A[r][col] == 0) continue;
      BigRat f = A[r][col] * inv;
      for (int c = col; c < n; ++c) A[r][c] -= f * A[col][c];
    }
  }
  return det;
}

// Nullspace basis of an n x n rational matrix.
std::vector<std::vector<BigRat>> rat_kernel(RatMat A) {
  int n = int(A.size());
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int piv = -1;
    for (int r = row; r < n; ++r)
      if (A[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(A[piv], A[row]);
    BigRat inv = BigRat(1) / A[row][col];
    for (int c = 0; c < n; ++c) A[row][c] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == row || A[r][col] == 0) continue;
      BigRat f = A[r][col];
      for (int c = 0; c < n; ++c) A[r][c] -= f * A[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  std::vector<std::vector<BigRat>> ker;
  std::vector<bool> is_piv(n, false);
  for (int c : pivots) is_piv[c] = true;
  for (int free = 0; free < n; ++free) {
    if (is_piv[free]) continue;
    std::vector<BigRat> v(n, 0);
    v[free] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -A[i][free];
    ker.push_back(std::move(v));
  }
  return ker;
}

bool all_principal_minors_nonneg(const RatMat& B) {
  int n = int(B.size());
  if (n > 16) throw UsageError("quiver too large for exact classification");
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    RatMat sub(idx.size(), std::vector<BigRat>(idx.size()));
    for (size_t a = 0; a < idx.size(); ++a)
      for (size_t b = 0; b < idx.size(); ++b) sub[a][b] = B[idx[a]][idx[b]];
    if (rat_det(sub) < 0) return false;
  }
  return true;
}

bool leading_minors_positive(const RatMat& B) {
  int n = int(B.size());
  for (int k = 1; k <= n; ++k) {
    RatMat sub(k, std::vector<BigRat>(k));
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) sub[a][b] = B[a][b];
    if (!(rat_det(sub) > 0)) return false;
  }
  return true;
}

Dim apply_long_mat(const std::vector<std::vector<long>>& M, const Dim& d) {
  int n = int(M.size());
  Dim r(n, 0);
  for (int i = 0; i < n; ++i) {
    long s = 0;
    for (int j = 0; j < n; ++j) s += M[i][j] * d[j];
    r[i] = int(s);
  }
  return r;
}

}  // namespace

ReprType classify_quiver(const Quiver& Q) {
  RatMat B = sym_cartan(Q);
  if (leading_minors_positive(B)) return ReprType::Finite;
  if (!all_principal_minors_nonneg(B)) return ReprType::Wild;
  auto ker = rat_kernel(B);
  if (ker.size() != 1) return ReprType::Wild;
  for (const auto& x : ker[0])
    if (x == 0) return ReprType::Wild;  // radical must have full support
  return ReprType::Tame;
}

TameData TameData::compute(QuiverPtr Qp) {
  const Quiver& Q = *Qp;
  if (classify_quiver(Q) != ReprType::Tame)
    throw UsageError("quiver '" + Q.name + "' is not of tame type");
  int n = Q.n();

  // delta: primitive integral radical generator with positive entries.
  auto ker = rat_kernel(sym_cartan(Q));
  assert(ker.size() == 1);
  BigInt lcm_den = 1;
  for (const auto& x : ker[0])
    lcm_den = boost::multiprecision::lcm(lcm_den,
                                         boost::multiprecision::denominator(x));
  std::vector<BigInt> num(n);
  BigInt g = 0;
  for (int i = 0; i < n; ++i) {
    num[i] = boost::multiprecision::numerator(ker[0][i] * BigRat(lcm_den));
    g = boost::multiprecision::gcd(g, num[i]);
  }
  TameData T;
  T.Q = Qp;
  T.delta.resize(n);
  bool neg = false;
  for (int i = 0; i < n; ++i) {
    BigInt e = num[i] / g;
    if (e < 0) neg = true;
    T.delta[i] = int(e.convert_to<long>());
  }
  if (neg)
    for (int& x : T.delta) x = -x;
  for (int x : T.delta)
    if (x <= 0) throw UsageError("radical generator is not positive");

  // Defect-zero positive real roots <= delta: the regular real-root dims.
  std::vector<Dim> sbar;
  Dim a(n, 0);
  for (;;) {
    int i = 0;
    while (i < n && a[i] == T.delta[i]) a[i++] = 0;
    if (i == n) break;
    a[i]++;
    if (Q.euler(a, a) == 1 && T.defect(a) == 0) sbar.push_back(a);
  }
  std::sort(sbar.begin(), sbar.end());

  // Partition into tau-orbits; keep orbits summing to delta (quasi-simples).
  auto cinv = Q.coxeter_inverse();
  std::map<Dim, bool> seen;
  for (const Dim& d : sbar) seen[d] = false;
  for (const Dim& start : sbar) {
    if (seen[start]) continue;
    std::vector<Dim> orbit;
    Dim cur = start;
    do {
      assert(seen.count(cur) && "tau-orbit escapes the defect-zero root set");
      seen[cur] = true;
      orbit.push_back(cur);
      cur = apply_long_mat(cinv, cur);
      Budget::charge();
    } while (cur != start && int(orbit.size()) <= int(sbar.size()));
    assert(cur == start && "tau-orbit failed to close");
    Dim sum(n, 0);
    for (const Dim& d : orbit) sum = dim_add(sum, d);
    if (sum != T.delta) continue;
    // Rotate so the lex-least member comes first.
    auto mn = std::min_element(orbit.begin(), orbit.end());
    std::rotate(orbit.begin(), mn, orbit.end());
    Tube tube;
    tube.simples = std::move(orbit);
    T.tubes.push_back(std::move(tube));
  }
  std::sort(T.tubes.begin(), T.tubes.end(),
            [](const Tube& x, const Tube& y) {
              return x.simples[0] < y.simples[0];
            });

  int sum_r_minus_1 = 0;
  for (const Tube& t : T.tubes) sum_r_minus_1 += t.period() - 1;
  assert(sum_r_minus_1 == n - 2 && "tube periods violate the tame count");
  assert(T.ell() <= 3 && "more than three non-homogeneous tubes");
  return T;
}

}  // namespace hallwb
