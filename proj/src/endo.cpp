#include "hallwb/endo.hpp"

#include <cassert>
#include <numeric>

#include "hallwb/budget.hpp"
#include "hallwb/gfpoly.hpp"

namespace hallwb {

Mat endo_block_matrix(const Rep& M, const std::vector<Mat>& f) {
  Mat B = Mat::zero(*M.F, 0, 0);
  for (const Mat& fi : f) B = block_diag(B, fi);
  return B;
}

int residue_degree_local(const Rep& M) {
  auto basis = end_basis(M);
  long d = 1;
  for (const auto& f : basis) {
    GFPoly mp = min_poly(endo_block_matrix(M, f));
    auto fac = poly_factor(mp);
    if (fac.size() != 1)
      throw UsageError("endomorphism algebra is not local");
    d = std::lcm(d, long(fac[0].first.deg()));
  }
  return int(d);
}

BigInt aut_order_formula(unsigned q, int h,
                         const std::vector<std::pair<int, int>>& parts) {
  long ss = 0;  // dim of the semisimple quotient
  BigInt units = 1;
  for (auto [m, d] : parts) {
    ss += long(m) * m * d;
    units *= gl_order(m, big_pow(BigInt(q), d));
  }
  assert(ss <= h && "semisimple quotient exceeds End dimension");
  return big_pow(BigInt(q), h - ss) * units;
}

BigInt unit_count_brute(const Rep& M) {
  auto basis = end_basis(M);
  const GF* F = M.F;
  int h = int(basis.size());
  double total = 1;
  for (int i = 0; i < h; ++i) {
    total *= F->q;
    if (total > double(1 << 20)) throw UsageError("unit sweep too large");
  }
  int n = M.Q->n();
  std::vector<GF::El> coef(h, 0);
  BigInt count = 0;
  for (;;) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      Mat f = Mat::zero(*F, M.d[i], M.d[i]);
      for (int j = 0; j < h; ++j) {
        if (coef[j] == 0) continue;
        f = mat_add(f, mat_scale(basis[j][i], coef[j]));
      }
      if (M.d[i] && !is_invertible(f)) ok = false;
    }
    if (ok) ++count;
    Budget::charge();
    int j = 0;
    while (j < h && coef[j] == GF::El(F->q - 1)) coef[j++] = 0;
    if (j == h) break;
    coef[j]++;
  }
  return count;
}

namespace {

// Split M along the idempotent built from an endomorphism f whose minimal
// polynomial factors as a*b with gcd(a,b)=1: e = (v*b)(f).
std::optional<std::pair<std::vector<Mat>, std::vector<Mat>>> split_with(
    const Rep& M, const std::vector<Mat>& f) {
  GFPoly mp = min_poly(endo_block_matrix(M, f));
  auto fac = poly_factor(mp);
  if (fac.size() < 2) return std::nullopt;
  const GF& F = *M.F;
  GFPoly a = GFPoly::constant(F, 1);
  for (int i = 0; i < fac[0].second; ++i) a = poly_mul(a, fac[0].first);
  GFPoly b(F);
  GFPoly rem;
  poly_divmod(mp, a, &b, &rem);
  assert(rem.is_zero());
  GFPoly u(F), v(F);
  GFPoly g = poly_ext_gcd(a, b, &u, &v);
  assert(g.deg() == 0);
  GFPoly epoly = poly_mul(v, b);  // e = v(f) b(f), e^2 = e mod mp
  std::vector<Mat> rows_e, rows_ce;
  for (int i = 0; i < M.Q->n(); ++i) {
    Mat ei = mat_poly_eval(epoly, f[i]);
    Mat ci = mat_sub(Mat::identity(*M.F, M.d[i]), ei);
    rows_e.push_back(transpose(column_space(ei)));
    rows_ce.push_back(transpose(column_space(ci)));
  }
  return std::make_pair(rows_e, rows_ce);
}

}  // namespace

std::optional<std::pair<std::vector<Mat>, std::vector<Mat>>> try_split(
    const Rep& M, std::mt19937_64& rng, int tries) {
  auto basis = end_basis(M);
  int h = int(basis.size());
  const GF* F = M.F;
  for (const auto& f : basis) {
    auto r = split_with(M, f);
    if (r) return r;
  }
  for (int i = 0; i < h; ++i)
    for (int j = i + 1; j < h; ++j) {
      std::vector<Mat> f;
      for (int v = 0; v < M.Q->n(); ++v)
        f.push_back(mat_add(basis[i][v], basis[j][v]));
      auto r = split_with(M, f);
      if (r) return r;
    }
  for (int t = 0; t < tries; ++t) {
    std::vector<Mat> f;
    std::vector<GF::El> coef(h);
    for (int j = 0; j < h; ++j) coef[j] = GF::El(rng() % F->q);
    for (int v = 0; v < M.Q->n(); ++v) {
      Mat fv = Mat::zero(*F, M.d[v], M.d[v]);
      for (int j = 0; j < h; ++j)
        if (coef[j]) fv = mat_add(fv, mat_scale(basis[j][v], coef[j]));
      f.push_back(std::move(fv));
    }
    auto r = split_with(M, f);
    if (r) return r;
  }
  return std::nullopt;
}

}  // namespace hallwb
