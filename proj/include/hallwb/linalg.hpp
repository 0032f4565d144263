#pragma once
// Dense matrices over a finite field, exact throughout.
//
// Conventions: Mat is row-major, r x c. Column vectors multiply on the
// right. kernel() and column_space() return matrices whose COLUMNS are the
// basis vectors. Subspaces are canonically represented by reduced row
// echelon forms (RREF), which makes SubspaceIter enumerate each k-subspace
// of F_q^n exactly once.

#include <cstdint>
#include <vector>

#include "hallwb/budget.hpp"
#include "hallwb/gf.hpp"

namespace hallwb {

struct Mat {
  const GF* F = nullptr;
  int r = 0, c = 0;
  std::vector<GF::El> a;

  Mat() = default;
  Mat(const GF& f, int rr, int cc) : F(&f), r(rr), c(cc), a(size_t(rr) * cc, 0) {}

  GF::El& at(int i, int j) { return a[size_t(i) * c + j]; }
  GF::El at(int i, int j) const { return a[size_t(i) * c + j]; }

  static Mat identity(const GF& f, int n);
  static Mat zero(const GF& f, int r, int c) { return Mat(f, r, c); }

  bool operator==(const Mat& o) const {
    return r == o.r && c == o.c && a == o.a;
  }
};

Mat mat_mul(const Mat& A, const Mat& B);
Mat mat_add(const Mat& A, const Mat& B);
Mat mat_sub(const Mat& A, const Mat& B);
Mat mat_neg(const Mat& A);
Mat mat_scale(const Mat& A, GF::El s);
Mat transpose(const Mat& A);
Mat hstack(const Mat& A, const Mat& B);
Mat vstack(const Mat& A, const Mat& B);
// Block diagonal [[A,0],[0,B]].
Mat block_diag(const Mat& A, const Mat& B);

// In-place reduction to RREF; returns pivot columns.
std::vector<int> rref_inplace(Mat& A);
int rank(Mat A);
// Columns form a basis of {x : Ax = 0}.
Mat kernel(const Mat& A);
// Columns form a basis of the column space.
Mat column_space(const Mat& A);
bool is_invertible(const Mat& A);
Mat inverse(const Mat& A);  // throws std::domain_error if singular
// One solution x of Ax = b (b is r x k, solves all columns); ok=false if
// inconsistent.
Mat solve(const Mat& A, const Mat& B, bool* ok);

// Enumerates all k-dimensional subspaces of F_q^n, presented as k x n RREF
// matrices whose rows span the subspace. Total count is the Gaussian
// binomial [n choose k]_q. Each next() charges the budget.
class SubspaceIter {
 public:
  SubspaceIter(const GF& F, int n, int k);
  bool next(Mat* out);  // false when exhausted

 private:
  bool advance_free();
  void fill(Mat* out) const;
  const GF& F_;
  int n_, k_;
  std::vector<int> pivots_;            // increasing column indices
  std::vector<std::pair<int, int>> free_;  // (row, col) free positions
  std::vector<GF::El> vals_;           // odometer over free positions
  bool fresh_combo_ = true, done_ = false;
};

}  // namespace hallwb
