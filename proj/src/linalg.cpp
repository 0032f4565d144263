#include "hallwb/linalg.hpp"

#include <cassert>
#include <stdexcept>

namespace hallwb {

Mat Mat::identity(const GF& f, int n) {
  Mat m(f, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat mat_mul(const Mat& A, const Mat& B) {
  assert(A.F == B.F && A.c == B.r);
  const GF& F = *A.F;
  Mat R(F, A.r, B.c);
  Budget::charge(std::uint64_t(A.r) * A.c * (B.c ? B.c : 1) / 16 + 1);
  for (int i = 0; i < A.r; ++i)
    for (int k = 0; k < A.c; ++k) {
      GF::El v = A.at(i, k);
      if (!v) continue;
      for (int j = 0; j < B.c; ++j) {
        GF::El w = B.at(k, j);
        if (w) R.at(i, j) = F.add(R.at(i, j), F.mul(v, w));
      }
    }
  return R;
}

Mat mat_add(const Mat& A, const Mat& B) {
  assert(A.F == B.F && A.r == B.r && A.c == B.c);
  Mat R = A;
  for (size_t i = 0; i < R.a.size(); ++i) R.a[i] = A.F->add(R.a[i], B.a[i]);
  return R;
}
Mat mat_sub(const Mat& A, const Mat& B) { return mat_add(A, mat_neg(B)); }
Mat mat_neg(const Mat& A) {
  Mat R = A;
  for (auto& x : R.a) x = A.F->neg(x);
  return R;
}
Mat mat_scale(const Mat& A, GF::El s) {
  Mat R = A;
  for (auto& x : R.a) x = A.F->mul(x, s);
  return R;
}

Mat transpose(const Mat& A) {
  Mat R(*A.F, A.c, A.r);
  for (int i = 0; i < A.r; ++i)
    for (int j = 0; j < A.c; ++j) R.at(j, i) = A.at(i, j);
  return R;
}

Mat hstack(const Mat& A, const Mat& B) {
  assert(A.r == B.r && A.F == B.F);
  Mat R(*A.F, A.r, A.c + B.c);
  for (int i = 0; i < A.r; ++i) {
    for (int j = 0; j < A.c; ++j) R.at(i, j) = A.at(i, j);
    for (int j = 0; j < B.c; ++j) R.at(i, A.c + j) = B.at(i, j);
  }
  return R;
}

Mat vstack(const Mat& A, const Mat& B) {
  assert(A.c == B.c && A.F == B.F);
  Mat R(*A.F, A.r + B.r, A.c);
  for (int i = 0; i < A.r; ++i)
    for (int j = 0; j < A.c; ++j) R.at(i, j) = A.at(i, j);
  for (int i = 0; i < B.r; ++i)
    for (int j = 0; j < B.c; ++j) R.at(A.r + i, j) = B.at(i, j);
  return R;
}

Mat block_diag(const Mat& A, const Mat& B) {
  Mat R(*A.F, A.r + B.r, A.c + B.c);
  for (int i = 0; i < A.r; ++i)
    for (int j = 0; j < A.c; ++j) R.at(i, j) = A.at(i, j);
  for (int i = 0; i < B.r; ++i)
    for (int j = 0; j < B.c; ++j) R.at(A.r + i, A.c + j) = B.at(i, j);
  return R;
}

std::vector<int> rref_inplace(Mat& A) {
  const GF& F = *A.F;
  std::vector<int> pivots;
  Budget::charge(std::uint64_t(A.r) * (A.c ? A.c : 1) / 8 + 1);
  int row = 0;
  for (int col = 0; col < A.c && row < A.r; ++col) {
    int pr = -1;
    for (int i = row; i < A.r; ++i)
      if (A.at(i, col)) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != row)
      for (int j = 0; j < A.c; ++j) std::swap(A.at(pr, j), A.at(row, j));
    GF::El piv = A.at(row, col);
    if (piv != 1) {
      GF::El pi = F.inv(piv);
      for (int j = col; j < A.c; ++j) A.at(row, j) = F.mul(A.at(row, j), pi);
    }
    for (int i = 0; i < A.r; ++i) {
      if (i == row) continue;
      GF::El v = A.at(i, col);
      if (!v) continue;
      for (int j = col; j < A.c; ++j)
        A.at(i, j) = F.sub(A.at(i, j), F.mul(v, A.at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank(Mat A) { return int(rref_inplace(A).size()); }

Mat kernel(const Mat& A) {
  const GF& F = *A.F;
  Mat R = A;
  std::vector<int> piv = rref_inplace(R);
  std::vector<bool> is_piv(A.c, false);
  for (int p : piv) is_piv[p] = true;
  int k = A.c - int(piv.size());
  Mat K(F, A.c, k);
  int col = 0;
  for (int j = 0; j < A.c; ++j) {
    if (is_piv[j]) continue;
    K.at(j, col) = 1;
    for (size_t i = 0; i < piv.size(); ++i)
      K.at(piv[i], col) = F.neg(R.at(int(i), j));
    ++col;
  }
  return K;
}

Mat column_space(const Mat& A) {
  Mat T = transpose(A);
  std::vector<int> piv = rref_inplace(T);
  Mat R(*A.F, A.r, int(piv.size()));
  for (size_t i = 0; i < piv.size(); ++i)
    for (int j = 0; j < A.r; ++j) R.at(j, int(i)) = T.at(int(i), j);
  return R;
}

bool is_invertible(const Mat& A) { return A.r == A.c && rank(A) == A.r; }

Mat inverse(const Mat& A) {
  assert(A.r == A.c);
  if (A.r == 0) return A;
  Mat W = hstack(A, Mat::identity(*A.F, A.r));
  std::vector<int> piv = rref_inplace(W);
  if (int(piv.size()) != A.r || piv.back() >= A.r)
    throw std::domain_error("matrix not invertible");
  Mat R(*A.F, A.r, A.r);
  for (int i = 0; i < A.r; ++i)
    for (int j = 0; j < A.r; ++j) R.at(i, j) = W.at(i, A.r + j);
  return R;
}

Mat solve(const Mat& A, const Mat& B, bool* ok) {
  assert(A.r == B.r);
  Mat W = hstack(A, B);
  std::vector<int> piv = rref_inplace(W);
  *ok = true;
  for (int p : piv)
    if (p >= A.c) {
      *ok = false;
      return Mat(*A.F, A.c, B.c);
    }
  Mat X(*A.F, A.c, B.c);
  for (size_t i = 0; i < piv.size(); ++i)
    for (int j = 0; j < B.c; ++j) X.at(piv[i], j) = W.at(int(i), A.c + j);
  return X;
}

// ---- SubspaceIter ----

SubspaceIter::SubspaceIter(const GF& F, int n, int k) : F_(F), n_(n), k_(k) {
  if (k < 0 || k > n) {
    done_ = true;
    return;
  }
  pivots_.resize(k);
  for (int i = 0; i < k; ++i) pivots_[i] = i;
  fresh_combo_ = true;
}

void SubspaceIter::fill(Mat* out) const {
  *out = Mat(F_, k_, n_);
  for (int i = 0; i < k_; ++i) out->at(i, pivots_[i]) = 1;
  for (size_t t = 0; t < free_.size(); ++t)
    out->at(free_[t].first, free_[t].second) = vals_[t];
}

bool SubspaceIter::advance_free() {
  for (size_t t = 0; t < vals_.size(); ++t) {
    if (++vals_[t] < F_.q) return true;
    vals_[t] = 0;
  }
  return false;
}

bool SubspaceIter::next(Mat* out) {
  if (done_) return false;
  Budget::charge(1);
  while (true) {
    if (fresh_combo_) {
      // Free positions: (i, j) with j > pivots_[i] and j not a pivot.
      free_.clear();
      std::vector<bool> is_piv(n_, false);
      for (int p : pivots_) is_piv[p] = true;
      for (int i = 0; i < k_; ++i)
        for (int j = pivots_[i] + 1; j < n_; ++j)
          if (!is_piv[j]) free_.emplace_back(i, j);
      vals_.assign(free_.size(), 0);
      fresh_combo_ = false;
      fill(out);
      return true;
    }
    if (advance_free()) {
      fill(out);
      return true;
    }
    // next pivot combination (lexicographic)
    int i = k_ - 1;
    while (i >= 0 && pivots_[i] == n_ - k_ + i) --i;
    if (i < 0) {
      done_ = true;
      return false;
    }
    ++pivots_[i];
    for (int j = i + 1; j < k_; ++j) pivots_[j] = pivots_[j - 1] + 1;
    fresh_combo_ = true;
  }
}

}  // namespace hallwb
