#include "hallwb/numbers.hpp"

#include <stdexcept>

#include "hallwb/budget.hpp"

namespace hallwb {

thread_local std::uint64_t Budget::used_ = 0;
thread_local std::uint64_t Budget::limit_ = Budget::kUnlimited;
thread_local int Budget::scope_depth_ = 0;

BigInt big_pow(BigInt base, long e) {
  BigInt r = 1;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

BigRat rat_qpow(long q, long e) {
  if (e >= 0) return BigRat(big_pow(q, e));
  return BigRat(1, big_pow(q, -e));
}

BigInt gl_order(int n, const BigInt& q) {
  // |GL_n(F_q)| = prod_{i=0}^{n-1} (q^n - q^i)
  BigInt r = 1, qn = big_pow(q, n), qi = 1;
  for (int i = 0; i < n; ++i) {
    r *= (qn - qi);
    qi *= q;
  }
  return r;
}

BigInt gaussian_binomial(int n, int k, const BigInt& q) {
  if (k < 0 || k > n) return 0;
  // prod_{i=0}^{k-1} (q^{n-i} - 1) / (q^{k-i} - 1), exact at every step
  // when computed as a single fraction.
  BigInt num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= big_pow(q, n - i) - 1;
    den *= big_pow(q, k - i) - 1;
  }
  BigInt r = num / den;
  if (r * den != num) throw std::logic_error("gaussian binomial not integral");
  return r;
}

std::string rat_to_string(const BigRat& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

BigRat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return BigRat(BigInt(s));
    return BigRat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw UsageError("bad rational literal: " + s);
  }
}

// ---- QExt ----

void QExt::normalize() {
  if (q_ != 0 && b_ != 0) {
    long s = isqrt_exact(q_);
    if (s) {
      a_ += b_ * s;
      b_ = 0;
    }
  }
  if (a_ == 0 && b_ == 0 && q_ != 0) {
    // keep q tag; zero still remembers its field for to_string symmetry
  }
}

QExt QExt::v_pow(long q, long k) {
  // v^(2m) = q^m, v^(2m+1) = q^m * sqrt(q)
  long m = (k >= 0) ? k / 2 : -((-k + 1) / 2);
  bool odd = (k % 2) != 0;
  if (!odd) return QExt(q, rat_qpow(q, m), 0);
  // k = 2m+1 exactly when k - 2m == 1
  if (k - 2 * m != 1) {
    m -= 1;
  }
  return QExt(q, 0, rat_qpow(q, m));
}

QExt QExt::operator+(const QExt& o) const {
  return QExt(match(o), a_ + o.a_, b_ + o.b_);
}
QExt QExt::operator-(const QExt& o) const {
  return QExt(match(o), a_ - o.a_, b_ - o.b_);
}
QExt QExt::operator*(const QExt& o) const {
  long q = match(o);
  return QExt(q, a_ * o.a_ + b_ * o.b_ * q, a_ * o.b_ + b_ * o.a_);
}
QExt QExt::operator/(const QExt& o) const {
  long q = match(o);
  // (a - b sqrt q) has norm a^2 - q b^2, nonzero for o != 0 when q is not a
  // square (normalize() folded square q into b == 0 already).
  BigRat n = o.a_ * o.a_ - BigRat(q) * o.b_ * o.b_;
  if (n == 0) {
    if (o.a_ == 0 && o.b_ == 0) throw std::domain_error("QExt division by 0");
    throw std::logic_error("QExt norm 0 for nonzero element");
  }
  QExt conj(q, o.a_, -o.b_);
  QExt num = *this * conj;
  return QExt(q, num.a_ / n, num.b_ / n);
}
bool QExt::operator==(const QExt& o) const {
  return a_ == o.a_ && b_ == o.b_ && (q_ == 0 || o.q_ == 0 || q_ == o.q_);
}

std::string QExt::to_string() const {
  if (b_ == 0) return rat_to_string(a_);
  std::string s;
  if (a_ != 0) s = rat_to_string(a_) + " + ";
  s += rat_to_string(b_) + "*sqrt(" + std::to_string(q_) + ")";
  return s;
}

// ---- Laurent ----

void Laurent::trim() {
  for (auto it = c_.begin(); it != c_.end();) {
    if (it->second == 0)
      it = c_.erase(it);
    else
      ++it;
  }
}

Laurent Laurent::constant(BigRat c) {
  Laurent l;
  if (c != 0) l.c_[0] = std::move(c);
  return l;
}
Laurent Laurent::v_pow(long k) {
  Laurent l;
  l.c_[k] = 1;
  return l;
}

Laurent Laurent::operator+(const Laurent& o) const {
  Laurent r = *this;
  for (auto& [e, c] : o.c_) r.c_[e] += c;
  r.trim();
  return r;
}
Laurent Laurent::operator-(const Laurent& o) const {
  Laurent r = *this;
  for (auto& [e, c] : o.c_) r.c_[e] -= c;
  r.trim();
  return r;
}
Laurent Laurent::operator-() const {
  Laurent r;
  for (auto& [e, c] : c_) r.c_[e] = -c;
  return r;
}
Laurent Laurent::operator*(const Laurent& o) const {
  Laurent r;
  for (auto& [e1, c1] : c_)
    for (auto& [e2, c2] : o.c_) r.c_[e1 + e2] += c1 * c2;
  r.trim();
  return r;
}

Laurent Laurent::divide_exact(const Laurent& o, bool* ok) const {
  *ok = true;
  if (o.is_zero()) {
    *ok = false;
    return Laurent();
  }
  if (is_zero()) return Laurent();
  // Long division from the top exponent; Laurent shift makes o's lowest
  // exponent irrelevant.
  Laurent rem = *this, quot;
  long otop = o.c_.rbegin()->first;
  const BigRat& olead = o.c_.rbegin()->second;
  while (!rem.is_zero()) {
    long rtop = rem.c_.rbegin()->first;
    BigRat f = rem.c_.rbegin()->second / olead;
    long sh = rtop - otop;
    quot.c_[sh] += f;
    Laurent t;
    t.c_[sh] = f;
    rem = rem - t * o;
    if (!rem.is_zero() && rem.c_.rbegin()->first >= rtop) {
      *ok = false;  // no progress, not exactly divisible
      return Laurent();
    }
  }
  quot.trim();
  return quot;
}

QExt Laurent::specialize(long q) const {
  QExt r = QExt::zero(q);
  for (auto& [e, c] : c_) r = r + QExt::v_pow(q, e) * QExt::of_rat(q, c);
  return r;
}

std::string Laurent::to_string() const {
  if (c_.empty()) return "0";
  std::string s;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    if (!s.empty()) s += " + ";
    s += rat_to_string(it->second);
    if (it->first != 0) s += "*v^" + std::to_string(it->first);
  }
  return s;
}

// ---- Coeff ----

#define HALLWB_COEFF_BINOP(op)                                     \
  Coeff Coeff::operator op(const Coeff& o) const {                 \
    assert(mode_ == o.mode_);                                      \
    if (mode_ == CoeffMode::FixedQ) return Coeff(fx_ op o.fx_);    \
    return Coeff(gen_ op o.gen_);                                  \
  }
HALLWB_COEFF_BINOP(+)
HALLWB_COEFF_BINOP(-)
HALLWB_COEFF_BINOP(*)
#undef HALLWB_COEFF_BINOP

Coeff Coeff::operator-() const {
  if (mode_ == CoeffMode::FixedQ) return Coeff(-fx_);
  return Coeff(-gen_);
}

Coeff Coeff::operator/(const Coeff& o) const {
  assert(mode_ == o.mode_);
  if (mode_ == CoeffMode::FixedQ) return Coeff(fx_ / o.fx_);
  bool ok = false;
  Laurent q = gen_.divide_exact(o.gen_, &ok);
  if (!ok)
    throw UsageError(
        "non-exact division in generic coefficient mode (use fixed-q mode)");
  return Coeff(q);
}

bool Coeff::operator==(const Coeff& o) const {
  assert(mode_ == o.mode_);
  return mode_ == CoeffMode::FixedQ ? fx_ == o.fx_ : gen_ == o.gen_;
}

std::string Coeff::to_string() const {
  return mode_ == CoeffMode::FixedQ ? fx_.to_string() : gen_.to_string();
}

}  // namespace hallwb
