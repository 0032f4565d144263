#pragma once
// Exact scalar types.
//
// QExt: an element of Q(sqrt q) stored as a + b*sqrt(q) with exact
// rationals; when q is a perfect square the sqrt part is folded into a, so
// the invariant b == 0 holds and the type degenerates to Q. All ring and
// field ops are exact. Powers of v = sqrt(q) are the twist currency of the
// Hall algebra.
//
// Laurent: a Laurent polynomial in v with rational coefficients, used as
// the "generic" coefficient mode (v kept symbolic, counts at the working q
// stay numeric). Division is only defined when exact.
//
// Coeff: tagged union of the two modes; mixed-mode arithmetic is a logic
// error and asserts.

#include <boost/multiprecision/cpp_int.hpp>
#include <cassert>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hallwb {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

BigInt big_pow(BigInt base, long e);  // e >= 0
// q^e for e possibly negative (exact rational).
BigRat rat_qpow(long q, long e);
// |GL_n(F_q)| and the Gaussian binomial [n choose k]_q (both exact).
BigInt gl_order(int n, const BigInt& q);
BigInt gaussian_binomial(int n, int k, const BigInt& q);

std::string rat_to_string(const BigRat& r);
BigRat rat_from_string(const std::string& s);

inline long isqrt_exact(long q) {  // returns s if q == s*s else 0
  long s = 0;
  while (s * s < q) ++s;
  return s * s == q ? s : 0;
}

class QExt {
 public:
  QExt() : q_(0) {}
  QExt(long q, BigRat a, BigRat b) : q_(q), a_(std::move(a)), b_(std::move(b)) {
    normalize();
  }
  static QExt of_rat(long q, BigRat a) { return QExt(q, std::move(a), 0); }
  static QExt zero(long q) { return of_rat(q, 0); }
  static QExt one(long q) { return of_rat(q, 1); }
  // v^k with v = sqrt(q), k any integer.
  static QExt v_pow(long q, long k);

  long q() const { return q_; }
  const BigRat& a() const { return a_; }
  const BigRat& b() const { return b_; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  QExt operator+(const QExt& o) const;
  QExt operator-(const QExt& o) const;
  QExt operator*(const QExt& o) const;
  QExt operator/(const QExt& o) const;  // field division, o != 0
  QExt operator-() const { return QExt(q_, -a_, -b_); }
  bool operator==(const QExt& o) const;
  bool operator!=(const QExt& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void normalize();
  long match(const QExt& o) const {
    assert(q_ == 0 || o.q_ == 0 || q_ == o.q_);
    return q_ ? q_ : o.q_;
  }
  long q_;      // 0 means "unbound zero/rational", compatible with any q
  BigRat a_, b_;
};

class Laurent {
 public:
  Laurent() = default;
  static Laurent constant(BigRat c);
  static Laurent v_pow(long k);  // monomial v^k

  bool is_zero() const { return c_.empty(); }
  const std::map<long, BigRat>& terms() const { return c_; }

  Laurent operator+(const Laurent& o) const;
  Laurent operator-(const Laurent& o) const;
  Laurent operator*(const Laurent& o) const;
  Laurent operator-() const;
  bool operator==(const Laurent& o) const { return c_ == o.c_; }
  bool operator!=(const Laurent& o) const { return !(*this == o); }

  // Exact division; sets *ok = false (and returns 0) when not divisible.
  Laurent divide_exact(const Laurent& o, bool* ok) const;

  QExt specialize(long q) const;  // v := sqrt(q)
  std::string to_string() const;

 private:
  void trim();
  std::map<long, BigRat> c_;  // exponent -> coefficient, no zero entries
};

enum class CoeffMode { FixedQ, Generic };

// One coefficient in either mode. The mode and (for FixedQ) the value of q
// travel with the value; arithmetic across modes asserts.
class Coeff {
 public:
  Coeff() : mode_(CoeffMode::FixedQ) {}
  explicit Coeff(QExt x) : mode_(CoeffMode::FixedQ), fx_(std::move(x)) {}
  explicit Coeff(Laurent l) : mode_(CoeffMode::Generic), gen_(std::move(l)) {}

  static Coeff zero(CoeffMode m, long q) {
    return m == CoeffMode::FixedQ ? Coeff(QExt::zero(q)) : Coeff(Laurent());
  }
  static Coeff one(CoeffMode m, long q) {
    return m == CoeffMode::FixedQ ? Coeff(QExt::one(q))
                                  : Coeff(Laurent::constant(1));
  }
  static Coeff rational(CoeffMode m, long q, BigRat r) {
    return m == CoeffMode::FixedQ ? Coeff(QExt::of_rat(q, std::move(r)))
                                  : Coeff(Laurent::constant(std::move(r)));
  }
  static Coeff v_pow(CoeffMode m, long q, long k) {
    return m == CoeffMode::FixedQ ? Coeff(QExt::v_pow(q, k))
                                  : Coeff(Laurent::v_pow(k));
  }

  CoeffMode mode() const { return mode_; }
  bool is_zero() const {
    return mode_ == CoeffMode::FixedQ ? fx_.is_zero() : gen_.is_zero();
  }
  const QExt& fixed() const {
    assert(mode_ == CoeffMode::FixedQ);
    return fx_;
  }
  const Laurent& generic() const {
    assert(mode_ == CoeffMode::Generic);
    return gen_;
  }

  Coeff operator+(const Coeff& o) const;
  Coeff operator-(const Coeff& o) const;
  Coeff operator*(const Coeff& o) const;
  Coeff operator-() const;
  // Field division in FixedQ mode; exact division in Generic mode
  // (throws UsageError when not exact).
  Coeff operator/(const Coeff& o) const;
  bool operator==(const Coeff& o) const;
  bool operator!=(const Coeff& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  CoeffMode mode_;
  QExt fx_;
  Laurent gen_;
};

}  // namespace hallwb
