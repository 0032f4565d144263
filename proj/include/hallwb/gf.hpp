#pragma once
// Finite fields F_q, q = p^e <= 2^16.
//
// Elements are integer ids in [0, q). For prime fields the id is the
// residue. For e > 1 the id encodes polynomial-basis coefficients in base p
// (id = sum c_i p^i), so adding is digitwise mod p and multiplying goes
// through discrete log tables built from a primitive element. Fields are
// immutable and interned; pass them around as const GF*.

#include <cstdint>
#include <memory>
#include <vector>

namespace hallwb {

class GF {
 public:
  using El = std::uint32_t;

  static const GF& get(unsigned q);  // throws UsageError on bad q

  unsigned q, p, e;

  El zero() const { return 0; }
  El one() const { return 1; }

  El add(El x, El y) const {
    if (e == 1) {
      El s = x + y;
      return s >= q ? s - q : s;
    }
    if (p == 2) return x ^ y;
    return add_digits(x, y);
  }
  El neg(El x) const {
    if (x == 0) return 0;
    if (e == 1) return q - x;
    if (p == 2) return x;
    return neg_digits(x);
  }
  El sub(El x, El y) const { return add(x, neg(y)); }
  El mul(El x, El y) const {
    if (x == 0 || y == 0) return 0;
    return exp_[log_[x] + log_[y]];
  }
  El inv(El x) const;  // x != 0
  El div(El x, El y) const { return mul(x, inv(y)); }
  El pow(El x, long long k) const;
  El from_int(long long v) const;  // reduce an integer into the prime field
  // Multiplicative generator (primitive element).
  El generator() const { return gen_; }
  // Iterate all elements: ids 0..q-1 are exactly the elements.

 private:
  explicit GF(unsigned q);
  El add_digits(El x, El y) const;
  El neg_digits(El x) const;

  std::vector<El> exp_;   // size 2(q-1): g^i, doubled to skip reductions
  std::vector<El> log_;   // size q: log_[x] for x != 0
  El gen_ = 0;
};

}  // namespace hallwb
