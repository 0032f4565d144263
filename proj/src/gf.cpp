#include "hallwb/gf.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "hallwb/budget.hpp"

namespace hallwb {

namespace {

// Dense polynomials over F_p on small unsigned coefficients, used only
// while constructing a field (low degree, tiny p).
using Poly = std::vector<unsigned>;

void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, unsigned p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  poly_trim(r);
  return r;
}

// a mod f, f monic
Poly poly_mod(Poly a, const Poly& f, unsigned p) {
  poly_trim(a);
  while (a.size() >= f.size()) {
    unsigned c = a.back();
    size_t sh = a.size() - f.size();
    for (size_t i = 0; i < f.size(); ++i)
      a[sh + i] = (a[sh + i] + c * (p - f[i] % p)) % p;
    poly_trim(a);
  }
  return a;
}

bool poly_divides(const Poly& d, const Poly& a, unsigned p) {
  return poly_mod(a, d, p).empty();
}

Poly id_to_poly(GF::El x, unsigned p) {
  Poly r;
  while (x) {
    r.push_back(x % p);
    x /= p;
  }
  return r;
}

GF::El poly_to_id(const Poly& a, unsigned p) {
  GF::El x = 0;
  for (size_t i = a.size(); i-- > 0;) x = x * p + a[i];
  return x;
}

// Monic polynomial of degree d enumerated by index (low coefficients first).
Poly monic_by_index(unsigned long long idx, int d, unsigned p) {
  Poly f(d + 1, 0);
  for (int i = 0; i < d; ++i) {
    f[i] = idx % p;
    idx /= p;
  }
  f[d] = 1;
  return f;
}

bool is_irreducible_bruteforce(const Poly& f, unsigned p) {
  int e = int(f.size()) - 1;
  for (int d = 1; d <= e / 2; ++d) {
    unsigned long long nd = 1;
    for (int i = 0; i < d; ++i) nd *= p;
    for (unsigned long long idx = 0; idx < nd; ++idx)
      if (poly_divides(monic_by_index(idx, d, p), f, p)) return false;
  }
  return true;
}

std::vector<unsigned> prime_factors(unsigned n) {
  std::vector<unsigned> fs;
  for (unsigned d = 2; (unsigned long long)d * d <= n; ++d)
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) fs.push_back(n);
  return fs;
}

}  // namespace

const GF& GF::get(unsigned q) {
  static std::map<unsigned, std::unique_ptr<GF>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(q);
  if (it == cache.end())
    it = cache.emplace(q, std::unique_ptr<GF>(new GF(q))).first;
  return *it->second;
}

GF::GF(unsigned qq) : q(qq) {
  if (q < 2 || q > (1u << 16))
    throw UsageError("field size must be a prime power in [2, 2^16]");
  // factor q = p^e
  p = 0;
  for (unsigned d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  if (p == 0) p = q;
  e = 0;
  unsigned t = q;
  while (t > 1) {
    if (t % p) throw UsageError("field size must be a prime power");
    t /= p;
    ++e;
  }

  // Multiplication structure.
  Poly f;  // irreducible modulus for e > 1
  if (e > 1) {
    bool found = false;
    unsigned long long nd = 1;
    for (unsigned i = 0; i < e; ++i) nd *= p;
    for (unsigned long long idx = 0; idx < nd && !found; ++idx) {
      f = monic_by_index(idx, int(e), p);
      if (is_irreducible_bruteforce(f, p)) found = true;
    }
    if (!found) throw std::logic_error("no irreducible polynomial found");
  }

  auto mul_raw = [&](El x, El y) -> El {
    if (e == 1) return El((unsigned long long)x * y % p);
    Poly r = poly_mod(poly_mul(id_to_poly(x, p), id_to_poly(y, p), p), f, p);
    return poly_to_id(r, p);
  };
  auto pow_raw = [&](El x, unsigned long long k) -> El {
    El r = 1;
    while (k) {
      if (k & 1) r = mul_raw(r, x);
      x = mul_raw(x, x);
      k >>= 1;
    }
    return r;
  };

  // Find a primitive element.
  auto facs = prime_factors(q - 1);
  gen_ = 0;
  for (El c = 2; c < q && gen_ == 0; ++c) {
    bool prim = q == 2;
    if (q > 2) {
      prim = true;
      for (unsigned r : facs)
        if (pow_raw(c, (q - 1) / r) == 1) {
          prim = false;
          break;
        }
    }
    if (prim) gen_ = c;
  }
  if (q == 2) gen_ = 1;
  if (gen_ == 0) throw std::logic_error("no primitive element found");

  exp_.assign(2 * (q - 1), 0);
  log_.assign(q, 0);
  El cur = 1;
  for (unsigned i = 0; i < q - 1; ++i) {
    exp_[i] = cur;
    exp_[i + (q - 1)] = cur;
    log_[cur] = i;
    cur = mul_raw(cur, gen_);
  }
  if (cur != 1) throw std::logic_error("generator order mismatch");
}

GF::El GF::inv(El x) const {
  if (x == 0) throw std::domain_error("division by zero in GF");
  unsigned lg = log_[x];
  return exp_[(q - 1 - lg) % (q - 1)];
}

GF::El GF::pow(El x, long long k) const {
  if (x == 0) {
    if (k == 0) return 1;
    if (k < 0) throw std::domain_error("0^negative in GF");
    return 0;
  }
  long long m = (long long)(q - 1);
  long long lg = (log_[x] * (k % m)) % m;
  if (lg < 0) lg += m;
  return exp_[lg];
}

GF::El GF::from_int(long long v) const {
  long long r = v % (long long)p;
  if (r < 0) r += p;
  return El(r);
}

GF::El GF::add_digits(El x, El y) const {
  El r = 0, mul = 1;
  while (x || y) {
    unsigned dx = x % p, dy = y % p;
    r += ((dx + dy) % p) * mul;
    mul *= p;
    x /= p;
    y /= p;
  }
  return r;
}

GF::El GF::neg_digits(El x) const {
  El r = 0, mul = 1;
  while (x) {
    unsigned d = x % p;
    r += (d ? p - d : 0) * mul;
    mul *= p;
    x /= p;
  }
  return r;
}

}  // namespace hallwb
