#include "hallwb/hallpoly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "hallwb/budget.hpp"

namespace hallwb {

namespace {

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

bool is_slot_id(const std::string& s) {
  if (s.size() < 2 || s[0] != 'x') return false;
  return s.find_first_not_of("0123456789", 1) == std::string::npos;
}

// --- exact polynomials in x with rational coefficients ---

using Poly = std::vector<BigRat>;

void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mul_linear(const Poly& p, const BigRat& c) {
  // p(x) * (x - c)
  Poly out(p.size() + 1, BigRat(0));
  for (size_t k = 0; k < p.size(); ++k) {
    out[k + 1] += p[k];
    out[k] -= c * p[k];
  }
  return out;
}

Poly lagrange_fit(const std::vector<std::pair<long, BigInt>>& pts) {
  Poly acc;
  for (size_t i = 0; i < pts.size(); ++i) {
    BigRat w(pts[i].second);
    if (w == 0) continue;
    Poly num = {BigRat(1)};
    for (size_t j = 0; j < pts.size(); ++j) {
      if (j == i) continue;
      if (pts[j].first == pts[i].first)
        throw UsageError("duplicate sample prime " +
                         std::to_string(pts[j].first));
      num = poly_mul_linear(num, BigRat(pts[j].first));
      w /= BigRat(pts[i].first - pts[j].first);
    }
    if (acc.size() < num.size()) acc.resize(num.size(), BigRat(0));
    for (size_t k = 0; k < num.size(); ++k) acc[k] += w * num[k];
  }
  poly_trim(acc);
  return acc;
}

BigRat poly_eval_at(const Poly& p, long x) {
  BigRat acc(0);
  for (size_t k = p.size(); k-- > 0;) acc = acc * BigRat(x) + p[k];
  return acc;
}

std::string poly_render(const Poly& p) {
  if (p.empty()) return "0";
  std::string s;
  for (size_t k = p.size(); k-- > 0;) {
    if (p[k] == 0) continue;
    BigRat c = p[k];
    bool neg = c < 0;
    if (neg) c = -c;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    bool unit = (c == 1);
    if (!unit || k == 0) s += rat_to_string(c);
    if (k > 0) {
      if (!unit) s += "*";
      s += "x";
      if (k > 1) s += "^" + std::to_string(k);
    }
  }
  return s.empty() ? "0" : s;
}

}  // namespace

// --- DecompClass ---

std::vector<std::string> DecompClass::slots() const {
  std::vector<std::string> out;
  for (auto& [slot, part] : homog) out.push_back(slot);
  return out;
}

std::string DecompClass::to_string() const {
  std::string s = fixed;
  for (auto& [slot, part] : homog) {
    if (!s.empty()) s += " + ";
    s += "H[" + slot + ",(";
    for (size_t i = 0; i < part.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(part[i]);
    }
    s += ")]";
  }
  return s.empty() ? "0" : s;
}

DecompClass parse_decomp_class(const std::string& s) {
  DecompClass c;
  std::string str = strip(s);
  if (str.empty() || str == "0") return c;
  size_t pos = 0;
  while (pos < str.size()) {
    size_t plus = str.find(" + ", pos);
    std::string part = (plus == std::string::npos)
                           ? str.substr(pos)
                           : str.substr(pos, plus - pos);
    pos = (plus == std::string::npos) ? str.size() : plus + 3;
    part = strip(part);
    int mult = 1;
    size_t star = part.find('*');
    if (star != std::string::npos &&
        part.find_first_not_of("0123456789") == star) {
      mult = std::stoi(part.substr(0, star));
      if (mult < 1) throw UsageError("bad multiplicity in: " + s);
      part = strip(part.substr(star + 1));
    }
    if (part.rfind("H[", 0) == 0) {
      if (part.back() != ']')
        throw UsageError("cannot parse homogeneous atom: " + part);
      std::string inner = part.substr(2, part.size() - 3);
      size_t sep = inner.find(",(");
      if (sep == std::string::npos || inner.back() != ')' ||
          !is_slot_id(strip(inner.substr(0, sep))))
        throw UsageError(
            "homogeneous parts of a decomposition class are symbolic "
            "degree-1 point slots H[x1,(m1,m2,...)]; concrete or "
            "higher-degree points cannot be expressed: " +
            part);
      std::string slot = strip(inner.substr(0, sep));
      std::string plist = inner.substr(sep + 2, inner.size() - sep - 3);
      std::vector<int> ms;
      std::istringstream in(plist);
      std::string tok;
      while (std::getline(in, tok, ',')) {
        tok = strip(tok);
        if (tok.empty() || tok.find_first_not_of("0123456789") !=
                               std::string::npos)
          throw UsageError("bad partition in homogeneous atom: " + part);
        int m = std::stoi(tok);
        if (m < 1) throw UsageError("quasi-lengths must be positive: " + part);
        ms.push_back(m);
      }
      if (ms.empty())
        throw UsageError("empty partition in homogeneous atom: " + part);
      auto& dst = c.homog[slot];
      for (int r = 0; r < mult; ++r)
        dst.insert(dst.end(), ms.begin(), ms.end());
      std::sort(dst.begin(), dst.end(), std::greater<int>());
    } else {
      for (int r = 0; r < mult; ++r) {
        if (!c.fixed.empty()) c.fixed += " + ";
        c.fixed += part;
      }
    }
  }
  return c;
}

// --- FittedPolynomial ---

BigRat FittedPolynomial::eval(long x) const { return poly_eval_at(coeffs, x); }

std::string FittedPolynomial::poly_string() const {
  return poly_render(coeffs);
}

std::string FittedPolynomial::status_string() const {
  switch (status) {
    case Status::Verified:
      return "verified";
    case Status::Refuted:
      return "refuted";
    case Status::Insufficient:
      return "insufficient-samples";
  }
  return "?";
}

// --- HallPoly ---

HallPoly::HallPoly(QuiverPtr Q, int bound) : Q_(Q), bound_(bound) {
  if (!Q_) throw UsageError("no quiver");
  if (bound_ < 1) throw UsageError("catalogue bound must be positive");
}

Catalog& HallPoly::catalog(long q) {
  auto it = cats_.find(q);
  if (it != cats_.end()) return *it->second;
  auto cat = std::make_unique<Catalog>(Q_, unsigned(q), bound_);
  auto& ref = *cat;
  cats_[q] = std::move(cat);
  engs_[q] = std::make_unique<HallEngine>(ref);
  return ref;
}

HallEngine& HallPoly::engine(long q) {
  catalog(q);
  return *engs_.at(q);
}

std::vector<std::string> HallPoly::usable_points(long q) {
  Catalog& cat = catalog(q);
  std::vector<std::string> pts;
  for (auto& [id, deg] : cat.homog_points())
    if (deg == 1) pts.push_back(id);
  return pts;
}

std::vector<std::map<std::string, std::string>> HallPoly::slot_assignments(
    const std::vector<std::string>& slots, long q, int want) {
  std::vector<std::string> ss = slots;
  std::sort(ss.begin(), ss.end());
  ss.erase(std::unique(ss.begin(), ss.end()), ss.end());
  size_t k = ss.size();
  std::vector<std::map<std::string, std::string>> out;
  if (k == 0) {
    out.push_back({});
    return out;
  }
  std::vector<std::string> pts = usable_points(q);
  if (pts.size() < k)
    throw UsageError("class needs " + std::to_string(k) +
                     " distinct degree-1 points but F_" + std::to_string(q) +
                     " offers only " + std::to_string(pts.size()) +
                     " outside the non-homogeneous tubes");
  std::map<std::string, std::string> a;
  for (size_t i = 0; i < k; ++i) a[ss[i]] = pts[i];
  out.push_back(a);
  if (want > 1) {
    std::map<std::string, std::string> b;
    if (pts.size() > k) {
      // shift the window: every slot moves to a fresh point
      for (size_t i = 0; i < k; ++i) b[ss[i]] = pts[i + 1];
      out.push_back(b);
    } else if (k >= 2) {
      // same point set, reversed
      for (size_t i = 0; i < k; ++i) b[ss[i]] = pts[k - 1 - i];
      out.push_back(b);
    }
  }
  return out;
}

int HallPoly::instantiate(const DecompClass& c, long q,
                          const std::map<std::string, std::string>& assign) {
  Catalog& cat = catalog(q);
  Decomp d = cat.parse_class(c.fixed);
  for (auto& [l, m] : d)
    if (l.kind == PartKind::Homog)
      throw UsageError("concrete homogeneous point in decomposition class");
  for (auto& [slot, part] : c.homog) {
    auto it = assign.find(slot);
    if (it == assign.end())
      throw UsageError("no point assigned to slot " + slot);
    for (int m : part) {
      IndecLabel l;
      l.kind = PartKind::Homog;
      l.point = it->second;
      l.len = m;
      d[l] += 1;
    }
  }
  return cat.class_of(d);
}

namespace {

// Counting cost is q^e with e the sweep dimension of the route; take the
// smaller exponent (mono sweep over Hom(N,L) vs fibres of Ext^1(M,N)).
BigInt count_triple(HallEngine& eng, int X1, int X2, int X3) {
  Catalog& cat = eng.cat();
  Dim d1 = cat.dim_of(X1), d2 = cat.dim_of(X2);
  if (dim_add(d1, d2) != cat.dim_of(X3)) return BigInt(0);
  long e2 = hom_cls(cat, X2, X3);
  long e3 = hom_cls(cat, X1, X2) - cat.quiver().euler(d1, d2);
  return eng.hall_number(X1, X2, X3, e3 <= e2 ? 3 : 2);
}

}  // namespace

HallCount HallPoly::hall_count_at(const DecompClass& c1, const DecompClass& c2,
                                  const DecompClass& c3, long q) {
  std::vector<std::string> slots;
  for (const DecompClass* c : {&c1, &c2, &c3})
    for (auto& s : c->slots()) slots.push_back(s);
  auto assigns = slot_assignments(slots, q, 2);

  Catalog& cat = catalog(q);
  HallEngine& eng = engine(q);
  int X1 = instantiate(c1, q, assigns[0]);
  int X2 = instantiate(c2, q, assigns[0]);
  int X3 = instantiate(c3, q, assigns[0]);

  HallCount hc;
  hc.dim1 = cat.dim_of(X1);
  hc.dim2 = cat.dim_of(X2);
  hc.dim3 = cat.dim_of(X3);
  hc.g = count_triple(eng, X1, X2, X3);
  hc.d_exponent = long(cat.end_dim(X3)) - cat.end_dim(X1) - cat.end_dim(X2) -
                  cat.quiver().euler(hc.dim1, hc.dim2);

  if (!slots.empty() && assigns.size() > 1) {
    int Y1 = instantiate(c1, q, assigns[1]);
    int Y2 = instantiate(c2, q, assigns[1]);
    int Y3 = instantiate(c3, q, assigns[1]);
    BigInt g2 = count_triple(eng, Y1, Y2, Y3);
    assert(g2 == hc.g && "Hall count depends on the point assignment");
    if (g2 != hc.g)
      throw UsageError("slot independence failed at q=" + std::to_string(q));
    hc.slot_checked = true;
  }
  return hc;
}

const std::vector<long>& HallPoly::default_samples() {
  static const std::vector<long> s = {2, 3, 5, 7, 11, 13};
  return s;
}

const std::vector<long>& HallPoly::default_verify() {
  static const std::vector<long> s = {17, 19};
  return s;
}

FittedPolynomial HallPoly::fit(const DecompClass& c1, const DecompClass& c2,
                               const DecompClass& c3,
                               std::vector<long> sample_primes,
                               std::vector<long> verify_primes) {
  if (sample_primes.empty()) sample_primes = default_samples();
  if (verify_primes.empty()) verify_primes = default_verify();
  if (sample_primes.size() < 2)
    throw UsageError("need at least two sample primes");

  FittedPolynomial fp;
  fp.slot_checked = true;
  bool any_slots = c1.has_slots() || c2.has_slots() || c3.has_slots();
  bool have_d = false;

  auto take_sample = [&](long q) {
    HallCount hc = hall_count_at(c1, c2, c3, q);
    fp.samples.push_back({q, hc.g});
    if (any_slots && !hc.slot_checked) fp.slot_checked = false;
    if (!have_d) {
      fp.d_exponent = hc.d_exponent;
      have_d = true;
    } else if (hc.d_exponent != fp.d_exponent) {
      fp.d_constant = false;
    }
  };

  // Grow the sample set until two consecutive fits agree.
  Poly prev, cur;
  bool stable = false;
  for (size_t k = 0; k < sample_primes.size(); ++k) {
    take_sample(sample_primes[k]);
    if (k == 0) continue;
    cur = lagrange_fit(fp.samples);
    if (k >= 2 && cur == prev) {
      stable = true;
      break;
    }
    prev = cur;
  }
  fp.coeffs = cur;
  if (!stable) {
    fp.status = FittedPolynomial::Status::Insufficient;
    return fp;
  }

  bool all_ok = true;
  for (long q : verify_primes) {
    FittedPolynomial::VerifyRow row;
    row.q = q;
    row.predicted = fp.eval(q);
    HallCount hc = hall_count_at(c1, c2, c3, q);
    row.counted = hc.g;
    row.ok = (row.predicted == BigRat(row.counted));
    if (any_slots && !hc.slot_checked) fp.slot_checked = false;
    if (hc.d_exponent != fp.d_exponent) fp.d_constant = false;
    all_ok = all_ok && row.ok;
    fp.verification.push_back(row);
  }
  fp.status = all_ok ? FittedPolynomial::Status::Verified
                     : FittedPolynomial::Status::Refuted;
  return fp;
}

}  // namespace hallwb
