#pragma once
// Field-independent decomposition classes and Hall-polynomial fitting.
//
// A decomposition class pins the discrete shape of a module uniformly in q:
// preprojective / non-homogeneous tube / preinjective labels plus symbolic
// homogeneous point slots x1, x2, ... each carrying a partition (the
// quasi-length tower at one closed point). Instantiation over F_q realizes
// the slots at distinct degree-1 non-special points of P^1; Hall counts are
// re-evaluated under a second point assignment whenever one exists, so slot
// independence is asserted on every call.
//
// Slots are shared across a triple: x1 in X_1 and x1 in X_3 name the same
// point. Only degree-1 points can be expressed; a module supported at a
// higher-degree closed point has no decomposition class here.
//
// The fitter interpolates the count as an exact polynomial in x = q through
// samples at several primes (degree grown until two consecutive sample sets
// agree) and then confirms the polynomial against fresh counts at held-out
// primes.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hallwb/hallnum.hpp"

namespace hallwb {

struct DecompClass {
  // " + "-joined non-homogeneous atoms in the catalogue label grammar
  // (P(i), tau^-k P(i), S_i, T<t>[j,m], I(i), ...), possibly empty.
  std::string fixed;
  // slot id ("x1", "x2", ...) -> quasi-length partition, descending.
  std::map<std::string, std::vector<int>> homog;

  bool has_slots() const { return !homog.empty(); }
  std::vector<std::string> slots() const;
  std::string to_string() const;
};

// Parses "P(1) + 2*T1[1,2] + H[x1,(2,1)]". Homogeneous atoms must use
// symbolic slots; concrete points are rejected.
DecompClass parse_decomp_class(const std::string& s);

struct HallCount {
  BigInt g;
  bool slot_checked = false;  // a second distinct assignment existed & agreed
  // dim End X3 - dim End X1 - dim End X2 - <dim X1, dim X2>: the v-power
  // relating the count to the generic structure constant.
  long d_exponent = 0;
  Dim dim1, dim2, dim3;
};

struct FittedPolynomial {
  enum class Status { Verified, Refuted, Insufficient };

  std::vector<BigRat> coeffs;  // coeffs[k] multiplies x^k, trimmed
  std::vector<std::pair<long, BigInt>> samples;  // (q, count) actually used
  struct VerifyRow {
    long q;
    BigRat predicted;
    BigInt counted;
    bool ok;
  };
  std::vector<VerifyRow> verification;
  Status status = Status::Insufficient;
  bool slot_checked = false;  // every sampled count had a second assignment
  bool d_constant = true;     // exponent agreed across all sampled q
  long d_exponent = 0;

  int degree() const { return int(coeffs.size()) - 1; }
  BigRat eval(long x) const;
  std::string poly_string() const;
  std::string status_string() const;
};

class HallPoly {
 public:
  // bound caps the catalogue (and hence every instance dimension) per q.
  HallPoly(QuiverPtr Q, int bound);

  const Quiver& quiver() const { return *Q_; }
  int bound() const { return bound_; }
  Catalog& catalog(long q);  // built lazily, cached per q
  HallEngine& engine(long q);

  // Distinct degree-1 non-special point ids available over F_q.
  std::vector<std::string> usable_points(long q);
  // Up to `want` injective slot -> point maps, deterministic; throws when
  // the field has fewer usable points than slots.
  std::vector<std::map<std::string, std::string>> slot_assignments(
      const std::vector<std::string>& slots, long q, int want = 2);

  // Realize c over F_q under an explicit slot assignment.
  int instantiate(const DecompClass& c, long q,
                  const std::map<std::string, std::string>& assign);

  // g^{X3}_{X1 X2} over F_q, counted by the cheaper of the mono-sweep and
  // extension-fibre routes, re-counted under a second point assignment.
  HallCount hall_count_at(const DecompClass& c1, const DecompClass& c2,
                          const DecompClass& c3, long q);

  // Exact interpolation in x = q. Empty prime lists take the defaults
  // {2,3,5,7,11,13} / {17,19}.
  FittedPolynomial fit(const DecompClass& c1, const DecompClass& c2,
                       const DecompClass& c3,
                       std::vector<long> sample_primes = {},
                       std::vector<long> verify_primes = {});

  static const std::vector<long>& default_samples();
  static const std::vector<long>& default_verify();

 private:
  QuiverPtr Q_;
  int bound_;
  std::map<long, std::unique_ptr<Catalog>> cats_;
  std::map<long, std::unique_ptr<HallEngine>> engs_;
};

}  // namespace hallwb
