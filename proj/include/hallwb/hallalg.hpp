#pragma once

// The twisted Ringel-Hall algebra of a catalogued quiver, with formal torus
// words: elements are finite sums  sum c * K_mu u_[A]  kept in K-left normal
// form.  Coefficients are exact, either a + b*sqrt(q) (FixedQ) or Laurent
// polynomials in v (Generic).  On top of the ring structure this provides
// the comultiplication, antipode (two independent methods), Green's bilinear
// form via mirror labels, divided powers, Serre-relation evaluation, graded
// subalgebra spans, and the orthogonal spaces L_{n*delta} of the singular
// Hall algebra together with their normalized dual bases.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hallwb/hallnum.hpp"
#include "hallwb/numbers.hpp"

namespace hallwb {

// Normalization |V_alpha| used by the Green form: the cardinality q^{sum a_i}
// of the graded vector space of dimension alpha, or the cardinality
// q^{sum_{arrows} a_s a_t} of the matrix-tuple variety E_alpha.
enum class GreenNorm { GradedSpace, RepVariety };

// One normal-form word K_mu u_{cls}.
struct HTerm {
  Dim mu;
  int cls = 0;
  bool operator<(const HTerm& o) const {
    if (mu != o.mu) return mu < o.mu;
    return cls < o.cls;
  }
  bool operator==(const HTerm& o) const { return mu == o.mu && cls == o.cls; }
};

// Finite sum of normal-form words; zero coefficients are never stored.
struct HallElement {
  std::map<HTerm, Coeff> terms;
  bool is_zero() const { return terms.empty(); }
};

using TensorElement = std::map<std::pair<HTerm, HTerm>, Coeff>;

// A graded piece of a subalgebra: echelonized basis in the u-coordinates of
// classes_of_dim(degree), plus its rank over the coefficient field.
struct GradedSubspace {
  Dim degree;
  std::vector<HallElement> basis;
  int rank = 0;
};

// L_{n*delta} with its normalized bases: green_form(x[p], y[r]) =
// delta_{pr} / (v - v^{-1}); y elements are mirror labels for the negative
// half.
struct LDeltaResult {
  GradedSubspace space;
  std::vector<HallElement> x;
  std::vector<HallElement> y_mirror;
};

// Named generator for relation checks: theta is the symmetric-form weight of
// the generator (the unit vector of a vertex simple, or n*delta for the
// central tube generators).
struct GenEntry {
  Dim theta;
  HallElement x;
};

class HallAlg {
 public:
  HallAlg(HallEngine& eng, CoeffMode mode,
          GreenNorm norm = GreenNorm::GradedSpace)
      : eng_(eng), mode_(mode), norm_(norm) {}

  Catalog& cat() const { return eng_.cat(); }
  HallEngine& eng() const { return eng_; }
  CoeffMode mode() const { return mode_; }
  GreenNorm norm() const { return norm_; }
  long q() const { return cat().q(); }

  // Coefficient constructors in this algebra's mode.
  Coeff czero() const { return Coeff::zero(mode_, q()); }
  Coeff cone() const { return Coeff::one(mode_, q()); }
  Coeff crat(BigRat r) const { return Coeff::rational(mode_, q(), std::move(r)); }
  Coeff cv(long k) const { return Coeff::v_pow(mode_, q(), k); }
  // Quantum integer [p] and factorial [p]!.
  Coeff qint(long p) const;
  Coeff qfact(long p) const;

  // Element constructors.
  HallElement zero() const { return {}; }
  HallElement one() const;                      // K_0 u_0
  HallElement u(int cls) const;                 // u_[cls]
  HallElement u_simple(int vertex) const;       // u_[S_vertex]
  HallElement k(const Dim& mu) const;           // K_mu
  HallElement ku(const Dim& mu, int cls, const Coeff& c) const;

  // Linear structure.
  static HallElement add(const HallElement& a, const HallElement& b);
  static HallElement sub(const HallElement& a, const HallElement& b);
  static HallElement scale(const Coeff& c, const HallElement& a);
  static bool eq(const HallElement& a, const HallElement& b);

  // Degree of the module part; nullopt for 0 and for mixed degrees.
  std::optional<Dim> degree(const HallElement& a) const;

  // Ring structure: (K_mu u_A)(K_nu u_B) =
  //   v^{-(nu,dim A)} v^{<dim A, dim B>} sum_L g^L_{A,B} K_{mu+nu} u_L.
  HallElement multiply(const HallElement& a, const HallElement& b) const;
  HallElement power(const HallElement& a, int p) const;

  // <M> = v^{-dim M + dim End M} u_[M] (dim M = total F_q-dimension).
  HallElement angle_basis(int cls) const;
  Coeff angle_factor(int cls) const;

  // x^p / [p]!.
  HallElement divided_power(const HallElement& x, int p) const;

  // sum_{p+p'=1-a_ij} (-1)^p x_i^(p) x_j x_i^(p') with a_ij = (theta_i,
  // theta_j); must evaluate to zero.  The vertex overload uses gens[v] = u_S_v.
  HallElement serre_check(int i, int j, const std::vector<GenEntry>& gens) const;
  HallElement serre_check(int i, int j) const;

  // Hopf structure on the positive half with torus words.
  Coeff counit(const HallElement& a) const;
  TensorElement comultiply(const HallElement& a, int dim_guard = 6) const;
  TensorElement tensor_multiply(const TensorElement& a,
                                const TensorElement& b) const;
  static TensorElement tensor_add(const TensorElement& a,
                                  const TensorElement& b);
  static bool tensor_eq(const TensorElement& a, const TensorElement& b);
  // method 1: closed filtration formula; method 2: recursion peeled from
  // mult(S x 1)Delta = unit.counit.
  HallElement antipode(const HallElement& a, int method = 1,
                       int dim_guard = 6) const;
  // mult(S x 1) or mult(1 x S) applied to a TensorElement, for axiom checks.
  HallElement collapse_s1(const TensorElement& t, int method = 1) const;
  HallElement collapse_1s(const TensorElement& t, int method = 1) const;

  // Green's bilinear form phi(x, omega(y)): y holds mirror labels, i.e. the
  // stored word K_nu u_beta stands for K_{-nu} u_beta^- on the negative half.
  Coeff green_form(const HallElement& x, const HallElement& y) const;

  // Subalgebra spans (FixedQ only): closure of homogeneous generators up to
  // degree gamma, echelonized in the u-coordinates of each graded piece.
  GradedSubspace graded_span(const std::vector<HallElement>& generators,
                             const Dim& gamma) const;
  // Every graded piece at once (the single-degree call computes them anyway).
  std::map<Dim, GradedSubspace> graded_span_all(
      const std::vector<HallElement>& generators, const Dim& cap) const;
  bool in_span(const GradedSubspace& s, const HallElement& x) const;

  // Generators of the composition algebra C and of the singular Hall algebra
  // H^s (vertex simples plus every class supported in one non-homogeneous
  // tube), up to componentwise degree cap.
  std::vector<HallElement> composition_generators() const;
  std::vector<HallElement> singular_generators(const Dim& cap) const;
  GradedSubspace composition_span(const Dim& gamma) const;
  GradedSubspace singular_span(const Dim& gamma) const;
  std::map<Dim, GradedSubspace> singular_span_all(const Dim& cap) const;

  // L_{n*delta}: phi-orthogonal complement of D^s(n-1) inside H^s_{n*delta},
  // with bases normalized so green_form(x[p], y[r]) = delta_{pr}/(v-v^{-1}).
  LDeltaResult l_delta(int n) const;

  // True iff x commutes with every generator g with deg x + deg g <= bound.
  bool centrality_check(const HallElement& x,
                        const std::vector<HallElement>& gens,
                        const Dim& degree_bound) const;

  // Serialization.
  std::string to_string(const HallElement& a) const;
  std::string to_json(const HallElement& a) const;
  std::string tensor_to_string(const TensorElement& t) const;

 private:
  HallEngine& eng_;
  CoeffMode mode_;
  GreenNorm norm_;

  Coeff aut_rat(int cls) const;  // |Aut| as a Coeff rational
  // Memoized antipodes of plain u_[A] per method.
  mutable std::map<std::pair<int, int>, HallElement> antipode_cache_;
};

// Hopf axiom sweep over every class of total dim <= bound: Delta is an
// algebra map on all pairs within the bound, both counit identities
// (eps x 1)Delta = id = (1 x eps)Delta, both antipode axioms
// mult(S x 1)Delta = unit.counit = mult(1 x S)Delta, and agreement of the
// two antipode evaluation methods.
struct HopfReport {
  int classes = 0;
  int pairs = 0;
  bool delta_mult = true;
  bool counit_ok = true;
  bool antipode_ax = true;
  bool methods_agree = true;
  bool ok() const {
    return delta_mult && counit_ok && antipode_ax && methods_agree;
  }
};
HopfReport hopf_suite(const HallAlg& alg, int total_dim_bound);

}  // namespace hallwb
