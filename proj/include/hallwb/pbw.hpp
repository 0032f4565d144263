#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hallwb/hallalg.hpp"

namespace hallwb {

// PBW-type basis machinery for the positive singular Hall algebra of a tame
// quiver: the delta-graded family E_{n delta} split by regular support
// (non-homogeneous tubes / mixed / homogeneous), products over partitions,
// and the triangular family  <P> * <M> * E_{w delta, 3} * <I>.
//
// Membership of a regular class in the embedded Kronecker subcategory is
// decided by enumerating regular Kronecker modules of dimension (n, n) and
// transporting them through the pencil embedding -- not by scanning ambient
// tube classes, which would overcount.

struct EDeltaParts {
  HallElement e1;  // supported on non-homogeneous tubes      (in the image)
  HallElement e2;  // mixed non-homogeneous (+) homogeneous   (in the image)
  HallElement e3;  // supported on homogeneous tubes          (in the image)
};

struct PBWElement {
  int Pcls = 0, Mcls = 0, Icls = 0;  // preprojective / tube / preinjective
  std::vector<int> w;                // partition, possibly empty
  HallElement value;
  std::string label;  // "<P> | <M> | w=(..) | <I>"
};

struct PbwRankReport {
  long b_count = 0;   // elements produced at this degree
  long nonzero = 0;   // of which nonzero
  long rank = 0;      // rank of the produced family
  long hs_rank = 0;   // dim of the singular-algebra graded piece
  long combined = 0;  // rank of family + singular basis together
  bool independent = false;  // rank == b_count
  bool spans = false;        // rank == hs_rank == combined
  bool ok() const { return independent && spans; }
};

struct Lemma412Report {
  bool a = false;  // E_{n d,1} and E_{n' d,3} commute
  bool b = false;  // E_{n d,2} = sum_m E_{m d,1} * E_{(n-m) d,3}
  bool c = false;  // E_{n d,3} and E_{n' d,3} commute
  bool ok() const { return a && b && c; }
};

class PBW {
 public:
  explicit PBW(HallAlg& alg);  // UsageError unless the catalogue is tame

  HallAlg& alg() const { return alg_; }
  Catalog& cat() const { return alg_.cat(); }
  const KroneckerEmbedding& embedding() const { return *emb_; }

  // Kronecker-side catalogue naming the transported classes; rebuilt when a
  // larger bound is requested (class ids are relative to the current build).
  Catalog& kron_catalog(int min_bound = 4);

  Rep transport(const Rep& MK) const;     // the embedding functor on reps
  int embed_kronecker(int kron_cls);      // class id over kron_catalog()
  int embed_kronecker(const std::string& kron_cls);

  EDeltaParts e_delta_parts(int n);       // Eq-(7)/(8)/(9) pieces, cached
  HallElement e_delta(int n);             // their sum
  HallElement e_w3(const std::vector<int>& w);  // product of e3 factors

  Lemma412Report lemma412_check(int n, int nprime);

  std::vector<PBWElement> pbw_basis(const Dim& gamma);
  PbwRankReport pbw_rank_check(const Dim& gamma);
  // Every degree 0 < gamma <= cap, sharing one singular-span computation.
  std::map<Dim, PbwRankReport> pbw_rank_sweep(const Dim& cap);

 private:
  PbwRankReport rank_core(const Dim& gamma, const GradedSubspace& hs);
  // ambient class of the transported regular Kronecker indecomposable
  int image_indec_class(const std::string& point, int m);

  HallAlg& alg_;
  std::optional<KroneckerEmbedding> emb_;
  QuiverPtr kq_;
  std::unique_ptr<Catalog> kcat_;
  std::map<std::pair<std::string, int>, int> img_cache_;
  std::map<int, EDeltaParts> parts_cache_;
};

}  // namespace hallwb
