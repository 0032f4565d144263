#pragma once

// Complete list of indecomposable representations up to a total-dimension
// bound, for representation-finite and tame acyclic quivers, with:
//  - canonical labels (preprojective tau^-k P(i), preinjective tau^k I(i),
//    non-homogeneous tube members T<t>[j,m], homogeneous H[pt,m]),
//  - interned isomorphism classes (multisets of labels),
//  - classification of arbitrary representations by Hom-profile probing
//    against the catalogue (Auslander: profiles separate modules),
//  - |Aut|, dim End, residue degrees, and class enumeration by dimension.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hallwb/endo.hpp"
#include "hallwb/kronecker.hpp"
#include "hallwb/numbers.hpp"
#include "hallwb/rep.hpp"
#include "hallwb/tame.hpp"

namespace hallwb {

enum class PartKind { Preproj, Preinj, Tube, Homog };

struct IndecLabel {
  PartKind kind = PartKind::Preproj;
  int vertex = -1;    // preproj/preinj: base vertex (0-based)
  int shift = 0;      // tau power (>= 0)
  int tube = -1;      // tube index (0-based)
  int pos = 0;        // quasi-socle position in the tube (1-based)
  int len = 0;        // quasi-length
  std::string point;  // homog: closed point id

  auto key() const {
    return std::tie(kind, vertex, shift, tube, pos, len, point);
  }
  bool operator<(const IndecLabel& o) const { return key() < o.key(); }
  bool operator==(const IndecLabel& o) const { return key() == o.key(); }
  std::string to_string(const Quiver& Q) const;
};

// Isomorphism class = multiset of indecomposable labels.
using Decomp = std::map<IndecLabel, int>;

class Catalog {
 public:
  // bound = max total dimension of catalogued indecomposables.
  Catalog(QuiverPtr Q, unsigned q, int bound);

  const Quiver& quiver() const { return *Q_; }
  QuiverPtr quiver_ptr() const { return Q_; }
  const GF* field() const { return F_; }
  unsigned q() const { return F_->q; }
  int bound() const { return bound_; }
  ReprType repr_type() const { return rtype_; }
  bool is_tame() const { return rtype_ == ReprType::Tame; }
  const TameData& tame() const;  // throws UsageError unless tame

  // --- indecomposables ---
  int indec_count() const { return int(labels_.size()); }
  const IndecLabel& label(int iid) const { return labels_[iid]; }
  const Rep& indec_rep(int iid) const { return reps_[iid]; }
  int indec_id(const IndecLabel& l) const;  // throws CatalogMiss
  std::optional<int> find_indec(const IndecLabel& l) const;
  int hom_indec(int i, int j);   // dim Hom, cached
  int res_degree(int iid);       // residue field degree, cached
  int indec_end_dim(int iid);    // dim End, cached
  // tau on labels; nullopt when a projective/injective falls off the edge
  std::optional<IndecLabel> ar_translate(const IndecLabel& l, int dir) const;

  // homogeneous points available at this q (non-special), as (id, degree)
  const std::vector<std::pair<std::string, int>>& homog_points() const {
    return homog_points_;
  }
  // special points absorbed by non-homogeneous tubes: (id, tube index)
  const std::vector<std::pair<std::string, int>>& special_points() const {
    return special_points_;
  }

  // --- classes ---
  int class_of(const Decomp& d);
  const Decomp& decomp(int cls) const { return class_decomp_[cls]; }
  int zero_class();  // class of the zero module
  Dim dim_of(int cls) const;
  Rep rep_of(int cls) const;  // summands in canonical label order
  int end_dim(int cls);
  BigInt aut_order(int cls);
  int classify(const Rep& M);  // throws CatalogMiss outside the catalogue
  std::vector<int> classes_of_dim(const Dim& d);  // cached, sorted

  // --- text ---
  Decomp parse_class(const std::string& s) const;
  int parse_class_id(const std::string& s);
  std::string class_to_string(int cls) const;
  std::string label_to_string(const IndecLabel& l) const {
    return l.to_string(*Q_);
  }

 private:
  void build_preprojectives();
  void build_preinjectives();
  void build_tubes();
  void build_homogeneous();
  int add_indec(const IndecLabel& l, Rep r);
  Rep quasi_simple_rep(const Dim& root) const;  // reflection-groupoid search
  IndecLabel parse_label(const std::string& tok) const;

  QuiverPtr Q_;
  const GF* F_;
  int bound_;
  ReprType rtype_;
  std::optional<TameData> td_;
  std::optional<KroneckerEmbedding> emb_;

  std::vector<IndecLabel> labels_;
  std::vector<Rep> reps_;
  std::map<IndecLabel, int> label_index_;
  std::map<Dim, std::vector<int>> by_dim_;
  std::vector<std::pair<std::string, int>> homog_points_;
  std::vector<std::pair<std::string, int>> special_points_;

  std::vector<Decomp> class_decomp_;
  std::map<Decomp, int> class_index_;

  std::map<std::pair<int, int>, int> hom_cache_;
  std::map<int, int> resdeg_cache_;
  std::map<int, BigInt> aut_cache_;
  std::map<int, int> enddim_cache_;
  std::map<Dim, std::vector<int>> classes_by_dim_;
};

}  // namespace hallwb
