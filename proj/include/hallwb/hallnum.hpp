#pragma once

// Hall numbers g^L_{M,N} = #{submodules W of L : W iso N and L/W iso M},
// by three independent routes:
//   1. direct submodule enumeration (constraint-propagating DFS over
//      vertexwise subspaces, aggregated and cached per (L, dim N)),
//   2. counting monomorphisms N -> L with cokernel M, divided by |Aut N|,
//   3. Riedtmann's formula through the fibre sizes of the extension map
//      Ext^1(M,N) -> middle-term classes.
// Plus iterated filtration numbers g^L_{A1,...,Am} (A1 = top quotient).

#include <map>
#include <vector>

#include "hallwb/catalog.hpp"

namespace hallwb {

// Ambient dimension sum_a d_{s(a)} d_{t(a)} of the matrix-tuple variety E_d.
long variety_dim(const Quiver& Q, const Dim& d);

// dim Hom between decomposition classes via the cached indecomposable table.
int hom_cls(Catalog& cat, int A, int B);

// Middle-term classes of extensions of M by N: every L with g^L_{M,N} > 0,
// tagged with the orbit dimension dim GL_gamma - dim End(L) inside E_gamma.
struct ExtSet {
  int Mcls = 0, Ncls = 0;
  Dim degree;
  struct Member {
    BigInt g;        // Hall number g^L_{M,N}
    long orbit_dim;  // dim of the GL-orbit of L in E_degree
  };
  std::map<int, Member> members;
};

class HallEngine {
 public:
  explicit HallEngine(Catalog& cat) : cat_(cat) {}
  Catalog& cat() { return cat_; }

  BigInt hall_number(int Mcls, int Ncls, int Lcls, int route = 1);
  BigInt hall_sub(int Mcls, int Ncls, int Lcls);
  // Orbits of exact pairs (f: N -> L mono, g: L ->> M) under Aut N x Aut M;
  // computed as #{monos with cokernel in class M} / |Aut N|.
  BigInt hall_number_via_sequences(int Mcls, int Ncls, int Lcls);
  BigInt hall_number_riedtmann(int Mcls, int Ncls, int Lcls);

  ExtSet ext_set(int Mcls, int Ncls);
  long orbit_dim(int cls);

  // All (sub class, quotient class) pairs over submodules of L with
  // dimension vector beta, with multiplicities; cached.
  const std::map<std::pair<int, int>, BigInt>& subquot_counts(int Lcls,
                                                              const Dim& beta);

  // Number of cocycle classes in Ext^1(M, N) whose middle term lies in each
  // class; total mass is q^{dim Ext^1(M,N)}; cached.
  const std::map<int, BigInt>& ext_distribution(int Mcls, int Ncls);

  // g^L over chains: sum over W1 <= W2 <= ... <= L with prescribed
  // subquotients, top quotient first.
  BigInt filtration_number(const std::vector<int>& parts, int Lcls);

 private:
  Catalog& cat_;
  std::map<std::pair<int, Dim>, std::map<std::pair<int, int>, BigInt>>
      sub_cache_;
  std::map<std::pair<int, int>, std::map<int, BigInt>> ext_cache_;
  std::map<std::pair<std::vector<int>, int>, BigInt> filt_cache_;
};

}  // namespace hallwb
