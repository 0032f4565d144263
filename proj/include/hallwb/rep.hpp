#pragma once

// Finite-dimensional representations of an acyclic quiver over GF(q):
// constructions (simples, path-basis projectives/injectives, direct sums,
// sub/quotient along invariant subspaces), Hom/Ext via the standard two-term
// complex, and BGP reflection functors with Coxeter composites.

#include <utility>
#include <vector>

#include "hallwb/gf.hpp"
#include "hallwb/linalg.hpp"
#include "hallwb/quiver.hpp"

namespace hallwb {

struct Rep {
  QuiverPtr Q;
  const GF* F = nullptr;
  Dim d;                  // one entry per vertex
  std::vector<Mat> maps;  // maps[a] is d[t(a)] x d[s(a)], acting on columns

  int total_dim() const { return dim_total(d); }
  bool operator==(const Rep& o) const {
    return d == o.d && maps == o.maps;
  }
};

Rep rep_zero(QuiverPtr Q, const GF* F, Dim d);
Rep rep_simple(QuiverPtr Q, const GF* F, int vertex);
Rep rep_proj(QuiverPtr Q, const GF* F, int vertex);  // paths out of vertex
Rep rep_inj(QuiverPtr Q, const GF* F, int vertex);   // paths into vertex
Rep direct_sum(const Rep& A, const Rep& B);
Rep rep_from_maps(QuiverPtr Q, const GF* F, Dim d, std::vector<Mat> maps);
void rep_validate(const Rep& M);  // throws UsageError on shape mismatch

// Invariant subspace given per-vertex row-basis matrices (k_i x d_i).
// Returns (sub, quotient); throws UsageError if the rows are not invariant.
std::pair<Rep, Rep> sub_quot(const Rep& M, const std::vector<Mat>& rows);

// Extend independent columns to an invertible square matrix with standard
// basis vectors (original columns kept first).
Mat complete_to_invertible(const Mat& V);

// Morphism space: all tuples (f_i) with N_a f_s = f_t M_a.
std::vector<std::vector<Mat>> hom_space(const Rep& M, const Rep& N);
int hom_dim(const Rep& M, const Rep& N);

// dim Ext^1 computed as corank of the presentation map
//   (f_i) |-> (N_a f_{s(a)} - f_{t(a)} M_a)_a.
int ext_dim_direct(const Rep& M, const Rep& N);

// The matrix of the map above, with column layout = concatenated vec(f_i)
// and row layout = concatenated vec(z_a); used to sweep extension cocycles.
Mat ext_presentation_matrix(const Rep& M, const Rep& N);

// Middle term of the extension 0 -> N -> E -> M -> 0 attached to a cocycle
// z = (z_a), z_a of shape d^N[t(a)] x d^M[s(a)], flattened row-major per
// arrow: E_a = [[N_a, z_a], [0, M_a]] with N embedded first.
Rep middle_term(const Rep& M, const Rep& N, const std::vector<GF::El>& z_flat);

// BGP reflection at a sink / source; result lives over Q.reversed_at(v).
Rep reflect_sink(const Rep& M, int v);
Rep reflect_source(const Rep& M, int v);

// Coxeter composites over an admissible order; orientation returns to Q.
Rep tau_plus(const Rep& M);   // C^+: reflect at sinks, first-to-last
Rep tau_minus(const Rep& M);  // C^-: reflect at sources, last-to-first

}  // namespace hallwb
