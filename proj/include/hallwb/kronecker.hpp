#pragma once

// The Kronecker quiver K (two parallel arrows) parametrizes the homogeneous
// regular modules of any tame quiver Q: pick a projective P = P(e) with
// delta_e = 1 and the unique preprojective L of dimension delta + dim P;
// Hom(P, L) is then a two-dimensional pencil phi_a, phi_b of monomorphisms,
// and each Kronecker representation (f_a, f_b) is transported to Q as the
// cokernel of a presentation built from phi_a, phi_b.  Closed points of the
// projective line index the regular Kronecker modules.

#include <string>
#include <utility>
#include <vector>

#include "hallwb/rep.hpp"
#include "hallwb/tame.hpp"

namespace hallwb {

// Regular indecomposable Kronecker module at a closed point:
//   "inf"            -> (J_m(0), I_m)
//   field element id -> (I_m, companion((x - lambda)^m))
//   monic irreducible "x^2+..+c" of degree d -> (I_{dm}, companion(p^m))
Rep kron_regular(QuiverPtr K, const GF* F, const std::string& point, int m);

// Closed points of P^1 over F of degree <= maxdeg, as (id, degree); degree
// one lists "inf" first, then the element ids in numeric order.
std::vector<std::pair<std::string, int>> closed_points(const GF& F,
                                                       int maxdeg);

struct KroneckerEmbedding {
  QuiverPtr Q;
  const GF* F = nullptr;
  int e = -1;  // extension vertex, delta[e] == 1
  Rep P, L;
  std::vector<std::vector<Mat>> phis;  // basis of Hom(P, L), size 2

  // Transport of the Kronecker module (fa, fb) (both d2 x d1) to a Q-module
  // of dimension d1 * delta + (extra top summands when (fa|fb) is not onto).
  Rep image(const Mat& fa, const Mat& fb) const;

  static KroneckerEmbedding build(QuiverPtr Q, const GF* F,
                                  const TameData& T, int e = -1);
};

}  // namespace hallwb
