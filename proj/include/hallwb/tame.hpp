#pragma once

// Affine (tame) type data derived purely from root combinatorics:
// the radical generator delta of the symmetrized Euler form, the defect
// pairing, and the non-homogeneous tubes (tau-orbits of defect-zero real
// roots below delta whose orbit sum is delta).

#include <string>
#include <vector>

#include "hallwb/quiver.hpp"

namespace hallwb {

enum class ReprType { Finite, Tame, Wild };

// Exact classification of the Tits form: positive definite / positive
// semidefinite with one-dimensional radical spanned by a positive vector /
// anything else.
ReprType classify_quiver(const Quiver& Q);

struct Tube {
  // Quasi-simple dimension vectors in tau^{-1} order: simples[(j+1) % r] is
  // tau^{-1} of simples[j].  simples[0] is the lex-least member of the orbit.
  std::vector<Dim> simples;
  int period() const { return int(simples.size()); }
};

struct TameData {
  QuiverPtr Q;
  Dim delta;                // primitive positive radical generator
  std::vector<Tube> tubes;  // non-homogeneous tubes only (period >= 2)

  int ell() const { return int(tubes.size()); }
  // defect(d) = <delta, d>: negative on preprojectives, zero on regulars,
  // positive on preinjectives.
  long defect(const Dim& d) const { return Q->euler(delta, d); }

  static TameData compute(QuiverPtr Q);  // throws UsageError unless tame
};

}  // namespace hallwb
