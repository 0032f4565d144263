#pragma once

// Endomorphism-ring analysis: residue division-field degree of an
// indecomposable (local ring), automorphism-group orders via the
// semisimple-quotient formula, brute-force unit counting for cross-checks,
// and idempotent splitting used as a decomposition fallback.

#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "hallwb/numbers.hpp"
#include "hallwb/rep.hpp"

namespace hallwb {

// Basis of End(M) as per-vertex matrix tuples.
inline std::vector<std::vector<Mat>> end_basis(const Rep& M) {
  return hom_space(M, M);
}

// One endomorphism as a block-diagonal matrix on the total space.
Mat endo_block_matrix(const Rep& M, const std::vector<Mat>& f);

// [End(M)/rad : F_q] for indecomposable M.  Every element of a local
// algebra has a prime-power minimal polynomial; the residue field is the
// compositum of the subfields generated by the basis elements, so its
// degree is the lcm of their irreducible-factor degrees.  Throws
// UsageError if some element shows two distinct irreducible factors
// (i.e. M was decomposable after all).
int residue_degree_local(const Rep& M);

// |Aut M| = q^(h - sum m_i^2 d_i) * prod |GL_{m_i}(F_{q^{d_i}})| where
// h = dim End(M) and parts lists (m_i, d_i) over pairwise non-isomorphic
// indecomposable summands.
BigInt aut_order_formula(unsigned q, int h,
                         const std::vector<std::pair<int, int>>& parts);

// Count invertible elements of End(M) by sweeping all q^h combinations.
// Caller must keep q^h small; throws UsageError beyond 2^20 sweeps.
BigInt unit_count_brute(const Rep& M);

// Search End(M) for an element whose minimal polynomial has two coprime
// factors; the corresponding idempotent splits M.  Returns per-vertex row
// bases for (im e, im(1-e)), or nullopt if no splitting element was found
// among basis elements, pairwise sums, and `tries` random combinations.
std::optional<std::pair<std::vector<Mat>, std::vector<Mat>>> try_split(
    const Rep& M, std::mt19937_64& rng, int tries = 64);

}  // namespace hallwb
