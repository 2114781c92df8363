#pragma once

#include "siltlab/complex.hpp"

namespace siltlab {

// Brute-force ground truth on tiny instances over small prime fields.
struct EnumerationCaps {
    int max_total_dim = 6;
    std::vector<int> per_vertex; // empty = bounded by the total only
    long max_states = 1 << 16;   // matrix-tuple budget per dimension vector
};

// All indecomposables of total dimension within the caps, up to isomorphism,
// by exhaustive enumeration of arrow-matrix tuples.
std::vector<Rep> enumerate_reps_upto_iso(const BasedAlgebra& alg, const EnumerationCaps& caps,
                                         Rng& rng);

// All subsets of the given indecomposables closed under quotients and
// extensions, as index lists sorted by size then lexicographically. The
// list must contain every indecomposable of the algebra (rep-finite only).
std::vector<std::vector<int>> enumerate_torsion_classes_repfinite(const std::vector<Rep>& indecs,
                                                                  Rng& rng);

// Indecomposables whose endomorphism algebra is a division ring, checked by
// enumerating every endomorphism.
std::vector<Rep> brute_bricks(const BasedAlgebra& alg, const EnumerationCaps& caps, Rng& rng);

// dim Hom_{K^b}(sigma, tau[shift]) for shift 0 or 1: chain maps modulo
// null-homotopic ones, via realised projectives (independent of approx).
int homotopy_hom_dim(const TwoTermComplex& sigma, const TwoTermComplex& tau, int shift);

} // namespace siltlab
