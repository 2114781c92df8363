#pragma once

#include "siltlab/complex.hpp"

namespace siltlab {

// Left add(U)-approximation X -> U0 with U0 a sum of copies of the
// indecomposable summands of U.
struct ApproximationResult {
    RepMap map; // X -> U0
    Rep cokernel;
    bool minimal = false;
};

ApproximationResult left_add_approximation(const Rep& x, const Rep& u, bool minimal, Rng& rng);

// Checks that f: X -> U0 is a left add(U)-approximation: composition with f
// hits every map X -> U_i for each indecomposable summand U_i of U.
bool is_left_approximation(const RepMap& f, const std::vector<Rep>& u_indecs);

// Splits off contractible summands (P == P) of a two-term complex by
// eliminating differential entries that are invertible in their Peirce
// corner.
TwoTermComplex prune_contractibles(const TwoTermComplex& s);

// Mapping cone of a lift of f through the presentation sigma0 of its
// target. f.src must be realize_projectives(src_copies).rep, and sigma0
// must be the minimal presentation of f.tgt (so that the canonical
// projective cover realises its cokernel map). Contractible summands are
// pruned.
TwoTermComplex cone_presentation(const std::vector<int>& src_copies, const RepMap& f,
                                 const TwoTermComplex& sigma0);

// dim of chain maps sigma -> tau[1] modulo homotopy.
int hom_shift1_dim(const TwoTermComplex& sigma, const TwoTermComplex& tau);

bool is_presilting(const TwoTermComplex& sigma);

// Hom(P0,X) -> Hom(P1,X) surjective (D_sigma), resp. that plus
// Hom(coker sigma, X) = 0 (X_sigma).
bool d_sigma_membership(const TwoTermComplex& sigma, const Rep& x);
bool x_sigma_membership(const TwoTermComplex& sigma, const Rep& x);

} // namespace siltlab
