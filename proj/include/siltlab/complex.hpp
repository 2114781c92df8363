#pragma once

#include "siltlab/rep.hpp"

namespace siltlab {

// Two-term complex of projectives P1 -> P0 where P1 = ⊕_k e_{p1[k]}A and
// P0 = ⊕_l e_{p0[l]}A. The differential entry d[k][l] lies in the Peirce
// space e_{p0[l]} A e_{p1[k]} and acts by left multiplication
// (Hom(e_iA, e_jA) ≅ e_jAe_i).
struct TwoTermComplex {
    const BasedAlgebra* alg = nullptr;
    std::vector<int> p1, p0;
    std::vector<std::vector<AlgebraElem>> d; // indexed [k][l]

    bool entries_in_radical() const;
};

TwoTermComplex stalk_p0(const BasedAlgebra& alg, const std::vector<int>& copies);
TwoTermComplex stalk_p1(const BasedAlgebra& alg, const std::vector<int>& copies);
TwoTermComplex complex_direct_sum(const TwoTermComplex& a, const TwoTermComplex& b);

// Realisation of ⊕ e_{copies[c]}A as a Rep, with per-copy offsets into the
// vertex spaces (basis at vertex w: monomials copies[c] -> w, copy by copy).
struct ProjReal {
    Rep rep;
    std::vector<int> copies;
    std::vector<std::vector<int>> off; // off[c][w]
};
ProjReal realize_projectives(const BasedAlgebra& alg, const std::vector<int>& copies);

// Same for injectives ⊕ D(A e_{copies[c]}); basis at w: duals of w -> copies[c].
struct InjReal {
    Rep rep;
    std::vector<int> copies;
    std::vector<std::vector<int>> off;
};
InjReal realize_injectives(const BasedAlgebra& alg, const std::vector<int>& copies);

// The differential as an honest map between realised projectives.
RepMap realize_complex_map(const TwoTermComplex& s);
Rep complex_h0(const TwoTermComplex& s); // cokernel of the differential

// Minimal projective cover of M: copy list + surjection onto M.
struct Cover {
    std::vector<int> copies;
    RepMap map; // realize_projectives(copies).rep -> M
};
Cover projective_cover(const Rep& m);

// Extract the algebra-element entry matrix of a map between realised
// projectives (the image of each copy's idempotent generator).
std::vector<std::vector<AlgebraElem>> entries_of_proj_map(const ProjReal& dom,
                                                          const ProjReal& cod,
                                                          const RepMap& f);

TwoTermComplex min_proj_presentation(const Rep& m);

Rep tau(const Rep& m);
int ext1_dim(const Rep& m, const Rep& n);

// N is a left module given as a Rep over opposite_algebra(M's algebra).
// Returns (dim M ⊗_A N, dim Tor_1^A(M, N)).
std::pair<int, int> tensor_and_tor1(const Rep& m, const Rep& n_op);

// Tensor a complex with a left module: block matrix of left actions,
// mapping ⊕ N_{p1[k]} -> ⊕ N_{p0[l]} (row convention).
Matrix tensor_complex_with_left(const TwoTermComplex& s, const Rep& n_op);

} // namespace siltlab
