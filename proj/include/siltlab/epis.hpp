#pragma once

#include "siltlab/latticewide.hpp"

namespace siltlab {

// Finite dimensional algebra given by raw structure constants. The
// epimorphism target B is an endomorphism algebra and usually not presented
// by a quiver, so it lives outside BasedAlgebra.
struct StructAlgebra {
    Field field{Field::rationals()};
    int dim = 0;
    std::vector<std::vector<AlgebraElem>> table; // table[i][j] = b_i * b_j
    AlgebraElem one;

    AlgebraElem mult(const AlgebraElem& x, const AlgebraElem& y) const;
};

struct RingEpiFlags {
    bool is_ring_hom = false;
    bool is_epimorphism = false; // multiplication B ⊗_A B -> B bijective
    bool tor1_zero = false;
    bool sigma_inverting = false;      // sigma1 ⊗_A B bijective
    bool image_consistent = false;     // essential image matches X_sigma1 on samples
    int dim_b = 0;

    bool all() const {
        return is_ring_hom && is_epimorphism && tor1_zero && sigma_inverting &&
               image_consistent;
    }
    std::string first_failure() const;
};

struct RingEpiPresentation {
    SiltingPair node;
    StructAlgebra b;        // End(reflection_module)^op
    Matrix unit;            // dim A x dim B, one row per basis monomial of A
    Rep reflection_module;  // the reflection of A into the wide subcategory
    TwoTermComplex sigma1;
    std::vector<Rep> semibrick;
    RingEpiFlags flags;
};

// Middle term of the universal extension 0 -> N^e -> E -> M -> 0 spanning
// Ext1(M, N); returns M itself when Ext1(M, N) = 0.
Rep universal_extension(const Rep& m, const Rep& n);

// Projective object of the wide subcategory over the semibrick member s,
// by iterated universal extensions until Ext1 into every member vanishes.
Rep wide_projective(const Rep& s, const std::vector<Rep>& semibrick, int tower_cap);

RingEpiPresentation ring_epi_from_node(const HasseDiagram& h, int node, int tower_cap,
                                       Rng& rng);

// Recomputes all flags of e from scratch; `samples` feeds the essential
// image clause (membership in X_sigma1 vs factoring through the unit).
RingEpiFlags verify_ring_epi(const RingEpiPresentation& e, const std::vector<Rep>& samples,
                             Rng& rng);

// X lies in the essential image of restriction along the unit: the natural
// map X -> X ⊗_A B is bijective (solved linearly).
bool factors_through_unit(const RingEpiPresentation& e, const Rep& x);

// ε∘α = 𝔞 on the samples: factoring through the unit agrees with
// a_map_membership at the node.
bool diagram_commutes(const RingEpiPresentation& e, const std::vector<Rep>& samples,
                      Rng& rng);

struct CensusRow {
    int node = 0;
    int dim_b = 0;
    std::vector<std::string> semibrick_dims;
    RingEpiFlags flags;
};

// One verified presentation per node; pairwise inequivalence certified by
// non-isomorphic semibricks.
std::vector<CensusRow> epiclass_census(const ExchangeGraph& g, int tower_cap, Rng& rng);

} // namespace siltlab
