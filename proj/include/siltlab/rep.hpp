#pragma once

#include "siltlab/algebra.hpp"

namespace siltlab {

// Right module over a BasedAlgebra as a quiver representation: one space
// per vertex, one matrix per arrow a:i->j mapping the vertex-i space to the
// vertex-j space (row convention: x -> x * m).
struct Rep {
    const BasedAlgebra* alg = nullptr;
    std::vector<int> dims;
    std::vector<Matrix> arr; // per arrow

    int total_dim() const;
    bool is_zero() const { return total_dim() == 0; }
    std::string dimvec_str() const;
};

struct RepMap {
    Rep src, tgt;
    std::vector<Matrix> f; // per vertex, dims_src[v] x dims_tgt[v]
};

Rep zero_rep(const BasedAlgebra& alg);
Rep simple_rep(const BasedAlgebra& alg, int vertex);

// Action of the basis monomial m on X, as a matrix from the source-vertex
// space to the target-vertex space of m.
Matrix monomial_action(const Rep& x, int mono);
// Component of the action of an algebra element between two vertex spaces.
Matrix elem_action(const Rep& x, const AlgebraElem& a, int i, int j);

// Checks that arrow matrices define an A-module: the induced linear map on
// basis monomials must respect the multiplication table.
bool validate_rep(const Rep& x);
bool validate_map(const RepMap& m);

struct StandardModules {
    std::vector<Rep> proj, simple, inj;
};
StandardModules standard_modules(const BasedAlgebra& alg);
Rep regular_rep(const BasedAlgebra& alg);

std::vector<RepMap> hom_basis(const Rep& m, const Rep& n);
int hom_dim(const Rep& m, const Rep& n);

RepMap compose(const RepMap& f, const RepMap& g); // first f, then g
RepMap zero_map(const Rep& m, const Rep& n);
RepMap identity_map(const Rep& m);
bool map_is_zero(const RepMap& f);
bool map_is_iso(const RepMap& f);

// Direct sums. The returned Rep owns nothing; summand inclusions and
// projections can be rebuilt from the dimension offsets when needed.
Rep direct_sum(const BasedAlgebra& alg, const std::vector<const Rep*>& parts);
Rep direct_sum(const BasedAlgebra& alg, const std::vector<Rep>& parts);

// Subrepresentation spanned by the given rows (one matrix of row vectors
// per vertex; rows need not be independent). Returns the subrep and the
// inclusion map.
struct SubRep {
    Rep rep;
    std::vector<Matrix> rows; // basis rows inside the ambient vertex spaces
};
SubRep sub_rep(const Rep& x, const std::vector<Matrix>& spanning_rows);
RepMap sub_inclusion(const SubRep& s, const Rep& ambient);

struct KernelCokernelImage {
    Rep kernel, cokernel, image;
    std::vector<Matrix> kernel_rows;   // rows in the source vertex spaces
    std::vector<Matrix> image_rows;    // rows in the target vertex spaces
    std::vector<Matrix> coker_proj;    // per vertex: dims_tgt x dims_coker
};
KernelCokernelImage map_kernel_cokernel_image(const RepMap& f);

// Quotient of X by the subrep spanned by `rows`, with the projection map.
struct QuotientRep {
    Rep rep;
    std::vector<Matrix> proj; // per vertex
};
QuotientRep quotient_rep(const Rep& x, const std::vector<Matrix>& rows);

Rep trace_submodule(const Rep& t, const Rep& x);
SubRep trace_submodule_sub(const Rep& t, const Rep& x);
bool in_gen(const Rep& t, const Rep& x); // trace(T, X) = X

// Krull-Schmidt decomposition into indecomposables.
std::vector<Rep> decompose(const Rep& m, Rng& rng);
bool is_indecomposable(const Rep& m, Rng& rng);
bool is_isomorphic(const Rep& m, const Rep& n, Rng& rng);

// Brick test: End(M) is a division ring (M indecomposable with radical-free
// endomorphism algebra).
bool is_brick(const Rep& m, Rng& rng);

} // namespace siltlab
