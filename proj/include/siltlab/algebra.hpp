#pragma once

#include <string>
#include <vector>

#include "siltlab/matrix.hpp"

namespace siltlab {

struct Arrow {
    std::string label;
    int src;
    int dst;
};

struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    int vertex_index(const std::string& name) const;
    int arrow_index(const std::string& name) const;
};

// One term of a relation: coeff * (arrow word, composed left to right:
// a*b means "first a, then b").
struct PathTerm {
    Scalar coeff;
    std::vector<int> arrows;
};

struct PathExpr {
    std::vector<PathTerm> terms;
};

// Path monomial: empty arrow word = trivial path at `vertex`.
struct Monomial {
    std::vector<int> arrows;
    int vertex; // source vertex
};

// Element of a BasedAlgebra: coordinates over its monomial basis.
using AlgebraElem = std::vector<Scalar>;

// Finite dimensional path algebra modulo an admissible ideal, with an
// explicit monomial basis and multiplication table. Basis monomials are in
// length-then-lex order; the first |vertices| entries are the trivial paths.
class BasedAlgebra {
  public:
    explicit BasedAlgebra(Field f) : field(f) {}

    Field field;
    Quiver quiver;
    std::vector<Monomial> basis;
    int nilpotency; // smallest L with all length-L paths in the ideal

    int dim() const { return int(basis.size()); }
    int num_vertices() const { return int(quiver.vertices.size()); }

    int mono_source(int i) const { return basis[size_t(i)].vertex; }
    int mono_target(int i) const;
    int mono_length(int i) const { return int(basis[size_t(i)].arrows.size()); }

    int idempotent_index(int v) const { return v; }
    int arrow_basis_index(int a) const; // arrows always survive in the basis

    // Indices of basis monomials with the given source and target
    // (a basis of e_i A e_j under right-module composition i -> j).
    std::vector<int> peirce(int i, int j) const;

    AlgebraElem zero_elem() const { return AlgebraElem(size_t(dim()), field.zero()); }
    AlgebraElem unit() const;
    AlgebraElem basis_elem(int i) const;
    // Image of an arbitrary arrow word in the algebra (reduced).
    AlgebraElem path_element(const std::vector<int>& arrows) const;

    const AlgebraElem& table_entry(int i, int j) const {
        return table_[size_t(i) * basis.size() + size_t(j)];
    }

    std::string mono_str(int i) const;
    std::string elem_str(const AlgebraElem& x) const;

  private:
    friend BasedAlgebra build_based_algebra(Field, const Quiver&, const std::vector<PathExpr>&,
                                            int);
    friend BasedAlgebra opposite_algebra(const BasedAlgebra&);
    // Reduction of arbitrary paths of length < nilpotency: rref rows of the
    // truncated ideal over all such paths in descending length-lex order.
    bool reversed_ = false; // set on opposite algebras: reduce reversed words
    std::vector<std::vector<std::vector<int>>> paths_by_len_; // paths of length < L, per length
    std::vector<std::vector<Scalar>> ideal_rref_;  // rows over descending path index
    std::vector<int> ideal_pivots_;
    std::vector<AlgebraElem> table_;
    AlgebraElem reduce_path(const std::vector<int>& arrows) const;
};

BasedAlgebra build_based_algebra(Field field, const Quiver& quiver,
                                 const std::vector<PathExpr>& relations,
                                 int max_path_length = 12);

AlgebraElem elem_add(const BasedAlgebra& a, const AlgebraElem& x, const AlgebraElem& y);
AlgebraElem elem_sub(const BasedAlgebra& a, const AlgebraElem& x, const AlgebraElem& y);
AlgebraElem elem_scaled(const BasedAlgebra& a, const AlgebraElem& x, const Scalar& c);
bool elem_is_zero(const AlgebraElem& x);
AlgebraElem multiply(const BasedAlgebra& a, const AlgebraElem& x, const AlgebraElem& y);

// Opposite algebra: same basis monomials, reversed multiplication. The
// returned algebra reuses the quiver with every arrow reversed; basis
// monomial i corresponds to the reversed arrow word of monomial i here.
BasedAlgebra opposite_algebra(const BasedAlgebra& a);

} // namespace siltlab
