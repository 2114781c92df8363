#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "siltlab/algebra.hpp"

using namespace siltlab;

namespace {

PathExpr rel(std::initializer_list<std::pair<long, std::vector<int>>> terms) {
    PathExpr e;
    for (auto& [c, w] : terms) e.terms.push_back({Scalar(c), w});
    return e;
}

Quiver linear_a2() {
    Quiver q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", 0, 1}};
    return q;
}

Quiver one_loop() {
    Quiver q;
    q.vertices = {"v"};
    q.arrows = {{"alpha", 0, 0}};
    return q;
}

Quiver preproj_a2() {
    Quiver q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", 0, 1}, {"b", 1, 0}};
    return q;
}

Quiver preproj_a3() {
    Quiver q;
    q.vertices = {"1", "2", "3"};
    q.arrows = {{"a1", 0, 1}, {"a2", 1, 2}, {"b1", 1, 0}, {"b2", 2, 1}};
    return q;
}

void check_algebra_axioms(const BasedAlgebra& alg) {
    int d = alg.dim();
    // unitality
    AlgebraElem one = alg.unit();
    for (int i = 0; i < d; ++i) {
        AlgebraElem b = alg.basis_elem(i);
        CHECK(multiply(alg, one, b) == b);
        CHECK(multiply(alg, b, one) == b);
    }
    // associativity on basis triples
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                AlgebraElem bi = alg.basis_elem(i), bj = alg.basis_elem(j), bk = alg.basis_elem(k);
                CHECK(multiply(alg, multiply(alg, bi, bj), bk) ==
                      multiply(alg, bi, multiply(alg, bj, bk)));
            }
    // Peirce decomposition
    int n = alg.num_vertices();
    int total = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) total += int(alg.peirce(i, j).size());
    CHECK(total == d);
    // idempotents orthogonal and summing to 1
    AlgebraElem s = alg.zero_elem();
    for (int v = 0; v < n; ++v) {
        AlgebraElem ev = alg.basis_elem(alg.idempotent_index(v));
        CHECK(multiply(alg, ev, ev) == ev);
        s = elem_add(alg, s, ev);
        for (int w = 0; w < n; ++w)
            if (w != v) CHECK(elem_is_zero(multiply(alg, ev, alg.basis_elem(w))));
    }
    CHECK(s == alg.unit());
    // nilpotency witness: longest basis monomial has length L-1
    int maxlen = 0;
    for (int i = 0; i < d; ++i) maxlen = std::max(maxlen, alg.mono_length(i));
    CHECK(maxlen == alg.nilpotency - 1);
}

} // namespace

TEST_CASE("linear A2") {
    Field q = Field::rationals();
    auto alg = build_based_algebra(q, linear_a2(), {});
    CHECK(alg.dim() == 3);
    CHECK(alg.nilpotency == 2);
    CHECK(alg.mono_str(0) == "e_1");
    CHECK(alg.mono_str(1) == "e_2");
    CHECK(alg.mono_str(2) == "a");
    // e1*a = a, a*e1 = 0
    AlgebraElem a = alg.basis_elem(2);
    CHECK(multiply(alg, alg.basis_elem(0), a) == a);
    CHECK(elem_is_zero(multiply(alg, a, alg.basis_elem(0))));
    CHECK(multiply(alg, a, alg.basis_elem(1)) == a);
    check_algebra_axioms(alg);
}

TEST_CASE("K[x]/(x^2)") {
    Field q = Field::rationals();
    auto alg = build_based_algebra(q, one_loop(), {rel({{1, {0, 0}}})});
    CHECK(alg.dim() == 2);
    AlgebraElem al = alg.basis_elem(1);
    CHECK(elem_is_zero(multiply(alg, al, al)));
    check_algebra_axioms(alg);
}

TEST_CASE("loop without relation is not admissible") {
    Field q = Field::rationals();
    CHECK_THROWS_AS(build_based_algebra(q, one_loop(), {}), NonAdmissible);
}

TEST_CASE("preprojective A2") {
    Field q = Field::rationals();
    auto alg = build_based_algebra(q, preproj_a2(), {rel({{1, {0, 1}}}), rel({{1, {1, 0}}})});
    CHECK(alg.dim() == 4);
    AlgebraElem a = alg.basis_elem(alg.arrow_basis_index(0));
    AlgebraElem b = alg.basis_elem(alg.arrow_basis_index(1));
    CHECK(elem_is_zero(multiply(alg, a, b)));
    CHECK(elem_is_zero(multiply(alg, b, a)));
    check_algebra_axioms(alg);
}

TEST_CASE("preprojective A3") {
    Field q = Field::rationals();
    // relations: a1b1, b1a1 - a2b2, b2a2 (left-to-right composition)
    auto alg = build_based_algebra(
        q, preproj_a3(),
        {rel({{1, {0, 2}}}), rel({{1, {2, 0}}, {-1, {1, 3}}}), rel({{1, {3, 1}}})});
    CHECK(alg.dim() == 10);
    check_algebra_axioms(alg);
    // the two length-2 loops at vertex 2 agree in the quotient
    CHECK(alg.path_element({2, 0}) == alg.path_element({1, 3}));
    // e_iAe_j dims of the preprojective algebra of A3
    CHECK(alg.peirce(0, 0).size() == 1);
    CHECK(alg.peirce(1, 1).size() == 2);
    CHECK(alg.peirce(2, 2).size() == 1);
    CHECK(alg.peirce(0, 2).size() == 1);
    CHECK(alg.peirce(2, 0).size() == 1);
}

TEST_CASE("malformed relations") {
    Field q = Field::rationals();
    // non-composable: a followed by a (1->2 then 1->2)
    CHECK_THROWS_AS(build_based_algebra(q, linear_a2(), {rel({{1, {0, 0}}})}), MalformedRelation);
    // length < 2
    CHECK_THROWS_AS(build_based_algebra(q, preproj_a2(), {rel({{1, {0}}})}), MalformedRelation);
    // non-parallel terms
    CHECK_THROWS_AS(build_based_algebra(q, preproj_a3(),
                                        {rel({{1, {0, 2}}, {1, {3, 1}}})}),
                    MalformedRelation);
}

TEST_CASE("rebuild with larger cap is identical") {
    Field q = Field::rationals();
    auto r1 = rel({{1, {0, 1}}});
    auto r2 = rel({{1, {1, 0}}});
    auto a1 = build_based_algebra(q, preproj_a2(), {r1, r2}, 8);
    auto a2 = build_based_algebra(q, preproj_a2(), {r1, r2}, 16);
    REQUIRE(a1.dim() == a2.dim());
    CHECK(a1.nilpotency == a2.nilpotency);
    for (int i = 0; i < a1.dim(); ++i) {
        CHECK(a1.basis[size_t(i)].arrows == a2.basis[size_t(i)].arrows);
        for (int j = 0; j < a1.dim(); ++j) CHECK(a1.table_entry(i, j) == a2.table_entry(i, j));
    }
}

TEST_CASE("opposite algebra") {
    Field q = Field::rationals();
    auto alg = build_based_algebra(q, linear_a2(), {});
    auto op = opposite_algebra(alg);
    CHECK(op.dim() == 3);
    // in A^op, a now runs 2 -> 1 and e2 * a = a
    AlgebraElem a = op.basis_elem(2);
    CHECK(multiply(op, op.basis_elem(1), a) == a);
    CHECK(multiply(op, a, op.basis_elem(0)) == a);
    CHECK(elem_is_zero(multiply(op, op.basis_elem(0), a)));
    check_algebra_axioms(op);

    // two-loop example: products reverse
    auto pp = build_based_algebra(
        q, preproj_a3(),
        {rel({{1, {0, 2}}}), rel({{1, {2, 0}}, {-1, {1, 3}}}), rel({{1, {3, 1}}})});
    auto ppop = opposite_algebra(pp);
    check_algebra_axioms(ppop);
    for (int i = 0; i < pp.dim(); ++i)
        for (int j = 0; j < pp.dim(); ++j)
            CHECK(multiply(ppop, pp.basis_elem(i), pp.basis_elem(j)) ==
                  multiply(pp, pp.basis_elem(j), pp.basis_elem(i)));
}
