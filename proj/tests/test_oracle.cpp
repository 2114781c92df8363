#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "siltlab/latticewide.hpp"
#include "siltlab/oracle.hpp"

using namespace siltlab;

namespace {

PathExpr rel(std::initializer_list<std::pair<long, std::vector<int>>> terms) {
    PathExpr e;
    for (auto& [c, w] : terms) e.terms.push_back({Scalar(c), w});
    return e;
}

BasedAlgebra linear_a2(Field f) {
    Quiver q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", 0, 1}};
    return build_based_algebra(f, q, {});
}

BasedAlgebra kx2(Field f) {
    Quiver q;
    q.vertices = {"v"};
    q.arrows = {{"alpha", 0, 0}};
    return build_based_algebra(f, q, {rel({{1, {0, 0}}})});
}

BasedAlgebra preproj_a2(Field f) {
    Quiver q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", 0, 1}, {"b", 1, 0}};
    return build_based_algebra(f, q, {rel({{1, {0, 1}}}), rel({{1, {1, 0}}})});
}

BasedAlgebra kronecker(Field f) {
    Quiver q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", 0, 1}, {"b", 0, 1}};
    return build_based_algebra(f, q, {});
}

bool contains_iso(const std::vector<Rep>& list, const Rep& x, Rng& rng) {
    for (const Rep& r : list)
        if (is_isomorphic(r, x, rng)) return true;
    return false;
}

} // namespace

TEST_CASE("exhaustive enumeration") {
    Rng rng(47);
    Field f2 = Field::prime(2);

    BasedAlgebra a2 = linear_a2(f2);
    StandardModules sm = standard_modules(a2);
    EnumerationCaps caps;
    caps.max_total_dim = 2;
    std::vector<Rep> inds = enumerate_reps_upto_iso(a2, caps, rng);
    REQUIRE(inds.size() == 3);
    CHECK(contains_iso(inds, sm.simple[0], rng));
    CHECK(contains_iso(inds, sm.simple[1], rng));
    CHECK(contains_iso(inds, sm.proj[0], rng));

    BasedAlgebra loc = kx2(f2);
    CHECK(enumerate_reps_upto_iso(loc, caps, rng).size() == 2);

    // Kronecker at dimension vector (1,1): the projective line over F2
    BasedAlgebra kr = kronecker(f2);
    std::vector<Rep> kinds = enumerate_reps_upto_iso(kr, caps, rng);
    int dv11 = 0;
    for (const Rep& r : kinds)
        if (r.dims == std::vector<int>{1, 1}) ++dv11;
    CHECK(dv11 == 3);

    // doubling caps is a fixed point on the rep-finite entries
    EnumerationCaps caps4;
    caps4.max_total_dim = 4;
    CHECK(enumerate_reps_upto_iso(a2, caps4, rng).size() == 3);
    CHECK(enumerate_reps_upto_iso(loc, caps4, rng).size() == 2);
    BasedAlgebra pp = preproj_a2(f2);
    CHECK(enumerate_reps_upto_iso(pp, caps, rng).size() == 4);
    CHECK(enumerate_reps_upto_iso(pp, caps4, rng).size() == 4);

    // and F3 agrees on the counts
    Field f3 = Field::prime(3);
    BasedAlgebra a2_3 = linear_a2(f3);
    CHECK(enumerate_reps_upto_iso(a2_3, caps, rng).size() == 3);

    // the budget is enforced
    EnumerationCaps big;
    big.max_total_dim = 8;
    CHECK_THROWS_AS(enumerate_reps_upto_iso(kr, big, rng), CapTooLarge);
}

TEST_CASE("torsion class enumeration") {
    Rng rng(53);
    Field f2 = Field::prime(2);
    EnumerationCaps caps;
    caps.max_total_dim = 2;

    BasedAlgebra a2 = linear_a2(f2);
    std::vector<Rep> ia = enumerate_reps_upto_iso(a2, caps, rng);
    std::vector<std::vector<int>> ta = enumerate_torsion_classes_repfinite(ia, rng);
    CHECK(ta.size() == 5);
    CHECK(ta.front().empty());                // {0}
    CHECK(ta.back().size() == ia.size());     // everything

    BasedAlgebra pp = preproj_a2(f2);
    std::vector<Rep> ip = enumerate_reps_upto_iso(pp, caps, rng);
    CHECK(enumerate_torsion_classes_repfinite(ip, rng).size() == 6);

    BasedAlgebra loc = kx2(f2);
    std::vector<Rep> il = enumerate_reps_upto_iso(loc, caps, rng);
    CHECK(enumerate_torsion_classes_repfinite(il, rng).size() == 2);
}

TEST_CASE("brute-force bricks") {
    Rng rng(59);
    Field f2 = Field::prime(2);
    EnumerationCaps caps;
    caps.max_total_dim = 2;

    BasedAlgebra pp = preproj_a2(f2);
    StandardModules smp = standard_modules(pp);
    std::vector<Rep> bp = brute_bricks(pp, caps, rng);
    REQUIRE(bp.size() == 4);
    for (const Rep& b : bp) {
        // dimension vectors are positive roots of A2
        bool root = b.dims == std::vector<int>{1, 0} || b.dims == std::vector<int>{0, 1} ||
                    b.dims == std::vector<int>{1, 1};
        CHECK(root);
    }

    BasedAlgebra a2 = linear_a2(f2);
    CHECK(brute_bricks(a2, caps, rng).size() == 3);
    BasedAlgebra loc = kx2(f2);
    std::vector<Rep> bl = brute_bricks(loc, caps, rng);
    REQUIRE(bl.size() == 1);
    CHECK(bl[0].total_dim() == 1);
}

TEST_CASE("homotopy hom dimensions") {
    BasedAlgebra a2 = linear_a2(Field::rationals());
    StandardModules sm = standard_modules(a2);
    TwoTermComplex s1 = min_proj_presentation(sm.simple[0]);
    CHECK(homotopy_hom_dim(s1, s1, 1) == 0);

    BasedAlgebra loc = kx2(Field::rationals());
    TwoTermComplex sloc = min_proj_presentation(standard_modules(loc).simple[0]);
    CHECK(homotopy_hom_dim(sloc, sloc, 1) > 0);

    // stalk complexes: Hom(sigma, sigma[0]) = End of the projective
    TwoTermComplex p1 = stalk_p0(a2, {0});
    CHECK(homotopy_hom_dim(p1, p1, 0) == 1);
    TwoTermComplex pa = stalk_p0(a2, {0, 1});
    CHECK(homotopy_hom_dim(pa, pa, 0) == 3); // End(A) = A

    // agreement with the presilting test on a mixed bag of complexes
    std::vector<TwoTermComplex> cs{s1, min_proj_presentation(sm.simple[1]),
                                   min_proj_presentation(sm.proj[0]), pa, sloc};
    for (const TwoTermComplex& c : cs)
        CHECK(is_presilting(c) == (homotopy_hom_dim(c, c, 1) == 0));
}

TEST_CASE("oracle agrees with the fast path over F2") {
    Rng rng(61);
    Field f2 = Field::prime(2);
    EnumerationCaps caps;
    caps.max_total_dim = 2;

    std::vector<BasedAlgebra> algs;
    algs.push_back(linear_a2(f2));
    algs.push_back(preproj_a2(f2));
    algs.push_back(kx2(f2));
    std::vector<size_t> expected{5, 6, 2};
    for (size_t k = 0; k < algs.size(); ++k) {
        ExchangeGraph g = exchange_graph(algs[k], GraphCaps{}, rng);
        REQUIRE(g.status == GraphStatus::Complete);
        std::vector<Rep> inds = enumerate_reps_upto_iso(algs[k], caps, rng);
        std::vector<std::vector<int>> tc = enumerate_torsion_classes_repfinite(inds, rng);
        CHECK(g.nodes.size() == expected[k]);
        CHECK(tc.size() == expected[k]);

        // brick labels land inside the brute-force brick list
        HasseDiagram h = hasse(g, rng);
        std::vector<Rep> bricks = brute_bricks(algs[k], caps, rng);
        for (const HasseEdge& e : h.edges) CHECK(contains_iso(bricks, e.label, rng));
    }
}
