#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "siltlab/approx.hpp"

using namespace siltlab;

namespace {

PathExpr rel(std::initializer_list<std::pair<long, std::vector<int>>> terms) {
    PathExpr e;
    for (auto& [c, w] : terms) e.terms.push_back({Scalar(c), w});
    return e;
}

BasedAlgebra linear_a2() {
    Quiver q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", 0, 1}};
    return build_based_algebra(Field::rationals(), q, {});
}

BasedAlgebra kx2() {
    Quiver q;
    q.vertices = {"v"};
    q.arrows = {{"alpha", 0, 0}};
    return build_based_algebra(Field::rationals(), q, {rel({{1, {0, 0}}})});
}

BasedAlgebra preproj_a2() {
    Quiver q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", 0, 1}, {"b", 1, 0}};
    return build_based_algebra(Field::rationals(), q, {rel({{1, {0, 1}}}), rel({{1, {1, 0}}})});
}

} // namespace

TEST_CASE("left add approximations") {
    BasedAlgebra a2 = linear_a2();
    StandardModules sm = standard_modules(a2);
    Rng rng(17);

    ApproximationResult r = left_add_approximation(sm.proj[1], sm.proj[0], true, rng);
    CHECK(r.map.tgt.dims == std::vector<int>{1, 1}); // one copy of P1
    CHECK(map_kernel_cokernel_image(r.map).kernel.is_zero());
    CHECK(is_isomorphic(r.cokernel, sm.simple[0], rng));
    CHECK(is_left_approximation(r.map, {sm.proj[0]}));

    Rep a = regular_rep(a2);
    ApproximationResult r2 = left_add_approximation(a, sm.simple[0], true, rng);
    CHECK(is_isomorphic(r2.map.tgt, sm.simple[0], rng));
    CHECK(r2.cokernel.is_zero());

    // redundant copies in U change nothing
    Rep uu = direct_sum(a2, std::vector<const Rep*>{&sm.proj[0], &sm.proj[0]});
    ApproximationResult r3 = left_add_approximation(sm.proj[1], uu, true, rng);
    CHECK(is_isomorphic(r3.map.tgt, sm.proj[0], rng));

    // non-minimal universal map factors everything too
    ApproximationResult r4 = left_add_approximation(a, sm.proj[0], false, rng);
    CHECK(is_left_approximation(r4.map, {sm.proj[0]}));
    CHECK(r4.map.tgt.total_dim() >= 2 * sm.proj[0].total_dim()); // dim Hom(A, P1) = 2
}

TEST_CASE("cone presentations") {
    BasedAlgebra a2 = linear_a2();
    StandardModules sm = standard_modules(a2);
    Rng rng(19);
    std::vector<int> all{0, 1};
    ProjReal areal = realize_projectives(a2, all);

    // identity cone is contractible
    TwoTermComplex c1 = cone_presentation(all, identity_map(areal.rep),
                                          min_proj_presentation(areal.rep));
    CHECK(c1.p0.empty());
    CHECK(c1.p1.empty());

    // A onto S1: degree-0 cohomology vanishes
    std::vector<RepMap> hs = hom_basis(areal.rep, sm.simple[0]);
    REQUIRE(hs.size() == 1);
    TwoTermComplex c2 = cone_presentation(all, hs[0], min_proj_presentation(sm.simple[0]));
    CHECK(complex_h0(c2).is_zero());
    CHECK(c2.p0.empty());
    CHECK(c2.p1 == std::vector<int>{1, 1});

    // minimal approximation sequence: cone presents T1 = S1
    Rep t = direct_sum(a2, std::vector<const Rep*>{&sm.proj[0], &sm.simple[0]});
    ApproximationResult ap = left_add_approximation(areal.rep, t, true, rng);
    TwoTermComplex c3 = cone_presentation(all, ap.map, min_proj_presentation(ap.map.tgt));
    CHECK(is_isomorphic(complex_h0(c3), ap.cokernel, rng));
    CHECK(is_isomorphic(complex_h0(c3), sm.simple[0], rng));
}

TEST_CASE("presilting") {
    BasedAlgebra a2 = linear_a2();
    StandardModules sm = standard_modules(a2);
    CHECK(is_presilting(min_proj_presentation(sm.simple[0])));
    CHECK(is_presilting(min_proj_presentation(sm.proj[0])));
    CHECK(is_presilting(stalk_p0(a2, {0, 1})));

    BasedAlgebra loc = kx2();
    StandardModules lm = standard_modules(loc);
    CHECK(!is_presilting(min_proj_presentation(lm.simple[0])));
    CHECK(is_presilting(stalk_p0(loc, {0})));
}

TEST_CASE("membership in D_sigma and X_sigma") {
    BasedAlgebra a2 = linear_a2();
    StandardModules sm = standard_modules(a2);
    TwoTermComplex stalk = stalk_p0(a2, {0, 1});
    TwoTermComplex empty;
    empty.alg = &a2;
    for (const Rep* x : {&sm.simple[0], &sm.simple[1], &sm.proj[0]}) {
        CHECK(d_sigma_membership(stalk, *x));
        // nonzero X receives maps from coker(0 -> A) = A, so it is not
        // bireflective for the stalk; the empty presentation admits all
        CHECK(!x_sigma_membership(stalk, *x));
        CHECK(d_sigma_membership(empty, *x));
        CHECK(x_sigma_membership(empty, *x));
    }
    TwoTermComplex s = min_proj_presentation(sm.simple[0]);
    CHECK(!d_sigma_membership(s, sm.simple[1]));
    CHECK(d_sigma_membership(s, sm.simple[0]));
    CHECK(!x_sigma_membership(s, sm.simple[0]));
    CHECK(d_sigma_membership(s, sm.proj[0]));
}

TEST_CASE("property: presilting matches Hom(M, tau M) = 0") {
    Rng rng(29);
    for (BasedAlgebra alg : {linear_a2(), preproj_a2(), kx2()}) {
        StandardModules sm = standard_modules(alg);
        std::vector<Rep> mods = sm.proj;
        mods.insert(mods.end(), sm.simple.begin(), sm.simple.end());
        mods.insert(mods.end(), sm.inj.begin(), sm.inj.end());
        for (const Rep& m : mods) {
            bool rigid = hom_dim(m, tau(m)) == 0;
            CHECK(is_presilting(min_proj_presentation(m)) == rigid);
        }
    }
}

TEST_CASE("property: minimal approximations unique across seeds") {
    BasedAlgebra alg = preproj_a2();
    StandardModules sm = standard_modules(alg);
    Rep u = direct_sum(alg, std::vector<const Rep*>{&sm.proj[0], &sm.simple[0]});
    Rng ra(1), rb(991);
    ApproximationResult x = left_add_approximation(sm.proj[1], u, true, ra);
    ApproximationResult y = left_add_approximation(sm.proj[1], u, true, rb);
    Rng rc(5);
    CHECK(is_isomorphic(x.map.tgt, y.map.tgt, rc));
    CHECK(is_isomorphic(x.cokernel, y.cokernel, rc));
    CHECK(is_left_approximation(x.map, {sm.proj[0], sm.simple[0]}));
}
