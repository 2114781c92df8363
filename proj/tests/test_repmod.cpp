#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "siltlab/complex.hpp"
#include "siltlab/rep.hpp"

using namespace siltlab;

namespace {

PathExpr rel(std::initializer_list<std::pair<long, std::vector<int>>> terms) {
    PathExpr e;
    for (auto& [c, w] : terms) e.terms.push_back({Scalar(c), w});
    return e;
}

BasedAlgebra linear_a2(const Field& f = Field::rationals()) {
    Quiver q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", 0, 1}};
    return build_based_algebra(f, q, {});
}

BasedAlgebra kx2(const Field& f = Field::rationals()) {
    Quiver q;
    q.vertices = {"v"};
    q.arrows = {{"alpha", 0, 0}};
    return build_based_algebra(f, q, {rel({{1, {0, 0}}})});
}

BasedAlgebra preproj_a2(const Field& f = Field::rationals()) {
    Quiver q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", 0, 1}, {"b", 1, 0}};
    return build_based_algebra(f, q, {rel({{1, {0, 1}}}), rel({{1, {1, 0}}})});
}

Matrix random_invertible(const Field& f, int n, Rng& rng) {
    for (;;) {
        Matrix m = random_matrix(f, n, n, rng);
        if (invertible(m)) return m;
    }
}

// Conjugate by random base change at each vertex: the result is isomorphic
// to x but its matrices look nothing like the originals.
Rep conjugate(const Rep& x, Rng& rng) {
    const BasedAlgebra& alg = *x.alg;
    const Field& fl = alg.field;
    std::vector<Matrix> g, ginv;
    for (int d : x.dims) {
        Matrix m = random_invertible(fl, d, rng);
        g.push_back(m);
        ginv.push_back(inverse(m));
    }
    Rep y = x;
    for (size_t a = 0; a < alg.quiver.arrows.size(); ++a) {
        const auto& ar = alg.quiver.arrows[a];
        y.arr[a] = ginv[size_t(ar.src)] * x.arr[a] * g[size_t(ar.dst)];
    }
    return y;
}

} // namespace

TEST_CASE("standard modules") {
    BasedAlgebra a2 = linear_a2();
    StandardModules sm = standard_modules(a2);
    Rng rng(7);
    for (int i = 0; i < 2; ++i) {
        CHECK(validate_rep(sm.proj[size_t(i)]));
        CHECK(validate_rep(sm.simple[size_t(i)]));
        CHECK(validate_rep(sm.inj[size_t(i)]));
    }
    CHECK(sm.proj[0].dims == std::vector<int>{1, 1});
    CHECK(sm.proj[1].dims == std::vector<int>{0, 1});
    CHECK(is_isomorphic(sm.proj[1], sm.simple[1], rng));
    CHECK(is_isomorphic(sm.inj[0], sm.simple[0], rng));
    CHECK(sm.inj[0].dims == std::vector<int>{1, 0});

    BasedAlgebra loc = kx2();
    StandardModules lm = standard_modules(loc);
    CHECK(lm.proj[0].total_dim() == 2);
    CHECK(is_isomorphic(lm.proj[0], lm.inj[0], rng));
    CHECK(is_isomorphic(lm.proj[0], regular_rep(loc), rng));

    BasedAlgebra pp = preproj_a2();
    StandardModules pm = standard_modules(pp);
    CHECK(pm.proj[0].dims == std::vector<int>{1, 1});
    CHECK(pm.proj[1].dims == std::vector<int>{1, 1});
}

TEST_CASE("hom dimensions") {
    BasedAlgebra a2 = linear_a2();
    StandardModules sm = standard_modules(a2);
    CHECK(hom_dim(sm.proj[0], sm.simple[0]) == 1);
    CHECK(hom_dim(sm.proj[0], sm.simple[1]) == 0);
    Rep reg = direct_sum(a2, std::vector<const Rep*>{&sm.proj[0], &sm.proj[1]});
    CHECK(hom_dim(reg, reg) == 3);
    for (const RepMap& h : hom_basis(reg, reg)) CHECK(validate_map(h));
}

TEST_CASE("kernel, cokernel, image") {
    BasedAlgebra a2 = linear_a2();
    StandardModules sm = standard_modules(a2);
    Rng rng(3);
    Cover c = projective_cover(sm.simple[0]);
    CHECK(c.copies == std::vector<int>{0});
    auto kci = map_kernel_cokernel_image(c.map);
    CHECK(kci.cokernel.is_zero());
    CHECK(is_isomorphic(kci.kernel, sm.simple[1], rng));
    CHECK(is_isomorphic(kci.image, sm.simple[0], rng));

    auto id = map_kernel_cokernel_image(identity_map(sm.proj[0]));
    CHECK(id.kernel.is_zero());
    CHECK(id.cokernel.is_zero());

    auto z = map_kernel_cokernel_image(zero_map(sm.proj[0], sm.proj[1]));
    CHECK(z.image.is_zero());
    CHECK(is_isomorphic(z.kernel, sm.proj[0], rng));
}

TEST_CASE("minimal projective presentations") {
    BasedAlgebra a2 = linear_a2();
    StandardModules sm = standard_modules(a2);
    Rng rng(5);

    TwoTermComplex s = min_proj_presentation(sm.simple[0]);
    CHECK(s.p0 == std::vector<int>{0});
    CHECK(s.p1 == std::vector<int>{1});
    CHECK(s.entries_in_radical());
    CHECK(is_isomorphic(complex_h0(s), sm.simple[0], rng));

    for (int i = 0; i < 2; ++i) {
        TwoTermComplex sp = min_proj_presentation(sm.proj[size_t(i)]);
        CHECK(sp.p1.empty());
        CHECK(sp.p0 == std::vector<int>{i});
    }

    BasedAlgebra loc = kx2();
    StandardModules lm = standard_modules(loc);
    TwoTermComplex t = min_proj_presentation(lm.simple[0]);
    CHECK(t.p1 == std::vector<int>{0});
    CHECK(t.p0 == std::vector<int>{0});
    CHECK(t.d[0][0] == loc.basis_elem(loc.arrow_basis_index(0)));
    CHECK(is_isomorphic(complex_h0(t), lm.simple[0], rng));
}

TEST_CASE("tau") {
    BasedAlgebra a2 = linear_a2();
    StandardModules sm = standard_modules(a2);
    Rng rng(11);
    CHECK(tau(sm.proj[0]).is_zero());
    CHECK(tau(sm.proj[1]).is_zero());
    CHECK(is_isomorphic(tau(sm.simple[0]), sm.simple[1], rng));

    BasedAlgebra loc = kx2();
    StandardModules lm = standard_modules(loc);
    CHECK(tau(lm.proj[0]).is_zero());
    CHECK(is_isomorphic(tau(lm.simple[0]), lm.simple[0], rng));

    BasedAlgebra pp = preproj_a2();
    StandardModules pm = standard_modules(pp);
    CHECK(tau(pm.proj[0]).is_zero());
    CHECK(tau(pm.proj[1]).is_zero());
}

TEST_CASE("ext1") {
    BasedAlgebra a2 = linear_a2();
    StandardModules sm = standard_modules(a2);
    CHECK(ext1_dim(sm.simple[0], sm.simple[1]) == 1);
    CHECK(ext1_dim(sm.simple[0], sm.simple[0]) == 0);
    CHECK(ext1_dim(sm.proj[0], sm.simple[0]) == 0);
    CHECK(ext1_dim(sm.proj[0], sm.simple[1]) == 0);
    CHECK(ext1_dim(sm.proj[0], regular_rep(a2)) == 0);

    BasedAlgebra loc = kx2();
    StandardModules lm = standard_modules(loc);
    CHECK(ext1_dim(lm.simple[0], lm.simple[0]) == 1);
    CHECK(ext1_dim(lm.proj[0], lm.simple[0]) == 0);
}

TEST_CASE("tensor and Tor") {
    BasedAlgebra a2 = linear_a2();
    BasedAlgebra op = opposite_algebra(a2);
    StandardModules sm = standard_modules(a2);
    StandardModules smop = standard_modules(op);
    Rep rego = regular_rep(op);

    // S2 = P2 is projective, hence flat
    auto [t0, tor0] = tensor_and_tor1(sm.simple[1], rego);
    CHECK(tor0 == 0);
    CHECK(t0 == 1); // e2 A has dim 1
    for (int i = 0; i < 2; ++i) {
        auto [ti, tori] = tensor_and_tor1(sm.simple[1], smop.simple[size_t(i)]);
        CHECK(tori == 0);
        CHECK(ti == (i == 1 ? 1 : 0));
    }

    // B = A / A e2 A, i.e. S1 on the right and the vertex-1 left simple
    auto [tb, torb] = tensor_and_tor1(sm.simple[0], smop.simple[0]);
    CHECK(tb == 1);
    CHECK(torb == 0);

    // M ⊗ A ≅ M
    for (const Rep* m : {&sm.proj[0], &sm.simple[0], &sm.inj[1]}) {
        auto [tm, torm] = tensor_and_tor1(*m, rego);
        CHECK(tm == m->total_dim());
        CHECK(torm == 0);
    }

    BasedAlgebra loc = kx2();
    BasedAlgebra locop = opposite_algebra(loc);
    StandardModules lm = standard_modules(loc);
    Rep k_left = standard_modules(locop).simple[0];
    auto [tk, tork] = tensor_and_tor1(lm.simple[0], k_left);
    CHECK(tk == 1);
    CHECK(tork == 1);
}

TEST_CASE("decompose") {
    BasedAlgebra a2 = linear_a2();
    StandardModules sm = standard_modules(a2);
    Rng rng(23);

    Rep m = direct_sum(a2, std::vector<const Rep*>{&sm.proj[0], &sm.proj[0], &sm.simple[1]});
    std::vector<Rep> parts = decompose(m, rng);
    REQUIRE(parts.size() == 3);
    int np1 = 0, ns2 = 0;
    for (const Rep& p : parts) {
        if (is_isomorphic(p, sm.proj[0], rng)) ++np1;
        if (is_isomorphic(p, sm.simple[1], rng)) ++ns2;
    }
    CHECK(np1 == 2);
    CHECK(ns2 == 1);

    Rep mixed = conjugate(direct_sum(a2, std::vector<const Rep*>{&sm.proj[0], &sm.simple[0]}), rng);
    CHECK(validate_rep(mixed));
    std::vector<Rep> parts2 = decompose(mixed, rng);
    REQUIRE(parts2.size() == 2);
    bool found_p1 = false, found_s1 = false;
    for (const Rep& p : parts2) {
        if (is_isomorphic(p, sm.proj[0], rng)) found_p1 = true;
        if (is_isomorphic(p, sm.simple[0], rng)) found_s1 = true;
    }
    CHECK(found_p1);
    CHECK(found_s1);

    std::vector<Rep> single = decompose(sm.proj[0], rng);
    REQUIRE(single.size() == 1);
    CHECK(is_isomorphic(single[0], sm.proj[0], rng));
    CHECK(is_indecomposable(sm.proj[0], rng));
}

TEST_CASE("is_isomorphic") {
    BasedAlgebra a2 = linear_a2();
    StandardModules sm = standard_modules(a2);
    Rng rng(31);
    Rep reg = regular_rep(a2);
    CHECK(is_isomorphic(reg, conjugate(reg, rng), rng));
    Rep ss = direct_sum(a2, std::vector<const Rep*>{&sm.simple[0], &sm.simple[1]});
    CHECK(sm.proj[0].dims == ss.dims);
    CHECK(!is_isomorphic(sm.proj[0], ss, rng));
    CHECK(is_isomorphic(zero_rep(a2), zero_rep(a2), rng));
}

TEST_CASE("bricks") {
    BasedAlgebra a2 = linear_a2();
    StandardModules sm = standard_modules(a2);
    Rng rng(37);
    CHECK(is_brick(sm.simple[0], rng));
    CHECK(is_brick(sm.proj[0], rng));
    BasedAlgebra loc = kx2();
    CHECK(is_brick(standard_modules(loc).simple[0], rng));
    CHECK(!is_brick(regular_rep(loc), rng)); // End = A, not a division ring
}

TEST_CASE("trace submodule") {
    BasedAlgebra a2 = linear_a2();
    StandardModules sm = standard_modules(a2);
    CHECK(in_gen(sm.proj[0], sm.simple[0]));
    CHECK(trace_submodule(sm.proj[0], sm.simple[1]).is_zero());
    CHECK(trace_submodule(sm.simple[0], sm.proj[0]).is_zero());
    // idempotence
    SubRep tr = trace_submodule_sub(sm.proj[0], regular_rep(a2));
    CHECK(in_gen(sm.proj[0], tr.rep));
}

TEST_CASE("duality spot-check") {
    for (BasedAlgebra alg : {linear_a2(), preproj_a2(), kx2()}) {
        StandardModules sm = standard_modules(alg);
        std::vector<Rep> mods = sm.proj;
        mods.insert(mods.end(), sm.simple.begin(), sm.simple.end());
        mods.push_back(regular_rep(alg));
        for (const Rep& m : mods)
            for (int i = 0; i < alg.num_vertices(); ++i)
                CHECK(hom_dim(m, sm.inj[size_t(i)]) == m.dims[size_t(i)]);
    }
}

TEST_CASE("property: presentations, tau, decomposition") {
    Rng rng(1234);
    for (const Field& f : {Field::rationals(), Field::prime(5)}) {
        for (BasedAlgebra alg : {linear_a2(f), preproj_a2(f), kx2(f)}) {
            StandardModules sm = standard_modules(alg);
            std::vector<Rep> mods = sm.proj;
            mods.insert(mods.end(), sm.simple.begin(), sm.simple.end());
            mods.insert(mods.end(), sm.inj.begin(), sm.inj.end());
            for (const Rep& m : mods) {
                CHECK(validate_rep(m));
                // presentation round trip
                TwoTermComplex s = min_proj_presentation(m);
                CHECK(s.entries_in_radical());
                CHECK(is_isomorphic(complex_h0(s), m, rng));
                // tau-vanishing iff projective (all these are indecomposable)
                bool proj = false;
                for (int i = 0; i < alg.num_vertices(); ++i)
                    if (is_isomorphic(m, sm.proj[size_t(i)], rng)) proj = true;
                CHECK(tau(m).is_zero() == proj);
            }
            // decomposition soundness and base-change stability
            Rep big = direct_sum(alg, std::vector<const Rep*>{&sm.proj[0], &sm.simple[0], &sm.simple[0]});
            for (int trial = 0; trial < 3; ++trial) {
                Rep bc = trial == 0 ? big : conjugate(big, rng);
                Rng rng2(100 + trial);
                std::vector<Rep> parts = decompose(bc, rng2);
                CHECK(parts.size() == 3);
                Rep resum = direct_sum(alg, parts);
                CHECK(is_isomorphic(resum, big, rng));
            }
        }
    }
}

TEST_CASE("property: hom-trace consistency") {
    Rng rng(55);
    BasedAlgebra alg = preproj_a2();
    StandardModules sm = standard_modules(alg);
    std::vector<Rep> mods = sm.proj;
    mods.insert(mods.end(), sm.simple.begin(), sm.simple.end());
    for (const Rep& t : mods)
        for (const Rep& x : mods) {
            SubRep tr = trace_submodule_sub(t, x);
            // trace is itself generated by T
            CHECK(in_gen(t, tr.rep));
            bool full = tr.rep.total_dim() == x.total_dim();
            CHECK(full == in_gen(t, x));
        }
}
