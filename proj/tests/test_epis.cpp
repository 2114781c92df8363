#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "siltlab/epis.hpp"

#include <set>

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

BasedAlgebra kronecker() {
    Quiver q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", 0, 1}, {"b", 0, 1}};
    return build_based_algebra(Field::rationals(), q, {});
}

int node_of(const ExchangeGraph& g, const Rep& module, std::vector<int> supp, Rng& rng) {
    auto it = g.index.find(make_pair(module, std::move(supp), rng).key());
    REQUIRE(it != g.index.end());
    return it->second;
}

std::vector<Rep> module_pool(const BasedAlgebra& alg) {
    StandardModules sm = standard_modules(alg);
    std::vector<Rep> base;
    base.push_back(zero_rep(alg));
    for (const Rep& s : sm.simple) base.push_back(s);
    for (const Rep& p : sm.proj) base.push_back(p);
    for (const Rep& i : sm.inj) base.push_back(i);
    base.push_back(regular_rep(alg));
    size_t n = base.size();
    std::vector<Rep> pool = base;
    for (size_t i = 1; i < n; ++i)
        for (size_t j = i; j < n; ++j)
            pool.push_back(direct_sum(alg, std::vector<const Rep*>{&base[i], &base[j]}));
    return pool;
}

} // namespace

TEST_CASE("universal extensions and wide projectives") {
    Rng rng(29);
    BasedAlgebra loc = kx2();
    StandardModules sl = standard_modules(loc);
    Rep a = regular_rep(loc);

    Rep e = universal_extension(sl.simple[0], sl.simple[0]);
    CHECK(e.total_dim() == 2);
    CHECK(is_isomorphic(e, a, rng));
    CHECK(ext1_dim(e, sl.simple[0]) == 0);

    CHECK(is_isomorphic(wide_projective(sl.simple[0], {sl.simple[0]}, 3), a, rng));
    CHECK_THROWS_AS(wide_projective(sl.simple[0], {sl.simple[0]}, 1), TowerDiverged);

    BasedAlgebra a2 = linear_a2();
    StandardModules sm = standard_modules(a2);
    std::vector<Rep> sims{sm.simple[0], sm.simple[1]};
    CHECK(is_isomorphic(wide_projective(sm.simple[0], sims, 5), sm.proj[0], rng));
    CHECK(is_isomorphic(wide_projective(sm.simple[1], sims, 5), sm.proj[1], rng));
    // already Ext-orthogonal inputs pass through untouched
    CHECK(is_isomorphic(universal_extension(sm.proj[0], sm.simple[1]), sm.proj[0], rng));
}

TEST_CASE("ring epimorphisms from nodes") {
    Rng rng(31);
    BasedAlgebra a2 = linear_a2();
    StandardModules sm = standard_modules(a2);
    ExchangeGraph g = exchange_graph(a2, GraphCaps{}, rng);
    HasseDiagram h = hasse(g, rng);
    std::vector<Rep> pool = module_pool(a2);

    // top: B = A through the identity reflection
    int top = node_of(g, regular_rep(a2), {}, rng);
    RingEpiPresentation et = ring_epi_from_node(h, top, 20, rng);
    CHECK(et.flags.all());
    CHECK(et.b.dim == a2.dim());
    CHECK(is_isomorphic(et.reflection_module, regular_rep(a2), rng));

    // bottom: zero ring
    int bot = node_of(g, zero_rep(a2), {0, 1}, rng);
    RingEpiPresentation eb = ring_epi_from_node(h, bot, 20, rng);
    CHECK(eb.flags.all());
    CHECK(eb.b.dim == 0);
    CHECK(eb.reflection_module.is_zero());

    // (S1,{2}): B is the ground field at vertex 1
    int s1n = node_of(g, sm.simple[0], {1}, rng);
    RingEpiPresentation es = ring_epi_from_node(h, s1n, 20, rng);
    CHECK(es.flags.all());
    CHECK(es.b.dim == 1);
    CHECK(is_isomorphic(es.reflection_module, sm.simple[0], rng));
    // vertex-1 augmentation: e1 -> 1, e2 and the arrow -> 0
    CHECK(es.unit.at(0, 0) != Scalar(0));
    CHECK(es.unit.at(1, 0) == Scalar(0));
    CHECK(es.unit.at(2, 0) == Scalar(0));

    // all-flag soundness, re-run independently
    for (size_t v = 0; v < g.nodes.size(); ++v) {
        RingEpiPresentation e = ring_epi_from_node(h, int(v), 20, rng);
        RingEpiFlags fl = verify_ring_epi(e, pool, rng);
        CHECK(fl.all());
        CHECK(diagram_commutes(e, pool, rng));
    }
}

TEST_CASE("verification catches Tor obstructions") {
    Rng rng(37);
    BasedAlgebra loc = kx2();
    // hand-built surjection A = K[x]/(x^2) -> K = A/rad
    RingEpiPresentation e;
    e.node = initial_pair(loc, rng);
    e.b.field = loc.field;
    e.b.dim = 1;
    e.b.table = {{AlgebraElem{Scalar(1)}}};
    e.b.one = AlgebraElem{Scalar(1)};
    e.unit = Matrix(loc.field, loc.dim(), 1);
    e.unit.set(0, 0, Scalar(1)); // e |-> 1, alpha |-> 0
    e.sigma1 = TwoTermComplex{&loc, {}, {}, {}};
    e.reflection_module = standard_modules(loc).simple[0];

    RingEpiFlags fl = verify_ring_epi(e, {}, rng);
    CHECK(fl.is_ring_hom);
    CHECK(fl.is_epimorphism); // surjections are epimorphisms
    CHECK(!fl.tor1_zero);     // Tor_1(K, K) = K over K[x]/(x^2)

    // and the census therefore excludes it: only identity and zero survive
    ExchangeGraph g = exchange_graph(loc, GraphCaps{}, rng);
    std::vector<CensusRow> census = epiclass_census(g, 20, rng);
    REQUIRE(census.size() == 2);
    std::multiset<int> dims{census[0].dim_b, census[1].dim_b};
    CHECK(dims == std::multiset<int>{0, 2});
}

TEST_CASE("census counts") {
    Rng rng(41);

    BasedAlgebra a2 = linear_a2();
    ExchangeGraph ga = exchange_graph(a2, GraphCaps{}, rng);
    std::vector<CensusRow> ca = epiclass_census(ga, 20, rng);
    CHECK(ca.size() == 5);
    CHECK(ca.size() == ga.nodes.size());
    for (const CensusRow& r : ca) {
        CHECK(r.flags.all());
        CHECK(r.dim_b >= int(r.semibrick_dims.size()));
    }

    BasedAlgebra pp = preproj_a2();
    DecideResult dr = decide_tau_tilting_finite(pp, GraphCaps{}, rng);
    REQUIRE(dr.finite);
    std::vector<CensusRow> cp = epiclass_census(dr.graph, 20, rng);
    CHECK(cp.size() == 6);
    CHECK(cp.size() == dr.graph.nodes.size());
    for (const CensusRow& r : cp) CHECK(r.flags.all());
}

TEST_CASE("truncated Kronecker runs grow inequivalent wide subcategories") {
    Rng rng(43);
    BasedAlgebra kr = kronecker();
    GraphCaps small, large;
    small.max_nodes = 3;
    large.max_nodes = 6;
    ExchangeGraph gs = exchange_graph(kr, small, rng);
    ExchangeGraph gl = exchange_graph(kr, large, rng);
    REQUIRE(gs.status == GraphStatus::Truncated);
    REQUIRE(gl.status == GraphStatus::Truncated);
    REQUIRE(gl.nodes.size() > gs.nodes.size());

    // membership profiles over the summands seen in the larger run
    std::vector<Rep> pool;
    StandardModules sm = standard_modules(kr);
    pool.push_back(sm.simple[0]);
    pool.push_back(sm.simple[1]);
    for (const SiltingPair& p : gl.nodes)
        for (const Rep& s : p.indec_summands) {
            bool seen = false;
            for (const Rep& q : pool) seen = seen || is_isomorphic(s, q, rng);
            if (!seen) pool.push_back(s);
        }
    auto profile = [&](const SiltingPair& p) {
        std::vector<bool> prof;
        WidePredicate w = wide_subcategory(p, rng);
        for (const Rep& x : pool) prof.push_back(w.contains(x));
        return prof;
    };
    std::set<std::vector<bool>> ps, pl;
    for (const SiltingPair& p : gs.nodes) ps.insert(profile(p));
    for (const SiltingPair& p : gl.nodes) pl.insert(profile(p));
    CHECK(ps.size() == gs.nodes.size()); // pairwise inequivalent
    CHECK(pl.size() == gl.nodes.size());
    for (const auto& p : ps) CHECK(pl.count(p) == 1);
    CHECK(pl.size() > ps.size()); // strictly growing with the cap
}
