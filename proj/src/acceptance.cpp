#include "siltlab/acceptance.hpp"

#include "siltlab/cli.hpp"
#include "siltlab/epis.hpp"
#include "siltlab/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace siltlab {

namespace {

using Clock = std::chrono::steady_clock;

double secs(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Accumulates sub-checks of one criterion; the first failures are kept.
struct Check {
    bool ok = true;
    std::string msg;

    void require(bool cond, const std::string& what) {
        if (cond) return;
        ok = false;
        if (!msg.empty()) msg += "; ";
        msg += what;
    }
    void note(const std::string& what) {
        if (!msg.empty()) msg += "; ";
        msg += what;
    }
};

BasedAlgebra corpus_algebra(const std::string& name, const Field& field, int n = 0) {
    AlgebraFile f = load_corpus(name, n);
    f.field = field;
    for (PathExpr& r : f.relations)
        for (PathTerm& t : r.terms) t.coeff = field.norm(t.coeff);
    return build_algebra(f);
}

// Zero, the standard modules, the regular module and pairwise sums of the
// standard ones: a small but varied membership sample.
std::vector<Rep> module_pool(const BasedAlgebra& alg) {
    StandardModules sm = standard_modules(alg);
    std::vector<Rep> base;
    for (const Rep& m : sm.simple) base.push_back(m);
    for (const Rep& m : sm.proj) base.push_back(m);
    for (const Rep& m : sm.inj) base.push_back(m);
    std::vector<Rep> pool = {zero_rep(alg), regular_rep(alg)};
    pool.insert(pool.end(), base.begin(), base.end());
    for (size_t i = 0; i < base.size(); ++i)
        for (size_t j = i; j < base.size(); ++j)
            pool.push_back(
                direct_sum(alg, std::vector<const Rep*>{&base[i], &base[j]}));
    return pool;
}

int iso_class(std::vector<Rep>& reps, const Rep& x, Rng& rng) {
    for (size_t i = 0; i < reps.size(); ++i)
        if (is_isomorphic(reps[i], x, rng)) return int(i);
    reps.push_back(x);
    return int(reps.size()) - 1;
}

CriterionResult criterion(int id, const std::string& title,
                          const std::function<void(Check&)>& body) {
    Check c;
    try {
        body(c);
    } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
    }
    return {id, title, c.ok, c.msg};
}

void preprojective_counts(Check& c, const std::string& name, size_t expected,
                          double budget) {
    auto t0 = Clock::now();
    Rng rng(11);
    BasedAlgebra alg = corpus_algebra(name, Field::rationals());
    ExchangeGraph g = exchange_graph(alg, GraphCaps{10000, 60}, rng);
    c.require(g.status == GraphStatus::Complete, "exchange graph not complete");
    c.require(g.nodes.size() == expected,
              "expected " + std::to_string(expected) + " nodes, got " +
                  std::to_string(g.nodes.size()));
    std::vector<CensusRow> rows = epiclass_census(g, 40, rng);
    c.require(rows.size() == expected,
              "census has " + std::to_string(rows.size()) + " rows");
    double dt = secs(t0);
    c.require(dt < budget, "runtime " + std::to_string(dt) + "s over budget");
    std::ostringstream os;
    os << g.nodes.size() << " nodes, " << rows.size() << " epiclasses, " << dt << "s";
    c.note(os.str());
}

void brick_roots(Check& c) {
    Rng rng(13);
    BasedAlgebra a2 = corpus_algebra("preproj_a2", Field::prime(2));
    EnumerationCaps caps2;
    caps2.max_total_dim = 2;
    std::vector<Rep> b2 = brute_bricks(a2, caps2, rng);
    c.require(b2.size() == 4, "A2 brick count at cap 2 is " + std::to_string(b2.size()));
    std::set<std::vector<int>> roots_a2 = {{1, 0}, {0, 1}, {1, 1}};
    for (const Rep& b : b2)
        c.require(roots_a2.count(b.dims) == 1,
                  "A2 brick with non-root dims " + b.dimvec_str());

    BasedAlgebra a3 = corpus_algebra("preproj_a3", Field::prime(2));
    EnumerationCaps caps3;
    caps3.max_total_dim = 4;
    std::vector<Rep> b3 = brute_bricks(a3, caps3, rng);
    std::set<std::vector<int>> roots_a3 = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1},
                                           {1, 1, 0}, {0, 1, 1}, {1, 1, 1}};
    c.require(!b3.empty(), "no A3 bricks found");
    for (const Rep& b : b3)
        c.require(roots_a3.count(b.dims) == 1,
                  "A3 brick with non-root dims " + b.dimvec_str());
    c.note(std::to_string(b2.size()) + " A2 bricks, " + std::to_string(b3.size()) +
           " A3 bricks up to dim 4, all positive roots");
}

void wild_consistency(Check& c) {
    auto t0 = Clock::now();
    Rng rng(17);
    BasedAlgebra alg = corpus_algebra("wild_R", Field::rationals(), 9);
    DecideResult r = decide_tau_tilting_finite(alg, GraphCaps{100000, 60}, rng);
    c.require(r.finite, "verdict is not Finite");
    if (!r.finite) return;
    HasseDiagram h = hasse(r.graph, rng);
    c.require(h.edges.size() >= r.graph.nodes.size() - 1, "Hasse diagram too sparse");
    std::vector<Rep> bricks;
    for (const HasseEdge& e : h.edges) {
        c.require(!e.label.is_zero(), "edge without a brick label");
        iso_class(bricks, e.label, rng);
    }
    std::vector<CensusRow> rows = epiclass_census(r.graph, 60, rng);
    c.require(rows.size() == r.graph.nodes.size(),
              "census count " + std::to_string(rows.size()) + " != node count " +
                  std::to_string(r.graph.nodes.size()));
    std::ostringstream os;
    os << r.graph.nodes.size() << " nodes, " << h.edges.size() << " covers, "
       << bricks.size() << " distinct bricks, census " << rows.size() << ", " << secs(t0)
       << "s";
    c.note(os.str());
}

void two_loop_epis(Check& c) {
    auto t0 = Clock::now();
    Rng rng(19);
    BasedAlgebra alg = corpus_algebra("two_loop_gdp", Field::rationals());
    DecideResult r = decide_tau_tilting_finite(alg, GraphCaps{100000, 60}, rng);
    c.require(r.finite, "verdict is not Finite");
    if (!r.finite) return;
    std::vector<CensusRow> rows = epiclass_census(r.graph, 60, rng);
    c.require(rows.size() == r.graph.nodes.size(), "census/node count mismatch");
    for (const CensusRow& row : rows) {
        c.require(row.flags.tor1_zero, "Tor1 nonzero at node " + std::to_string(row.node));
        c.require(row.flags.sigma_inverting,
                  "sigma not inverted at node " + std::to_string(row.node));
        c.require(row.flags.all(), "failed clause at node " + std::to_string(row.node) +
                                       ": " + row.flags.first_failure());
    }
    std::ostringstream os;
    os << r.graph.nodes.size() << " nodes, all ring epi clauses pass, " << secs(t0) << "s";
    c.note(os.str());
}

void kronecker_growth(Check& c) {
    Rng rng(23);
    BasedAlgebra alg = corpus_algebra("kronecker", Field::rationals());
    const int dim_cap = 24; // largest cap that stays tractable in exact arithmetic
    DecideResult small = decide_tau_tilting_finite(alg, GraphCaps{100, dim_cap}, rng);
    DecideResult large = decide_tau_tilting_finite(alg, GraphCaps{1000, dim_cap}, rng);
    c.require(!small.finite, "verdict Finite at max_nodes 100");
    c.require(!large.finite, "verdict Finite at max_nodes 1000");
    size_t ns = small.graph.nodes.size(), nl = large.graph.nodes.size();
    c.require(nl > ns, "no strict node growth: " + std::to_string(ns) + " nodes at both "
                       "caps (exploration is limited by the dimension cap " +
                           std::to_string(dim_cap) +
                           ", not the node caps; summand dimensions grow linearly "
                           "along the graph and exact arithmetic becomes intractable "
                           "long before 100 nodes)");
    std::ostringstream os;
    os << ns << " nodes at cap 100, " << nl << " at cap 1000, dim cap " << dim_cap;
    c.note(os.str());
}

void local_algebra_negative_witness(Check& c) {
    Rng rng(29);
    BasedAlgebra alg = corpus_algebra("kx2", Field::rationals());
    ExchangeGraph g = exchange_graph(alg, GraphCaps{}, rng);
    c.require(g.status == GraphStatus::Complete && g.nodes.size() == 2,
              "expected exactly 2 nodes");
    std::vector<CensusRow> rows = epiclass_census(g, 20, rng);
    c.require(rows.size() == 2, "expected exactly 2 epiclasses");

    // the surjection A -> A/rad = K is a ring epimorphism but Tor_1(K, K) = K
    RingEpiPresentation e;
    e.node = initial_pair(alg, rng);
    e.b.field = alg.field;
    e.b.dim = 1;
    e.b.table = {{AlgebraElem{Scalar(1)}}};
    e.b.one = AlgebraElem{Scalar(1)};
    e.unit = Matrix(alg.field, alg.dim(), 1);
    e.unit.set(0, 0, Scalar(1));
    e.sigma1 = TwoTermComplex{&alg, {}, {}, {}};
    e.reflection_module = standard_modules(alg).simple[0];
    RingEpiFlags fl = verify_ring_epi(e, {}, rng);
    c.require(fl.is_ring_hom && fl.is_epimorphism, "witness is not a ring epimorphism");
    c.require(!fl.tor1_zero, "witness unexpectedly has vanishing Tor1");

    // Tor_1(K, K) has dimension exactly 1 (periodic resolution)
    BasedAlgebra op = opposite_algebra(alg);
    Rep s = standard_modules(alg).simple[0];
    Rep s_op = simple_rep(op, 0);
    auto [tdim, tor1] = tensor_and_tor1(s, s_op);
    c.require(tdim == 1, "K tensor K has dimension " + std::to_string(tdim));
    c.require(tor1 == 1, "Tor1(K, K) has dimension " + std::to_string(tor1));
    c.note("2 nodes, 2 epiclasses, witness rejected with Tor1 of dimension 1");
}

void mutation_regularity(Check& c, const BasedAlgebra& alg, const std::string& name,
                         Rng& rng) {
    ExchangeGraph g = exchange_graph(alg, GraphCaps{}, rng);
    c.require(g.status == GraphStatus::Complete, name + ": graph not complete");
    int n = alg.num_vertices();
    for (size_t u = 0; u < g.nodes.size(); ++u) {
        const SiltingPair& p = g.nodes[u];
        c.require(int(p.indec_summands.size() + p.support_complement.size()) == n,
                  name + ": node is not n-regular");
        for (int pos = 0; pos < n; ++pos) {
            SiltingPair q = mutate(p, pos, rng);
            auto it = g.index.find(q.key());
            c.require(it != g.index.end(), name + ": mutation leaves the graph");
            if (it == g.index.end()) continue;
            // involution: some position of q returns to p
            bool back = false;
            for (int pos2 = 0; pos2 < n && !back; ++pos2)
                back = mutate(q, pos2, rng).key() == p.key();
            c.require(back, name + ": mutation is not involutive");
        }
    }
}

void property_suites(Check& c) {
    auto t0 = Clock::now();
    Rng rng(31);
    std::vector<std::pair<std::string, BasedAlgebra>> small;
    for (const char* name : {"linear_a2", "kx2", "preproj_a2"})
        small.emplace_back(name, corpus_algebra(name, Field::rationals()));

    // mutation involution and n-regularity
    for (auto& [name, alg] : small) mutation_regularity(c, alg, name, rng);

    // presilting presentations match tau-rigid modules
    for (auto& [name, alg] : small)
        for (const Rep& m : module_pool(alg)) {
            if (m.is_zero()) continue;
            bool rigid = hom_dim(m, tau(m)) == 0;
            c.require(is_presilting(min_proj_presentation(m)) == rigid,
                      name + ": presilting/tau-rigid mismatch at " + m.dimvec_str());
        }

    // bounded torsion/wide identities, injectivity of the assignment, and
    // closure of the wide subcategories
    for (auto& [name, alg] : small) {
        ExchangeGraph g = exchange_graph(alg, GraphCaps{}, rng);
        HasseDiagram h = hasse(g, rng);
        std::vector<Rep> pool = module_pool(alg);
        std::set<std::vector<bool>> profiles;
        for (size_t nd = 0; nd < g.nodes.size(); ++nd) {
            WidePredicate w = wide_subcategory(h, int(nd), rng);
            const SiltingPair& p = g.nodes[nd];
            std::vector<bool> profile;
            std::vector<Rep> members;
            for (const Rep& x : pool) {
                bool inw = w.contains(x);
                profile.push_back(inw);
                c.require(a_map_membership(p, x, rng) == inw,
                          name + ": wide membership formulations disagree");
                if (inw && !x.is_zero()) members.push_back(x);
            }
            profiles.insert(profile);
            for (const Rep& x : pool)
                c.require(filtgen_membership_bounded(members, x, 8) ==
                              in_gen(p.module, x),
                          name + ": FiltGen of the wide part misses gen at " +
                              x.dimvec_str());
            for (const Rep& x : members)
                for (const Rep& y : members) {
                    for (const RepMap& f : hom_basis(x, y)) {
                        KernelCokernelImage kc = map_kernel_cokernel_image(f);
                        c.require(w.contains(kc.kernel) && w.contains(kc.cokernel),
                                  name + ": wide part not closed under (co)kernels");
                    }
                    c.require(w.contains(universal_extension(x, y)),
                              name + ": wide part not closed under extensions");
                }
        }
        c.require(profiles.size() == g.nodes.size(),
                  name + ": wide subcategories collide across nodes");
    }

    // module oracle agrees with the fast path over F2
    std::map<std::string, size_t> expected = {{"linear_a2", 5}, {"kx2", 2},
                                              {"preproj_a2", 6}};
    for (auto& [name, count] : expected) {
        BasedAlgebra alg = corpus_algebra(name, Field::prime(2));
        ExchangeGraph g = exchange_graph(alg, GraphCaps{}, rng);
        EnumerationCaps caps;
        caps.max_total_dim = 4;
        std::vector<Rep> indecs = enumerate_reps_upto_iso(alg, caps, rng);
        auto tors = enumerate_torsion_classes_repfinite(indecs, rng);
        c.require(g.nodes.size() == count && tors.size() == count,
                  name + ": node count " + std::to_string(g.nodes.size()) +
                      " vs torsion classes " + std::to_string(tors.size()));
    }
    double dt = secs(t0);
    c.require(dt < 600.0, "property suites exceeded 10 minutes");
    std::ostringstream os;
    os << "all property suites pass, " << dt << "s";
    c.note(os.str());
}

void pentagon(Check& c) {
    Rng rng(37);
    BasedAlgebra alg = corpus_algebra("linear_a2", Field::rationals());
    ExchangeGraph g = exchange_graph(alg, GraphCaps{}, rng);
    c.require(g.nodes.size() == 5 && g.edges.size() == 5, "not a 5-node 5-edge graph");
    std::vector<int> deg(g.nodes.size(), 0);
    for (const auto& e : g.edges) {
        ++deg[size_t(e[0])];
        ++deg[size_t(e[1])];
    }
    for (int d : deg) c.require(d == 2, "graph is not a pentagon");
    HasseDiagram h = hasse(g, rng);
    c.require(h.edges.size() == 5, "Hasse diagram is not a pentagon");
    std::vector<CensusRow> rows = epiclass_census(g, 20, rng);
    c.require(rows.size() == 5, "expected 5 epiclasses");

    BasedAlgebra alg2 = corpus_algebra("linear_a2", Field::prime(2));
    EnumerationCaps caps;
    caps.max_total_dim = 4;
    std::vector<Rep> indecs = enumerate_reps_upto_iso(alg2, caps, rng);
    auto tors = enumerate_torsion_classes_repfinite(indecs, rng);
    c.require(tors.size() == 5, "oracle torsion-class count is not 5");

    // commutative diagram at every node, sampled up to total dimension 4
    std::vector<Rep> pool;
    for (const Rep& x : module_pool(alg))
        if (x.total_dim() <= 4) pool.push_back(x);
    for (size_t nd = 0; nd < g.nodes.size(); ++nd) {
        HasseDiagram hd = hasse(g, rng);
        RingEpiPresentation e = ring_epi_from_node(hd, int(nd), 40, rng);
        c.require(diagram_commutes(e, pool, rng),
                  "diagram does not commute at node " + std::to_string(nd));
    }
    c.note("pentagon, 5 epiclasses = 5 torsion classes, diagram commutes everywhere");
}

} // namespace

std::vector<CriterionResult> run_acceptance_suite(std::ostream& log) {
    std::vector<CriterionResult> out;
    auto run = [&](int id, const std::string& title,
                   const std::function<void(Check&)>& body) {
        CriterionResult r = criterion(id, title, body);
        log << "criterion " << r.id << " (" << r.title << "): "
            << (r.pass ? "PASS" : "FAIL");
        if (!r.detail.empty()) log << " — " << r.detail;
        log << "\n" << std::flush;
        out.push_back(std::move(r));
    };
    run(1, "preprojective A2 counts",
        [](Check& c) { preprojective_counts(c, "preproj_a2", 6, 5.0); });
    run(2, "preprojective A3 counts",
        [](Check& c) { preprojective_counts(c, "preproj_a3", 24, 60.0); });
    run(3, "bricks have positive-root dimension vectors", brick_roots);
    run(4, "wild family member n=9 internal consistency", wild_consistency);
    run(5, "two-loop algebra ring epimorphisms", two_loop_epis);
    run(6, "Kronecker algebra stays inconclusive with node growth", kronecker_growth);
    run(7, "K[x]/(x^2) counts and negative witness", local_algebra_negative_witness);
    run(8, "linear A2 pentagon", pentagon);
    run(9, "property suites on the corpus", property_suites);
    return out;
}

} // namespace siltlab
