#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "siltlab/cli.hpp"
#include "siltlab/epis.hpp"

#include <filesystem>
#include <fstream>

using namespace siltlab;

namespace {

const char* kLinearA2 = R"(# linear A2
field Q
vertex 1
vertex 2
arrow a 1 2
)";

} // namespace

TEST_CASE("algebra file parsing") {
    AlgebraFile f = parse_algebra_file(kLinearA2);
    CHECK(f.field == Field::rationals());
    CHECK(f.quiver.vertices == std::vector<std::string>{"1", "2"});
    CHECK(f.quiver.arrows.size() == 1);
    CHECK(f.relations.empty());
    CHECK(f.comments == std::vector<std::string>{"linear A2"});

    AlgebraFile g = parse_algebra_file("field F 3\nvertex v\narrow x v v\n"
                                       "relation x*x - 2*x*x*x\nmax_nodes 7\n");
    CHECK(g.field == Field::prime(3));
    CHECK(g.relations.size() == 1);
    CHECK(g.relations[0].terms.size() == 2);
    CHECK(g.relations[0].terms[0].coeff == 1);
    CHECK(g.relations[0].terms[1].coeff == 1); // -2 = 1 in F3
    CHECK(g.relations[0].terms[1].arrows == std::vector<int>{0, 0, 0});
    CHECK(g.max_nodes == 7);

    // diagnostics carry a location
    try {
        parse_algebra_file("vertex 1\nfrobnicate 2\n");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_algebra_file("field Q\nfield Q\n"), ParseError);
    CHECK_THROWS_AS(parse_algebra_file("field F 4\n"), ParseError);
    CHECK_THROWS_AS(parse_algebra_file("vertex 1\nrelation \n"), ParseError);
    CHECK_THROWS_AS(parse_algebra_file("vertex 1\nvertex 2\narrow a 1 2\nrelation 3\n"),
                    ParseError);
}

TEST_CASE("semantic errors") {
    // unknown vertex
    CHECK_THROWS_AS(parse_algebra_file("vertex 1\narrow a 1 2\n"), SemanticError);
    // duplicate arrow label
    CHECK_THROWS_AS(parse_algebra_file("vertex 1\nvertex 2\narrow a 1 2\narrow a 2 1\n"),
                    SemanticError);
    // duplicate vertex
    CHECK_THROWS_AS(parse_algebra_file("vertex 1\nvertex 1\n"), SemanticError);
    // non-composable word b*a (b: 2->1 would compose, but a: 1->2 then a again)
    CHECK_THROWS_AS(
        parse_algebra_file("vertex 1\nvertex 2\narrow a 1 2\nrelation a*a\n"),
        SemanticError);
    // unknown arrow in a relation
    CHECK_THROWS_AS(parse_algebra_file("vertex 1\nvertex 2\narrow a 1 2\nrelation a*b\n"),
                    SemanticError);
}

TEST_CASE("corpus round trips") {
    for (const std::string& name : corpus_names()) {
        CAPTURE(name);
        AlgebraFile f = load_corpus(name);
        AlgebraFile back = parse_algebra_file(print_algebra_file(f));
        CHECK(back == f);
        BasedAlgebra alg = build_algebra(f);
        CHECK(alg.dim() > 0);
    }
    CHECK_THROWS_AS(load_corpus("no_such_algebra"), UnknownCorpusEntry);
    CHECK_THROWS_AS(load_corpus("wild_R", 3), UnknownCorpusEntry);

    AlgebraFile k = load_corpus("kronecker");
    CHECK(k.quiver.vertices.size() == 2);
    CHECK(k.quiver.arrows.size() == 2);
    CHECK(k.relations.empty());

    AlgebraFile w = load_corpus("wild_R", 9);
    CHECK(w.quiver.vertices.size() == 9);
    CHECK(w.quiver.arrows.size() == 9); // 6 chain arrows + alpha, beta, gamma
    CHECK(w.relations.size() == 1);

    AlgebraFile t = load_corpus("two_loop_gdp");
    BasedAlgebra talg = build_algebra(t);
    CHECK(talg.dim() == 9);

    // digest separates entries and ignores comments
    AlgebraFile f1 = load_corpus("linear_a2"), f2 = load_corpus("kx2");
    CHECK(algebra_digest(f1) != algebra_digest(f2));
    AlgebraFile f3 = f1;
    f3.comments.clear();
    CHECK(algebra_digest(f3) == algebra_digest(f1));
}

TEST_CASE("module serialisation round trip") {
    BasedAlgebra alg = build_algebra(load_corpus("preproj_a2"));
    Rep a = regular_rep(alg);
    Rep back = rep_from_json(alg, rep_to_json(a));
    CHECK(back.dims == a.dims);
    for (size_t i = 0; i < a.arr.size(); ++i) CHECK(back.arr[i] == a.arr[i]);

    nlohmann::json bad = rep_to_json(a);
    bad["arrows"][0][1][0] = "1"; // breaks the relations
    CHECK_THROWS_AS(rep_from_json(alg, bad), SiltError);
}

TEST_CASE("cache soundness") {
    AlgebraFile f = load_corpus("preproj_a2");
    BasedAlgebra alg = build_algebra(f);
    GraphCaps caps;
    std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "siltlab_cache_test";
    std::filesystem::remove_all(dir);

    Rng rng1(7);
    ExchangeGraph fresh = cached_exchange_graph(alg, f, caps, dir.string(), rng1);
    CHECK(fresh.status == GraphStatus::Complete);
    CHECK(fresh.nodes.size() == 6);
    // exactly one cache file, written atomically (no .tmp left behind)
    int files = 0;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        CHECK(e.path().extension() == ".json");
        ++files;
    }
    CHECK(files == 1);

    Rng rng2(99); // different seed: reload must not depend on it
    ExchangeGraph reloaded = cached_exchange_graph(alg, f, caps, dir.string(), rng2);
    REQUIRE(reloaded.nodes.size() == fresh.nodes.size());
    CHECK(reloaded.edges == fresh.edges);
    CHECK(reloaded.status == fresh.status);
    for (size_t i = 0; i < fresh.nodes.size(); ++i)
        CHECK(reloaded.nodes[i].key() == fresh.nodes[i].key());

    // a corrupted cached node fails re-validation on load
    std::filesystem::path file;
    for (const auto& e : std::filesystem::directory_iterator(dir)) file = e.path();
    nlohmann::json j;
    {
        std::ifstream in(file);
        in >> j;
    }
    j["nodes"][0]["support_complement"] = std::vector<int>{0, 1};
    Rng rng3(7);
    CHECK_THROWS_AS(graph_from_json(alg, j, rng3), SiltError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("dot output") {
    AlgebraFile f = load_corpus("linear_a2");
    BasedAlgebra alg = build_algebra(f);
    Rng rng(3);
    ExchangeGraph g = exchange_graph(alg, GraphCaps{}, rng);
    std::string dot = graph_dot(g);
    CHECK(dot.find("graph exchange {") == 0);
    CHECK(dot.find("n0 -- ") != std::string::npos);
    HasseDiagram h = hasse(g, rng);
    std::string hd = hasse_dot(h);
    CHECK(hd.find("digraph hasse {") == 0);
    CHECK(hd.find("->") != std::string::npos);
    // balanced braces, one statement per line
    CHECK(std::count(hd.begin(), hd.end(), '{') == 1);
    CHECK(std::count(hd.begin(), hd.end(), '}') == 1);
}
