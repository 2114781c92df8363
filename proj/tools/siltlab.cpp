#include <CLI11.hpp>

#include "siltlab/acceptance.hpp"
#include "siltlab/cli.hpp"
#include "siltlab/epis.hpp"
#include "siltlab/oracle.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace siltlab;
using nlohmann::json;

namespace {

struct Options {
    std::string algebra;
    std::string field;
    std::string cache_dir;
    std::string format = "text";
    int max_nodes = 2000;
    int max_dim = 20;
    int depth_cap = 6;
    unsigned long long seed = 0x5117ab;
    bool max_nodes_set = false, max_dim_set = false;
};

AlgebraFile load_input(const Options& opt) {
    AlgebraFile f;
    if (std::filesystem::exists(opt.algebra)) {
        std::ifstream in(opt.algebra);
        std::ostringstream ss;
        ss << in.rdbuf();
        f = parse_algebra_file(ss.str());
    } else {
        std::string name = opt.algebra;
        int n = 0;
        size_t colon = name.find(':');
        if (colon != std::string::npos) {
            n = std::stoi(name.substr(colon + 1));
            name = name.substr(0, colon);
        }
        f = load_corpus(name, n);
    }
    if (!opt.field.empty()) {
        if (opt.field == "Q") {
            f.field = Field::rationals();
        } else {
            std::string p = opt.field;
            if (!p.empty() && (p[0] == 'F' || p[0] == 'f')) p = p.substr(1);
            f.field = Field::prime(std::stol(p));
        }
        for (PathExpr& r : f.relations)
            for (PathTerm& t : r.terms) t.coeff = f.field.norm(t.coeff);
    }
    return f;
}

GraphCaps caps_for(const Options& opt, const AlgebraFile& f) {
    GraphCaps c;
    c.max_nodes = opt.max_nodes_set || !f.max_nodes ? opt.max_nodes : f.max_nodes;
    c.max_dim = opt.max_dim_set || !f.max_dim ? opt.max_dim : f.max_dim;
    return c;
}

// Prints the chosen rendering; dot/csv are optional per command.
void emit(const Options& opt, const json& j, const std::string& text,
          const std::string& dot = "", const std::string& csv = "") {
    if (opt.format == "json") {
        std::cout << j.dump(1) << "\n";
    } else if (opt.format == "text") {
        std::cout << text;
    } else if (opt.format == "dot") {
        if (dot.empty()) throw ParseError("this command has no dot rendering");
        std::cout << dot;
    } else {
        if (csv.empty()) throw ParseError("this command has no csv rendering");
        std::cout << csv;
    }
}

std::string node_desc(const SiltingPair& p) {
    std::string s = p.module.dimvec_str();
    if (!p.support_complement.empty()) {
        s += " | support complement {";
        for (size_t i = 0; i < p.support_complement.size(); ++i)
            s += (i ? "," : "") + std::to_string(p.support_complement[i]);
        s += "}";
    }
    return s;
}

json flags_json(const RingEpiFlags& fl) {
    return {{"is_ring_hom", fl.is_ring_hom},
            {"is_epimorphism", fl.is_epimorphism},
            {"tor1_zero", fl.tor1_zero},
            {"sigma_inverting", fl.sigma_inverting},
            {"image_consistent", fl.image_consistent},
            {"dim_b", fl.dim_b}};
}

void cmd_basis(const Options& opt) {
    AlgebraFile f = load_input(opt);
    BasedAlgebra alg = build_algebra(f);
    json j = {{"schema", "siltlab-basis/1"},
              {"field", alg.field.str()},
              {"dimension", alg.dim()}};
    std::ostringstream text;
    text << "dimension " << alg.dim() << " over " << alg.field.str() << "\n";
    json basis = json::array();
    for (int i = 0; i < alg.dim(); ++i) {
        basis.push_back({{"index", i},
                         {"word", alg.mono_str(i)},
                         {"source", alg.quiver.vertices[size_t(alg.mono_source(i))]},
                         {"target", alg.quiver.vertices[size_t(alg.mono_target(i))]}});
        text << "  " << i << ": " << alg.mono_str(i) << "  ("
             << alg.quiver.vertices[size_t(alg.mono_source(i))] << " -> "
             << alg.quiver.vertices[size_t(alg.mono_target(i))] << ")\n";
    }
    j["basis"] = std::move(basis);
    emit(opt, j, text.str());
}

void cmd_standard(const Options& opt) {
    AlgebraFile f = load_input(opt);
    BasedAlgebra alg = build_algebra(f);
    StandardModules sm = standard_modules(alg);
    json j = {{"schema", "siltlab-standard/1"}, {"field", alg.field.str()}};
    std::ostringstream text;
    auto row = [&](const char* kind, const std::vector<Rep>& mods) {
        json arr = json::array();
        for (const Rep& m : mods) arr.push_back(m.dims);
        j[kind] = std::move(arr);
        for (size_t v = 0; v < mods.size(); ++v)
            text << kind << "(" << alg.quiver.vertices[v] << ") dims "
                 << mods[v].dimvec_str() << "\n";
    };
    row("projective", sm.proj);
    row("simple", sm.simple);
    row("injective", sm.inj);
    emit(opt, j, text.str());
}

void cmd_tau(const Options& opt, const std::string& module_path) {
    AlgebraFile f = load_input(opt);
    BasedAlgebra alg = build_algebra(f);
    std::ifstream in(module_path);
    if (!in) throw ParseError("cannot open module file " + module_path);
    json mj;
    in >> mj;
    Rep m = rep_from_json(alg, mj);
    Rep t = tau(m);
    json j = {{"schema", "siltlab-tau/1"},
              {"module_dims", m.dims},
              {"tau", rep_to_json(t)}};
    std::ostringstream text;
    text << "tau of " << m.dimvec_str() << " has dims " << t.dimvec_str() << "\n";
    emit(opt, j, text.str());
}

void cmd_enumerate(const Options& opt) {
    AlgebraFile f = load_input(opt);
    BasedAlgebra alg = build_algebra(f);
    GraphCaps caps = caps_for(opt, f);
    Rng rng(opt.seed);
    ExchangeGraph g = cached_exchange_graph(alg, f, caps, opt.cache_dir, rng);
    json j = graph_to_json(g, algebra_digest(f), caps);
    std::ostringstream text;
    text << (g.status == GraphStatus::Complete ? "Complete" : "Truncated") << ", "
         << g.nodes.size() << " nodes, " << g.edges.size() << " edges\n";
    for (size_t i = 0; i < g.nodes.size(); ++i)
        text << "  node " << i << ": " << node_desc(g.nodes[i]) << "\n";
    emit(opt, j, text.str(), graph_dot(g));
}

void cmd_decide(const Options& opt) {
    AlgebraFile f = load_input(opt);
    BasedAlgebra alg = build_algebra(f);
    GraphCaps caps = caps_for(opt, f);
    Rng rng(opt.seed);
    DecideResult r = decide_tau_tilting_finite(alg, caps, rng);
    const char* verdict = r.finite ? "Finite" : "Inconclusive";
    json j = {{"schema", "siltlab-decide/1"},
              {"verdict", verdict},
              {"nodes", r.graph.nodes.size()},
              {"statistics", r.statistics}};
    std::ostringstream text;
    text << verdict << " (" << r.graph.nodes.size() << " nodes";
    if (!r.finite) text << " within max_nodes " << caps.max_nodes << ", max_dim "
                        << caps.max_dim;
    text << ")\n";
    emit(opt, j, text.str());
}

void cmd_hasse(const Options& opt) {
    AlgebraFile f = load_input(opt);
    BasedAlgebra alg = build_algebra(f);
    GraphCaps caps = caps_for(opt, f);
    Rng rng(opt.seed);
    ExchangeGraph g = cached_exchange_graph(alg, f, caps, opt.cache_dir, rng);
    HasseDiagram h = hasse(g, rng);
    json edges = json::array();
    std::ostringstream text;
    text << g.nodes.size() << " nodes, " << h.edges.size() << " covering relations\n";
    for (const HasseEdge& e : h.edges) {
        edges.push_back({{"upper", e.upper},
                         {"lower", e.lower},
                         {"label_dims", e.label.dims},
                         {"fallback", e.fallback}});
        text << "  " << e.upper << " > " << e.lower << "  label " << e.label.dimvec_str()
             << "\n";
    }
    json j = {{"schema", "siltlab-hasse/1"}, {"nodes", g.nodes.size()},
              {"edges", std::move(edges)}};
    emit(opt, j, text.str(), hasse_dot(h));
}

std::vector<Rep> sample_pool(const BasedAlgebra& alg) {
    StandardModules sm = standard_modules(alg);
    std::vector<Rep> pool = {zero_rep(alg), regular_rep(alg)};
    for (const Rep& m : sm.simple) pool.push_back(m);
    for (const Rep& m : sm.proj) pool.push_back(m);
    for (const Rep& m : sm.inj) pool.push_back(m);
    return pool;
}

void cmd_wide(const Options& opt, int node) {
    AlgebraFile f = load_input(opt);
    BasedAlgebra alg = build_algebra(f);
    GraphCaps caps = caps_for(opt, f);
    Rng rng(opt.seed);
    ExchangeGraph g = cached_exchange_graph(alg, f, caps, opt.cache_dir, rng);
    HasseDiagram h = hasse(g, rng);
    if (node < 0 || node >= int(g.nodes.size()))
        throw ParseError("node index out of range");
    WidePredicate w = wide_subcategory(h, node, rng);
    json sb = json::array();
    std::ostringstream text;
    text << "node " << node << ": " << node_desc(g.nodes[size_t(node)]) << "\n";
    text << "semibrick:";
    for (const Rep& b : w.semibrick) {
        sb.push_back(b.dims);
        text << " " << b.dimvec_str();
    }
    if (w.semibrick.empty()) text << " (empty)";
    text << "\n";
    json samples = json::array();
    for (const Rep& x : sample_pool(alg)) {
        bool member = w.contains(x);
        samples.push_back({{"dims", x.dims}, {"member", member}});
        text << "  " << x.dimvec_str() << (member ? " in" : " not in")
             << " the wide subcategory\n";
    }
    json j = {{"schema", "siltlab-wide/1"},
              {"node", node},
              {"semibrick", std::move(sb)},
              {"samples", std::move(samples)}};
    emit(opt, j, text.str());
}

void cmd_epi(const Options& opt, int node, bool all, int tower_cap) {
    AlgebraFile f = load_input(opt);
    BasedAlgebra alg = build_algebra(f);
    GraphCaps caps = caps_for(opt, f);
    Rng rng(opt.seed);
    ExchangeGraph g = cached_exchange_graph(alg, f, caps, opt.cache_dir, rng);
    HasseDiagram h = hasse(g, rng);
    std::vector<int> nodes;
    if (all)
        for (size_t i = 0; i < g.nodes.size(); ++i) nodes.push_back(int(i));
    else if (node >= 0 && node < int(g.nodes.size()))
        nodes.push_back(node);
    else
        throw ParseError("node index out of range");
    json rows = json::array();
    std::ostringstream text;
    for (int nd : nodes) {
        RingEpiPresentation e = ring_epi_from_node(h, nd, tower_cap, rng);
        rows.push_back({{"node", nd},
                        {"dim_b", e.b.dim},
                        {"reflection_dims", e.reflection_module.dims},
                        {"flags", flags_json(e.flags)}});
        text << "node " << nd << ": dim B = " << e.b.dim << ", reflection "
             << e.reflection_module.dimvec_str() << ", all checks pass\n";
    }
    json j = {{"schema", "siltlab-epi/1"}, {"epis", std::move(rows)}};
    emit(opt, j, text.str());
}

void cmd_census(const Options& opt, int tower_cap) {
    AlgebraFile f = load_input(opt);
    BasedAlgebra alg = build_algebra(f);
    GraphCaps caps = caps_for(opt, f);
    Rng rng(opt.seed);
    ExchangeGraph g = cached_exchange_graph(alg, f, caps, opt.cache_dir, rng);
    std::vector<CensusRow> rows = epiclass_census(g, tower_cap, rng);
    json jr = json::array();
    std::ostringstream text, csv;
    csv << "node,dim_b,semibrick,all_checks\n";
    for (const CensusRow& r : rows) {
        std::string sb;
        for (size_t i = 0; i < r.semibrick_dims.size(); ++i)
            sb += (i ? " " : "") + r.semibrick_dims[i];
        jr.push_back({{"node", r.node},
                      {"dim_b", r.dim_b},
                      {"semibrick", r.semibrick_dims},
                      {"flags", flags_json(r.flags)}});
        text << "node " << r.node << ": dim B = " << r.dim_b << ", semibrick [" << sb
             << "]\n";
        csv << r.node << "," << r.dim_b << "," << sb << ","
            << (r.flags.all() ? "yes" : "no") << "\n";
    }
    text << rows.size() << " epiclasses over " << g.nodes.size()
         << " nodes: counts consistent\n";
    json j = {{"schema", "siltlab-census/1"},
              {"nodes", g.nodes.size()},
              {"rows", std::move(jr)}};
    emit(opt, j, text.str(), "", csv.str());
}

void cmd_oracle(const Options& opt, const std::string& sub, int cap) {
    AlgebraFile f = load_input(opt);
    BasedAlgebra alg = build_algebra(f);
    Rng rng(opt.seed);
    EnumerationCaps caps;
    caps.max_total_dim = cap;
    std::ostringstream text;
    json j = {{"schema", "siltlab-oracle/1"}, {"subcommand", sub}};
    if (sub == "reps" || sub == "torsion") {
        std::vector<Rep> indecs = enumerate_reps_upto_iso(alg, caps, rng);
        json arr = json::array();
        for (const Rep& m : indecs) arr.push_back(m.dims);
        j["indecomposables"] = arr;
        text << indecs.size() << " indecomposables up to total dim " << cap << "\n";
        for (const Rep& m : indecs) text << "  " << m.dimvec_str() << "\n";
        if (sub == "torsion") {
            auto classes = enumerate_torsion_classes_repfinite(indecs, rng);
            j["torsion_classes"] = classes;
            text << classes.size() << " torsion classes\n";
        }
    } else if (sub == "bricks") {
        std::vector<Rep> bricks = brute_bricks(alg, caps, rng);
        json arr = json::array();
        for (const Rep& m : bricks) arr.push_back(m.dims);
        j["bricks"] = arr;
        text << bricks.size() << " bricks up to total dim " << cap << "\n";
        for (const Rep& m : bricks) text << "  " << m.dimvec_str() << "\n";
    } else {
        throw ParseError("unknown oracle subcommand '" + sub +
                         "' (expected reps|torsion|bricks)");
    }
    emit(opt, j, text.str());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"silting lattices, wide subcategories and ring epimorphisms"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* c, bool with_algebra = true) {
        if (with_algebra)
            c->add_option("algebra", opt.algebra,
                          "algebra file path or corpus name (wild_R takes wild_R:n)")
                ->required();
        c->add_option("--field", opt.field, "override the ground field (Q or Fp)");
        c->add_option("--max-nodes", opt.max_nodes, "exchange graph node cap")
            ->each([&](const std::string&) { opt.max_nodes_set = true; });
        c->add_option("--max-dim", opt.max_dim, "per-summand dimension cap")
            ->each([&](const std::string&) { opt.max_dim_set = true; });
        c->add_option("--depth-cap", opt.depth_cap, "filtration depth cap");
        c->add_option("--seed", opt.seed, "random seed");
        c->add_option("--cache-dir", opt.cache_dir, "exchange graph cache directory");
        c->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"json", "csv", "dot", "text"}));
    };

    add_common(app.add_subcommand("basis", "monomial basis of the algebra"));
    add_common(app.add_subcommand("standard", "projective/simple/injective dimensions"));
    CLI::App* tau_cmd = app.add_subcommand("tau", "AR translate of a module file");
    add_common(tau_cmd);
    std::string module_path;
    tau_cmd->add_option("module", module_path, "module file (JSON)")->required();
    add_common(app.add_subcommand("enumerate", "exchange graph of the algebra"));
    add_common(app.add_subcommand("decide", "tau-tilting finiteness verdict"));
    add_common(app.add_subcommand("hasse", "Hasse diagram with brick labels"));
    CLI::App* wide_cmd = app.add_subcommand("wide", "wide subcategory at a node");
    add_common(wide_cmd);
    int node = -1;
    wide_cmd->add_option("node", node, "node index")->required();
    CLI::App* epi_cmd = app.add_subcommand("epi", "ring epimorphism at a node");
    add_common(epi_cmd);
    int epi_node = -1;
    bool epi_all = false;
    int tower_cap = 40;
    epi_cmd->add_option("node", epi_node, "node index");
    epi_cmd->add_flag("--all", epi_all, "all nodes");
    epi_cmd->add_option("--tower-cap", tower_cap, "universal extension tower cap");
    CLI::App* census_cmd = app.add_subcommand("census", "epiclass census table");
    add_common(census_cmd);
    census_cmd->add_option("--tower-cap", tower_cap, "universal extension tower cap");
    CLI::App* oracle_cmd = app.add_subcommand("oracle", "brute-force ground truth");
    std::string oracle_sub;
    int oracle_cap = 6;
    oracle_cmd->add_option("subcommand", oracle_sub, "reps|torsion|bricks")->required();
    add_common(oracle_cmd);
    oracle_cmd->add_option("--cap", oracle_cap, "total dimension cap");
    app.add_subcommand("verify-paper", "run the acceptance suite on the corpus");

    try {
        app.parse(argc, argv);
        if (app.got_subcommand("basis")) cmd_basis(opt);
        else if (app.got_subcommand("standard")) cmd_standard(opt);
        else if (app.got_subcommand("tau")) cmd_tau(opt, module_path);
        else if (app.got_subcommand("enumerate")) cmd_enumerate(opt);
        else if (app.got_subcommand("decide")) cmd_decide(opt);
        else if (app.got_subcommand("hasse")) cmd_hasse(opt);
        else if (app.got_subcommand("wide")) cmd_wide(opt, node);
        else if (app.got_subcommand("epi")) cmd_epi(opt, epi_node, epi_all, tower_cap);
        else if (app.got_subcommand("census")) cmd_census(opt, tower_cap);
        else if (app.got_subcommand("oracle")) cmd_oracle(opt, oracle_sub, oracle_cap);
        else if (app.got_subcommand("verify-paper")) {
            auto results = run_acceptance_suite(std::cout);
            for (const CriterionResult& r : results)
                if (!r.pass) return 2;
        }
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const SemanticError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const UnknownCorpusEntry& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const SiltError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
