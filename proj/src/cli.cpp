#include "siltlab/cli.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace siltlab {

namespace {

[[noreturn]] void parse_fail(int line, int col, const std::string& msg) {
    throw ParseError("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " +
                     msg);
}

[[noreturn]] void sem_fail(int line, const std::string& msg) {
    throw SemanticError("line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool is_integer(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

struct Token {
    std::string text;
    int col; // 1-based
};

std::vector<Token> split_words(const std::string& body) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < body.size()) {
        if (std::isspace(static_cast<unsigned char>(body[i]))) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j < body.size() && !std::isspace(static_cast<unsigned char>(body[j]))) ++j;
        out.push_back({body.substr(i, j - i), int(i) + 1});
        i = j;
    }
    return out;
}

int lookup_vertex(const Quiver& q, const std::string& name, int line) {
    for (size_t i = 0; i < q.vertices.size(); ++i)
        if (q.vertices[i] == name) return int(i);
    sem_fail(line, "unknown vertex '" + name + "'");
}

int lookup_arrow(const Quiver& q, const std::string& name, int line) {
    for (size_t i = 0; i < q.arrows.size(); ++i)
        if (q.arrows[i].label == name) return int(i);
    sem_fail(line, "unknown arrow '" + name + "'");
}

// EXPR := ['-'] TERM (('+'|'-') TERM)*; TERM := [INT '*'] ARROW ('*' ARROW)*
PathExpr parse_relation_expr(const AlgebraFile& f, const std::string& body, size_t pos,
                             int line) {
    PathExpr e;
    size_t i = pos;
    auto skip = [&] {
        while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
    };
    auto word = [&]() -> Token {
        size_t j = i;
        while (j < body.size() && (std::isalnum(static_cast<unsigned char>(body[j])) ||
                                   body[j] == '_'))
            ++j;
        Token t{body.substr(i, j - i), int(i) + 1};
        i = j;
        return t;
    };
    bool first = true;
    skip();
    if (i >= body.size()) parse_fail(line, int(i) + 1, "empty relation");
    while (true) {
        skip();
        if (i >= body.size()) break;
        long sign = 1;
        if (body[i] == '+' || body[i] == '-') {
            sign = body[i] == '-' ? -1 : 1;
            ++i;
            skip();
        } else if (!first) {
            parse_fail(line, int(i) + 1, "expected '+' or '-' between terms");
        }
        std::vector<Token> pieces;
        while (true) {
            skip();
            Token t = word();
            if (t.text.empty()) parse_fail(line, t.col, "expected arrow name or coefficient");
            pieces.push_back(t);
            skip();
            if (i < body.size() && body[i] == '*') {
                ++i;
                continue;
            }
            break;
        }
        PathTerm term;
        term.coeff = f.field.from_long(sign);
        size_t k = 0;
        if (is_integer(pieces[0].text)) {
            if (pieces.size() == 1)
                parse_fail(line, pieces[0].col, "coefficient without an arrow word");
            term.coeff = f.field.mul(term.coeff, scalar_parse(pieces[0].text));
            k = 1;
        }
        for (; k < pieces.size(); ++k) {
            if (is_integer(pieces[k].text))
                parse_fail(line, pieces[k].col, "coefficient must lead the term");
            term.arrows.push_back(lookup_arrow(f.quiver, pieces[k].text, line));
        }
        for (size_t a = 0; a + 1 < term.arrows.size(); ++a) {
            const Arrow& x = f.quiver.arrows[size_t(term.arrows[a])];
            const Arrow& y = f.quiver.arrows[size_t(term.arrows[a + 1])];
            if (x.dst != y.src)
                sem_fail(line, "arrows '" + x.label + "' and '" + y.label +
                                   "' do not compose");
        }
        e.terms.push_back(std::move(term));
        first = false;
    }
    return e;
}

} // namespace

bool AlgebraFile::operator==(const AlgebraFile& o) const {
    if (field != o.field || comments != o.comments || max_nodes != o.max_nodes ||
        max_dim != o.max_dim)
        return false;
    if (quiver.vertices != o.quiver.vertices) return false;
    if (quiver.arrows.size() != o.quiver.arrows.size()) return false;
    for (size_t i = 0; i < quiver.arrows.size(); ++i) {
        const Arrow &a = quiver.arrows[i], &b = o.quiver.arrows[i];
        if (a.label != b.label || a.src != b.src || a.dst != b.dst) return false;
    }
    if (relations.size() != o.relations.size()) return false;
    for (size_t i = 0; i < relations.size(); ++i) {
        const auto &r = relations[i].terms, &s = o.relations[i].terms;
        if (r.size() != s.size()) return false;
        for (size_t j = 0; j < r.size(); ++j)
            if (r[j].coeff != s[j].coeff || r[j].arrows != s[j].arrows) return false;
    }
    return true;
}

AlgebraFile parse_algebra_file(const std::string& text) {
    AlgebraFile f;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    bool saw_directive = false, saw_field = false;
    while (std::getline(in, raw)) {
        ++line;
        size_t hash = raw.find('#');
        std::string body = hash == std::string::npos ? raw : raw.substr(0, hash);
        if (trim(body).empty()) {
            if (hash != std::string::npos && !saw_directive)
                f.comments.push_back(trim(raw.substr(hash + 1)));
            continue;
        }
        saw_directive = true;
        std::vector<Token> w = split_words(body);
        const std::string& key = w[0].text;
        auto expect_args = [&](size_t n) {
            if (w.size() != n + 1)
                parse_fail(line, w[0].col,
                           "'" + key + "' takes " + std::to_string(n) + " argument(s)");
        };
        if (key == "field") {
            if (saw_field) parse_fail(line, w[0].col, "duplicate field line");
            saw_field = true;
            if (w.size() == 2 && w[1].text == "Q") {
                f.field = Field::rationals();
            } else if (w.size() == 3 && w[1].text == "F" && is_integer(w[2].text)) {
                try {
                    f.field = Field::prime(std::stol(w[2].text));
                } catch (const SiltError& e) {
                    parse_fail(line, w[2].col, e.what());
                }
            } else {
                parse_fail(line, w[0].col, "expected 'field Q' or 'field F p'");
            }
        } else if (key == "vertex") {
            expect_args(1);
            for (const std::string& v : f.quiver.vertices)
                if (v == w[1].text) sem_fail(line, "duplicate vertex '" + w[1].text + "'");
            f.quiver.vertices.push_back(w[1].text);
        } else if (key == "arrow") {
            expect_args(3);
            for (const Arrow& a : f.quiver.arrows)
                if (a.label == w[1].text)
                    sem_fail(line, "duplicate arrow label '" + w[1].text + "'");
            int src = lookup_vertex(f.quiver, w[2].text, line);
            int dst = lookup_vertex(f.quiver, w[3].text, line);
            f.quiver.arrows.push_back({w[1].text, src, dst});
        } else if (key == "relation") {
            f.relations.push_back(
                parse_relation_expr(f, body, size_t(w[0].col) - 1 + key.size(), line));
        } else if (key == "max_nodes" || key == "max_dim") {
            expect_args(1);
            if (!is_integer(w[1].text))
                parse_fail(line, w[1].col, "'" + key + "' takes an integer");
            (key == "max_nodes" ? f.max_nodes : f.max_dim) = std::stoi(w[1].text);
        } else {
            parse_fail(line, w[0].col, "unknown key '" + key + "'");
        }
    }
    return f;
}

namespace {

std::string term_body_str(const AlgebraFile& f, const PathTerm& t, const Scalar& mag) {
    std::string s;
    if (mag != 1) s += scalar_str(mag) + "*";
    for (size_t i = 0; i < t.arrows.size(); ++i) {
        if (i) s += "*";
        s += f.quiver.arrows[size_t(t.arrows[i])].label;
    }
    return s;
}

std::string expr_str(const AlgebraFile& f, const PathExpr& e) {
    std::string s;
    for (size_t i = 0; i < e.terms.size(); ++i) {
        const PathTerm& t = e.terms[i];
        bool neg = f.field.kind() == Field::Kind::Rationals && t.coeff < 0;
        Scalar mag = neg ? Scalar(-t.coeff) : t.coeff;
        if (i == 0)
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        s += term_body_str(f, t, mag);
    }
    return s;
}

} // namespace

std::string print_algebra_file(const AlgebraFile& f) {
    std::ostringstream os;
    for (const std::string& c : f.comments) os << "# " << c << "\n";
    if (f.field.is_prime_field())
        os << "field F " << f.field.p() << "\n";
    else
        os << "field Q\n";
    for (const std::string& v : f.quiver.vertices) os << "vertex " << v << "\n";
    for (const Arrow& a : f.quiver.arrows)
        os << "arrow " << a.label << " " << f.quiver.vertices[size_t(a.src)] << " "
           << f.quiver.vertices[size_t(a.dst)] << "\n";
    for (const PathExpr& r : f.relations) os << "relation " << expr_str(f, r) << "\n";
    if (f.max_nodes) os << "max_nodes " << f.max_nodes << "\n";
    if (f.max_dim) os << "max_dim " << f.max_dim << "\n";
    return os.str();
}

std::string algebra_digest(const AlgebraFile& f) {
    AlgebraFile bare = f;
    bare.comments.clear();
    std::string body = print_algebra_file(bare);
    std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a
    for (unsigned char c : body) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

BasedAlgebra build_algebra(const AlgebraFile& f) {
    int cap = std::max(12, int(f.quiver.arrows.size()) + 2);
    return build_based_algebra(f.field, f.quiver, f.relations, cap);
}

std::vector<std::string> corpus_names() {
    return {"linear_a2", "kx2",      "preproj_a2",  "preproj_a3",
            "kronecker", "wild_R", "two_loop_gdp"};
}

AlgebraFile load_corpus(const std::string& name, int n) {
    AlgebraFile f;
    auto arrows = [&](std::initializer_list<std::tuple<const char*, const char*, const char*>>
                          list) {
        for (auto& [l, s, t] : list)
            f.quiver.arrows.push_back(
                {l, f.quiver.vertex_index(s), f.quiver.vertex_index(t)});
    };
    auto rel = [&](std::initializer_list<std::pair<long, std::vector<const char*>>> terms) {
        PathExpr e;
        for (auto& [c, word] : terms) {
            PathTerm t;
            t.coeff = f.field.from_long(c);
            for (const char* a : word) t.arrows.push_back(f.quiver.arrow_index(a));
            e.terms.push_back(std::move(t));
        }
        f.relations.push_back(std::move(e));
    };
    if (name == "linear_a2") {
        f.comments = {"linear A2: 1 --a--> 2"};
        f.quiver.vertices = {"1", "2"};
        arrows({{"a", "1", "2"}});
    } else if (name == "kx2") {
        f.comments = {"K[x]/(x^2): one vertex, one loop x, relation x^2 = 0"};
        f.quiver.vertices = {"v"};
        arrows({{"x", "v", "v"}});
        rel({{1, {"x", "x"}}});
    } else if (name == "preproj_a2") {
        f.comments = {"preprojective algebra of type A2",
                      "words compose left to right: a*b means first a, then b"};
        f.quiver.vertices = {"1", "2"};
        arrows({{"a", "1", "2"}, {"b", "2", "1"}});
        rel({{1, {"a", "b"}}});
        rel({{1, {"b", "a"}}});
    } else if (name == "preproj_a3") {
        f.comments = {"preprojective algebra of type A3",
                      "mesh relations per vertex, words left to right"};
        f.quiver.vertices = {"1", "2", "3"};
        arrows({{"a1", "1", "2"}, {"a2", "2", "3"}, {"b1", "2", "1"}, {"b2", "3", "2"}});
        rel({{1, {"a1", "b1"}}});
        rel({{1, {"b1", "a1"}}, {-1, {"a2", "b2"}}});
        rel({{1, {"b2", "a2"}}});
    } else if (name == "kronecker") {
        f.comments = {"Kronecker algebra: two parallel arrows 1 -> 2, no relations"};
        f.quiver.vertices = {"1", "2"};
        arrows({{"a", "1", "2"}, {"b", "1", "2"}});
    } else if (name == "wild_R") {
        if (n == 0) n = 9;
        if (n < 4) throw UnknownCorpusEntry("wild_R needs n >= 4");
        f.comments = {"wild family member with parameter n = " + std::to_string(n),
                      "path 1 -> 2 -> ... -> n-2, then alpha: n-2 -> n-1, beta: n-1 -> n,",
                      "gamma: n-2 -> n; the right-to-left composite beta.alpha is the",
                      "left-to-right word alpha*beta, set to zero"};
        for (int v = 1; v <= n; ++v) f.quiver.vertices.push_back(std::to_string(v));
        for (int v = 1; v <= n - 3; ++v)
            f.quiver.arrows.push_back({"c" + std::to_string(v), v - 1, v});
        f.quiver.arrows.push_back({"alpha", n - 3, n - 2});
        f.quiver.arrows.push_back({"beta", n - 2, n - 1});
        f.quiver.arrows.push_back({"gamma", n - 3, n - 1});
        rel({{1, {"alpha", "beta"}}});
    } else if (name == "two_loop_gdp") {
        f.comments = {"two loops alpha (at 1) and beta (at 3) with arrows gamma: 1 -> 2,",
                      "delta: 3 -> 2; the relations alpha^2 = gamma.alpha = beta^3 =",
                      "delta.beta^2 = 0 read left to right as alpha*alpha, alpha*gamma,",
                      "beta*beta*beta, beta*beta*delta"};
        f.quiver.vertices = {"1", "2", "3"};
        arrows({{"alpha", "1", "1"}, {"gamma", "1", "2"}, {"beta", "3", "3"},
                {"delta", "3", "2"}});
        rel({{1, {"alpha", "alpha"}}});
        rel({{1, {"alpha", "gamma"}}});
        rel({{1, {"beta", "beta", "beta"}}});
        rel({{1, {"beta", "beta", "delta"}}});
    } else {
        throw UnknownCorpusEntry("no corpus entry named '" + name + "'");
    }
    return f;
}

nlohmann::json rep_to_json(const Rep& x) {
    nlohmann::json j;
    j["dims"] = x.dims;
    nlohmann::json arrs = nlohmann::json::array();
    for (const Matrix& m : x.arr) {
        nlohmann::json rows = nlohmann::json::array();
        for (int r = 0; r < m.rows(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (int c = 0; c < m.cols(); ++c) row.push_back(scalar_str(m.at(r, c)));
            rows.push_back(std::move(row));
        }
        arrs.push_back(std::move(rows));
    }
    j["arrows"] = std::move(arrs);
    return j;
}

Rep rep_from_json(const BasedAlgebra& alg, const nlohmann::json& j) {
    Rep x;
    x.alg = &alg;
    x.dims = j.at("dims").get<std::vector<int>>();
    if (int(x.dims.size()) != alg.num_vertices())
        throw ParseError("module has the wrong number of vertex spaces");
    const nlohmann::json& arrs = j.at("arrows");
    if (int(arrs.size()) != int(alg.quiver.arrows.size()))
        throw ParseError("module has the wrong number of arrow matrices");
    for (size_t a = 0; a < arrs.size(); ++a) {
        const Arrow& ar = alg.quiver.arrows[a];
        int r = x.dims[size_t(ar.src)], c = x.dims[size_t(ar.dst)];
        Matrix m(alg.field, r, c);
        const nlohmann::json& rows = arrs[a];
        if (int(rows.size()) != r) throw ParseError("bad matrix shape for arrow " + ar.label);
        for (int i = 0; i < r; ++i) {
            if (int(rows[size_t(i)].size()) != c)
                throw ParseError("bad matrix shape for arrow " + ar.label);
            for (int k = 0; k < c; ++k)
                m.set(i, k, scalar_parse(rows[size_t(i)][size_t(k)].get<std::string>()));
        }
        x.arr.push_back(std::move(m));
    }
    if (!validate_rep(x)) throw VerificationFailed("serialised module violates the relations");
    return x;
}

nlohmann::json graph_to_json(const ExchangeGraph& g, const std::string& digest,
                             const GraphCaps& caps) {
    nlohmann::json j;
    j["schema"] = "siltlab-graph/1";
    j["digest"] = digest;
    j["caps"] = {{"max_nodes", caps.max_nodes}, {"max_dim", caps.max_dim}};
    j["status"] = g.status == GraphStatus::Complete ? "Complete" : "Truncated";
    nlohmann::json nodes = nlohmann::json::array();
    for (const SiltingPair& p : g.nodes)
        nodes.push_back({{"support_complement", p.support_complement},
                         {"module", rep_to_json(p.module)}});
    j["nodes"] = std::move(nodes);
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : g.edges) edges.push_back({e[0], e[1], e[2]});
    j["edges"] = std::move(edges);
    return j;
}

ExchangeGraph graph_from_json(const BasedAlgebra& alg, const nlohmann::json& j, Rng& rng) {
    if (j.value("schema", "") != "siltlab-graph/1")
        throw ParseError("unknown graph schema '" + j.value("schema", "") + "'");
    ExchangeGraph g;
    g.status = j.at("status").get<std::string>() == "Complete" ? GraphStatus::Complete
                                                               : GraphStatus::Truncated;
    for (const nlohmann::json& nj : j.at("nodes")) {
        Rep m = rep_from_json(alg, nj.at("module"));
        SiltingPair p = make_pair(
            m, nj.at("support_complement").get<std::vector<int>>(), rng);
        std::string diag;
        if (!validate_pair(p, rng, &diag))
            throw VerificationFailed("cached node fails validation: " + diag);
        g.index[p.key()] = int(g.nodes.size());
        g.nodes.push_back(std::move(p));
    }
    for (const nlohmann::json& ej : j.at("edges"))
        g.edges.push_back({ej[0].get<int>(), ej[1].get<int>(), ej[2].get<int>()});
    return g;
}

ExchangeGraph cached_exchange_graph(const BasedAlgebra& alg, const AlgebraFile& f,
                                    const GraphCaps& caps, const std::string& cache_dir,
                                    Rng& rng) {
    if (cache_dir.empty()) return exchange_graph(alg, caps, rng);
    std::string digest = algebra_digest(f);
    std::filesystem::path dir(cache_dir);
    std::filesystem::create_directories(dir);
    std::filesystem::path file =
        dir / (digest + "_n" + std::to_string(caps.max_nodes) + "_d" +
               std::to_string(caps.max_dim) + ".json");
    if (std::filesystem::exists(file)) {
        std::ifstream in(file);
        nlohmann::json j;
        in >> j;
        return graph_from_json(alg, j, rng);
    }
    ExchangeGraph g = exchange_graph(alg, caps, rng);
    std::filesystem::path tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        out << graph_to_json(g, digest, caps).dump(1) << "\n";
    }
    std::filesystem::rename(tmp, file);
    return g;
}

std::string graph_dot(const ExchangeGraph& g) {
    std::ostringstream os;
    os << "graph exchange {\n";
    for (size_t i = 0; i < g.nodes.size(); ++i) {
        const SiltingPair& p = g.nodes[i];
        os << "  n" << i << " [label=\"" << p.module.dimvec_str();
        if (!p.support_complement.empty()) {
            os << " | ";
            for (size_t k = 0; k < p.support_complement.size(); ++k)
                os << (k ? "," : "") << p.support_complement[k];
        }
        os << "\"];\n";
    }
    for (const auto& e : g.edges) os << "  n" << e[0] << " -- n" << e[1] << ";\n";
    os << "}\n";
    return os.str();
}

std::string hasse_dot(const HasseDiagram& h) {
    std::ostringstream os;
    os << "digraph hasse {\n";
    for (size_t i = 0; i < h.graph->nodes.size(); ++i)
        os << "  n" << i << " [label=\"" << h.graph->nodes[i].module.dimvec_str() << "\"];\n";
    for (const HasseEdge& e : h.edges)
        os << "  n" << e.upper << " -> n" << e.lower << " [label=\""
           << e.label.dimvec_str() << "\"];\n";
    os << "}\n";
    return os.str();
}

} // namespace siltlab
