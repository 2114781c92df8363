#pragma once

#include "siltlab/latticewide.hpp"

#include <json.hpp>

namespace siltlab {

// Textual algebra description. Line grammar:
//   field Q | field F p
//   vertex NAME
//   arrow NAME SRC DST
//   relation EXPR       (+/- separated terms, term = [int*]arrow*arrow*...)
//   max_nodes N | max_dim N   (optional enumeration caps)
// '#' starts a comment; the leading comment block is preserved.
struct AlgebraFile {
    Field field = Field::rationals();
    Quiver quiver;
    std::vector<PathExpr> relations;
    std::vector<std::string> comments; // leading comment block, '#' stripped
    int max_nodes = 0, max_dim = 0;    // 0 = unset

    bool operator==(const AlgebraFile& o) const;
};

AlgebraFile parse_algebra_file(const std::string& text);
std::string print_algebra_file(const AlgebraFile& f);

// Hash of the canonical body (comments excluded); cache key component.
std::string algebra_digest(const AlgebraFile& f);

BasedAlgebra build_algebra(const AlgebraFile& f);

std::vector<std::string> corpus_names();
// Named inputs; n parametrises the wild family (0 picks each entry's default).
AlgebraFile load_corpus(const std::string& name, int n = 0);

nlohmann::json rep_to_json(const Rep& x);
Rep rep_from_json(const BasedAlgebra& alg, const nlohmann::json& j);

nlohmann::json graph_to_json(const ExchangeGraph& g, const std::string& digest,
                             const GraphCaps& caps);
// Rebuilds every pair from its serialised module and re-validates it.
ExchangeGraph graph_from_json(const BasedAlgebra& alg, const nlohmann::json& j, Rng& rng);

// Loads the graph for (digest(f), caps) from cache_dir if present, else
// computes and stores it (write-then-rename). Empty cache_dir disables.
ExchangeGraph cached_exchange_graph(const BasedAlgebra& alg, const AlgebraFile& f,
                                    const GraphCaps& caps, const std::string& cache_dir,
                                    Rng& rng);

std::string graph_dot(const ExchangeGraph& g);
std::string hasse_dot(const HasseDiagram& h);

} // namespace siltlab
