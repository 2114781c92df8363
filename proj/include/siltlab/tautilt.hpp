#pragma once

#include "siltlab/approx.hpp"

#include <array>
#include <map>
#include <string>

namespace siltlab {

// Support tau-tilting pair: a basic tau-rigid module together with the
// vertices whose projectives make up the complement P (so that
// #summands + #support_complement = #vertices).
struct SiltingPair {
    Rep module;
    std::vector<int> support_complement; // sorted vertex indices
    std::vector<Rep> indec_summands;
    std::vector<std::vector<long>> gkeys; // per summand, [P0] - [P1]

    std::string key() const; // canonical node key: sorted gkeys + support
};

bool is_tau_rigid(const Rep& m);

std::vector<long> gkey_of(const Rep& indec);

// Assembles a pair from a module (decomposed internally) and a support
// complement; does not validate.
SiltingPair make_pair(const Rep& module, std::vector<int> support_complement, Rng& rng);

bool validate_pair(const SiltingPair& p, Rng& rng, std::string* diagnostics = nullptr);

TwoTermComplex silting_to_presentation(const SiltingPair& p);

SiltingPair bongartz_complete(const TwoTermComplex& sigma1, Rng& rng);

SiltingPair initial_pair(const BasedAlgebra& alg, Rng& rng); // (A, {})

// Mutation at one of the n positions: indices [0, #summands) pick a module
// summand, the rest pick a support-complement vertex (in sorted order).
SiltingPair mutate(const SiltingPair& p, int position, Rng& rng);

struct GraphCaps {
    int max_nodes = 10000;
    int max_dim = 60; // per-summand total dimension
};

enum class GraphStatus { Complete, Truncated };

struct ExchangeGraph {
    std::vector<SiltingPair> nodes;
    std::map<std::string, int> index; // key -> node position
    std::vector<std::array<int, 3>> edges; // {node, node, position} with node0 < node1
    GraphStatus status = GraphStatus::Complete;
};

ExchangeGraph exchange_graph(const BasedAlgebra& alg, const GraphCaps& caps, Rng& rng);

struct DecideResult {
    bool finite = false;
    ExchangeGraph graph; // complete when finite, partial otherwise
    std::string statistics;
};

DecideResult decide_tau_tilting_finite(const BasedAlgebra& alg, const GraphCaps& caps, Rng& rng);

} // namespace siltlab
