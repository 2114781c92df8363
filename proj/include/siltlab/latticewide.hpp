#pragma once

#include "siltlab/tautilt.hpp"

namespace siltlab {

// Wide subcategory attached to a node: gen(module) ∩ T1° where T1 is the
// cokernel of the minimal left add(module)-approximation A -> T0, presented
// by sigma1 (the cone of that approximation).
struct WidePredicate {
    SiltingPair origin;
    TwoTermComplex sigma1;
    Rep t1;
    std::vector<Rep> semibrick;

    bool contains(const Rep& x) const; // x_sigma_membership(sigma1, x)
};

struct HasseEdge {
    int upper = 0, lower = 0; // node indices, gen(lower) ⊂ gen(upper)
    Rep label;
    bool fallback = false; // label found by exhaustive search, not the trace quotient
};

// Oriented covering relations of a Complete exchange graph, with brick
// labels. Holds a pointer back into the graph it was built from.
struct HasseDiagram {
    const ExchangeGraph* graph = nullptr;
    std::vector<HasseEdge> edges;
    std::vector<std::vector<int>> down, up; // per node: incident edge indices
};

// a.module ∈ gen(b.module), summand by summand (torsion-class inclusion).
bool gen_leq(const SiltingPair& a, const SiltingPair& b);

HasseDiagram hasse(const ExchangeGraph& g, Rng& rng);

// Label of the covering T ⋗ T': the brick B = X / trace(rest of T in X)
// where X is the summand of the upper node missing from the lower one.
// Always verified (brick, B ∈ gen(upper), Hom(lower, B) = 0); on failure a
// bounded search over quotients of X runs and *fallback is set.
Rep brick_label(const SiltingPair& upper, const SiltingPair& lower, Rng& rng,
                bool* fallback = nullptr);

// Labels of the down-edges at a node: pairwise Hom-orthogonal bricks.
std::vector<Rep> semibrick_at(const HasseDiagram& h, int node, Rng& rng);

WidePredicate wide_subcategory(const HasseDiagram& h, int node, Rng& rng);
// Same without the semibrick (no Hasse diagram needed; semibrick left empty).
WidePredicate wide_subcategory(const SiltingPair& p, Rng& rng);

// X ∈ gen(module) and Hom(T1, X) = 0, via the approximation sequence.
bool a_map_membership(const SiltingPair& node, const Rep& x, Rng& rng);

// X admits a finite filtration whose factors are quotients of finite sums
// of the generators; decided by peeling maximal generated submodules.
bool filtgen_membership_bounded(const std::vector<Rep>& generators, const Rep& x,
                                int depth_cap);

} // namespace siltlab
