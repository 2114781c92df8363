#include "siltlab/latticewide.hpp"

#include "siltlab/error.hpp"

#include <numeric>

namespace siltlab {

namespace {

// Summand of the upper node missing from the lower one (the exchanged or
// dropped indecomposable along a covering edge).
const Rep& exchanged_summand(const SiltingPair& upper, const SiltingPair& lower, Rng& rng) {
    std::vector<bool> used(lower.indec_summands.size(), false);
    int xi = -1;
    for (size_t i = 0; i < upper.indec_summands.size(); ++i) {
        bool matched = false;
        for (size_t j = 0; j < lower.indec_summands.size(); ++j) {
            if (used[j]) continue;
            if (is_isomorphic(upper.indec_summands[i], lower.indec_summands[j], rng)) {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if (matched) continue;
        if (xi >= 0) throw LabelNotFound("more than one summand differs across the edge");
        xi = int(i);
    }
    if (xi < 0) throw LabelNotFound("the nodes share all summands");
    return upper.indec_summands[size_t(xi)];
}

void append_image_rows(std::vector<Matrix>& rows, const RepMap& f) {
    for (size_t v = 0; v < rows.size(); ++v)
        rows[v] = Matrix::vstack(rows[v], f.f[v]);
}

// Rows of the cyclic submodule of X generated by basis vector t at vertex v.
std::vector<Matrix> cyclic_rows(const Rep& x, int v, int t) {
    const BasedAlgebra& alg = *x.alg;
    const Field& f = alg.field;
    std::vector<Matrix> rows;
    for (int w = 0; w < int(x.dims.size()); ++w) rows.push_back(Matrix(f, 0, x.dims[size_t(w)]));
    for (int m = 0; m < alg.dim(); ++m) {
        if (alg.mono_source(m) != v) continue;
        Matrix act = monomial_action(x, m); // dims[v] x dims[tgt]
        Matrix r(f, 1, act.cols());
        for (int c = 0; c < act.cols(); ++c) r.set(0, c, act.at(t, c));
        int w = alg.mono_target(m);
        rows[size_t(w)] = Matrix::vstack(rows[size_t(w)], r);
    }
    return rows;
}

} // namespace

bool WidePredicate::contains(const Rep& x) const { return x_sigma_membership(sigma1, x); }

bool gen_leq(const SiltingPair& a, const SiltingPair& b) {
    for (const Rep& s : a.indec_summands)
        if (!in_gen(b.module, s)) return false;
    return true;
}

Rep brick_label(const SiltingPair& upper, const SiltingPair& lower, Rng& rng, bool* fallback) {
    if (fallback) *fallback = false;
    const Rep& x = exchanged_summand(upper, lower, rng);
    const Field& f = upper.module.alg->field;

    auto verified = [&](const Rep& b) {
        return !b.is_zero() && in_gen(upper.module, b) && hom_dim(lower.module, b) == 0 &&
               is_brick(b, rng);
    };

    // candidate: X modulo the trace of the other summands and of the
    // radical endomorphisms of X
    std::vector<Matrix> rows;
    for (size_t v = 0; v < x.dims.size(); ++v) rows.push_back(Matrix(f, 0, x.dims[v]));
    for (const Rep& r : upper.indec_summands) {
        if (&r == &x) continue;
        for (const RepMap& h : hom_basis(r, x)) append_image_rows(rows, h);
    }
    for (const RepMap& g : hom_basis(x, x))
        if (!map_is_iso(g)) append_image_rows(rows, g);
    Rep cand = quotient_rep(x, rows).rep;
    if (verified(cand)) return cand;

    // bounded search over quotients of X by sums of cyclic submodules
    if (fallback) *fallback = true;
    std::vector<std::vector<Matrix>> pool;
    for (int v = 0; v < int(x.dims.size()); ++v)
        for (int t = 0; t < x.dims[size_t(v)]; ++t) pool.push_back(cyclic_rows(x, v, t));
    int n = int(pool.size());
    long masks = n <= 14 ? (1L << n) : 0;
    for (long mask = 0; mask < masks; ++mask) {
        std::vector<Matrix> sub;
        for (size_t v = 0; v < x.dims.size(); ++v) sub.push_back(Matrix(f, 0, x.dims[v]));
        for (int i = 0; i < n; ++i)
            if (mask & (1L << i))
                for (size_t v = 0; v < sub.size(); ++v)
                    sub[v] = Matrix::vstack(sub[v], pool[size_t(i)][v]);
        Rep b = quotient_rep(x, sub).rep;
        if (verified(b)) return b;
    }
    throw LabelNotFound("no brick label for edge " + upper.key() + " > " + lower.key());
}

HasseDiagram hasse(const ExchangeGraph& g, Rng& rng) {
    if (g.status != GraphStatus::Complete)
        throw NotComplete("exchange graph is truncated; Hasse diagram needs a complete graph");
    HasseDiagram h;
    h.graph = &g;
    h.down.resize(g.nodes.size());
    h.up.resize(g.nodes.size());
    for (const auto& e : g.edges) {
        const SiltingPair& a = g.nodes[size_t(e[0])];
        const SiltingPair& b = g.nodes[size_t(e[1])];
        bool a_up = gen_leq(b, a);
        bool b_up = gen_leq(a, b);
        if (a_up == b_up) throw SiltError("mutation edge fails to orient under gen order");
        HasseEdge he;
        he.upper = a_up ? e[0] : e[1];
        he.lower = a_up ? e[1] : e[0];
        he.label = brick_label(g.nodes[size_t(he.upper)], g.nodes[size_t(he.lower)], rng,
                               &he.fallback);
        h.down[size_t(he.upper)].push_back(int(h.edges.size()));
        h.up[size_t(he.lower)].push_back(int(h.edges.size()));
        h.edges.push_back(std::move(he));
    }
    return h;
}

std::vector<Rep> semibrick_at(const HasseDiagram& h, int node, Rng& rng) {
    (void)rng;
    std::vector<Rep> out;
    for (int e : h.down[size_t(node)]) out.push_back(h.edges[size_t(e)].label);
    return out;
}

WidePredicate wide_subcategory(const SiltingPair& p, Rng& rng) {
    const BasedAlgebra& alg = *p.module.alg;
    std::string diag;
    if (!validate_pair(p, rng, &diag)) throw VerificationFailed("invalid node: " + diag);
    std::vector<int> all(alg.quiver.vertices.size());
    std::iota(all.begin(), all.end(), 0);
    ProjReal areal = realize_projectives(alg, all);
    ApproximationResult ar = left_add_approximation(areal.rep, p.module, true, rng);
    WidePredicate w;
    w.origin = p;
    w.t1 = ar.cokernel;
    w.sigma1 = cone_presentation(all, ar.map, min_proj_presentation(ar.map.tgt));
    return w;
}

WidePredicate wide_subcategory(const HasseDiagram& h, int node, Rng& rng) {
    WidePredicate w = wide_subcategory(h.graph->nodes[size_t(node)], rng);
    w.semibrick = semibrick_at(h, node, rng);
    return w;
}

bool a_map_membership(const SiltingPair& node, const Rep& x, Rng& rng) {
    if (!in_gen(node.module, x)) return false;
    const BasedAlgebra& alg = *node.module.alg;
    std::vector<int> all(alg.quiver.vertices.size());
    std::iota(all.begin(), all.end(), 0);
    ProjReal areal = realize_projectives(alg, all);
    ApproximationResult ar = left_add_approximation(areal.rep, node.module, true, rng);
    return hom_dim(ar.cokernel, x) == 0;
}

bool filtgen_membership_bounded(const std::vector<Rep>& generators, const Rep& x,
                                int depth_cap) {
    const BasedAlgebra& alg = *x.alg;
    Rep gsum = direct_sum(alg, generators);
    Rep cur = x;
    for (int d = 0; d < depth_cap; ++d) {
        if (cur.is_zero()) return true;
        SubRep t = trace_submodule_sub(gsum, cur);
        if (t.rep.is_zero()) return false;
        cur = quotient_rep(cur, t.rows).rep;
    }
    if (cur.is_zero()) return true;
    throw DepthExceeded("filtration not resolved within depth " + std::to_string(depth_cap));
}

} // namespace siltlab
