#include "siltlab/epis.hpp"

#include "siltlab/error.hpp"

#include <functional>
#include <numeric>

namespace siltlab {

namespace {

Matrix flatten_map(const RepMap& f) {
    const Field& fl = f.src.alg->field;
    int total = 0;
    for (const Matrix& m : f.f) total += m.rows() * m.cols();
    Matrix row(fl, 1, total);
    int pos = 0;
    for (const Matrix& m : f.f)
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) row.set(0, pos++, m.at(i, j));
    return row;
}

// Left multiplication by a as a map of right modules A -> A: the component
// from copy e_k A to copy e_l A is e_l a e_k, acting by left multiplication.
RepMap left_mult_map(const BasedAlgebra& alg, const AlgebraElem& a) {
    int nv = alg.num_vertices();
    TwoTermComplex t;
    t.alg = &alg;
    t.p1.resize(size_t(nv));
    t.p0.resize(size_t(nv));
    std::iota(t.p1.begin(), t.p1.end(), 0);
    std::iota(t.p0.begin(), t.p0.end(), 0);
    t.d.assign(size_t(nv), std::vector<AlgebraElem>(size_t(nv), alg.zero_elem()));
    for (int m = 0; m < alg.dim(); ++m) {
        if (a[size_t(m)] == alg.field.zero()) continue;
        int l = alg.mono_source(m), k = alg.mono_target(m);
        t.d[size_t(k)][size_t(l)][size_t(m)] = a[size_t(m)];
    }
    return realize_complex_map(t);
}

// Rep from a global right action: act(m) is the n x n matrix of the basis
// monomial m (row convention). Also returns the per-vertex basis rows.
struct ActionRep {
    Rep rep;
    std::vector<Matrix> rows;
};

ActionRep rep_from_action(const BasedAlgebra& alg, int n,
                          const std::function<Matrix(int)>& act) {
    ActionRep out;
    out.rep.alg = &alg;
    int total = 0;
    for (int v = 0; v < alg.num_vertices(); ++v) {
        out.rows.push_back(row_space(act(alg.idempotent_index(v))));
        out.rep.dims.push_back(out.rows.back().rows());
        total += out.rep.dims.back();
    }
    if (total != n) throw SiltError("idempotent actions do not decompose the space");
    for (size_t a = 0; a < alg.quiver.arrows.size(); ++a) {
        const Arrow& ar = alg.quiver.arrows[a];
        Matrix img = out.rows[size_t(ar.src)] * act(alg.arrow_basis_index(int(a)));
        Matrix coef;
        if (!solve_left(out.rows[size_t(ar.dst)], img, coef))
            throw SiltError("arrow action leaves its vertex space");
        out.rep.arr.push_back(coef);
    }
    return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    const Field& f = a.field();
    Matrix r(f, a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (a.at(i, j) == f.zero()) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    r.set(i * b.rows() + k, j * b.cols() + l, f.mul(a.at(i, j), b.at(k, l)));
        }
    return r;
}

// Global action of monomial m on X (block of monomial_action, zero elsewhere).
Matrix global_action(const Rep& x, int m) {
    const BasedAlgebra& alg = *x.alg;
    const Field& f = alg.field;
    int n = x.total_dim();
    std::vector<int> off(x.dims.size() + 1, 0);
    for (size_t v = 0; v < x.dims.size(); ++v) off[v + 1] = off[v] + x.dims[v];
    Matrix g(f, n, n);
    Matrix blk = monomial_action(x, m);
    int rs = off[size_t(alg.mono_source(m))], cs = off[size_t(alg.mono_target(m))];
    for (int i = 0; i < blk.rows(); ++i)
        for (int j = 0; j < blk.cols(); ++j) g.set(rs + i, cs + j, blk.at(i, j));
    return g;
}

AlgebraElem unit_row(const RingEpiPresentation& e, int m) {
    AlgebraElem r(size_t(e.b.dim));
    for (int k = 0; k < e.b.dim; ++k) r[size_t(k)] = e.unit.at(m, k);
    return r;
}

// Left multiplication by unit(m) on B as a dim_b x dim_b matrix.
Matrix left_unit_mult(const RingEpiPresentation& e, int m) {
    const Field& f = e.b.field;
    AlgebraElem um = unit_row(e, m);
    Matrix l(f, e.b.dim, e.b.dim);
    for (int j = 0; j < e.b.dim; ++j) {
        AlgebraElem bj(size_t(e.b.dim), f.zero());
        bj[size_t(j)] = f.one();
        AlgebraElem p = e.b.mult(um, bj);
        for (int k = 0; k < e.b.dim; ++k) l.set(j, k, p[size_t(k)]);
    }
    return l;
}

} // namespace

AlgebraElem StructAlgebra::mult(const AlgebraElem& x, const AlgebraElem& y) const {
    AlgebraElem r(size_t(dim), field.zero());
    for (int i = 0; i < dim; ++i) {
        if (x[size_t(i)] == field.zero()) continue;
        for (int j = 0; j < dim; ++j) {
            if (y[size_t(j)] == field.zero()) continue;
            Scalar c = field.mul(x[size_t(i)], y[size_t(j)]);
            const AlgebraElem& t = table[size_t(i)][size_t(j)];
            for (int k = 0; k < dim; ++k)
                if (t[size_t(k)] != field.zero())
                    r[size_t(k)] = field.add(r[size_t(k)], field.mul(c, t[size_t(k)]));
        }
    }
    return r;
}

std::string RingEpiFlags::first_failure() const {
    if (!is_ring_hom) return "unit is not a unital ring homomorphism";
    if (!is_epimorphism) return "multiplication B (x)_A B -> B is not bijective";
    if (!tor1_zero) return "Tor_1(B, B) != 0";
    if (!sigma_inverting) return "sigma1 (x)_A B is not bijective";
    if (!image_consistent) return "essential image disagrees with X_sigma1";
    return "";
}

Rep universal_extension(const Rep& m, const Rep& n) {
    const BasedAlgebra& alg = *m.alg;
    const Field& f = alg.field;
    Cover c = projective_cover(m);
    KernelCokernelImage kci = map_kernel_cokernel_image(c.map);
    const Rep& omega = kci.kernel;
    std::vector<RepMap> phis = hom_basis(omega, n);
    if (phis.empty()) return m;

    RepMap incl{omega, c.map.src, kci.kernel_rows};
    int width = flatten_map(phis[0]).cols();
    Matrix cur(f, 0, width);
    for (const RepMap& h : hom_basis(c.map.src, n))
        cur = Matrix::vstack(cur, flatten_map(compose(incl, h)));
    int r = cur.rows() == 0 ? 0 : rank(cur);
    std::vector<const RepMap*> chosen;
    for (const RepMap& phi : phis) {
        Matrix cand = Matrix::vstack(cur, flatten_map(phi));
        int r2 = rank(cand);
        if (r2 > r) {
            chosen.push_back(&phi);
            cur = std::move(cand);
            r = r2;
        }
    }
    if (chosen.empty()) return m;

    std::vector<const Rep*> parts{&c.map.src};
    for (size_t i = 0; i < chosen.size(); ++i) parts.push_back(&n);
    Rep big = direct_sum(alg, parts);
    RepMap u{omega, big, {}};
    for (size_t v = 0; v < omega.dims.size(); ++v) {
        Matrix row = kci.kernel_rows[v];
        for (const RepMap* phi : chosen) row = Matrix::hstack(row, phi->f[v]);
        u.f.push_back(std::move(row));
    }
    return map_kernel_cokernel_image(u).cokernel;
}

Rep wide_projective(const Rep& s, const std::vector<Rep>& semibrick, int tower_cap) {
    Rep p = s;
    for (int it = 0; it < tower_cap; ++it) {
        bool done = true;
        for (const Rep& t : semibrick)
            if (ext1_dim(p, t) > 0) {
                p = universal_extension(p, t);
                done = false;
            }
        if (done) return p;
    }
    throw TowerDiverged("extension tower still open after " + std::to_string(tower_cap) +
                        " rounds");
}

RingEpiPresentation ring_epi_from_node(const HasseDiagram& h, int node, int tower_cap,
                                       Rng& rng) {
    const ExchangeGraph& g = *h.graph;
    const SiltingPair& p = g.nodes[size_t(node)];
    const BasedAlgebra& alg = *p.module.alg;
    const Field& f = alg.field;

    RingEpiPresentation e;
    e.node = p;
    WidePredicate w = wide_subcategory(h, node, rng);
    e.sigma1 = w.sigma1;
    e.semibrick = w.semibrick;

    std::vector<Rep> projs;
    for (const Rep& s : w.semibrick) projs.push_back(wide_projective(s, w.semibrick, tower_cap));
    std::vector<int> all(size_t(alg.num_vertices()));
    std::iota(all.begin(), all.end(), 0);
    ProjReal areal = realize_projectives(alg, all);
    Rep u = projs.empty() ? zero_rep(alg) : direct_sum(alg, projs);
    ApproximationResult ar = left_add_approximation(areal.rep, u, true, rng);
    e.reflection_module = ar.map.tgt;

    std::vector<RepMap> hb = hom_basis(e.reflection_module, e.reflection_module);
    e.b.field = f;
    e.b.dim = int(hb.size());
    e.unit = Matrix(f, alg.dim(), e.b.dim);
    if (!hb.empty()) {
        Matrix stack(f, 0, flatten_map(hb[0]).cols());
        for (const RepMap& bi : hb) stack = Matrix::vstack(stack, flatten_map(bi));
        auto coords = [&](const RepMap& fm) {
            Matrix x;
            if (!solve_left(stack, flatten_map(fm), x))
                throw VerificationFailed("endomorphism outside its own basis");
            AlgebraElem r(size_t(e.b.dim));
            for (int k = 0; k < e.b.dim; ++k) r[size_t(k)] = x.at(0, k);
            return r;
        };
        // B = End^op: b_i * b_j applies b_j first
        e.b.table.assign(size_t(e.b.dim), std::vector<AlgebraElem>());
        for (int i = 0; i < e.b.dim; ++i)
            for (int j = 0; j < e.b.dim; ++j)
                e.b.table[size_t(i)].push_back(
                    coords(compose(hb[size_t(j)], hb[size_t(i)])));
        e.b.one = coords(identity_map(e.reflection_module));
        // unit transport: g_m with unit . g_m = lambda_m . unit
        Matrix after(f, 0, flatten_map(compose(ar.map, hb[0])).cols());
        for (const RepMap& bi : hb) after = Matrix::vstack(after, flatten_map(compose(ar.map, bi)));
        for (int m = 0; m < alg.dim(); ++m) {
            RepMap lam = left_mult_map(alg, alg.basis_elem(m));
            Matrix x;
            if (!solve_left(after, flatten_map(compose(lam, ar.map)), x))
                throw VerificationFailed("left multiplication does not transport to B");
            for (int k = 0; k < e.b.dim; ++k) e.unit.set(m, k, x.at(0, k));
        }
    }

    // default sample pool for the essential-image clause
    StandardModules sm = standard_modules(alg);
    std::vector<Rep> samples;
    samples.push_back(zero_rep(alg));
    for (const Rep& s : sm.simple) samples.push_back(s);
    for (const Rep& pr : sm.proj) samples.push_back(pr);
    for (const Rep& i : sm.inj) samples.push_back(i);
    samples.push_back(regular_rep(alg));
    for (const Rep& s : w.semibrick) samples.push_back(s);

    e.flags = verify_ring_epi(e, samples, rng);
    if (!e.flags.all())
        throw VerificationFailed("ring epimorphism verification failed at node " + p.key() +
                                 ": " + e.flags.first_failure());
    return e;
}

RingEpiFlags verify_ring_epi(const RingEpiPresentation& e, const std::vector<Rep>& samples,
                             Rng& rng) {
    (void)rng;
    const BasedAlgebra& alg = *e.node.module.alg;
    const Field& f = alg.field;
    RingEpiFlags fl;
    fl.dim_b = e.b.dim;

    // unital ring homomorphism on the A-basis
    fl.is_ring_hom = true;
    AlgebraElem one_img(size_t(e.b.dim), f.zero());
    for (int v = 0; v < alg.num_vertices(); ++v) {
        AlgebraElem r = unit_row(e, alg.idempotent_index(v));
        for (int k = 0; k < e.b.dim; ++k) one_img[size_t(k)] = f.add(one_img[size_t(k)], r[size_t(k)]);
    }
    if (one_img != e.b.one) fl.is_ring_hom = false;
    for (int i = 0; fl.is_ring_hom && i < alg.dim(); ++i)
        for (int j = 0; fl.is_ring_hom && j < alg.dim(); ++j) {
            const AlgebraElem& prod = alg.table_entry(i, j);
            AlgebraElem lhs(size_t(e.b.dim), f.zero());
            for (int m = 0; m < alg.dim(); ++m) {
                if (prod[size_t(m)] == f.zero()) continue;
                for (int k = 0; k < e.b.dim; ++k)
                    lhs[size_t(k)] =
                        f.add(lhs[size_t(k)], f.mul(prod[size_t(m)], e.unit.at(m, k)));
            }
            if (lhs != e.b.mult(unit_row(e, i), unit_row(e, j))) fl.is_ring_hom = false;
        }

    // B as a right A-module and as a left A-module (right module over A^op)
    if (e.b.dim == 0) {
        fl.is_epimorphism = true;
        fl.tor1_zero = true;
        fl.sigma_inverting = true;
    } else {
        auto bmat = [&](const std::function<AlgebraElem(const AlgebraElem&)>& act) {
            Matrix r(f, e.b.dim, e.b.dim);
            for (int j = 0; j < e.b.dim; ++j) {
                AlgebraElem bj(size_t(e.b.dim), f.zero());
                bj[size_t(j)] = f.one();
                AlgebraElem p = act(bj);
                for (int k = 0; k < e.b.dim; ++k) r.set(j, k, p[size_t(k)]);
            }
            return r;
        };
        ActionRep br = rep_from_action(alg, e.b.dim, [&](int m) {
            return bmat([&](const AlgebraElem& b) { return e.b.mult(b, unit_row(e, m)); });
        });
        BasedAlgebra op = opposite_algebra(alg);
        // basis monomial i of A^op is monomial i of A with the word reversed
        ActionRep bl = rep_from_action(op, e.b.dim, [&](int m) {
            return bmat([&](const AlgebraElem& b) { return e.b.mult(unit_row(e, m), b); });
        });
        auto [tdim, tor1] = tensor_and_tor1(br.rep, bl.rep);
        fl.is_epimorphism = tdim == e.b.dim; // multiplication is a unital surjection
        fl.tor1_zero = tor1 == 0;
        Matrix sb = tensor_complex_with_left(e.sigma1, bl.rep);
        fl.sigma_inverting = sb.rows() == sb.cols() && (sb.rows() == 0 || rank(sb) == sb.rows());
    }

    fl.image_consistent = true;
    for (const Rep& x : samples)
        if (x_sigma_membership(e.sigma1, x) != factors_through_unit(e, x))
            fl.image_consistent = false;
    return fl;
}

bool factors_through_unit(const RingEpiPresentation& e, const Rep& x) {
    const BasedAlgebra& alg = *x.alg;
    const Field& f = alg.field;
    int n = x.total_dim(), d = e.b.dim;
    if (n == 0) return true;
    if (d == 0) return false;
    // X (x)_A B as a quotient of X (x)_K B; bijectivity of x -> x (x) 1
    Matrix idn = Matrix::identity(f, n), idd = Matrix::identity(f, d);
    Matrix rel(f, 0, n * d);
    for (int m = 0; m < alg.dim(); ++m) {
        Matrix g = kron(global_action(x, m), idd) - kron(idn, left_unit_mult(e, m));
        rel = Matrix::vstack(rel, g);
    }
    Matrix relb = row_space(rel);
    if (n * d - relb.rows() != n) return false;
    Matrix nat(f, n, n * d);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < d; ++k) nat.set(i, i * d + k, e.b.one[size_t(k)]);
    return rank(Matrix::vstack(relb, nat)) == relb.rows() + n;
}

bool diagram_commutes(const RingEpiPresentation& e, const std::vector<Rep>& samples,
                      Rng& rng) {
    for (const Rep& x : samples)
        if (factors_through_unit(e, x) != a_map_membership(e.node, x, rng)) return false;
    return true;
}

std::vector<CensusRow> epiclass_census(const ExchangeGraph& g, int tower_cap, Rng& rng) {
    HasseDiagram h = hasse(g, rng);
    std::vector<CensusRow> rows;
    std::vector<std::vector<Rep>> bricks;
    for (size_t v = 0; v < g.nodes.size(); ++v) {
        RingEpiPresentation e = ring_epi_from_node(h, int(v), tower_cap, rng);
        CensusRow r;
        r.node = int(v);
        r.dim_b = e.b.dim;
        for (const Rep& s : e.semibrick) r.semibrick_dims.push_back(s.dimvec_str());
        r.flags = e.flags;
        // pairwise inequivalence: semibricks differ as multisets up to iso
        for (const auto& prev : bricks) {
            if (prev.size() != e.semibrick.size()) continue;
            std::vector<bool> used(prev.size(), false);
            bool same = true;
            for (const Rep& s : e.semibrick) {
                bool hit = false;
                for (size_t i = 0; i < prev.size(); ++i)
                    if (!used[i] && is_isomorphic(s, prev[i], rng)) {
                        used[i] = true;
                        hit = true;
                        break;
                    }
                same = same && hit;
            }
            if (same)
                throw VerificationFailed("two census nodes share a semibrick: node " +
                                         std::to_string(r.node));
        }
        bricks.push_back(e.semibrick);
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace siltlab
