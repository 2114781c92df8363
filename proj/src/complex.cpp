#include "siltlab/complex.hpp"

#include <algorithm>

namespace siltlab {

bool TwoTermComplex::entries_in_radical() const {
    int n = alg->num_vertices();
    for (const auto& row : d)
        for (const auto& e : row)
            for (int v = 0; v < n; ++v)
                if (e[size_t(v)] != 0) return false;
    return true;
}

TwoTermComplex stalk_p0(const BasedAlgebra& alg, const std::vector<int>& copies) {
    TwoTermComplex s;
    s.alg = &alg;
    s.p0 = copies;
    return s;
}

TwoTermComplex stalk_p1(const BasedAlgebra& alg, const std::vector<int>& copies) {
    TwoTermComplex s;
    s.alg = &alg;
    s.p1 = copies;
    for (size_t k = 0; k < copies.size(); ++k) s.d.push_back({});
    return s;
}

TwoTermComplex complex_direct_sum(const TwoTermComplex& a, const TwoTermComplex& b) {
    const BasedAlgebra& alg = *a.alg;
    TwoTermComplex s;
    s.alg = &alg;
    s.p1 = a.p1;
    s.p1.insert(s.p1.end(), b.p1.begin(), b.p1.end());
    s.p0 = a.p0;
    s.p0.insert(s.p0.end(), b.p0.begin(), b.p0.end());
    for (size_t k = 0; k < s.p1.size(); ++k) {
        std::vector<AlgebraElem> row;
        for (size_t l = 0; l < s.p0.size(); ++l) {
            bool in_a = k < a.p1.size() && l < a.p0.size();
            bool in_b = k >= a.p1.size() && l >= a.p0.size();
            if (in_a)
                row.push_back(a.d[k][l]);
            else if (in_b)
                row.push_back(b.d[k - a.p1.size()][l - a.p0.size()]);
            else
                row.push_back(alg.zero_elem());
        }
        s.d.push_back(std::move(row));
    }
    return s;
}

ProjReal realize_projectives(const BasedAlgebra& alg, const std::vector<int>& copies) {
    ProjReal pr;
    pr.copies = copies;
    int n = alg.num_vertices();
    pr.rep = zero_rep(alg);
    for (size_t c = 0; c < copies.size(); ++c) {
        std::vector<int> off(size_t(n), 0);
        for (int w = 0; w < n; ++w) {
            off[size_t(w)] = pr.rep.dims[size_t(w)];
            pr.rep.dims[size_t(w)] += int(alg.peirce(copies[c], w).size());
        }
        pr.off.push_back(std::move(off));
    }
    for (size_t a = 0; a < alg.quiver.arrows.size(); ++a) {
        const auto& ar = alg.quiver.arrows[a];
        Matrix m(alg.field, pr.rep.dims[size_t(ar.src)], pr.rep.dims[size_t(ar.dst)]);
        int aidx = alg.arrow_basis_index(int(a));
        for (size_t c = 0; c < copies.size(); ++c) {
            auto rows_b = alg.peirce(copies[c], ar.src);
            auto cols_b = alg.peirce(copies[c], ar.dst);
            for (size_t r = 0; r < rows_b.size(); ++r) {
                const AlgebraElem& prod = alg.table_entry(rows_b[r], aidx);
                for (size_t cc = 0; cc < cols_b.size(); ++cc)
                    m.set(pr.off[c][size_t(ar.src)] + int(r), pr.off[c][size_t(ar.dst)] + int(cc),
                          prod[size_t(cols_b[cc])]);
            }
        }
        pr.rep.arr[a] = std::move(m);
    }
    return pr;
}

InjReal realize_injectives(const BasedAlgebra& alg, const std::vector<int>& copies) {
    InjReal ir;
    ir.copies = copies;
    int n = alg.num_vertices();
    ir.rep = zero_rep(alg);
    for (size_t c = 0; c < copies.size(); ++c) {
        std::vector<int> off(size_t(n), 0);
        for (int w = 0; w < n; ++w) {
            off[size_t(w)] = ir.rep.dims[size_t(w)];
            ir.rep.dims[size_t(w)] += int(alg.peirce(w, copies[c]).size());
        }
        ir.off.push_back(std::move(off));
    }
    for (size_t a = 0; a < alg.quiver.arrows.size(); ++a) {
        const auto& ar = alg.quiver.arrows[a];
        Matrix m(alg.field, ir.rep.dims[size_t(ar.src)], ir.rep.dims[size_t(ar.dst)]);
        int aidx = alg.arrow_basis_index(int(a));
        for (size_t c = 0; c < copies.size(); ++c) {
            auto rows_b = alg.peirce(ar.src, copies[c]);
            auto cols_b = alg.peirce(ar.dst, copies[c]);
            for (size_t cc = 0; cc < cols_b.size(); ++cc) {
                const AlgebraElem& prod = alg.table_entry(aidx, cols_b[cc]);
                for (size_t r = 0; r < rows_b.size(); ++r)
                    m.set(ir.off[c][size_t(ar.src)] + int(r), ir.off[c][size_t(ar.dst)] + int(cc),
                          prod[size_t(rows_b[r])]);
            }
        }
        ir.rep.arr[a] = std::move(m);
    }
    return ir;
}

RepMap realize_complex_map(const TwoTermComplex& s) {
    const BasedAlgebra& alg = *s.alg;
    ProjReal d1 = realize_projectives(alg, s.p1);
    ProjReal d0 = realize_projectives(alg, s.p0);
    RepMap f;
    f.src = d1.rep;
    f.tgt = d0.rep;
    int n = alg.num_vertices();
    for (int w = 0; w < n; ++w) {
        Matrix m(alg.field, d1.rep.dims[size_t(w)], d0.rep.dims[size_t(w)]);
        for (size_t k = 0; k < s.p1.size(); ++k) {
            auto rows_b = alg.peirce(s.p1[k], w);
            for (size_t l = 0; l < s.p0.size(); ++l) {
                const AlgebraElem& x = s.d[k][l];
                if (elem_is_zero(x)) continue;
                auto cols_b = alg.peirce(s.p0[l], w);
                for (size_t r = 0; r < rows_b.size(); ++r) {
                    AlgebraElem prod = multiply(alg, x, alg.basis_elem(rows_b[r]));
                    for (size_t cc = 0; cc < cols_b.size(); ++cc)
                        m.set(d1.off[k][size_t(w)] + int(r), d0.off[l][size_t(w)] + int(cc),
                              prod[size_t(cols_b[cc])]);
                }
            }
        }
        f.f.push_back(std::move(m));
    }
    return f;
}

Rep complex_h0(const TwoTermComplex& s) {
    RepMap f = realize_complex_map(s);
    return map_kernel_cokernel_image(f).cokernel;
}

Cover projective_cover(const Rep& m) {
    const BasedAlgebra& alg = *m.alg;
    const Field& fl = alg.field;
    int n = alg.num_vertices();
    Cover c;
    // top complements: per vertex, standard basis vectors completing the
    // radical row space M * rad
    std::vector<std::vector<int>> gens((size_t)n);
    for (int j = 0; j < n; ++j) {
        Matrix rad(fl, 0, m.dims[size_t(j)]);
        for (size_t a = 0; a < alg.quiver.arrows.size(); ++a)
            if (alg.quiver.arrows[a].dst == j) rad = Matrix::vstack(rad, m.arr[a]);
        Rref rr = rref(rad);
        std::vector<bool> piv(size_t(m.dims[size_t(j)]), false);
        for (int p : rr.pivots) piv[size_t(p)] = true;
        for (int col = 0; col < m.dims[size_t(j)]; ++col)
            if (!piv[size_t(col)]) {
                c.copies.push_back(j);
                gens[size_t(j)].push_back(col);
            }
    }
    ProjReal pr = realize_projectives(alg, c.copies);
    RepMap g;
    g.src = pr.rep;
    g.tgt = m;
    for (int w = 0; w < n; ++w) {
        Matrix fm(fl, pr.rep.dims[size_t(w)], m.dims[size_t(w)]);
        int copy = 0;
        for (int j = 0; j < n; ++j)
            for (int col : gens[size_t(j)]) {
                auto mons = alg.peirce(j, w);
                for (size_t r = 0; r < mons.size(); ++r) {
                    Matrix act = monomial_action(m, mons[r]); // M_j -> M_w
                    for (int cc = 0; cc < m.dims[size_t(w)]; ++cc)
                        fm.set(pr.off[size_t(copy)][size_t(w)] + int(r), cc, act.at(col, cc));
                }
                ++copy;
            }
        g.f.push_back(std::move(fm));
    }
    c.map = std::move(g);
    return c;
}

std::vector<std::vector<AlgebraElem>> entries_of_proj_map(const ProjReal& dom,
                                                          const ProjReal& cod,
                                                          const RepMap& f) {
    const BasedAlgebra& alg = *dom.rep.alg;
    std::vector<std::vector<AlgebraElem>> d;
    for (size_t k = 0; k < dom.copies.size(); ++k) {
        int u = dom.copies[k];
        auto mons_u = alg.peirce(u, u);
        int pos = -1;
        for (size_t i = 0; i < mons_u.size(); ++i)
            if (mons_u[i] == alg.idempotent_index(u)) pos = int(i);
        if (pos < 0) throw SiltError("idempotent generator not found");
        int row = dom.off[k][size_t(u)] + pos;
        std::vector<AlgebraElem> drow;
        for (size_t l = 0; l < cod.copies.size(); ++l) {
            int v = cod.copies[l];
            auto mons = alg.peirce(v, u);
            AlgebraElem e = alg.zero_elem();
            for (size_t i = 0; i < mons.size(); ++i)
                e[size_t(mons[i])] = f.f[size_t(u)].at(row, cod.off[l][size_t(u)] + int(i));
            drow.push_back(std::move(e));
        }
        d.push_back(std::move(drow));
    }
    return d;
}

namespace {

TwoTermComplex presentation_internal(const Rep& m, Rep* syzygy_out) {
    const BasedAlgebra& alg = *m.alg;
    Cover c0 = projective_cover(m);
    auto kci = map_kernel_cokernel_image(c0.map);
    if (!kci.cokernel.is_zero()) throw SiltError("projective cover not surjective");
    Rep& k = kci.kernel;
    Cover c1 = projective_cover(k);
    // composite P1 -> K -> P0
    RepMap incl;
    incl.src = k;
    incl.tgt = c0.map.src;
    incl.f = kci.kernel_rows;
    RepMap comp = compose(c1.map, incl);
    ProjReal d1 = realize_projectives(alg, c1.copies);
    ProjReal d0 = realize_projectives(alg, c0.copies);
    TwoTermComplex s;
    s.alg = &alg;
    s.p1 = c1.copies;
    s.p0 = c0.copies;
    s.d = entries_of_proj_map(d1, d0, comp);
    if (syzygy_out) *syzygy_out = k;
    return s;
}

} // namespace

TwoTermComplex min_proj_presentation(const Rep& m) { return presentation_internal(m, nullptr); }

Rep tau(const Rep& m) {
    const BasedAlgebra& alg = *m.alg;
    TwoTermComplex s = min_proj_presentation(m);
    InjReal i1 = realize_injectives(alg, s.p1);
    InjReal i0 = realize_injectives(alg, s.p0);
    int n = alg.num_vertices();
    RepMap nu;
    nu.src = i1.rep;
    nu.tgt = i0.rep;
    for (int w = 0; w < n; ++w) {
        Matrix mm(alg.field, i1.rep.dims[size_t(w)], i0.rep.dims[size_t(w)]);
        for (size_t k = 0; k < s.p1.size(); ++k) {
            int u = s.p1[k];
            auto rows_b = alg.peirce(w, u);
            for (size_t l = 0; l < s.p0.size(); ++l) {
                int v = s.p0[l];
                const AlgebraElem& x = s.d[k][l];
                if (elem_is_zero(x)) continue;
                auto cols_b = alg.peirce(w, v);
                for (size_t cc = 0; cc < cols_b.size(); ++cc) {
                    // nu(phi_x): f -> f(- * x); matrix entry = coeff_m(n * x)
                    AlgebraElem prod = multiply(alg, alg.basis_elem(cols_b[cc]), x);
                    for (size_t r = 0; r < rows_b.size(); ++r)
                        mm.set(i1.off[k][size_t(w)] + int(r), i0.off[l][size_t(w)] + int(cc),
                               prod[size_t(rows_b[r])]);
                }
            }
        }
        nu.f.push_back(std::move(mm));
    }
    std::vector<Matrix> krows;
    for (int w = 0; w < n; ++w) krows.push_back(left_kernel(nu.f[size_t(w)]));
    return sub_rep(i1.rep, krows).rep;
}

int ext1_dim(const Rep& m, const Rep& n) {
    Cover c0 = projective_cover(m);
    auto kci = map_kernel_cokernel_image(c0.map);
    Rep& k = kci.kernel;
    int homk = hom_dim(k, n);
    if (homk == 0) return 0;
    RepMap incl;
    incl.src = k;
    incl.tgt = c0.map.src;
    incl.f = kci.kernel_rows;
    // restriction image: Hom(P0, N) -> Hom(K, N)
    const Field& fl = m.alg->field;
    auto homs0 = hom_basis(c0.map.src, n);
    int flatdim = 0;
    for (size_t v = 0; v < k.dims.size(); ++v) flatdim += k.dims[v] * n.dims[v];
    Matrix stack(fl, 0, flatdim);
    for (const auto& h : homs0) {
        RepMap r = compose(incl, h);
        Matrix row(fl, 1, flatdim);
        int pos = 0;
        for (size_t v = 0; v < r.f.size(); ++v)
            for (int i = 0; i < r.f[v].rows(); ++i)
                for (int j = 0; j < r.f[v].cols(); ++j) row.set(0, pos++, r.f[v].at(i, j));
        stack = Matrix::vstack(stack, row);
    }
    return homk - rank(stack);
}

Matrix tensor_complex_with_left(const TwoTermComplex& s, const Rep& n_op) {
    const BasedAlgebra& alg = *s.alg;
    const Field& fl = alg.field;
    std::vector<int> roff(s.p1.size() + 1, 0), coff(s.p0.size() + 1, 0);
    for (size_t k = 0; k < s.p1.size(); ++k)
        roff[k + 1] = roff[k] + n_op.dims[size_t(s.p1[k])];
    for (size_t l = 0; l < s.p0.size(); ++l)
        coff[l + 1] = coff[l] + n_op.dims[size_t(s.p0[l])];
    Matrix m(fl, roff[s.p1.size()], coff[s.p0.size()]);
    for (size_t k = 0; k < s.p1.size(); ++k)
        for (size_t l = 0; l < s.p0.size(); ++l) {
            const AlgebraElem& x = s.d[k][l];
            if (elem_is_zero(x)) continue;
            // x ∈ e_{p0[l]} A e_{p1[k]}: left action N_{p1[k]} -> N_{p0[l]},
            // an op-algebra action component from p1[k] to p0[l]
            Matrix blk = elem_action(n_op, x, s.p1[k], s.p0[l]);
            for (int r = 0; r < blk.rows(); ++r)
                for (int c = 0; c < blk.cols(); ++c) m.set(roff[k] + r, coff[l] + c, blk.at(r, c));
        }
    return m;
}

std::pair<int, int> tensor_and_tor1(const Rep& m, const Rep& n_op) {
    const BasedAlgebra& alg = *m.alg;
    const Field& fl = alg.field;
    int nv = alg.num_vertices();
    // M ⊗_A N as (⊕_v M_v ⊗ N_v) / <ma ⊗ n - m ⊗ an>
    std::vector<int> off(size_t(nv) + 1, 0);
    for (int v = 0; v < nv; ++v)
        off[size_t(v) + 1] = off[size_t(v)] + m.dims[size_t(v)] * n_op.dims[size_t(v)];
    int D = off[size_t(nv)];
    Matrix rel(fl, 0, D);
    for (size_t a = 0; a < alg.quiver.arrows.size(); ++a) {
        const auto& ar = alg.quiver.arrows[a];
        int i = ar.src, j = ar.dst;
        AlgebraElem ax = alg.basis_elem(alg.arrow_basis_index(int(a)));
        Matrix la = elem_action(n_op, ax, j, i); // left action N_j -> N_i
        for (int r = 0; r < m.dims[size_t(i)]; ++r)
            for (int t = 0; t < n_op.dims[size_t(j)]; ++t) {
                Matrix row(fl, 1, D);
                for (int sidx = 0; sidx < m.dims[size_t(j)]; ++sidx) {
                    int pos = off[size_t(j)] + sidx * n_op.dims[size_t(j)] + t;
                    row.set(0, pos, fl.add(row.at(0, pos), m.arr[a].at(r, sidx)));
                }
                for (int sp = 0; sp < n_op.dims[size_t(i)]; ++sp) {
                    int pos = off[size_t(i)] + r * n_op.dims[size_t(i)] + sp;
                    row.set(0, pos, fl.sub(row.at(0, pos), la.at(t, sp)));
                }
                if (!row.is_zero()) rel = Matrix::vstack(rel, row);
            }
    }
    int tensor_dim = D - rank(rel);

    if (m.is_zero() || n_op.is_zero()) return {tensor_dim, 0};
    Rep syz = zero_rep(alg);
    TwoTermComplex s1 = presentation_internal(m, &syz);
    TwoTermComplex s2 = presentation_internal(syz, nullptr);
    Matrix t1 = tensor_complex_with_left(s1, n_op);
    Matrix t2 = tensor_complex_with_left(s2, n_op);
    int nullity1 = t1.rows() - rank(t1);
    int tor1 = nullity1 - rank(t2);
    if (tor1 < 0) throw SiltError("Tor computation inconsistent");
    return {tensor_dim, tor1};
}

} // namespace siltlab
