#include "siltlab/approx.hpp"

#include <algorithm>

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

std::vector<Rep> distinct_indecs(const Rep& u, Rng& rng) {
    std::vector<Rep> parts = decompose(u, rng);
    std::vector<Rep> out;
    for (Rep& p : parts) {
        bool seen = false;
        for (const Rep& q : out)
            if (is_isomorphic(p, q, rng)) seen = true;
        if (!seen) out.push_back(std::move(p));
    }
    return out;
}

struct Block {
    int indec = 0;            // index into the indec list
    std::vector<Matrix> cols; // per vertex: X_v -> (U_i)_v component
};

RepMap assemble(const Rep& x, const std::vector<Rep>& indecs, const std::vector<Block>& blocks) {
    const BasedAlgebra& alg = *x.alg;
    std::vector<Rep> parts;
    for (const Block& b : blocks) parts.push_back(indecs[size_t(b.indec)]);
    RepMap f;
    f.src = x;
    f.tgt = direct_sum(alg, parts);
    for (int v = 0; v < alg.num_vertices(); ++v) {
        Matrix m(alg.field, x.dims[size_t(v)], f.tgt.dims[size_t(v)]);
        int off = 0;
        for (const Block& b : blocks) {
            const Matrix& c = b.cols[size_t(v)];
            for (int i = 0; i < c.rows(); ++i)
                for (int j = 0; j < c.cols(); ++j) m.set(i, off + j, c.at(i, j));
            off += c.cols();
        }
        f.f.push_back(std::move(m));
    }
    return f;
}

} // namespace

bool is_left_approximation(const RepMap& f, const std::vector<Rep>& u_indecs) {
    const Field& fl = f.src.alg->field;
    for (const Rep& ui : u_indecs) {
        int want = hom_dim(f.src, ui);
        if (want == 0) continue;
        Matrix stack(fl, 0, 0);
        for (const RepMap& g : hom_basis(f.tgt, ui)) {
            Matrix row = flatten_map(compose(f, g));
            stack = stack.rows() == 0 && stack.cols() == 0 ? row : Matrix::vstack(stack, row);
        }
        if (stack.rows() == 0 || rank(stack) < want) return false;
    }
    return true;
}

ApproximationResult left_add_approximation(const Rep& x, const Rep& u, bool minimal, Rng& rng) {
    const BasedAlgebra& alg = *x.alg;
    std::vector<Rep> indecs = u.is_zero() ? std::vector<Rep>{} : distinct_indecs(u, rng);
    std::vector<Block> blocks;
    for (size_t i = 0; i < indecs.size(); ++i)
        for (const RepMap& h : hom_basis(x, indecs[i])) blocks.push_back({int(i), h.f});
    RepMap f = assemble(x, indecs, blocks);
    if (minimal) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t b = 0; b < blocks.size(); ++b) {
                std::vector<Block> fewer = blocks;
                fewer.erase(fewer.begin() + long(b));
                RepMap g = assemble(x, indecs, fewer);
                if (is_left_approximation(g, indecs)) {
                    blocks = std::move(fewer);
                    f = std::move(g);
                    changed = true;
                    break;
                }
            }
        }
    }
    ApproximationResult res;
    res.cokernel = map_kernel_cokernel_image(f).cokernel;
    res.map = std::move(f);
    res.minimal = minimal;
    return res;
}

namespace {

// Inverse of x in the Peirce corner e_wAe_w, assuming the trivial-path
// coefficient is nonzero (so x = c.e_w + nilpotent).
AlgebraElem corner_inverse(const BasedAlgebra& alg, const AlgebraElem& x, int w) {
    const Field& fl = alg.field;
    Scalar c = x[size_t(alg.idempotent_index(w))];
    AlgebraElem ew = alg.basis_elem(alg.idempotent_index(w));
    // y = e_w - x/c is nilpotent; inv = (1/c) sum y^m
    AlgebraElem y = elem_sub(alg, ew, elem_scaled(alg, x, fl.inv(c)));
    AlgebraElem acc = ew, pw = ew;
    for (int m = 1; m < alg.nilpotency; ++m) {
        pw = multiply(alg, pw, y);
        if (elem_is_zero(pw)) break;
        acc = elem_add(alg, acc, pw);
    }
    AlgebraElem inv = elem_scaled(alg, acc, fl.inv(c));
    if (multiply(alg, x, inv) != ew || multiply(alg, inv, x) != ew)
        throw SiltError("corner inverse failed");
    return inv;
}

} // namespace

TwoTermComplex prune_contractibles(const TwoTermComplex& s) {
    const BasedAlgebra& alg = *s.alg;
    TwoTermComplex t = s;
    for (;;) {
        int pk = -1, pl = -1;
        for (size_t k = 0; k < t.p1.size() && pk < 0; ++k)
            for (size_t l = 0; l < t.p0.size() && pk < 0; ++l)
                if (t.p1[k] == t.p0[l] &&
                    t.d[k][l][size_t(alg.idempotent_index(t.p1[k]))] != 0) {
                    pk = int(k);
                    pl = int(l);
                }
        if (pk < 0) return t;
        int w = t.p1[size_t(pk)];
        AlgebraElem inv = corner_inverse(alg, t.d[size_t(pk)][size_t(pl)], w);
        TwoTermComplex nx;
        nx.alg = t.alg;
        for (size_t k = 0; k < t.p1.size(); ++k)
            if (int(k) != pk) nx.p1.push_back(t.p1[k]);
        for (size_t l = 0; l < t.p0.size(); ++l)
            if (int(l) != pl) nx.p0.push_back(t.p0[l]);
        for (size_t k = 0; k < t.p1.size(); ++k) {
            if (int(k) == pk) continue;
            std::vector<AlgebraElem> row;
            AlgebraElem left = multiply(alg, inv, t.d[k][size_t(pl)]); // P_{u_k} -> P_w
            for (size_t l = 0; l < t.p0.size(); ++l) {
                if (int(l) == pl) continue;
                AlgebraElem corr = multiply(alg, t.d[size_t(pk)][l], left);
                row.push_back(elem_sub(alg, t.d[k][l], corr));
            }
            nx.d.push_back(std::move(row));
        }
        t = std::move(nx);
    }
}

TwoTermComplex cone_presentation(const std::vector<int>& src_copies, const RepMap& f,
                                 const TwoTermComplex& sigma0) {
    const BasedAlgebra& alg = *sigma0.alg;
    Cover c = projective_cover(f.tgt);
    if (c.copies != sigma0.p0)
        throw LiftFailure("presentation does not match the canonical cover of the target");
    ProjReal xpr = realize_projectives(alg, src_copies);
    if (xpr.rep.dims != f.src.dims)
        throw LiftFailure("source is not the stated sum of projectives");
    ProjReal d0pr = realize_projectives(alg, sigma0.p0);
    // lift f through the cover: g with g . cover = f
    std::vector<RepMap> hb = hom_basis(xpr.rep, d0pr.rep);
    const Field& fl = alg.field;
    Matrix stack(fl, 0, 0);
    for (const RepMap& h : hb) {
        Matrix row = flatten_map(compose(h, c.map));
        stack = stack.rows() == 0 && stack.cols() == 0 ? row : Matrix::vstack(stack, row);
    }
    Matrix b = flatten_map(f);
    Matrix lam(fl, 1, int(hb.size()));
    if (stack.rows() == 0) {
        if (!b.is_zero()) throw LiftFailure("no homs to lift through");
    } else if (!solve_left(stack, b, lam)) {
        throw LiftFailure("chain lifting system inconsistent");
    }
    RepMap g = zero_map(xpr.rep, d0pr.rep);
    for (size_t i = 0; i < hb.size(); ++i)
        for (size_t v = 0; v < g.f.size(); ++v)
            g.f[v] = g.f[v] + hb[i].f[v].scaled(lam.at(0, int(i)));
    std::vector<std::vector<AlgebraElem>> gent = entries_of_proj_map(xpr, d0pr, g);
    TwoTermComplex cone;
    cone.alg = &alg;
    cone.p1 = sigma0.p1;
    cone.p1.insert(cone.p1.end(), src_copies.begin(), src_copies.end());
    cone.p0 = sigma0.p0;
    cone.d = sigma0.d;
    for (auto& row : gent) cone.d.push_back(std::move(row));
    return prune_contractibles(cone);
}

int hom_shift1_dim(const TwoTermComplex& sigma, const TwoTermComplex& tau) {
    const BasedAlgebra& alg = *sigma.alg;
    const Field& fl = alg.field;
    // raw chain maps sigma -> tau[1] are arbitrary entry matrices
    // h[k][m] in e_{tau.p0[m]} A e_{sigma.p1[k]}
    std::vector<std::vector<int>> hoff(sigma.p1.size(),
                                       std::vector<int>(tau.p0.size() + 1, 0));
    int total = 0;
    for (size_t k = 0; k < sigma.p1.size(); ++k)
        for (size_t m = 0; m < tau.p0.size(); ++m) {
            hoff[k][m] = total;
            total += int(alg.peirce(tau.p0[m], sigma.p1[k]).size());
        }
    if (total == 0) return 0;
    auto flatten_h = [&](const std::vector<std::vector<AlgebraElem>>& h) {
        Matrix row(fl, 1, total);
        for (size_t k = 0; k < sigma.p1.size(); ++k)
            for (size_t m = 0; m < tau.p0.size(); ++m) {
                auto mons = alg.peirce(tau.p0[m], sigma.p1[k]);
                for (size_t i = 0; i < mons.size(); ++i)
                    row.set(0, hoff[k][m] + int(i), h[k][m][size_t(mons[i])]);
            }
        return row;
    };
    std::vector<std::vector<AlgebraElem>> h(
        sigma.p1.size(), std::vector<AlgebraElem>(tau.p0.size(), alg.zero_elem()));
    Matrix stack(fl, 0, total);
    // homotopies s0: sigma.P0 -> tau.P0, image h[k][m] = sum_l s0[l][m] d_sigma[k][l]
    for (size_t l = 0; l < sigma.p0.size(); ++l)
        for (size_t m = 0; m < tau.p0.size(); ++m)
            for (int mono : alg.peirce(tau.p0[m], sigma.p0[l])) {
                AlgebraElem s = alg.basis_elem(mono);
                for (size_t k = 0; k < sigma.p1.size(); ++k)
                    for (auto& e : h[k]) std::fill(e.begin(), e.end(), Scalar(0));
                for (size_t k = 0; k < sigma.p1.size(); ++k)
                    h[k][m] = multiply(alg, s, sigma.d[k][l]);
                stack = Matrix::vstack(stack, flatten_h(h));
            }
    // homotopies s1: sigma.P1 -> tau.P1, image h[k][m] = sum_j d_tau[j][m] s1[k][j]
    for (size_t k = 0; k < sigma.p1.size(); ++k)
        for (size_t j = 0; j < tau.p1.size(); ++j)
            for (int mono : alg.peirce(tau.p1[j], sigma.p1[k])) {
                AlgebraElem s = alg.basis_elem(mono);
                for (size_t kk = 0; kk < sigma.p1.size(); ++kk)
                    for (auto& e : h[kk]) std::fill(e.begin(), e.end(), Scalar(0));
                for (size_t m = 0; m < tau.p0.size(); ++m)
                    h[k][m] = multiply(alg, tau.d[j][m], s);
                stack = Matrix::vstack(stack, flatten_h(h));
            }
    return total - rank(stack);
}

bool is_presilting(const TwoTermComplex& sigma) { return hom_shift1_dim(sigma, sigma) == 0; }

bool d_sigma_membership(const TwoTermComplex& sigma, const Rep& x) {
    const BasedAlgebra& alg = *sigma.alg;
    const Field& fl = alg.field;
    std::vector<int> roff(sigma.p0.size() + 1, 0), coff(sigma.p1.size() + 1, 0);
    for (size_t l = 0; l < sigma.p0.size(); ++l)
        roff[l + 1] = roff[l] + x.dims[size_t(sigma.p0[l])];
    for (size_t k = 0; k < sigma.p1.size(); ++k)
        coff[k + 1] = coff[k] + x.dims[size_t(sigma.p1[k])];
    if (coff[sigma.p1.size()] == 0) return true;
    Matrix m(fl, roff[sigma.p0.size()], coff[sigma.p1.size()]);
    for (size_t l = 0; l < sigma.p0.size(); ++l)
        for (size_t k = 0; k < sigma.p1.size(); ++k) {
            Matrix blk = elem_action(x, sigma.d[k][l], sigma.p0[l], sigma.p1[k]);
            for (int i = 0; i < blk.rows(); ++i)
                for (int j = 0; j < blk.cols(); ++j) m.set(roff[l] + i, coff[k] + j, blk.at(i, j));
        }
    return rank(m) == coff[sigma.p1.size()];
}

bool x_sigma_membership(const TwoTermComplex& sigma, const Rep& x) {
    if (!d_sigma_membership(sigma, x)) return false;
    return hom_dim(complex_h0(sigma), x) == 0;
}

} // namespace siltlab
