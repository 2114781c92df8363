#include "siltlab/rep.hpp"

#include "siltlab/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace siltlab {

int Rep::total_dim() const {
    int t = 0;
    for (int d : dims) t += d;
    return t;
}

std::string Rep::dimvec_str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
    os << ")";
    return os.str();
}

Rep zero_rep(const BasedAlgebra& alg) {
    Rep r;
    r.alg = &alg;
    r.dims.assign(size_t(alg.num_vertices()), 0);
    for (const auto& a : alg.quiver.arrows)
        r.arr.push_back(Matrix(alg.field, 0, 0)), (void)a;
    return r;
}

Rep simple_rep(const BasedAlgebra& alg, int vertex) {
    Rep r = zero_rep(alg);
    r.dims[size_t(vertex)] = 1;
    for (size_t a = 0; a < alg.quiver.arrows.size(); ++a) {
        const auto& ar = alg.quiver.arrows[a];
        r.arr[a] = Matrix(alg.field, r.dims[size_t(ar.src)], r.dims[size_t(ar.dst)]);
    }
    return r;
}

Matrix monomial_action(const Rep& x, int mono) {
    const BasedAlgebra& alg = *x.alg;
    const Monomial& m = alg.basis[size_t(mono)];
    int v = m.vertex;
    Matrix acc = Matrix::identity(alg.field, x.dims[size_t(v)]);
    for (int a : m.arrows) {
        acc = acc * x.arr[size_t(a)];
    }
    return acc;
}

Matrix elem_action(const Rep& x, const AlgebraElem& e, int i, int j) {
    const BasedAlgebra& alg = *x.alg;
    Matrix acc(alg.field, x.dims[size_t(i)], x.dims[size_t(j)]);
    for (int m = 0; m < alg.dim(); ++m) {
        if (e[size_t(m)] == 0) continue;
        if (alg.mono_source(m) != i || alg.mono_target(m) != j) continue;
        acc = acc + monomial_action(x, m).scaled(e[size_t(m)]);
    }
    return acc;
}

bool validate_rep(const Rep& x) {
    const BasedAlgebra& alg = *x.alg;
    if (int(x.dims.size()) != alg.num_vertices()) return false;
    for (size_t a = 0; a < alg.quiver.arrows.size(); ++a) {
        const auto& ar = alg.quiver.arrows[a];
        if (x.arr[a].rows() != x.dims[size_t(ar.src)] || x.arr[a].cols() != x.dims[size_t(ar.dst)])
            return false;
    }
    // multiplicativity of the action on basis monomials (implies all
    // defining relations evaluate to zero)
    for (int i = 0; i < alg.dim(); ++i)
        for (int j = 0; j < alg.dim(); ++j) {
            if (alg.mono_target(i) != alg.mono_source(j)) continue;
            Matrix lhs = monomial_action(x, i) * monomial_action(x, j);
            Matrix rhs = elem_action(x, alg.table_entry(i, j), alg.mono_source(i),
                                     alg.mono_target(j));
            if (lhs != rhs) return false;
        }
    return true;
}

bool validate_map(const RepMap& m) {
    const BasedAlgebra& alg = *m.src.alg;
    for (size_t a = 0; a < alg.quiver.arrows.size(); ++a) {
        const auto& ar = alg.quiver.arrows[a];
        if (m.src.arr[a] * m.f[size_t(ar.dst)] != m.f[size_t(ar.src)] * m.tgt.arr[a])
            return false;
    }
    return true;
}

StandardModules standard_modules(const BasedAlgebra& alg) {
    StandardModules sm;
    int n = alg.num_vertices();
    for (int i = 0; i < n; ++i) {
        // P_i = e_i A: vertex-j space spanned by monomials i -> j
        Rep p = zero_rep(alg);
        std::vector<std::vector<int>> bas((size_t)n);
        for (int j = 0; j < n; ++j) {
            bas[size_t(j)] = alg.peirce(i, j);
            p.dims[size_t(j)] = int(bas[size_t(j)].size());
        }
        for (size_t a = 0; a < alg.quiver.arrows.size(); ++a) {
            const auto& ar = alg.quiver.arrows[a];
            const auto& rows_b = bas[size_t(ar.src)];
            const auto& cols_b = bas[size_t(ar.dst)];
            Matrix m(alg.field, int(rows_b.size()), int(cols_b.size()));
            int aidx = alg.arrow_basis_index(int(a));
            for (size_t r = 0; r < rows_b.size(); ++r) {
                const AlgebraElem& prod = alg.table_entry(rows_b[r], aidx);
                for (size_t c = 0; c < cols_b.size(); ++c)
                    m.set(int(r), int(c), prod[size_t(cols_b[c])]);
            }
            p.arr[a] = std::move(m);
        }
        sm.proj.push_back(std::move(p));
        sm.simple.push_back(simple_rep(alg, i));

        // I_i = D(A e_i): vertex-j space = dual of span of monomials j -> i
        Rep inj = zero_rep(alg);
        std::vector<std::vector<int>> dbas((size_t)n);
        for (int j = 0; j < n; ++j) {
            dbas[size_t(j)] = alg.peirce(j, i);
            inj.dims[size_t(j)] = int(dbas[size_t(j)].size());
        }
        for (size_t a = 0; a < alg.quiver.arrows.size(); ++a) {
            const auto& ar = alg.quiver.arrows[a];
            const auto& rows_b = dbas[size_t(ar.src)]; // duals of u -> i monomials
            const auto& cols_b = dbas[size_t(ar.dst)]; // duals of v -> i monomials
            Matrix m(alg.field, int(rows_b.size()), int(cols_b.size()));
            int aidx = alg.arrow_basis_index(int(a));
            for (size_t c = 0; c < cols_b.size(); ++c) {
                // (f_m . a)(n) = f_m(a * n)
                const AlgebraElem& prod = alg.table_entry(aidx, cols_b[c]);
                for (size_t r = 0; r < rows_b.size(); ++r)
                    m.set(int(r), int(c), prod[size_t(rows_b[r])]);
            }
            inj.arr[a] = std::move(m);
        }
        sm.inj.push_back(std::move(inj));
    }
    return sm;
}

Rep regular_rep(const BasedAlgebra& alg) {
    auto sm = standard_modules(alg);
    return direct_sum(alg, sm.proj);
}

std::vector<RepMap> hom_basis(const Rep& m, const Rep& n) {
    const BasedAlgebra& alg = *m.alg;
    const Field& f = alg.field;
    int nv = alg.num_vertices();
    std::vector<int> off(size_t(nv) + 1, 0);
    for (int v = 0; v < nv; ++v)
        off[size_t(v) + 1] = off[size_t(v)] + m.dims[size_t(v)] * n.dims[size_t(v)];
    int nvars = off[size_t(nv)];
    if (nvars == 0) return {};
    int neq = 0;
    for (size_t a = 0; a < alg.quiver.arrows.size(); ++a) {
        const auto& ar = alg.quiver.arrows[a];
        neq += m.dims[size_t(ar.src)] * n.dims[size_t(ar.dst)];
    }
    Matrix E(f, neq, nvars);
    int eq = 0;
    for (size_t a = 0; a < alg.quiver.arrows.size(); ++a) {
        const auto& ar = alg.quiver.arrows[a];
        int i = ar.src, j = ar.dst;
        const Matrix& Ma = m.arr[a];
        const Matrix& Na = n.arr[a];
        for (int r = 0; r < m.dims[size_t(i)]; ++r)
            for (int c = 0; c < n.dims[size_t(j)]; ++c) {
                // sum_k Ma[r,k] f_j[k,c] - sum_k f_i[r,k] Na[k,c] = 0
                for (int k = 0; k < m.dims[size_t(j)]; ++k) {
                    int var = off[size_t(j)] + k * n.dims[size_t(j)] + c;
                    E.set(eq, var, f.add(E.at(eq, var), Ma.at(r, k)));
                }
                for (int k = 0; k < n.dims[size_t(i)]; ++k) {
                    int var = off[size_t(i)] + r * n.dims[size_t(i)] + k;
                    E.set(eq, var, f.sub(E.at(eq, var), Na.at(k, c)));
                }
                ++eq;
            }
    }
    Matrix K = neq == 0 ? Matrix::identity(f, nvars) : kernel_basis(E);
    std::vector<RepMap> out;
    for (int b = 0; b < K.cols(); ++b) {
        RepMap h;
        h.src = m;
        h.tgt = n;
        for (int v = 0; v < nv; ++v) {
            Matrix fv(f, m.dims[size_t(v)], n.dims[size_t(v)]);
            for (int r = 0; r < fv.rows(); ++r)
                for (int c = 0; c < fv.cols(); ++c)
                    fv.set(r, c, K.at(off[size_t(v)] + r * n.dims[size_t(v)] + c, b));
            h.f.push_back(std::move(fv));
        }
        out.push_back(std::move(h));
    }
    return out;
}

int hom_dim(const Rep& m, const Rep& n) { return int(hom_basis(m, n).size()); }

RepMap compose(const RepMap& f, const RepMap& g) {
    RepMap h;
    h.src = f.src;
    h.tgt = g.tgt;
    for (size_t v = 0; v < f.f.size(); ++v) h.f.push_back(f.f[v] * g.f[v]);
    return h;
}

RepMap zero_map(const Rep& m, const Rep& n) {
    RepMap h;
    h.src = m;
    h.tgt = n;
    for (size_t v = 0; v < m.dims.size(); ++v)
        h.f.push_back(Matrix(m.alg->field, m.dims[v], n.dims[v]));
    return h;
}

RepMap identity_map(const Rep& m) {
    RepMap h;
    h.src = m;
    h.tgt = m;
    for (size_t v = 0; v < m.dims.size(); ++v)
        h.f.push_back(Matrix::identity(m.alg->field, m.dims[v]));
    return h;
}

bool map_is_zero(const RepMap& f) {
    for (const auto& m : f.f)
        if (!m.is_zero()) return false;
    return true;
}

bool map_is_iso(const RepMap& f) {
    for (const auto& m : f.f) {
        if (m.rows() != m.cols()) return false;
        if (!invertible(m)) return false;
    }
    return true;
}

Rep direct_sum(const BasedAlgebra& alg, const std::vector<const Rep*>& parts) {
    Rep r = zero_rep(alg);
    for (const Rep* p : parts)
        for (int v = 0; v < alg.num_vertices(); ++v) r.dims[size_t(v)] += p->dims[size_t(v)];
    for (size_t a = 0; a < alg.quiver.arrows.size(); ++a) {
        const auto& ar = alg.quiver.arrows[a];
        Matrix m(alg.field, r.dims[size_t(ar.src)], r.dims[size_t(ar.dst)]);
        int ro = 0, co = 0;
        for (const Rep* p : parts) {
            const Matrix& pa = p->arr[a];
            for (int i = 0; i < pa.rows(); ++i)
                for (int j = 0; j < pa.cols(); ++j) m.set(ro + i, co + j, pa.at(i, j));
            ro += p->dims[size_t(ar.src)];
            co += p->dims[size_t(ar.dst)];
        }
        r.arr[a] = std::move(m);
    }
    return r;
}

Rep direct_sum(const BasedAlgebra& alg, const std::vector<Rep>& parts) {
    std::vector<const Rep*> ps;
    for (const auto& p : parts) ps.push_back(&p);
    return direct_sum(alg, ps);
}

SubRep sub_rep(const Rep& x, const std::vector<Matrix>& spanning_rows) {
    const BasedAlgebra& alg = *x.alg;
    SubRep s;
    s.rep = zero_rep(alg);
    for (int v = 0; v < alg.num_vertices(); ++v) {
        s.rows.push_back(row_space(spanning_rows[size_t(v)]));
        s.rep.dims[size_t(v)] = s.rows.back().rows();
    }
    for (size_t a = 0; a < alg.quiver.arrows.size(); ++a) {
        const auto& ar = alg.quiver.arrows[a];
        Matrix img = s.rows[size_t(ar.src)] * x.arr[a];
        Matrix act;
        if (!solve_left(s.rows[size_t(ar.dst)], img, act))
            throw SiltError("sub_rep: spanning rows are not a subrepresentation");
        s.rep.arr[a] = std::move(act);
    }
    return s;
}

RepMap sub_inclusion(const SubRep& s, const Rep& ambient) {
    RepMap h;
    h.src = s.rep;
    h.tgt = ambient;
    h.f = s.rows;
    return h;
}

QuotientRep quotient_rep(const Rep& x, const std::vector<Matrix>& rows) {
    const BasedAlgebra& alg = *x.alg;
    const Field& f = alg.field;
    QuotientRep q;
    q.rep = zero_rep(alg);
    std::vector<Matrix> section;
    for (int v = 0; v < alg.num_vertices(); ++v) {
        Matrix pr = quotient_projection(rows[size_t(v)], x.dims[size_t(v)]);
        q.rep.dims[size_t(v)] = pr.cols();
        Matrix sec;
        if (pr.cols() > 0) {
            if (!solve_left(pr, Matrix::identity(f, pr.cols()), sec))
                throw SiltError("quotient_rep: projection has no section");
        } else {
            sec = Matrix(f, 0, x.dims[size_t(v)]);
        }
        q.proj.push_back(std::move(pr));
        section.push_back(std::move(sec));
    }
    for (size_t a = 0; a < alg.quiver.arrows.size(); ++a) {
        const auto& ar = alg.quiver.arrows[a];
        q.rep.arr[a] = section[size_t(ar.src)] * x.arr[a] * q.proj[size_t(ar.dst)];
    }
    return q;
}

KernelCokernelImage map_kernel_cokernel_image(const RepMap& f) {
    const BasedAlgebra& alg = *f.src.alg;
    KernelCokernelImage out;
    std::vector<Matrix> krows, irows;
    for (size_t v = 0; v < f.f.size(); ++v) {
        krows.push_back(left_kernel(f.f[v]));
        irows.push_back(row_space(f.f[v]));
    }
    SubRep k = sub_rep(f.src, krows);
    SubRep im = sub_rep(f.tgt, irows);
    QuotientRep ck = quotient_rep(f.tgt, irows);
    out.kernel = std::move(k.rep);
    out.kernel_rows = std::move(k.rows);
    out.image = std::move(im.rep);
    out.image_rows = std::move(im.rows);
    out.cokernel = std::move(ck.rep);
    out.coker_proj = std::move(ck.proj);
    return out;
}

Rep trace_submodule(const Rep& t, const Rep& x) { return trace_submodule_sub(t, x).rep; }

SubRep trace_submodule_sub(const Rep& t, const Rep& x) {
    const BasedAlgebra& alg = *x.alg;
    auto homs = hom_basis(t, x);
    std::vector<Matrix> rows;
    for (int v = 0; v < alg.num_vertices(); ++v) {
        Matrix stack(alg.field, 0, x.dims[size_t(v)]);
        for (const auto& h : homs) stack = Matrix::vstack(stack, h.f[size_t(v)]);
        rows.push_back(row_space(stack));
    }
    return sub_rep(x, rows);
}

bool in_gen(const Rep& t, const Rep& x) {
    Rep tr = trace_submodule(t, x);
    return tr.dims == x.dims;
}

// ---------- decomposition machinery ----------

namespace {

struct EndoContext {
    Field f;
    int tdim = 0;
    std::vector<int> off; // vertex offsets in the total space
    std::vector<Matrix> bas; // endomorphisms as tdim x tdim block matrices
    Matrix flat;             // e x tdim^2 coordinates
    // cached solver for coordinates in the basis: flat = C * E with E the
    // echelon form of flat; coords(fl) = fl[piv] * C^{-1}
    std::vector<int> piv;
    Matrix cinv;

    Matrix coords(const Matrix& fl) const { // 1 x tdim^2 -> 1 x e
        Matrix y(f, 1, int(piv.size()));
        for (size_t k = 0; k < piv.size(); ++k) y.set(0, int(k), fl.at(0, piv[k]));
        return y * cinv;
    }
};

Matrix block_matrix_of(const Rep& m, const std::vector<Matrix>& f,
                       const std::vector<int>& off, int tdim) {
    Matrix b(m.alg->field, tdim, tdim);
    for (size_t v = 0; v < m.dims.size(); ++v)
        for (int r = 0; r < f[v].rows(); ++r)
            for (int c = 0; c < f[v].cols(); ++c)
                b.set(off[v] + r, off[v] + c, f[v].at(r, c));
    return b;
}

Matrix flatten(const Field& f, const Matrix& m) {
    Matrix r(f, 1, m.rows() * m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r.set(0, i * m.cols() + j, m.at(i, j));
    return r;
}

EndoContext endo_context(const Rep& m) {
    EndoContext ec{m.alg->field};
    ec.off.assign(m.dims.size() + 1, 0);
    for (size_t v = 0; v < m.dims.size(); ++v) ec.off[v + 1] = ec.off[v] + m.dims[v];
    ec.tdim = ec.off[m.dims.size()];
    auto homs = hom_basis(m, m);
    ec.flat = Matrix(ec.f, int(homs.size()), ec.tdim * ec.tdim);
    for (size_t h = 0; h < homs.size(); ++h) {
        Matrix b = block_matrix_of(m, homs[h].f, ec.off, ec.tdim);
        Matrix fl = flatten(ec.f, b);
        for (int c = 0; c < fl.cols(); ++c) ec.flat.set(int(h), c, fl.at(0, c));
        ec.bas.push_back(std::move(b));
    }
    if (!ec.bas.empty()) {
        Rref rr = rref(ec.flat);
        if (rr.rank != int(ec.bas.size()))
            throw SiltError("endomorphism basis is not independent");
        ec.piv = rr.pivots;
        Matrix c(ec.f, rr.rank, rr.rank);
        for (int r = 0; r < rr.rank; ++r)
            for (int k = 0; k < rr.rank; ++k) c.set(r, k, ec.flat.at(r, ec.piv[size_t(k)]));
        ec.cinv = inverse(c);
    }
    return ec;
}

bool is_nilpotent(const Matrix& m) { return m.pow((unsigned long)m.rows()).is_zero(); }

// Split M along an idempotent-or-stabilized endomorphism h: M = im h + ker h.
void split_by(const Rep& m, const Matrix& h, const std::vector<int>& off, Rep& part1,
              Rep& part2) {
    const BasedAlgebra& alg = *m.alg;
    std::vector<Matrix> imrows, kerrows;
    for (size_t v = 0; v < m.dims.size(); ++v) {
        Matrix blk(alg.field, m.dims[v], m.dims[v]);
        for (int r = 0; r < m.dims[v]; ++r)
            for (int c = 0; c < m.dims[v]; ++c) blk.set(r, c, h.at(off[v] + r, off[v] + c));
        imrows.push_back(row_space(blk));
        kerrows.push_back(left_kernel(blk));
    }
    part1 = sub_rep(m, imrows).rep;
    part2 = sub_rep(m, kerrows).rep;
    if (part1.total_dim() + part2.total_dim() != m.total_dim())
        throw SiltError("split_by: endomorphism does not split the module");
}

// Semisimple quotient bookkeeping: coordinates live in K^s with a section
// back into endomorphism matrices.
struct SemisimpleQuotient {
    SemisimpleQuotient() : f(Field::rationals()) {}
    Field f;
    int s = 0;
    Matrix proj;    // e x s (E-coords -> S-coords)
    Matrix section; // s x e (S-coords -> E-coords)
    const EndoContext* ec = nullptr;
    Matrix one;     // 1 x s, the image of id

    Matrix to_matrix(const Matrix& scoord) const { // 1 x s -> tdim x tdim endo
        Matrix ecoord = scoord * section;
        Matrix acc(f, ec->tdim, ec->tdim);
        for (int i = 0; i < ecoord.cols(); ++i)
            if (ecoord.at(0, i) != 0) acc = acc + ec->bas[size_t(i)].scaled(ecoord.at(0, i));
        return acc;
    }
    Matrix from_matrix(const Matrix& endo) const { // tdim x tdim -> 1 x s
        Matrix fl = flatten(f, endo);
        return ec->coords(fl) * proj;
    }
    std::vector<Matrix> runits; // right multiplication by the basis units

    // structure constants of S, computed once; everything downstream is
    // s x s arithmetic
    void build_table() {
        std::vector<Matrix> us;
        for (int k = 0; k < s; ++k) {
            Matrix unit(f, 1, s);
            unit.set(0, k, f.one());
            us.push_back(to_matrix(unit));
        }
        for (int l = 0; l < s; ++l) {
            Matrix r(f, s, s);
            for (int k = 0; k < s; ++k) {
                Matrix row = from_matrix(us[size_t(k)] * us[size_t(l)]);
                for (int c = 0; c < s; ++c) r.set(k, c, row.at(0, c));
            }
            runits.push_back(std::move(r));
        }
    }
    // matrix of right multiplication t -> t*a on S (row convention)
    Matrix rmul(const Matrix& a) const {
        Matrix r(f, s, s);
        for (int l = 0; l < s; ++l)
            if (a.at(0, l) != 0) r = r + runits[size_t(l)].scaled(a.at(0, l));
        return r;
    }
    Matrix mult(const Matrix& a, const Matrix& b) const { return a * rmul(b); }
};

// Trace-form radical of the endomorphism algebra. Valid in characteristic
// zero and for p > tdim (associative algebras acting faithfully on a space
// of dimension < p).
Matrix trace_form_radical(const EndoContext& ec) {
    int e = int(ec.bas.size());
    Matrix g(ec.f, e, e);
    for (int a = 0; a < e; ++a)
        for (int b = a; b < e; ++b) {
            Matrix p = ec.bas[size_t(a)] * ec.bas[size_t(b)];
            Scalar tr = ec.f.zero();
            for (int i = 0; i < p.rows(); ++i) tr = ec.f.add(tr, p.at(i, i));
            g.set(a, b, tr);
            g.set(b, a, tr);
        }
    return left_kernel(g); // rows = radical coordinates
}

// Search for a nontrivial idempotent of the semisimple quotient S. Returns
// 0 = found (out), 1 = S certified a division ring, 2 = inconclusive.
int find_idempotent(const SemisimpleQuotient& sq, Rng& rng, Matrix& out) {
    const Field& f = sq.f;
    int s = sq.s;
    std::vector<Matrix> cands;
    for (int k = 0; k < s; ++k) {
        Matrix u(f, 1, s);
        u.set(0, k, f.one());
        cands.push_back(u);
    }
    int nb = int(cands.size());
    for (int a = 0; a < nb; ++a)
        for (int b = 0; b < nb; ++b) cands.push_back(sq.mult(cands[size_t(a)], cands[size_t(b)]));
    for (int a = 0; a < nb; ++a)
        for (int b = a + 1; b < nb; ++b) cands.push_back(cands[size_t(a)] + cands[size_t(b)]);
    for (int t = 0; t < 40; ++t) {
        Matrix r(f, 1, s);
        for (int k = 0; k < s; ++k) r.set(0, k, f.random(rng));
        cands.push_back(r);
    }
    bool division_witness = false;
    for (const Matrix& cand : cands) {
        if (cand.is_zero()) continue;
        Matrix R = sq.rmul(cand);
        Poly mp = minimal_polynomial(R);
        std::vector<PolyFactor> fac;
        try {
            fac = factor(mp);
        } catch (const DegreeCapExceeded&) {
            continue;
        }
        if (fac.size() >= 2) {
            // CRT idempotent: m = F*G coprime, uF + vG = 1, e = (vG)(cand)
            Poly F = fac[0].factor.pow((unsigned long)fac[0].multiplicity);
            Poly G = mp.divmod(F).first;
            Poly u(f), v(f);
            extended_gcd(F, G, u, v);
            Matrix e = sq.one * (v * G).eval(R);
            if (!e.is_zero() && e != sq.one && sq.mult(e, e) == e) {
                out = e;
                return 0;
            }
            continue;
        }
        if (fac.size() == 1 && fac[0].multiplicity >= 2) {
            // z = f(cand) is a nonzero nilpotent; the left ideal S*z has a
            // right identity e, a nontrivial idempotent.
            Matrix z = sq.one * fac[0].factor.eval(R);
            if (z.is_zero()) continue;
            Matrix Rz = sq.rmul(z);
            std::vector<Matrix> lrows;
            for (int k = 0; k < s; ++k) {
                Matrix u2(f, 1, s);
                u2.set(0, k, f.one());
                lrows.push_back(u2 * Rz);
            }
            Matrix stack(f, 0, s);
            for (const auto& r2 : lrows) stack = Matrix::vstack(stack, r2);
            Matrix lb = row_space(stack);
            int ell = lb.rows();
            if (ell == 0) continue;
            // solve c * B = C where row j of B is (x_i * b_j)_i and C = (x_i)_i
            Matrix B(f, ell, ell * s), C(f, 1, ell * s);
            for (int i = 0; i < ell; ++i) {
                Matrix xi = lb.row(i);
                for (int c = 0; c < s; ++c) C.set(0, i * s + c, xi.at(0, c));
                for (int j = 0; j < ell; ++j) {
                    Matrix prod = sq.mult(xi, lb.row(j));
                    for (int c = 0; c < s; ++c) B.set(j, i * s + c, prod.at(0, c));
                }
            }
            Matrix coeff;
            if (!solve_left(B, C, coeff)) continue;
            Matrix e = coeff * lb;
            if (!e.is_zero() && e != sq.one && sq.mult(e, e) == e) {
                out = e;
                return 0;
            }
            continue;
        }
        if (fac.size() == 1 && fac[0].multiplicity == 1 && fac[0].factor.degree() == s)
            division_witness = true;
    }
    return division_witness ? 1 : 2;
}

// Find a splitting of M, or certify indecomposability. Returns true with
// the two parts filled when M splits.
bool try_split(const Rep& m, Rng& rng, Rep& part1, Rep& part2) {
    const Field& f = m.alg->field;
    EndoContext ec = endo_context(m);
    int e = int(ec.bas.size());
    if (e <= 1) return false;
    // Fitting pre-pass over single basis endomorphisms, any field: once
    // rank(g^2) = rank(g) with 0 < rank(g) < tdim, M = ker g + im g. Cheap
    // next to the trace-form computation and it dismantles big direct sums
    // without ever forming large powers.
    {
        auto stabilized_split = [&](Matrix g) {
            int r = rank(g);
            if (r == 0 || r == ec.tdim) return false;
            for (int it = 0; it < ec.tdim; ++it) {
                Matrix g2 = g * g;
                int r2 = rank(g2);
                if (r2 == r) {
                    split_by(m, g, ec.off, part1, part2);
                    return true;
                }
                if (r2 == 0) return false;
                g = std::move(g2);
                r = r2;
            }
            return false;
        };
        for (int i = 0; i < e; ++i)
            if (stabilized_split(ec.bas[size_t(i)])) return true;
    }
    long p = f.characteristic();
    const long kScanBudget = 1 << 16;
    double logsize = p > 0 ? double(e) * std::log2(double(p)) : 1e9;
    if (p > 0 && (logsize <= 16.5 || p <= ec.tdim)) {
        // Fitting splitter from an element that is neither nilpotent nor
        // invertible; exhaustive over a small prime field, otherwise a
        // bounded scan (found splits are always genuine)
        auto fitting = [&](const Matrix& g) {
            if (g.is_zero()) return false;
            Matrix gn = g.pow((unsigned long)ec.tdim);
            if (gn.is_zero() || invertible(g)) return false;
            split_by(m, gn, ec.off, part1, part2);
            return true;
        };
        for (int i = 0; i < e; ++i)
            if (fitting(ec.bas[size_t(i)])) return true;
        long total = logsize <= 16.5 ? 1 : kScanBudget + 1;
        if (logsize <= 16.5)
            for (int i = 0; i < e; ++i) total *= p;
        bool complete = total <= kScanBudget + 1;
        for (long code = 1; code < std::min(total, kScanBudget + 1); ++code) {
            long c = code;
            Matrix g(f, ec.tdim, ec.tdim);
            for (int i = 0; i < e && c != 0; ++i) {
                long digit = c % p;
                c /= p;
                if (digit) g = g + ec.bas[size_t(i)].scaled(f.from_long(digit));
            }
            if (fitting(g)) return true;
        }
        if (!complete) {
            for (int t = 0; t < 256; ++t) {
                Matrix g(f, ec.tdim, ec.tdim);
                for (int i = 0; i < e; ++i) {
                    Scalar c = f.random(rng);
                    if (c != 0) g = g + ec.bas[size_t(i)].scaled(c);
                }
                if (fitting(g)) return true;
            }
            throw NotSplitError(
                "endomorphism algebra too large for exhaustive search and the "
                "trace-form radical is unreliable at this characteristic; "
                "switch to Q or a larger prime field");
        }
        return false;
    }
    Matrix rad = trace_form_radical(ec);
    SemisimpleQuotient sq;
    sq.f = f;
    sq.ec = &ec;
    sq.proj = quotient_projection(rad, e);
    sq.s = sq.proj.cols();
    if (sq.s <= 1) return false; // local endomorphism ring
    if (!solve_left(sq.proj, Matrix::identity(f, sq.s), sq.section))
        throw SiltError("semisimple quotient: no section");
    sq.build_table();
    sq.one = sq.from_matrix(Matrix::identity(f, ec.tdim));
    Matrix es;
    int verdict = find_idempotent(sq, rng, es);
    if (verdict == 1) return false; // division ring: indecomposable
    if (verdict == 2)
        throw NotSplitError("could not split or certify the endomorphism quotient; "
                            "switch field");
    // lift the idempotent through the radical by Newton iteration
    Matrix E = sq.to_matrix(es);
    for (int it = 0; it < 100; ++it) {
        if (E * E == E) break;
        Matrix E2 = E * E;
        E = E2.scaled(Scalar(3)) - (E2 * E).scaled(Scalar(2));
    }
    if (E * E != E) throw SiltError("idempotent lifting did not converge");
    if (E.is_zero() || E == Matrix::identity(f, ec.tdim))
        throw SiltError("idempotent lift degenerated");
    split_by(m, E, ec.off, part1, part2);
    return true;
}

} // namespace

std::vector<Rep> decompose(const Rep& m, Rng& rng) {
    std::vector<Rep> out;
    if (m.is_zero()) return out;
    Rep a, b;
    if (try_split(m, rng, a, b)) {
        auto da = decompose(a, rng);
        auto db = decompose(b, rng);
        out.insert(out.end(), da.begin(), da.end());
        out.insert(out.end(), db.begin(), db.end());
    } else {
        out.push_back(m);
    }
    return out;
}

bool is_indecomposable(const Rep& m, Rng& rng) {
    if (m.is_zero()) return false;
    Rep a, b;
    return !try_split(m, rng, a, b);
}

bool is_brick(const Rep& m, Rng& rng) {
    if (m.is_zero()) return false;
    const Field& f = m.alg->field;
    EndoContext ec = endo_context(m);
    int e = int(ec.bas.size());
    if (e == 1) return true; // End = K id
    long p = f.characteristic();
    double logsize = p > 0 ? double(e) * std::log2(double(p)) : 1e9;
    if (p > 0 && logsize <= 12.5) {
        // division ring test: every nonzero endomorphism invertible
        long total = 1;
        for (int i = 0; i < e; ++i) total *= p;
        for (long code = 1; code < total; ++code) {
            long c = code;
            Matrix g(f, ec.tdim, ec.tdim);
            for (int i = 0; i < e; ++i) {
                long digit = c % p;
                c /= p;
                if (digit) g = g + ec.bas[size_t(i)].scaled(f.from_long(digit));
            }
            if (!invertible(g)) return false;
        }
        return true;
    }
    if (p > 0 && p <= ec.tdim)
        throw NotSplitError("brick test needs exhaustive search or a larger field");
    Matrix rad = trace_form_radical(ec);
    if (rad.rows() > 0) return false;
    SemisimpleQuotient sq;
    sq.f = f;
    sq.ec = &ec;
    sq.proj = Matrix::identity(f, e);
    sq.section = Matrix::identity(f, e);
    sq.s = e;
    sq.build_table();
    sq.one = sq.from_matrix(Matrix::identity(f, ec.tdim));
    Matrix es;
    int verdict = find_idempotent(sq, rng, es);
    if (verdict == 0) return false; // nontrivial idempotent: not a division ring
    if (verdict == 1) return true;
    throw NotSplitError("could not certify division ring; switch field");
}

bool is_isomorphic(const Rep& m, const Rep& n, Rng& rng) {
    if (m.dims != n.dims) return false;
    if (m.total_dim() == 0) return true;
    auto homs = hom_basis(m, n);
    if (homs.empty()) return false;
    if (hom_dim(m, m) != hom_dim(n, n)) return false;
    // random invertible combinations
    const Field& f = m.alg->field;
    for (int t = 0; t < 8; ++t) {
        RepMap h = zero_map(m, n);
        for (const auto& b : homs) {
            Scalar c = f.random(rng);
            for (size_t v = 0; v < h.f.size(); ++v) h.f[v] = h.f[v] + b.f[v].scaled(c);
        }
        if (map_is_iso(h)) return true;
    }
    // deterministic fallback: match indecomposable summands pairwise
    auto dm = decompose(m, rng);
    auto dn = decompose(n, rng);
    if (dm.size() != dn.size()) return false;
    std::vector<bool> used(dn.size(), false);
    for (const auto& x : dm) {
        bool matched = false;
        for (size_t j = 0; j < dn.size() && !matched; ++j) {
            if (used[j] || dn[j].dims != x.dims) continue;
            // between indecomposables the non-isomorphisms form a subspace,
            // so testing a basis of Hom is exact
            for (const auto& h : hom_basis(x, dn[j]))
                if (map_is_iso(h)) {
                    matched = true;
                    used[j] = true;
                    break;
                }
        }
        if (!matched) return false;
    }
    return true;
}

} // namespace siltlab
