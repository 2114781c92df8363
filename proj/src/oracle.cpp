#include "siltlab/oracle.hpp"

#include "siltlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

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

// Every nonzero element of Hom(m, n), by running through all coefficient
// tuples over the prime field.
std::vector<RepMap> all_homs(const Rep& m, const Rep& n) {
    const Field& f = m.alg->field;
    long p = f.characteristic();
    std::vector<RepMap> hb = hom_basis(m, n);
    if (hb.empty()) return {};
    if (double(hb.size()) * std::log(double(p)) > 20.0)
        throw CapTooLarge("hom space too large to enumerate");
    long total = 1;
    for (size_t i = 0; i < hb.size(); ++i) total *= p;
    std::vector<RepMap> out;
    for (long code = 1; code < total; ++code) {
        RepMap g = zero_map(m, n);
        long c = code;
        for (size_t i = 0; i < hb.size(); ++i) {
            long ci = c % p;
            c /= p;
            if (ci == 0) continue;
            for (size_t v = 0; v < g.f.size(); ++v)
                g.f[v] = g.f[v] + hb[i].f[v].scaled(Scalar(ci));
        }
        out.push_back(std::move(g));
    }
    return out;
}

// Middle term of the extension of m by n classified by phi: Omega(m) -> n.
Rep extension_middle(const Cover& c, const KernelCokernelImage& kci, const Rep& n,
                     const RepMap& phi) {
    const BasedAlgebra& alg = *n.alg;
    Rep big = direct_sum(alg, std::vector<const Rep*>{&c.map.src, &n});
    RepMap u{kci.kernel, big, {}};
    for (size_t v = 0; v < kci.kernel.dims.size(); ++v)
        u.f.push_back(Matrix::hstack(kci.kernel_rows[v], phi.f[v]));
    return map_kernel_cokernel_image(u).cokernel;
}

} // namespace

std::vector<Rep> enumerate_reps_upto_iso(const BasedAlgebra& alg, const EnumerationCaps& caps,
                                         Rng& rng) {
    long p = alg.field.characteristic();
    if (p != 2 && p != 3)
        throw CapTooLarge("enumeration needs a prime field of size 2 or 3");
    int nv = alg.num_vertices();
    const Field& f = alg.field;
    std::vector<Rep> found;

    auto handle = [&](const std::vector<int>& dims) {
        long entries = 0;
        for (const Arrow& a : alg.quiver.arrows)
            entries += long(dims[size_t(a.src)]) * dims[size_t(a.dst)];
        std::vector<int> dig(size_t(entries), 0);
        while (true) {
            Rep r;
            r.alg = &alg;
            r.dims = dims;
            size_t pos = 0;
            for (const Arrow& a : alg.quiver.arrows) {
                Matrix m(f, dims[size_t(a.src)], dims[size_t(a.dst)]);
                for (int i = 0; i < m.rows(); ++i)
                    for (int j = 0; j < m.cols(); ++j) m.set(i, j, Scalar(dig[pos++]));
                r.arr.push_back(std::move(m));
            }
            if (validate_rep(r))
                for (Rep& ind : decompose(r, rng)) {
                    bool seen = false;
                    for (const Rep& k : found) seen = seen || is_isomorphic(ind, k, rng);
                    if (!seen) found.push_back(std::move(ind));
                }
            // odometer
            size_t k = 0;
            while (k < dig.size() && ++dig[k] == int(p)) dig[k++] = 0;
            if (k == dig.size()) break;
        }
    };

    std::vector<std::vector<int>> dimvecs;
    std::vector<int> dims(size_t(nv), 0);
    std::function<void(int, int)> recurse = [&](int v, int used) {
        if (v == nv) {
            if (used > 0) dimvecs.push_back(dims);
            return;
        }
        int cap = caps.max_total_dim - used;
        if (!caps.per_vertex.empty()) cap = std::min(cap, caps.per_vertex[size_t(v)]);
        for (int d = 0; d <= cap; ++d) {
            dims[size_t(v)] = d;
            recurse(v + 1, used + d);
        }
        dims[size_t(v)] = 0;
    };
    recurse(0, 0);
    // reject intractable caps before doing any work
    for (const std::vector<int>& dv : dimvecs) {
        long entries = 0;
        for (const Arrow& a : alg.quiver.arrows)
            entries += long(dv[size_t(a.src)]) * dv[size_t(a.dst)];
        if (double(entries) * std::log(double(p)) > std::log(double(caps.max_states)))
            throw CapTooLarge("matrix-tuple state space exceeds the budget");
    }
    // increasing total dimension, so summands of decomposables come first
    std::sort(dimvecs.begin(), dimvecs.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  int sa = 0, sb = 0;
                  for (int x : a) sa += x;
                  for (int x : b) sb += x;
                  return sa != sb ? sa < sb : a < b;
              });
    for (const std::vector<int>& dv : dimvecs) handle(dv);
    return found;
}

std::vector<std::vector<int>> enumerate_torsion_classes_repfinite(const std::vector<Rep>& indecs,
                                                                  Rng& rng) {
    int n = int(indecs.size());
    if (n == 0) return {{}};
    if (n > 16) throw CapTooLarge("too many indecomposables for subset enumeration");

    auto locate = [&](const Rep& x) {
        for (int k = 0; k < n; ++k)
            if (is_isomorphic(x, indecs[size_t(k)], rng)) return k;
        throw VerificationFailed("list is not closed under the algebra's indecomposables");
    };

    // quotient pairs: j reachable from i by a surjection
    std::vector<std::vector<bool>> quo(size_t(n), std::vector<bool>(size_t(n), false));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (const RepMap& g : all_homs(indecs[size_t(i)], indecs[size_t(j)]))
                if (map_kernel_cokernel_image(g).cokernel.is_zero()) {
                    quo[size_t(i)][size_t(j)] = true;
                    break;
                }

    // extension middle terms of i by j, as summand bitmasks
    std::vector<std::vector<std::vector<unsigned>>> ext{
        size_t(n), std::vector<std::vector<unsigned>>(size_t(n))};
    for (int i = 0; i < n; ++i) {
        Cover c = projective_cover(indecs[size_t(i)]);
        KernelCokernelImage kci = map_kernel_cokernel_image(c.map);
        for (int j = 0; j < n; ++j)
            for (const RepMap& phi : all_homs(kci.kernel, indecs[size_t(j)])) {
                Rep e = extension_middle(c, kci, indecs[size_t(j)], phi);
                unsigned mask = 0;
                for (Rep& s : decompose(e, rng)) mask |= 1u << locate(s);
                ext[size_t(i)][size_t(j)].push_back(mask);
            }
    }

    std::vector<std::vector<int>> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        bool ok = true;
        for (int i = 0; ok && i < n; ++i) {
            if (!(mask & (1u << i))) continue;
            for (int j = 0; ok && j < n; ++j) {
                if (quo[size_t(i)][size_t(j)] && !(mask & (1u << j))) ok = false;
                if (!(mask & (1u << j))) continue;
                for (unsigned em : ext[size_t(i)][size_t(j)])
                    if ((em & mask) != em) ok = false;
            }
        }
        if (!ok) continue;
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) s.push_back(i);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

std::vector<Rep> brute_bricks(const BasedAlgebra& alg, const EnumerationCaps& caps, Rng& rng) {
    std::vector<Rep> out;
    for (Rep& m : enumerate_reps_upto_iso(alg, caps, rng)) {
        bool division = true;
        for (const RepMap& g : all_homs(m, m)) division = division && map_is_iso(g);
        if (division) out.push_back(std::move(m));
    }
    return out;
}

int homotopy_hom_dim(const TwoTermComplex& sigma, const TwoTermComplex& tau, int shift) {
    const BasedAlgebra& alg = *sigma.alg;
    const Field& f = alg.field;
    ProjReal s1 = realize_projectives(alg, sigma.p1);
    ProjReal s0 = realize_projectives(alg, sigma.p0);
    ProjReal t1 = realize_projectives(alg, tau.p1);
    ProjReal t0 = realize_projectives(alg, tau.p0);
    RepMap ds = realize_complex_map(sigma);
    RepMap dt = realize_complex_map(tau);

    if (shift == 1) {
        // every map sigma1 -> tau0 is a chain map to tau[1]; null-homotopic
        // ones factor as ds.h0 or h1.dt
        std::vector<RepMap> hb = hom_basis(s1.rep, t0.rep);
        if (hb.empty()) return 0;
        int width = flatten_map(hb[0]).cols();
        Matrix gen(f, 0, width);
        for (const RepMap& h0 : hom_basis(s0.rep, t0.rep))
            gen = Matrix::vstack(gen, flatten_map(compose(ds, h0)));
        for (const RepMap& h1 : hom_basis(s1.rep, t1.rep))
            gen = Matrix::vstack(gen, flatten_map(compose(h1, dt)));
        int r = gen.rows() == 0 || width == 0 ? 0 : rank(gen);
        return int(hb.size()) - r;
    }
    if (shift != 0) throw SiltError("shift must be 0 or 1");

    // chain maps (f1, f0): f1.dt = ds.f0 in Hom(sigma1, tau0)
    std::vector<RepMap> b1 = hom_basis(s1.rep, t1.rep);
    std::vector<RepMap> b0 = hom_basis(s0.rep, t0.rep);
    int vars = int(b1.size() + b0.size());
    if (vars == 0) return 0;
    int condw = 0;
    for (size_t v = 0; v < s1.rep.dims.size(); ++v)
        condw += s1.rep.dims[v] * t0.rep.dims[v];
    Matrix sys(f, vars, condw);
    int chain;
    if (condw == 0) {
        chain = vars;
    } else {
        for (size_t i = 0; i < b1.size(); ++i) {
            Matrix row = flatten_map(compose(b1[i], dt));
            for (int c = 0; c < condw; ++c) sys.set(int(i), c, row.at(0, c));
        }
        for (size_t j = 0; j < b0.size(); ++j) {
            Matrix row = flatten_map(compose(ds, b0[j]));
            for (int c = 0; c < condw; ++c)
                sys.set(int(b1.size() + j), c, f.neg(row.at(0, c)));
        }
        chain = vars - rank(sys);
    }

    // null-homotopic chain maps come from h: sigma0 -> tau1
    std::vector<RepMap> hs = hom_basis(s0.rep, t1.rep);
    if (hs.empty()) return chain;
    Matrix st1(f, 0, b1.empty() ? 0 : flatten_map(b1[0]).cols());
    for (const RepMap& b : b1) st1 = Matrix::vstack(st1, flatten_map(b));
    Matrix st0(f, 0, b0.empty() ? 0 : flatten_map(b0[0]).cols());
    for (const RepMap& b : b0) st0 = Matrix::vstack(st0, flatten_map(b));
    Matrix hmat(f, int(hs.size()), vars);
    for (size_t k = 0; k < hs.size(); ++k) {
        if (!b1.empty()) {
            Matrix x;
            if (!solve_left(st1, flatten_map(compose(ds, hs[k])), x))
                throw SiltError("homotopy component outside the hom basis");
            for (size_t i = 0; i < b1.size(); ++i) hmat.set(int(k), int(i), x.at(0, int(i)));
        }
        if (!b0.empty()) {
            Matrix x;
            if (!solve_left(st0, flatten_map(compose(hs[k], dt)), x))
                throw SiltError("homotopy component outside the hom basis");
            for (size_t j = 0; j < b0.size(); ++j)
                hmat.set(int(k), int(b1.size() + j), x.at(0, int(j)));
        }
    }
    return chain - rank(hmat);
}

} // namespace siltlab
