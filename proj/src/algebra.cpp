#include "siltlab/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace siltlab {

int Quiver::vertex_index(const std::string& name) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == name) return int(i);
    throw SemanticError("unknown vertex: " + name);
}

int Quiver::arrow_index(const std::string& name) const {
    for (size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].label == name) return int(i);
    throw SemanticError("unknown arrow: " + name);
}

namespace {

// levels[k] = all composable arrow words of length k, lex sorted by arrow
// index; levels[0] is a placeholder (trivial paths are tracked by vertex).
std::vector<std::vector<std::vector<int>>> enumerate_paths(const Quiver& q, int maxlen) {
    std::vector<std::vector<std::vector<int>>> levels(size_t(maxlen) + 1);
    for (size_t a = 0; a < q.arrows.size(); ++a) levels[1].push_back({int(a)});
    for (int k = 2; k <= maxlen; ++k)
        for (const auto& w : levels[size_t(k) - 1])
            for (size_t a = 0; a < q.arrows.size(); ++a)
                if (q.arrows[size_t(w.back())].dst == q.arrows[a].src) {
                    auto ext = w;
                    ext.push_back(int(a));
                    levels[size_t(k)].push_back(std::move(ext));
                }
    return levels;
}

int word_source(const Quiver& q, const std::vector<int>& w, int trivial_vertex) {
    return w.empty() ? trivial_vertex : q.arrows[size_t(w.front())].src;
}

int word_target(const Quiver& q, const std::vector<int>& w, int trivial_vertex) {
    return w.empty() ? trivial_vertex : q.arrows[size_t(w.back())].dst;
}

// Column index in descending length-then-lex order over paths of length
// 0..maxlen. Trivial path at vertex v has word {} and is found via v.
struct PathIndex {
    const Quiver& q;
    const std::vector<std::vector<std::vector<int>>>& levels;
    int maxlen;
    int total;
    std::vector<int> asc_offset; // offset of level k in ascending order

    PathIndex(const Quiver& qq, const std::vector<std::vector<std::vector<int>>>& lv, int ml)
        : q(qq), levels(lv), maxlen(ml) {
        asc_offset.assign(size_t(ml) + 2, 0);
        asc_offset[0] = 0;
        asc_offset[1] = int(q.vertices.size());
        for (int k = 1; k <= ml; ++k)
            asc_offset[size_t(k) + 1] = asc_offset[size_t(k)] + int(levels[size_t(k)].size());
        total = asc_offset[size_t(ml) + 1];
    }

    int col(const std::vector<int>& w, int trivial_vertex) const {
        int asc;
        if (w.empty()) {
            asc = trivial_vertex;
        } else {
            const auto& lvl = levels[w.size()];
            auto it = std::lower_bound(lvl.begin(), lvl.end(), w);
            if (it == lvl.end() || *it != w) throw SiltError("path index lookup failed");
            asc = asc_offset[w.size()] + int(it - lvl.begin());
        }
        return total - 1 - asc;
    }

    // inverse: descending column -> (word, trivial vertex or -1)
    std::pair<std::vector<int>, int> word_of_col(int c) const {
        int asc = total - 1 - c;
        if (asc < int(q.vertices.size())) return {{}, asc};
        for (int k = 1; k <= maxlen; ++k)
            if (asc < asc_offset[size_t(k) + 1])
                return {levels[size_t(k)][size_t(asc - asc_offset[size_t(k)])], -1};
        throw SiltError("column out of range");
    }
};

void reduce_vec(const Field& f, const std::vector<std::vector<Scalar>>& rows,
                const std::vector<int>& pivots, std::vector<Scalar>& v) {
    for (size_t r = 0; r < rows.size(); ++r) {
        const Scalar& c = v[size_t(pivots[r])];
        if (c == 0) continue;
        Scalar cc = c;
        for (size_t j = 0; j < v.size(); ++j)
            if (rows[r][j] != 0) v[j] = f.sub(v[j], f.mul(cc, rows[r][j]));
    }
}

// Span of the truncated ideal: rref rows over the descending path index.
void ideal_span(const Field& f, const Quiver& q, const std::vector<PathExpr>& relations,
                const PathIndex& pidx, int term_cap,
                std::vector<std::vector<Scalar>>& rows_out, std::vector<int>& pivots_out) {
    std::vector<std::vector<Scalar>> raw;
    for (const auto& rel : relations) {
        if (rel.terms.empty()) continue;
        int srcR = word_source(q, rel.terms[0].arrows, -1);
        int dstR = word_target(q, rel.terms[0].arrows, -1);
        size_t min_term = rel.terms[0].arrows.size();
        for (const auto& t : rel.terms) min_term = std::min(min_term, t.arrows.size());
        // candidate left factors u (target = srcR) and right factors v
        std::vector<std::vector<int>> us = {{}}, vs = {{}};
        for (int k = 1; k + int(min_term) <= term_cap; ++k)
            for (const auto& w : pidx.levels[size_t(k)]) {
                if (word_target(q, w, -1) == srcR) us.push_back(w);
                if (word_source(q, w, -1) == dstR) vs.push_back(w);
            }
        for (const auto& u : us)
            for (const auto& v : vs) {
                if (int(u.size() + min_term + v.size()) > term_cap) continue;
                std::vector<Scalar> row(size_t(pidx.total), f.zero());
                bool nonzero = false;
                for (const auto& t : rel.terms) {
                    int len = int(u.size() + t.arrows.size() + v.size());
                    if (len > term_cap) continue; // truncated away
                    std::vector<int> w = u;
                    w.insert(w.end(), t.arrows.begin(), t.arrows.end());
                    w.insert(w.end(), v.begin(), v.end());
                    int c = pidx.col(w, srcR);
                    row[size_t(c)] = f.add(row[size_t(c)], t.coeff);
                    nonzero = true;
                }
                if (nonzero) raw.push_back(std::move(row));
            }
    }
    rows_out.clear();
    pivots_out.clear();
    if (raw.empty()) return;
    Matrix m(f, int(raw.size()), pidx.total);
    for (size_t r = 0; r < raw.size(); ++r)
        for (int c = 0; c < pidx.total; ++c) m.set(int(r), c, raw[r][size_t(c)]);
    Rref rr = rref(m);
    for (int r = 0; r < rr.rank; ++r) {
        std::vector<Scalar> row(size_t(pidx.total));
        for (int c = 0; c < pidx.total; ++c) row[size_t(c)] = rr.r.at(r, c);
        rows_out.push_back(std::move(row));
        pivots_out.push_back(rr.pivots[size_t(r)]);
    }
}

void validate_relations(const Quiver& q, const std::vector<PathExpr>& relations) {
    for (const auto& rel : relations) {
        int srcR = -2, dstR = -2;
        for (const auto& t : rel.terms) {
            if (t.arrows.size() < 2)
                throw MalformedRelation("relation term of length < 2");
            for (size_t i = 0; i + 1 < t.arrows.size(); ++i)
                if (q.arrows[size_t(t.arrows[i])].dst != q.arrows[size_t(t.arrows[i + 1])].src)
                    throw MalformedRelation("non-composable relation term");
            int s = word_source(q, t.arrows, -1), d = word_target(q, t.arrows, -1);
            if (srcR == -2) {
                srcR = s;
                dstR = d;
            } else if (s != srcR || d != dstR) {
                throw MalformedRelation("non-parallel relation terms");
            }
        }
    }
}

} // namespace

BasedAlgebra build_based_algebra(Field f, const Quiver& quiver,
                                 const std::vector<PathExpr>& relations, int max_path_length) {
    validate_relations(quiver, relations);
    auto levels = enumerate_paths(quiver, max_path_length);

    // Phase 1: find the nilpotency degree L by growing the truncated span
    // until the answer stabilises.
    int L = -1, prev_found = -2;
    for (int W = 1; W <= max_path_length; ++W) {
        PathIndex pidx(quiver, levels, W);
        std::vector<std::vector<Scalar>> rows;
        std::vector<int> pivots;
        ideal_span(f, quiver, relations, pidx, W, rows, pivots);
        int found = -1;
        for (int ell = 1; ell <= W && found < 0; ++ell) {
            bool all_in = true;
            for (const auto& w : levels[size_t(ell)]) {
                std::vector<Scalar> v(size_t(pidx.total), f.zero());
                v[size_t(pidx.col(w, -1))] = f.one();
                reduce_vec(f, rows, pivots, v);
                bool zero = true;
                for (const auto& x : v)
                    if (x != 0) zero = false;
                if (!zero) {
                    all_in = false;
                    break;
                }
            }
            if (all_in) found = ell;
        }
        if (found > 0 && found == prev_found) {
            L = found;
            break;
        }
        if (found > 0 && W == max_path_length) L = found;
        prev_found = found;
    }
    if (L < 0) throw NonAdmissible("no path length bound found; the algebra looks infinite dimensional");

    // Phase 2: truncate at L and extract the monomial basis.
    PathIndex pidx(quiver, levels, L - 1);
    // term_cap L-1: products whose every term has length >= L vanish in the
    // truncation, so this span is the full image of the ideal.
    std::vector<std::vector<Scalar>> rows;
    std::vector<int> pivots;
    ideal_span(f, quiver, relations, pidx, L - 1, rows, pivots);

    BasedAlgebra alg(f);
    alg.quiver = quiver;
    alg.nilpotency = L;
    alg.paths_by_len_.assign(levels.begin(), levels.begin() + L);
    alg.ideal_rref_ = rows;
    alg.ideal_pivots_ = pivots;

    std::vector<bool> is_pivot(size_t(pidx.total), false);
    for (int p : pivots) is_pivot[size_t(p)] = true;
    // walk columns in ascending length-lex order = descending column index
    for (int c = pidx.total - 1; c >= 0; --c) {
        if (is_pivot[size_t(c)]) continue;
        auto [w, tv] = pidx.word_of_col(c);
        Monomial m;
        m.arrows = w;
        m.vertex = w.empty() ? tv : quiver.arrows[size_t(w.front())].src;
        alg.basis.push_back(std::move(m));
    }
    int n = int(quiver.vertices.size());
    for (int v = 0; v < n; ++v)
        if (alg.mono_length(v) != 0 || alg.basis[size_t(v)].vertex != v)
            throw NonAdmissible("trivial path eliminated by the ideal");

    // Multiplication table by concatenation + reduction.
    int d = alg.dim();
    alg.table_.assign(size_t(d) * size_t(d), alg.zero_elem());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (alg.mono_target(i) != alg.mono_source(j)) continue;
            std::vector<int> w = alg.basis[size_t(i)].arrows;
            const auto& wj = alg.basis[size_t(j)].arrows;
            w.insert(w.end(), wj.begin(), wj.end());
            if (w.empty()) {
                AlgebraElem e = alg.zero_elem();
                e[size_t(i)] = f.one();
                alg.table_[size_t(i) * size_t(d) + size_t(j)] = std::move(e);
            } else {
                alg.table_[size_t(i) * size_t(d) + size_t(j)] = alg.reduce_path(w);
            }
        }
    return alg;
}

AlgebraElem BasedAlgebra::reduce_path(const std::vector<int>& arrows) const {
    std::vector<int> w = arrows;
    if (reversed_) std::reverse(w.begin(), w.end());
    if (w.empty()) throw SiltError("reduce_path on trivial path"); // handled by callers
    if (int(w.size()) >= nilpotency) return zero_elem();
    // paths_by_len_ stores words in the original orientation; only the word
    // content matters for the lookup, not arrow directions.
    PathIndex pidx(quiver, paths_by_len_, int(paths_by_len_.size()) - 1);
    std::vector<Scalar> v(size_t(pidx.total), field.zero());
    v[size_t(pidx.col(w, -1))] = field.one();
    reduce_vec(field, ideal_rref_, ideal_pivots_, v);
    // read coordinates of the surviving (non-pivot) columns in basis order
    std::vector<bool> is_pivot(size_t(pidx.total), false);
    for (int p : ideal_pivots_) is_pivot[size_t(p)] = true;
    AlgebraElem out = zero_elem();
    int bi = 0;
    for (int c = pidx.total - 1; c >= 0; --c) {
        if (is_pivot[size_t(c)]) continue;
        out[size_t(bi)] = v[size_t(c)];
        ++bi;
    }
    return out;
}

int BasedAlgebra::mono_target(int i) const {
    const Monomial& m = basis[size_t(i)];
    return m.arrows.empty() ? m.vertex : quiver.arrows[size_t(m.arrows.back())].dst;
}

int BasedAlgebra::arrow_basis_index(int a) const {
    for (int i = 0; i < dim(); ++i)
        if (basis[size_t(i)].arrows == std::vector<int>{a}) return i;
    throw SiltError("arrow not in basis (ideal not admissible?)");
}

std::vector<int> BasedAlgebra::peirce(int i, int j) const {
    std::vector<int> out;
    for (int k = 0; k < dim(); ++k)
        if (mono_source(k) == i && mono_target(k) == j) out.push_back(k);
    return out;
}

AlgebraElem BasedAlgebra::unit() const {
    AlgebraElem e = zero_elem();
    for (int v = 0; v < num_vertices(); ++v) e[size_t(v)] = field.one();
    return e;
}

AlgebraElem BasedAlgebra::basis_elem(int i) const {
    AlgebraElem e = zero_elem();
    e[size_t(i)] = field.one();
    return e;
}

AlgebraElem BasedAlgebra::path_element(const std::vector<int>& arrows) const {
    if (arrows.empty()) throw SiltError("path_element needs a nonempty word");
    for (size_t i = 0; i + 1 < arrows.size(); ++i)
        if (quiver.arrows[size_t(arrows[i])].dst != quiver.arrows[size_t(arrows[i + 1])].src)
            return zero_elem();
    return reduce_path(arrows);
}

std::string BasedAlgebra::mono_str(int i) const {
    const Monomial& m = basis[size_t(i)];
    if (m.arrows.empty()) return "e_" + quiver.vertices[size_t(m.vertex)];
    std::string s;
    for (size_t k = 0; k < m.arrows.size(); ++k) {
        if (k) s += "*";
        s += quiver.arrows[size_t(m.arrows[k])].label;
    }
    return s;
}

std::string BasedAlgebra::elem_str(const AlgebraElem& x) const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < dim(); ++i) {
        if (x[size_t(i)] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (x[size_t(i)] != 1) os << scalar_str(x[size_t(i)]) << "*";
        os << mono_str(i);
    }
    return first ? "0" : os.str();
}

AlgebraElem elem_add(const BasedAlgebra& a, const AlgebraElem& x, const AlgebraElem& y) {
    AlgebraElem r = x;
    for (size_t i = 0; i < r.size(); ++i) r[i] = a.field.add(r[i], y[i]);
    return r;
}

AlgebraElem elem_sub(const BasedAlgebra& a, const AlgebraElem& x, const AlgebraElem& y) {
    AlgebraElem r = x;
    for (size_t i = 0; i < r.size(); ++i) r[i] = a.field.sub(r[i], y[i]);
    return r;
}

AlgebraElem elem_scaled(const BasedAlgebra& a, const AlgebraElem& x, const Scalar& c) {
    AlgebraElem r = x;
    for (auto& v : r) v = a.field.mul(v, c);
    return r;
}

bool elem_is_zero(const AlgebraElem& x) {
    for (const auto& v : x)
        if (v != 0) return false;
    return true;
}

AlgebraElem multiply(const BasedAlgebra& a, const AlgebraElem& x, const AlgebraElem& y) {
    AlgebraElem r = a.zero_elem();
    for (int i = 0; i < a.dim(); ++i) {
        if (x[size_t(i)] == 0) continue;
        for (int j = 0; j < a.dim(); ++j) {
            if (y[size_t(j)] == 0) continue;
            Scalar c = a.field.mul(x[size_t(i)], y[size_t(j)]);
            const AlgebraElem& t = a.table_entry(i, j);
            for (int k = 0; k < a.dim(); ++k)
                if (t[size_t(k)] != 0) r[size_t(k)] = a.field.add(r[size_t(k)], a.field.mul(c, t[size_t(k)]));
        }
    }
    return r;
}

BasedAlgebra opposite_algebra(const BasedAlgebra& a) {
    BasedAlgebra op(a.field);
    op.quiver.vertices = a.quiver.vertices;
    for (const auto& ar : a.quiver.arrows) op.quiver.arrows.push_back({ar.label, ar.dst, ar.src});
    op.nilpotency = a.nilpotency;
    op.reversed_ = !a.reversed_;
    op.paths_by_len_ = a.paths_by_len_;
    op.ideal_rref_ = a.ideal_rref_;
    op.ideal_pivots_ = a.ideal_pivots_;
    for (int i = 0; i < a.dim(); ++i) {
        Monomial m;
        m.arrows = a.basis[size_t(i)].arrows;
        std::reverse(m.arrows.begin(), m.arrows.end());
        m.vertex = a.mono_target(i);
        op.basis.push_back(std::move(m));
    }
    int d = a.dim();
    op.table_.assign(size_t(d) * size_t(d), op.zero_elem());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            op.table_[size_t(i) * size_t(d) + size_t(j)] = a.table_entry(j, i);
    return op;
}

} // namespace siltlab
