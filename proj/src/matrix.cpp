#include "siltlab/matrix.hpp"

#include <cstdint>
#include <sstream>

namespace siltlab {

Matrix Matrix::identity(Field f, int n) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, f.one());
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& v : e_)
        if (v != 0) return false;
    return true;
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            if (at(r, c) != (r == c ? 1 : 0)) return false;
    return true;
}

bool Matrix::operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_ && e_ == o.e_;
}

Matrix Matrix::operator+(const Matrix& o) const {
    Matrix m(field_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = field_.add(e_[i], o.e_[i]);
    return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
    Matrix m(field_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = field_.sub(e_[i], o.e_[i]);
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    Matrix m(field_, rows_, o.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            const Scalar& a = at(r, k);
            if (a == 0) continue;
            for (int c = 0; c < o.cols_; ++c) {
                if (o.at(k, c) == 0) continue;
                m.e_[size_t(r) * o.cols_ + c] += a * o.at(k, c);
            }
        }
    for (auto& v : m.e_) v = field_.norm(v);
    return m;
}

Matrix Matrix::scaled(const Scalar& c) const {
    Matrix m(field_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = field_.mul(e_[i], c);
    return m;
}

Matrix Matrix::transpose() const {
    Matrix m(field_, cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) m.set(c, r, at(r, c));
    return m;
}

Matrix Matrix::pow(unsigned long k) const {
    Matrix acc = identity(field_, rows_);
    Matrix base = *this;
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
    Matrix m(a.field_, a.rows_, a.cols_ + b.cols_);
    for (int r = 0; r < a.rows_; ++r) {
        for (int c = 0; c < a.cols_; ++c) m.set(r, c, a.at(r, c));
        for (int c = 0; c < b.cols_; ++c) m.set(r, a.cols_ + c, b.at(r, c));
    }
    return m;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
    Matrix m(a.field_, a.rows_ + b.rows_, a.cols_);
    for (int r = 0; r < a.rows_; ++r)
        for (int c = 0; c < a.cols_; ++c) m.set(r, c, a.at(r, c));
    for (int r = 0; r < b.rows_; ++r)
        for (int c = 0; c < a.cols_; ++c) m.set(a.rows_ + r, c, b.at(r, c));
    return m;
}

Matrix Matrix::submatrix(int r0, int c0, int nrows, int ncols) const {
    Matrix m(field_, nrows, ncols);
    for (int r = 0; r < nrows; ++r)
        for (int c = 0; c < ncols; ++c) m.set(r, c, at(r0 + r, c0 + c));
    return m;
}

Matrix Matrix::cols_selected(const std::vector<int>& idx) const {
    Matrix m(field_, rows_, int(idx.size()));
    for (int r = 0; r < rows_; ++r)
        for (size_t c = 0; c < idx.size(); ++c) m.set(r, int(c), at(r, idx[c]));
    return m;
}

Matrix Matrix::rows_selected(const std::vector<int>& idx) const {
    Matrix m(field_, int(idx.size()), cols_);
    for (size_t r = 0; r < idx.size(); ++r)
        for (int c = 0; c < cols_; ++c) m.set(int(r), c, at(idx[r], c));
    return m;
}

std::string Matrix::str() const {
    std::ostringstream os;
    for (int r = 0; r < rows_; ++r) {
        os << (r ? "; " : "[");
        for (int c = 0; c < cols_; ++c) os << (c ? " " : "") << scalar_str(at(r, c));
    }
    os << "]";
    return os.str();
}

namespace {

// Fraction-free Gauss-Jordan (Montante/Bareiss) over Z. Rational input is
// cleared of denominators row by row; all divisions below are exact, so the
// intermediate entries stay minors of the integer matrix and no mpq gcd
// normalisation happens in the inner loop.
Rref rref_rationals(const Matrix& m) {
    Rref out;
    out.r = Matrix(m.field(), m.rows(), m.cols());
    int nr = m.rows(), nc = m.cols();
    std::vector<std::vector<mpz_class>> a((size_t)nr, std::vector<mpz_class>((size_t)nc));
    for (int r = 0; r < nr; ++r) {
        mpz_class l = 1;
        for (int c = 0; c < nc; ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(),
                                             m.at(r, c).get_den().get_mpz_t());
        for (int c = 0; c < nc; ++c) {
            mpq_class v = m.at(r, c) * l;
            a[(size_t)r][(size_t)c] = v.get_num();
        }
    }
    std::vector<int> prow; // pivot row index per pivot, in order
    mpz_class prev = 1;
    int lead = 0;
    for (int c = 0; c < nc && lead < nr; ++c) {
        int piv = -1;
        for (int r = lead; r < nr; ++r) {
            if (a[(size_t)r][(size_t)c] == 0) continue;
            if (piv < 0 || mpz_cmpabs(a[(size_t)r][(size_t)c].get_mpz_t(),
                                      a[(size_t)piv][(size_t)c].get_mpz_t()) < 0)
                piv = r;
        }
        if (piv < 0) continue;
        if (piv != lead) std::swap(a[(size_t)piv], a[(size_t)lead]);
        const mpz_class p = a[(size_t)lead][(size_t)c];
        for (int r = 0; r < nr; ++r) {
            if (r == lead) continue;
            auto& row = a[(size_t)r];
            const auto& lrow = a[(size_t)lead];
            const mpz_class s = row[(size_t)c];
            if (s == 0) {
                if (prev != 1)
                    for (int k = 0; k < nc; ++k) {
                        if (row[(size_t)k] == 0) continue;
                        row[(size_t)k] *= p;
                        mpz_divexact(row[(size_t)k].get_mpz_t(), row[(size_t)k].get_mpz_t(),
                                     prev.get_mpz_t());
                    }
                else
                    for (int k = 0; k < nc; ++k) row[(size_t)k] *= p;
                continue;
            }
            for (int k = 0; k < nc; ++k) {
                row[(size_t)k] = row[(size_t)k] * p - s * lrow[(size_t)k];
                if (prev != 1 && row[(size_t)k] != 0)
                    mpz_divexact(row[(size_t)k].get_mpz_t(), row[(size_t)k].get_mpz_t(),
                                 prev.get_mpz_t());
            }
        }
        prev = p;
        out.pivots.push_back(c);
        prow.push_back(lead);
        ++lead;
    }
    // pivot rows all carry pivot value prev; divide through to normalise
    for (size_t i = 0; i < prow.size(); ++i) {
        int r = prow[i];
        for (int k = 0; k < nc; ++k) {
            if (a[(size_t)r][(size_t)k] == 0) continue;
            mpq_class v(a[(size_t)r][(size_t)k], prev);
            v.canonicalize();
            out.r.set(r, k, v);
        }
    }
    out.rank = int(out.pivots.size());
    return out;
}

} // namespace

Rref rref(const Matrix& m) {
    const Field& f = m.field();
    if (f.characteristic() == 0) return rref_rationals(m);
    Rref out;
    out.r = m;
    int lead = 0;
    for (int c = 0; c < m.cols() && lead < m.rows(); ++c) {
        int piv = -1;
        for (int r = lead; r < m.rows(); ++r)
            if (out.r.at(r, c) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != lead)
            for (int k = 0; k < m.cols(); ++k) {
                Scalar t = out.r.at(piv, k);
                out.r.set(piv, k, out.r.at(lead, k));
                out.r.set(lead, k, t);
            }
        Scalar inv = f.inv(out.r.at(lead, c));
        for (int k = c; k < m.cols(); ++k) out.r.set(lead, k, f.mul(out.r.at(lead, k), inv));
        for (int r = 0; r < m.rows(); ++r) {
            if (r == lead) continue;
            Scalar s = out.r.at(r, c);
            if (s == 0) continue;
            for (int k = c; k < m.cols(); ++k)
                out.r.set(r, k, f.sub(out.r.at(r, k), f.mul(s, out.r.at(lead, k))));
        }
        out.pivots.push_back(c);
        ++lead;
    }
    out.rank = int(out.pivots.size());
    return out;
}

namespace {

// ---- multi-modular kernel over Q ----
//
// Large kernel computations go through word-size prime fields: eliminate the
// integer matrix mod p, CRT the echelon entries over several primes, recover
// rationals by rational reconstruction and verify A*K = 0 exactly. The
// verified vectors are independent by their echelon pattern, and their count
// (cols - rank mod p) cannot exceed the true nullity, so success certifies
// the exact kernel; unlucky primes only cost extra rounds.

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) { return a * b % p; }

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

struct ModEchelon {
    int rank = 0;
    std::vector<int> pivots;
    std::vector<int> free_cols;
    // reduced echelon values at (pivot row i, free column j)
    std::vector<std::vector<uint64_t>> entry;
};

ModEchelon echelon_mod_p(const std::vector<std::vector<mpz_class>>& a, uint64_t p) {
    int nr = int(a.size()), nc = nr ? int(a[0].size()) : 0;
    std::vector<std::vector<uint64_t>> w((size_t)nr, std::vector<uint64_t>((size_t)nc));
    for (int r = 0; r < nr; ++r)
        for (int c = 0; c < nc; ++c)
            w[(size_t)r][(size_t)c] = mpz_fdiv_ui(a[(size_t)r][(size_t)c].get_mpz_t(), p);
    ModEchelon out;
    int lead = 0;
    for (int c = 0; c < nc && lead < nr; ++c) {
        int piv = -1;
        for (int r = lead; r < nr; ++r)
            if (w[(size_t)r][(size_t)c]) {
                piv = r;
                break;
            }
        if (piv < 0) {
            out.free_cols.push_back(c);
            continue;
        }
        if (piv != lead) std::swap(w[(size_t)piv], w[(size_t)lead]);
        auto& lrow = w[(size_t)lead];
        uint64_t inv = powmod(lrow[(size_t)c], p - 2, p);
        for (int k = c; k < nc; ++k) lrow[(size_t)k] = mulmod(lrow[(size_t)k], inv, p);
        for (int r = 0; r < nr; ++r) {
            if (r == lead) continue;
            uint64_t s = w[(size_t)r][(size_t)c];
            if (!s) continue;
            uint64_t ns = p - s;
            auto& row = w[(size_t)r];
            for (int k = c; k < nc; ++k)
                row[(size_t)k] = (row[(size_t)k] + ns * lrow[(size_t)k]) % p;
        }
        out.pivots.push_back(c);
        ++lead;
    }
    for (int c = out.pivots.empty() ? 0 : out.pivots.back() + 1; c < nc; ++c)
        if (out.free_cols.empty() || out.free_cols.back() < c) out.free_cols.push_back(c);
    out.rank = int(out.pivots.size());
    out.entry.assign((size_t)out.rank, std::vector<uint64_t>(out.free_cols.size()));
    for (int i = 0; i < out.rank; ++i)
        for (size_t j = 0; j < out.free_cols.size(); ++j)
            out.entry[(size_t)i][j] = w[(size_t)i][(size_t)out.free_cols[j]];
    return out;
}

// n/d with x*d = n (mod m), |n|, d <= sqrt(m/2); false if none exists
bool rational_reconstruct(const mpz_class& x, const mpz_class& m, mpq_class& out) {
    mpz_class bound;
    mpz_class half = (m - 1) / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    mpz_class r0 = m, r1 = x % m, t0 = 0, t1 = 1;
    if (r1 < 0) r1 += m;
    while (r1 > bound) {
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1, t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (t1 == 0 || abs(t1) > bound) return false;
    mpz_class num = r1, den = t1;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g != 1) return false;
    out = mpq_class(num, den);
    out.canonicalize();
    return true;
}

const uint64_t kKernelPrimes[] = {2147483647ull, 2147483629ull, 2147483587ull, 2147483579ull,
                                  2147483563ull, 2147483549ull, 2147483543ull, 2147483497ull,
                                  2147483489ull, 2147483477ull, 2147483423ull, 2147483399ull,
                                  2147483353ull, 2147483323ull, 2147483269ull, 2147483249ull};

bool kernel_rationals_modular(const Matrix& m, Matrix& out) {
    int nr = m.rows(), nc = m.cols();
    std::vector<std::vector<mpz_class>> a((size_t)nr, std::vector<mpz_class>((size_t)nc));
    for (int r = 0; r < nr; ++r) {
        mpz_class l = 1;
        for (int c = 0; c < nc; ++c)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(r, c).get_den().get_mpz_t());
        for (int c = 0; c < nc; ++c) {
            mpq_class v = m.at(r, c) * l;
            a[(size_t)r][(size_t)c] = v.get_num();
        }
    }
    ModEchelon best;
    bool have = false;
    std::vector<std::vector<mpz_class>> crt; // accumulated residues
    mpz_class modulus = 1;
    for (uint64_t p : kKernelPrimes) {
        ModEchelon me = echelon_mod_p(a, p);
        if (!have || me.rank > best.rank ||
            (me.rank == best.rank && me.pivots < best.pivots)) {
            // previous primes were unlucky (rank drop shifts pivots right)
            best = me;
            have = true;
            crt.assign((size_t)me.rank, std::vector<mpz_class>(me.free_cols.size(), 0));
            modulus = 1;
        } else if (me.pivots != best.pivots) {
            continue; // this prime is the unlucky one
        }
        // CRT step
        mpz_class pz(static_cast<unsigned long>(p));
        if (modulus == 1) {
            for (int i = 0; i < best.rank; ++i)
                for (size_t j = 0; j < best.free_cols.size(); ++j)
                    crt[(size_t)i][j] = mpz_class(static_cast<unsigned long>(me.entry[(size_t)i][j]));
            modulus = pz;
        } else {
            mpz_class minv;
            mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), pz.get_mpz_t());
            mpz_class newmod = modulus * pz;
            for (int i = 0; i < best.rank; ++i)
                for (size_t j = 0; j < best.free_cols.size(); ++j) {
                    mpz_class& x = crt[(size_t)i][j];
                    mpz_class r = mpz_class(static_cast<unsigned long>(me.entry[(size_t)i][j])) - x;
                    mpz_class k = (r * minv) % pz;
                    if (k < 0) k += pz;
                    x += k * modulus;
                }
            modulus = newmod;
        }
        // attempt reconstruction + exact verification
        int nk = int(best.free_cols.size());
        Matrix k(m.field(), nc, nk);
        bool ok = true;
        for (int i = 0; i < best.rank && ok; ++i)
            for (int j = 0; j < nk && ok; ++j) {
                mpq_class v;
                if (!rational_reconstruct(crt[(size_t)i][j], modulus, v)) {
                    ok = false;
                    break;
                }
                k.set(best.pivots[(size_t)i], j, -v);
            }
        if (!ok) continue;
        for (int j = 0; j < nk; ++j) k.set(best.free_cols[(size_t)j], j, 1);
        // verify A * K = 0 exactly, column by column over Z
        for (int j = 0; j < nk && ok; ++j) {
            mpz_class den = 1;
            for (int c = 0; c < nc; ++c)
                mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), k.at(c, j).get_den().get_mpz_t());
            std::vector<mpz_class> col((size_t)nc);
            for (int c = 0; c < nc; ++c) {
                mpq_class v = k.at(c, j) * den;
                col[(size_t)c] = v.get_num();
            }
            mpz_class acc;
            for (int r = 0; r < nr && ok; ++r) {
                acc = 0;
                for (int c = 0; c < nc; ++c)
                    if (col[(size_t)c] != 0 && a[(size_t)r][(size_t)c] != 0)
                        acc += a[(size_t)r][(size_t)c] * col[(size_t)c];
                if (acc != 0) ok = false;
            }
        }
        if (ok) {
            out = k;
            return true;
        }
    }
    return false;
}

} // namespace

int rank(const Matrix& m) {
    if (m.field().characteristic() == 0 &&
        double(m.rows()) * m.cols() * std::min(m.rows(), m.cols()) > 4e5) {
        Matrix k;
        if (kernel_rationals_modular(m, k)) return m.cols() - k.cols();
    }
    return rref(m).rank;
}

Matrix kernel_basis(const Matrix& m) {
    const Field& f = m.field();
    if (f.characteristic() == 0 &&
        double(m.rows()) * m.cols() * std::min(m.rows(), m.cols()) > 4e5) {
        Matrix k;
        if (kernel_rationals_modular(m, k)) return k;
    }
    Rref rr = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : rr.pivots) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Matrix k(f, m.cols(), int(free_cols.size()));
    for (size_t j = 0; j < free_cols.size(); ++j) {
        int fc = free_cols[j];
        k.set(fc, int(j), f.one());
        for (size_t r = 0; r < rr.pivots.size(); ++r)
            k.set(rr.pivots[r], int(j), f.neg(rr.r.at(int(r), fc)));
    }
    return k;
}

Matrix left_kernel(const Matrix& m) { return kernel_basis(m.transpose()).transpose(); }

Matrix row_space(const Matrix& m) {
    Rref rr = rref(m);
    std::vector<int> keep;
    for (int r = 0; r < rr.rank; ++r) keep.push_back(r);
    return rr.r.rows_selected(keep);
}

bool invertible(const Matrix& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw SiltError("inverse of non-square matrix");
    Rref rr = rref(Matrix::hstack(m, Matrix::identity(m.field(), m.rows())));
    if (rr.rank != m.rows()) throw SiltError("matrix not invertible");
    return rr.r.submatrix(0, m.cols(), m.rows(), m.cols());
}

bool solve_left(const Matrix& a, const Matrix& b, Matrix& x) {
    // Find x with x * a = b: transpose to a^T x^T = b^T and eliminate.
    Matrix at = a.transpose(), bt = b.transpose();
    const Field& f = a.field();
    Rref rr = rref(Matrix::hstack(at, bt));
    // Any row with zero coefficient part but nonzero rhs is inconsistent.
    Matrix xt(f, a.rows(), b.rows());
    std::vector<int> pivot_of_col(at.cols(), -1);
    for (size_t i = 0; i < rr.pivots.size(); ++i) {
        if (rr.pivots[i] >= at.cols()) return false; // pivot in rhs block
        pivot_of_col[rr.pivots[i]] = int(i);
    }
    for (int c = 0; c < at.cols(); ++c) {
        int pr = pivot_of_col[c];
        if (pr < 0) continue;
        for (int j = 0; j < b.rows(); ++j) xt.set(c, j, rr.r.at(pr, at.cols() + j));
    }
    x = xt.transpose();
    return (x * a) == b;
}

Matrix quotient_projection(const Matrix& w, int n) {
    const Field& f = w.field();
    Rref rr = rref(w);
    std::vector<bool> is_pivot(n, false);
    for (int c : rr.pivots) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < n; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    // v maps to the free coordinates of v reduced modulo the rows of rr.
    Matrix proj(f, n, int(free_cols.size()));
    for (int c = 0; c < n; ++c) {
        // Reduce basis vector e_c.
        std::vector<Scalar> v(size_t(n), f.zero());
        v[c] = f.one();
        for (size_t r = 0; r < rr.pivots.size(); ++r) {
            Scalar coef = v[rr.pivots[r]];
            if (coef == 0) continue;
            for (int k = 0; k < n; ++k) v[k] = f.sub(v[k], f.mul(coef, rr.r.at(int(r), k)));
        }
        for (size_t j = 0; j < free_cols.size(); ++j) proj.set(c, int(j), v[free_cols[j]]);
    }
    return proj;
}

Matrix coordinates(const Matrix& basis, const Matrix& v) {
    Matrix x;
    if (!solve_left(basis, v, x)) throw SiltError("vector outside span");
    return x;
}

Matrix random_matrix(Field f, int rows, int cols, Rng& rng) {
    Matrix m(f, rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m.set(r, c, f.random(rng));
    return m;
}

} // namespace siltlab
