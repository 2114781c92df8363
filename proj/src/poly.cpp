#include "siltlab/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace siltlab {

Poly::Poly(Field f, std::vector<Scalar> coeffs) : field_(f), c_(std::move(coeffs)) {
    for (auto& v : c_) v = field_.norm(v);
    trim();
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::x(Field f) { return Poly(f, {f.zero(), f.one()}); }

Poly Poly::constant(Field f, const Scalar& c) { return Poly(f, {c}); }

const Scalar& Poly::coeff(int i) const {
    static const Scalar zero(0);
    return (i >= 0 && i < int(c_.size())) ? c_[size_t(i)] : zero;
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Scalar> r(std::max(c_.size(), o.c_.size()), field_.zero());
    for (size_t i = 0; i < r.size(); ++i) r[i] = field_.add(coeff(int(i)), o.coeff(int(i)));
    return Poly(field_, std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
    std::vector<Scalar> r(std::max(c_.size(), o.c_.size()), field_.zero());
    for (size_t i = 0; i < r.size(); ++i) r[i] = field_.sub(coeff(int(i)), o.coeff(int(i)));
    return Poly(field_, std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly(field_);
    std::vector<Scalar> r(c_.size() + o.c_.size() - 1, field_.zero());
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j)
            r[i + j] = field_.add(r[i + j], field_.mul(c_[i], o.c_[j]));
    return Poly(field_, std::move(r));
}

Poly Poly::scaled(const Scalar& s) const {
    std::vector<Scalar> r = c_;
    for (auto& v : r) v = field_.mul(v, s);
    return Poly(field_, std::move(r));
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(field_.inv(c_.back()));
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly(field_);
    std::vector<Scalar> r(c_.size() - 1, field_.zero());
    for (size_t i = 1; i < c_.size(); ++i)
        r[i - 1] = field_.mul(c_[i], field_.from_long(long(i)));
    return Poly(field_, std::move(r));
}

Poly Poly::pow(unsigned long k) const {
    Poly acc = constant(field_, field_.one());
    Poly base = *this;
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    if (d.is_zero()) throw SiltError("polynomial division by zero");
    Poly q(field_), r = *this;
    std::vector<Scalar> qc(r.c_.size() > d.c_.size() ? r.c_.size() - d.c_.size() + 1 : 1,
                           field_.zero());
    Scalar lead_inv = field_.inv(d.c_.back());
    while (!r.is_zero() && r.degree() >= d.degree()) {
        int shift = r.degree() - d.degree();
        Scalar c = field_.mul(r.c_.back(), lead_inv);
        qc[size_t(shift)] = field_.add(qc[size_t(shift)], c);
        for (int i = 0; i <= d.degree(); ++i) {
            size_t k = size_t(i + shift);
            r.c_[k] = field_.sub(r.c_[k], field_.mul(c, d.c_[size_t(i)]));
        }
        r.trim();
    }
    return {Poly(field_, std::move(qc)), r};
}

Scalar Poly::eval(const Scalar& x) const {
    Scalar acc = field_.zero();
    for (size_t i = c_.size(); i-- > 0;) acc = field_.add(field_.mul(acc, x), c_[i]);
    return acc;
}

Matrix Poly::eval(const Matrix& m) const {
    Matrix acc = Matrix::zero(field_, m.rows(), m.cols());
    for (size_t i = c_.size(); i-- > 0;) {
        acc = acc * m;
        for (int r = 0; r < m.rows(); ++r)
            acc.set(r, r, field_.add(acc.at(r, r), c_[i]));
    }
    return acc;
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (os.tellp() > 0) os << " + ";
        os << scalar_str(c_[i]);
        if (i > 0) os << "*x^" << i;
    }
    return os.str();
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x.divmod(y).second;
        x = y;
        y = r;
    }
    return x.monic();
}

Poly extended_gcd(const Poly& a, const Poly& b, Poly& u, Poly& v) {
    const Field f = a.field();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::constant(f, f.one()), s1 = Poly(f);
    Poly t0 = Poly(f), t1 = Poly::constant(f, f.one());
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        Poly s = s0 - q * s1, t = t0 - q * t1;
        r0 = r1; r1 = r;
        s0 = s1; s1 = s;
        t0 = t1; t1 = t;
    }
    Scalar lc_inv = f.inv(r0.coeffs().back());
    u = s0.scaled(lc_inv);
    v = t0.scaled(lc_inv);
    return r0.monic();
}

namespace {

// --- Berlekamp over a prime field (squarefree monic input) ---

Poly x_pow_mod(const Poly& f, unsigned long e) {
    const Field fl = f.field();
    Poly acc = Poly::constant(fl, fl.one());
    Poly base = Poly::x(fl).divmod(f).second;
    while (e) {
        if (e & 1) acc = (acc * base).divmod(f).second;
        base = (base * base).divmod(f).second;
        e >>= 1;
    }
    return acc;
}

std::vector<Poly> berlekamp_squarefree(const Poly& f) {
    const Field fl = f.field();
    const long p = fl.p();
    const int n = f.degree();
    if (n == 1) return {f};
    // Frobenius matrix: row i holds x^{i*p} mod f.
    Matrix Q(fl, n, n);
    Poly xp = x_pow_mod(f, (unsigned long)p);
    Poly cur = Poly::constant(fl, fl.one());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= cur.degree(); ++j) Q.set(i, j, cur.coeff(j));
        cur = (cur * xp).divmod(f).second;
    }
    Matrix ker = left_kernel(Q - Matrix::identity(fl, n));
    int k = ker.rows();
    std::vector<Poly> factors = {f};
    if (k <= 1) return factors;
    for (int b = 0; b < ker.rows() && int(factors.size()) < k; ++b) {
        std::vector<Scalar> vc(size_t(n), fl.zero());
        for (int j = 0; j < n; ++j) vc[size_t(j)] = ker.at(b, j);
        Poly v(fl, std::move(vc));
        if (v.degree() <= 0) continue;
        std::vector<Poly> next;
        for (const Poly& u : factors) {
            if (u.degree() <= 1 || int(factors.size()) + int(next.size()) >= k) {
                next.push_back(u);
                continue;
            }
            Poly rest = u;
            for (long c = 0; c < p && rest.degree() > 0; ++c) {
                Poly g = gcd(rest, v - Poly::constant(fl, fl.from_long(c)));
                if (g.degree() > 0 && g.degree() < rest.degree()) {
                    next.push_back(g);
                    rest = rest.divmod(g).first.monic();
                }
            }
            if (rest.degree() > 0) next.push_back(rest);
        }
        factors = next;
    }
    return factors;
}

// --- Rational factorisation (squarefree monic input) ---

std::vector<mpz_class> divisors_of(const mpz_class& n_in) {
    mpz_class n = abs(n_in);
    if (n == 0) throw SiltError("divisors of zero");
    std::vector<std::pair<mpz_class, int>> pf;
    mpz_class rest = n;
    for (long d = 2; d <= 1000000 && mpz_class(d) * d <= rest; ++d) {
        if (rest % d == 0) {
            int e = 0;
            while (rest % d == 0) {
                rest /= d;
                ++e;
            }
            pf.push_back({mpz_class(d), e});
        }
    }
    if (rest > 1) {
        if (mpz_probab_prime_p(rest.get_mpz_t(), 30) == 0)
            throw DegreeCapExceeded("constant term too hard to factor: " + n.get_str());
        pf.push_back({rest, 1});
    }
    std::vector<mpz_class> divs = {mpz_class(1)};
    for (auto& [q, e] : pf) {
        size_t sz = divs.size();
        mpz_class qe(1);
        for (int i = 1; i <= e; ++i) {
            qe *= q;
            for (size_t j = 0; j < sz; ++j) divs.push_back(divs[j] * qe);
        }
        if (divs.size() > 4096) throw DegreeCapExceeded("too many divisors");
    }
    return divs;
}

// Integer polynomial helpers on plain mpz vectors (low degree first).
mpz_class ipoly_eval(const std::vector<mpz_class>& f, const mpz_class& x) {
    mpz_class acc = 0;
    for (size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
    return acc;
}

Poly poly_from_ints(Field fl, const std::vector<mpz_class>& f) {
    std::vector<Scalar> c;
    c.reserve(f.size());
    for (const auto& v : f) c.push_back(Scalar(v));
    return Poly(fl, std::move(c));
}

std::vector<mpz_class> ipoly_from_poly(const Poly& f) {
    // Clear denominators and content; returns a primitive integer polynomial
    // with the same roots.
    mpz_class den(1);
    for (const auto& c : f.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<mpz_class> r;
    for (const auto& c : f.coeffs()) r.push_back(mpz_class(c * Scalar(den)));
    mpz_class content(0);
    for (const auto& v : r) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    if (content > 1)
        for (auto& v : r) v /= content;
    if (!r.empty() && r.back() < 0)
        for (auto& v : r) v = -v;
    return r;
}

void q_factor_squarefree(const Poly& f, std::vector<Poly>& out);

// Kronecker interpolation search for a nontrivial factor; returns false if
// the polynomial is irreducible.
bool kronecker_split(const Poly& f, Poly& g_out) {
    const Field fl = f.field();
    const int n = f.degree();
    if (n > 12) throw DegreeCapExceeded("factorisation degree cap exceeded");
    std::vector<mpz_class> F = ipoly_from_poly(f);
    for (int d = 2; d <= n / 2; ++d) {
        // Sample points 0, 1, -1, 2, -2, ...
        std::vector<mpz_class> pts;
        for (int k = 0; int(pts.size()) <= d; ++k) {
            pts.push_back(k == 0 ? mpz_class(0) : mpz_class((k + 1) / 2 * ((k % 2) ? 1 : -1)));
        }
        std::vector<std::vector<mpz_class>> cand(size_t(d) + 1);
        unsigned long total = 1;
        for (int i = 0; i <= d; ++i) {
            auto divs = divisors_of(ipoly_eval(F, pts[size_t(i)]));
            for (const auto& v : divs) {
                cand[size_t(i)].push_back(v);
                cand[size_t(i)].push_back(-v);
            }
            total *= (unsigned long)cand[size_t(i)].size();
            if (total > 200000) throw DegreeCapExceeded("Kronecker search too large");
        }
        std::vector<size_t> idx(size_t(d) + 1, 0);
        while (true) {
            // Lagrange-interpolate candidate values at the sample points.
            Poly g(fl);
            for (int i = 0; i <= d; ++i) {
                Poly li = Poly::constant(fl, fl.one());
                Scalar denom = fl.one();
                for (int j = 0; j <= d; ++j) {
                    if (j == i) continue;
                    li = li * (Poly::x(fl) - Poly::constant(fl, Scalar(pts[size_t(j)])));
                    denom = fl.mul(denom, Scalar(pts[size_t(i)] - pts[size_t(j)]));
                }
                g = g + li.scaled(fl.div(Scalar(cand[size_t(i)][idx[size_t(i)]]), denom));
            }
            if (g.degree() == d) {
                bool integral = true;
                for (const auto& c : g.coeffs())
                    if (c.get_den() != 1) integral = false;
                if (integral && f.divmod(g.monic()).second.is_zero()) {
                    g_out = g.monic();
                    return true;
                }
            }
            // Advance the multi-index.
            int pos = 0;
            while (pos <= d) {
                if (++idx[size_t(pos)] < cand[size_t(pos)].size()) break;
                idx[size_t(pos)] = 0;
                ++pos;
            }
            if (pos > d) break;
        }
    }
    return false;
}

void q_factor_squarefree(const Poly& f_in, std::vector<Poly>& out) {
    Poly f = f_in.monic();
    if (f.degree() <= 0) return;
    if (f.degree() == 1) {
        out.push_back(f);
        return;
    }
    const Field fl = f.field();
    // Strip rational roots first.
    std::vector<mpz_class> F = ipoly_from_poly(f);
    if (F.front() == 0) {
        out.push_back(Poly::x(fl));
        q_factor_squarefree(f.divmod(Poly::x(fl)).first, out);
        return;
    }
    for (const auto& num : divisors_of(F.front()))
        for (const auto& den : divisors_of(F.back()))
            for (int sign = 0; sign < 2; ++sign) {
                Scalar r(sign ? -num : num, den);
                r.canonicalize();
                if (f.eval(r) == 0) {
                    Poly lin = Poly::x(fl) - Poly::constant(fl, r);
                    out.push_back(lin);
                    q_factor_squarefree(f.divmod(lin).first, out);
                    return;
                }
            }
    if (f.degree() <= 3) { // no rational root implies irreducible
        out.push_back(f);
        return;
    }
    Poly g(fl);
    if (kronecker_split(f, g)) {
        q_factor_squarefree(g, out);
        q_factor_squarefree(f.divmod(g).first, out);
    } else {
        out.push_back(f);
    }
}

void factor_rec(const Poly& f, std::map<std::vector<Scalar>, std::pair<Poly, int>>& acc);

void add_factor(const Poly& g, int mult,
                std::map<std::vector<Scalar>, std::pair<Poly, int>>& acc) {
    auto it = acc.find(g.coeffs());
    if (it == acc.end())
        acc.emplace(g.coeffs(), std::make_pair(g, mult));
    else
        it->second.second += mult;
}

void factor_rec(const Poly& f_in, std::map<std::vector<Scalar>, std::pair<Poly, int>>& acc) {
    Poly f = f_in.monic();
    if (f.degree() <= 0) return;
    if (f.degree() == 1) {
        add_factor(f, 1, acc);
        return;
    }
    const Field fl = f.field();
    Poly df = f.derivative();
    if (df.is_zero()) {
        // Characteristic p: f(x) = h(x)^p with h assembled from every p-th
        // coefficient (Frobenius fixes the prime field).
        long p = fl.p();
        std::vector<Scalar> hc;
        for (int i = 0; i <= f.degree(); i += int(p)) hc.push_back(f.coeff(i));
        std::map<std::vector<Scalar>, std::pair<Poly, int>> sub;
        factor_rec(Poly(fl, std::move(hc)), sub);
        for (auto& [k, pv] : sub) add_factor(pv.first, pv.second * int(p), acc);
        return;
    }
    Poly g = gcd(f, df);
    if (g.degree() > 0) {
        factor_rec(f.divmod(g).first, acc);
        factor_rec(g, acc);
        return;
    }
    // Squarefree.
    if (fl.is_prime_field()) {
        for (const Poly& irr : berlekamp_squarefree(f)) add_factor(irr.monic(), 1, acc);
    } else {
        std::vector<Poly> out;
        q_factor_squarefree(f, out);
        for (const Poly& irr : out) add_factor(irr, 1, acc);
    }
}

} // namespace

std::vector<PolyFactor> factor(const Poly& f) {
    std::map<std::vector<Scalar>, std::pair<Poly, int>> acc;
    factor_rec(f, acc);
    std::vector<PolyFactor> out;
    for (auto& [k, pv] : acc) out.push_back({pv.first, pv.second});
    std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) {
        if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
        return a.factor.coeffs() < b.factor.coeffs();
    });
    return out;
}

Poly minimal_polynomial(const Matrix& m) {
    if (m.rows() != m.cols()) throw SiltError("minimal polynomial of non-square matrix");
    const Field fl = m.field();
    const int n = m.rows();
    if (n == 0) return Poly::constant(fl, fl.one());
    Poly result = Poly::constant(fl, fl.one());
    for (int start = 0; start < n; ++start) {
        Matrix v(fl, 1, n);
        v.set(0, start, fl.one());
        // Skip vectors already annihilated by the current candidate.
        if (result.eval(m).is_zero()) break;
        Matrix krylov = v;
        Matrix cur = v;
        Poly vp(fl);
        for (int k = 1; k <= n; ++k) {
            cur = cur * m;
            Matrix x;
            if (solve_left(krylov, cur, x)) {
                std::vector<Scalar> c(size_t(k) + 1, fl.zero());
                for (int j = 0; j < k; ++j) c[size_t(j)] = fl.neg(x.at(0, j));
                c[size_t(k)] = fl.one();
                vp = Poly(fl, std::move(c));
                break;
            }
            krylov = Matrix::vstack(krylov, cur);
        }
        Poly g = gcd(result, vp);
        result = (result * vp).divmod(g).first.monic();
        if (result.degree() == n) break;
    }
    return result;
}

std::vector<PolyFactor> minimal_polynomial_and_factor(const Matrix& m) {
    return factor(minimal_polynomial(m));
}

} // namespace siltlab
