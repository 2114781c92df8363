#include "siltlab/field.hpp"

namespace siltlab {

namespace {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace

Field Field::prime(long p) {
    if (!is_prime(p)) throw SiltError("field modulus " + std::to_string(p) + " is not prime");
    return Field(Kind::Prime, p);
}

Scalar Field::norm(const Scalar& a) const {
    if (kind_ == Kind::Rationals) {
        Scalar r = a;
        r.canonicalize();
        return r;
    }
    // a is an integer combination of residues; reduce numerator * den^{-1} mod p.
    Scalar r = a;
    r.canonicalize();
    mpz_class num = r.get_num(), den = r.get_den();
    mpz_class p(p_), res;
    if (den != 1) {
        mpz_class dinv;
        if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
            throw SiltError("denominator not invertible mod p");
        num *= dinv;
    }
    mpz_mod(res.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
    return Scalar(res);
}

Scalar Field::inv(const Scalar& a) const {
    if (is_zero(a)) throw SiltError("division by zero");
    if (kind_ == Kind::Rationals) return norm(1 / a);
    mpz_class v = norm(a).get_num(), p(p_), r;
    if (mpz_invert(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t()) == 0)
        throw SiltError("non-invertible residue");
    return Scalar(r);
}

Scalar Field::random(Rng& rng) const {
    if (kind_ == Kind::Prime) return from_long(rng.randint(0, p_ - 1));
    return Scalar(rng.randint(-3, 3));
}

std::string Field::str() const {
    return kind_ == Kind::Rationals ? "Q" : "F" + std::to_string(p_);
}

std::string scalar_str(const Scalar& a) {
    return a.get_str();
}

Scalar scalar_parse(const std::string& text) {
    Scalar s;
    if (s.set_str(text, 10) != 0) throw ParseError("bad scalar: " + text);
    s.canonicalize();
    return s;
}

} // namespace siltlab
