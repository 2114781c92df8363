#pragma once

#include <vector>

#include "siltlab/matrix.hpp"

namespace siltlab {

// Dense univariate polynomial, coefficients low degree first, normalized so
// the leading coefficient is nonzero (empty vector = zero polynomial).
class Poly {
  public:
    explicit Poly(Field f) : field_(f) {}
    Poly(Field f, std::vector<Scalar> coeffs);

    static Poly x(Field f);
    static Poly constant(Field f, const Scalar& c);

    const Field& field() const { return field_; }
    int degree() const { return int(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const Scalar& coeff(int i) const;
    const std::vector<Scalar>& coeffs() const { return c_; }

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const Scalar& s) const;
    Poly monic() const;
    Poly derivative() const;
    Poly pow(unsigned long k) const;

    // Division with remainder; divisor must be nonzero.
    std::pair<Poly, Poly> divmod(const Poly& d) const;

    Scalar eval(const Scalar& x) const;
    Matrix eval(const Matrix& m) const;

    std::string str() const;

  private:
    void trim();
    Field field_;
    std::vector<Scalar> c_;
};

Poly gcd(const Poly& a, const Poly& b);
// g = u*a + v*b with g monic.
Poly extended_gcd(const Poly& a, const Poly& b, Poly& u, Poly& v);

struct PolyFactor {
    Poly factor; // monic irreducible
    int multiplicity;
};

// Complete factorisation into monic irreducibles (Berlekamp over a prime
// field, rational roots plus Kronecker interpolation over Q). Throws
// DegreeCapExceeded when the deterministic search over Q becomes infeasible.
std::vector<PolyFactor> factor(const Poly& f);

// Minimal polynomial of a square matrix (monic).
Poly minimal_polynomial(const Matrix& m);

std::vector<PolyFactor> minimal_polynomial_and_factor(const Matrix& m);

} // namespace siltlab
