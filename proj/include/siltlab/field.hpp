#pragma once

#include <gmpxx.h>

#include <random>
#include <string>

#include "siltlab/error.hpp"

namespace siltlab {

// Exact scalars. Rationals are plain mpq_class; prime-field values are
// stored as mpq_class integers in [0, p) so one scalar type serves both.
using Scalar = mpq_class;

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed = 0x5117ab) : eng(seed) {}
    long randint(long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(eng);
    }
};

class Field {
  public:
    enum class Kind { Rationals, Prime };

    static Field rationals() { return Field(Kind::Rationals, 0); }
    static Field prime(long p);

    Kind kind() const { return kind_; }
    long p() const { return p_; }
    bool is_prime_field() const { return kind_ == Kind::Prime; }
    long characteristic() const { return is_prime_field() ? p_ : 0; }

    bool operator==(const Field& other) const {
        return kind_ == other.kind_ && p_ == other.p_;
    }
    bool operator!=(const Field& other) const { return !(*this == other); }

    Scalar zero() const { return Scalar(0); }
    Scalar one() const { return Scalar(1); }

    // Canonical form: reduced fraction over Q, representative in [0, p)
    // over a prime field.
    Scalar norm(const Scalar& a) const;
    Scalar from_long(long v) const { return norm(Scalar(v)); }

    Scalar add(const Scalar& a, const Scalar& b) const { return norm(a + b); }
    Scalar sub(const Scalar& a, const Scalar& b) const { return norm(a - b); }
    Scalar mul(const Scalar& a, const Scalar& b) const { return norm(a * b); }
    Scalar neg(const Scalar& a) const { return norm(-a); }
    Scalar inv(const Scalar& a) const;
    Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }
    bool is_zero(const Scalar& a) const { return a == 0; }

    Scalar random(Rng& rng) const;

    std::string str() const;

  private:
    Field(Kind kind, long p) : kind_(kind), p_(p) {}
    Kind kind_;
    long p_;
};

std::string scalar_str(const Scalar& a);
Scalar scalar_parse(const std::string& text);

} // namespace siltlab
