#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace eslab {

// All public arithmetic is arbitrary precision. Fixed-width fast paths are
// internal to the implementation files.
using Int = mpz_class;
using Rational = mpq_class;

inline Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// floor(a / b), b > 0
inline Int fdiv(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// ceil(a / b), b > 0
inline Int cdiv(const Int& a, const Int& b) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int mod(const Int& a, const Int& b) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline bool divides(const Int& d, const Int& a) {
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline bool fits_u64(const Int& n) {
    return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 63;
}

inline std::uint64_t to_u64(const Int& n) { return mpz_get_ui(n.get_mpz_t()); }

inline bool is_perfect_square(const Int& n) {
    return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// Reduced fraction with positive denominator; throws on zero denominator.
inline Rational make_rational(const Int& num, const Int& den) {
    if (sgn(den) == 0) throw std::domain_error("make_rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational unit_fraction(const Int& d) { return make_rational(1, d); }

}  // namespace eslab
