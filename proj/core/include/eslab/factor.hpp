#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "eslab/integer.hpp"

namespace eslab {

// Prime factorization with primes strictly increasing. The empty list is 1.
struct Factorization {
    Int value{1};
    std::vector<std::pair<Int, unsigned>> factors;

    Int reconstruct() const;
};

// Trial division below 10^4, then deterministic Miller-Rabin plus Brent's
// variant of Pollard rho with the seed derived from the input, so the walk
// (and thus the output order of work) is reproducible per n.
// Throws std::domain_error for n = 0.
Factorization factorize(const Int& n);

// All divisors in strictly increasing order. Refuses to build more than
// 2^20 divisors (std::length_error) to guard pathological inputs.
std::vector<Int> divisors(const Factorization& f, std::size_t cap = std::size_t(1) << 20);

// Merge helpers used where a product n*a is factored from its parts.
Factorization merge(const Factorization& a, const Factorization& b);
Factorization square(const Factorization& f);
Factorization divide_out(const Factorization& f, const Factorization& g);

}  // namespace eslab
