#pragma once

#include <cstdint>
#include <vector>

#include "eslab/integer.hpp"

namespace eslab {

// Deterministic Miller-Rabin. The fixed witness set {2,3,...,37} is exact for
// n < 3.317e24; beyond that, extra witnesses are derived from n so the answer
// stays reproducible for a given input.
bool is_prime(const Int& n);
bool is_prime_u64(std::uint64_t n);

// Internal prime table, primes below 10^4, used for trial division.
const std::vector<std::uint32_t>& small_primes();

}  // namespace eslab
