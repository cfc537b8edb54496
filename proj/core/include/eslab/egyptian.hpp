#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "eslab/factor.hpp"
#include "eslab/integer.hpp"

namespace eslab {

// target == sum of 1/d over denominators; denominators are non-decreasing.
struct Decomposition {
    Rational target;
    std::vector<Int> denominators;

    Rational sum() const;
    bool valid() const;
};

// Witness for a two-term split of m/n: x*y divides n and x+y == 0 (mod m).
struct DivisorCertificate {
    Int x, y;
};

struct ClassCapExceeded : std::runtime_error {
    explicit ClassCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Every (a, b) with a <= b and 1/a + 1/b == m/n, sorted by a. Complete via
// the divisor parametrization d | n'^2, d <= n', d == -n' (mod m') on the
// reduced fraction m'/n'.
std::vector<std::pair<Int, Int>> two_term_all(const Int& m, const Int& n);

// Smallest certificate in (xy, x) order, or nullopt when none exists. For
// coprime m, n absence proves m/n is not a sum of two unit fractions.
std::optional<DivisorCertificate> find_certificate(const Int& m, const Int& n);

// a = ((x+y)/m) * (n/(xy)) * x and likewise for b. Throws on an invalid
// certificate.
Decomposition certificate_to_decomposition(const Int& m, const Int& n,
                                           const DivisorCertificate& cert);

// Smallest a in [floor(n/4)+1, min(a_max, floor(3n/4))] such that
// 4/n - 1/a splits into two unit fractions; ties broken by smallest b.
std::optional<Decomposition> three_term_bounded(const Int& n, const Int& a_max);

struct MinClassResult {
    int index;  // smallest i with a <= (n + 4i - 1)/4
    Decomposition witness;
};

// Class index via the smallest feasible a. The scan is capped at the a
// implied by class_cap; exceeding it throws ClassCapExceeded.
MinClassResult min_class(const Int& n, int class_cap = 64);

inline int class_index_for(const Int& n, const Int& a) {
    return static_cast<int>(cdiv(4 * a - n + 1, 4).get_si());
}

// Greedy expansion: repeatedly subtract the largest unit fraction not yet
// used. Denominators come out strictly increasing; works for any r > 0.
std::vector<Int> greedy_expand(const Rational& r);

// Brute-force twin of three_term_bounded: same contract, implemented by a
// plain b-scan of each residual, no factorization and no divisor
// certificates. Kept for cross-checking the solver.
std::optional<Decomposition> oracle_three_term(const Int& n, const Int& a_max);

}  // namespace eslab
