#include "eslab/egyptian.hpp"

#include <algorithm>

#include "eslab/primality.hpp"

namespace eslab {
namespace {

// Reduced numerator/denominator pair of m/n.
struct Reduced {
    Int m, n;
};

Reduced reduce(const Int& m, const Int& n) {
    Int g = gcd(m, n);
    return {m / g, n / g};
}

// d runs over divisors of n'^2 with d <= n' and d == -n' (mod m');
// each gives a = (n'+d)/m', b = n'(n'+d)/(m'd), and every solution with
// a <= b arises this way exactly once.
std::vector<std::pair<Int, Int>> two_term_from_divisors(const Int& m1, const Int& n1,
                                                        const Int& b_min) {
    std::vector<std::pair<Int, Int>> out;
    const auto divs = divisors(square(factorize(n1)));
    const Int want = mod(-n1, m1);
    for (const auto& d : divs) {
        if (d > n1) break;
        if (mod(d, m1) != want) continue;
        Int b = (n1 + d) / m1;
        if (b < b_min) continue;
        Int c = n1 * b / d;
        out.emplace_back(b, c);
    }
    return out;
}

}  // namespace

Rational Decomposition::sum() const {
    Rational s(0);
    for (const auto& d : denominators) s += unit_fraction(d);
    return s;
}

bool Decomposition::valid() const {
    if (denominators.empty()) return false;
    if (!std::is_sorted(denominators.begin(), denominators.end())) return false;
    for (const auto& d : denominators)
        if (sgn(d) <= 0) return false;
    return sum() == target;
}

std::vector<std::pair<Int, Int>> two_term_all(const Int& m, const Int& n) {
    if (sgn(m) <= 0 || sgn(n) <= 0)
        throw std::domain_error("two_term_all: arguments must be >= 1");
    auto [m1, n1] = reduce(m, n);
    return two_term_from_divisors(m1, n1, 1);
}

std::optional<DivisorCertificate> find_certificate(const Int& m, const Int& n) {
    if (sgn(m) <= 0 || sgn(n) <= 0)
        throw std::domain_error("find_certificate: arguments must be >= 1");
    // Smallest product x*y first, then smallest x; matches the witness the
    // two-term construction yields for the smallest denominator pair.
    const auto divs = divisors(factorize(n));
    for (const auto& e : divs) {
        const auto pair_divs = divisors(factorize(e));
        for (const auto& x : pair_divs) {
            if (x * x > e) break;
            if (!divides(x, e)) continue;
            Int y = e / x;
            if (divides(m, x + y)) return DivisorCertificate{x, y};
        }
    }
    return std::nullopt;
}

Decomposition certificate_to_decomposition(const Int& m, const Int& n,
                                           const DivisorCertificate& cert) {
    const Int xy = cert.x * cert.y;
    if (sgn(cert.x) <= 0 || sgn(cert.y) <= 0 || !divides(xy, n) ||
        !divides(m, cert.x + cert.y))
        throw std::invalid_argument("certificate_to_decomposition: invalid certificate");
    const Int scale = (cert.x + cert.y) / m * (n / xy);
    Int a = scale * cert.x;
    Int b = scale * cert.y;
    if (a > b) std::swap(a, b);
    Decomposition dec{make_rational(m, n), {a, b}};
    return dec;
}

std::optional<Decomposition> three_term_bounded(const Int& n, const Int& a_max) {
    if (n < 2) throw std::domain_error("three_term_bounded: n must be >= 2");
    const Int a_lo = fdiv(n, 4) + 1;
    const Int a_hi = std::min(a_max, fdiv(3 * n, 4));
    const Factorization fn = factorize(n);
    for (Int a = a_lo; a <= a_hi; ++a) {
        const Int num = 4 * a - n;
        const Int g = gcd(num, n * a);
        const Int m1 = num / g;
        const Int n1 = n * a / g;
        // Divisor set of n1^2 from the parts: n1 | n*a.
        Factorization fa = merge(fn, factorize(a));
        if (g > 1) fa = divide_out(fa, factorize(g));
        const auto divs = divisors(square(fa));
        const Int want = mod(-n1, m1);
        const Int d_min = m1 * a - n1;  // keeps b >= a
        for (const auto& d : divs) {
            if (d > n1) break;
            if (d < d_min) continue;
            if (mod(d, m1) != want) continue;
            const Int b = (n1 + d) / m1;
            const Int c = n1 * b / d;
            return Decomposition{make_rational(4, n), {a, b, c}};
        }
    }
    return std::nullopt;
}

MinClassResult min_class(const Int& n, int class_cap) {
    if (n < 2) throw std::domain_error("min_class: n must be >= 2");
    const Int a_cap = fdiv(n + 4 * Int(class_cap) - 1, 4);
    auto dec = three_term_bounded(n, a_cap);
    if (!dec) {
        if (a_cap < fdiv(3 * n, 4))
            throw ClassCapExceeded("min_class: class cap " + std::to_string(class_cap) +
                                   " exceeded for n = " + n.get_str());
        throw std::runtime_error("min_class: no three-term representation of 4/" + n.get_str());
    }
    return MinClassResult{class_index_for(n, dec->denominators.front()), *dec};
}

std::vector<Int> greedy_expand(const Rational& r) {
    if (sgn(r) <= 0) throw std::domain_error("greedy_expand: argument must be positive");
    std::vector<Int> out;
    Rational rest = r;
    Int prev(0);
    while (sgn(rest) > 0) {
        Int d = cdiv(rest.get_den(), rest.get_num());
        if (d <= prev) d = prev + 1;
        out.push_back(d);
        rest -= unit_fraction(d);
        prev = d;
    }
    return out;
}

namespace {

std::optional<Decomposition> oracle_split_u64(const Int& n, const Int& a, const Int& p,
                                              const Int& q) {
    const std::uint64_t pu = to_u64(p), qu = to_u64(q), au = to_u64(a);
    std::uint64_t b = std::max<std::uint64_t>(au, qu / pu + 1);
    const std::uint64_t b_hi = 2 * qu / pu;
    for (; b <= b_hi; ++b) {
        const std::uint64_t den = pu * b - qu;
        const std::uint64_t num = qu * b;
        if (num % den == 0)
            return Decomposition{make_rational(4, n),
                                 {a, Int(static_cast<unsigned long>(b)),
                                  Int(static_cast<unsigned long>(num / den))}};
    }
    return std::nullopt;
}

std::optional<Decomposition> oracle_split_mpz(const Int& n, const Int& a, const Int& p,
                                              const Int& q) {
    Int b = fdiv(q, p) + 1;
    if (b < a) b = a;
    const Int b_hi = fdiv(2 * q, p);
    for (; b <= b_hi; ++b) {
        const Int den = p * b - q;
        if (divides(den, q * b))
            return Decomposition{make_rational(4, n), {a, b, q * b / den}};
    }
    return std::nullopt;
}

}  // namespace

std::optional<Decomposition> oracle_three_term(const Int& n, const Int& a_max) {
    if (n < 2) throw std::domain_error("oracle_three_term: n must be >= 2");
    const Int a_lo = fdiv(n, 4) + 1;
    const Int a_hi = std::min(a_max, fdiv(3 * n, 4));
    for (Int a = a_lo; a <= a_hi; ++a) {
        const Rational r = make_rational(4 * a - n, n * a);
        const Int& p = r.get_num();
        const Int& q = r.get_den();
        auto hit = fits_u64(q * (fdiv(2 * q, p) + 2))
                       ? oracle_split_u64(n, a, p, q)
                       : oracle_split_mpz(n, a, p, q);
        if (hit) return hit;
    }
    return std::nullopt;
}

}  // namespace eslab
