#include "eslab/factor.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "eslab/primality.hpp"

namespace eslab {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 gcd_u64(u64 a, u64 b) {
    while (b) { u64 t = a % b; a = b; b = t; }
    return a;
}

// Brent's cycle variant. c is the additive constant of the walk.
u64 pollard_brent_u64(u64 n, u64 c, u64 x0) {
    u64 y = x0 % n, r = 1, q = 1, g = 1, x = 0, ys = 0;
    const u64 m = 128;
    while (g == 1) {
        x = y;
        for (u64 i = 0; i < r; ++i) y = (mulmod(y, y, n) + c) % n;
        for (u64 k = 0; k < r && g == 1; k += m) {
            ys = y;
            u64 lim = std::min(m, r - k);
            for (u64 i = 0; i < lim; ++i) {
                y = (mulmod(y, y, n) + c) % n;
                q = mulmod(q, x > y ? x - y : y - x, n);
            }
            g = gcd_u64(q, n);
        }
        r <<= 1;
    }
    if (g == n) {
        do {
            ys = (mulmod(ys, ys, n) + c) % n;
            g = gcd_u64(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g;
}

void factor_u64(u64 n, std::map<Int, unsigned>& out, u64 seed) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out[Int(static_cast<unsigned long>(n))] += 1;
        return;
    }
    u64 d = n;
    for (u64 c = 1 + seed % 97;; ++c) {
        d = pollard_brent_u64(n, c, 2 + c);
        if (d != n && d != 1) break;
    }
    factor_u64(d, out, seed + 1);
    factor_u64(n / d, out, seed + 1);
}

Int pollard_brent_mpz(const Int& n, unsigned long c, unsigned long x0) {
    Int y(x0), x, ys, q(1), g(1);
    unsigned long r = 1;
    const unsigned long m = 128;
    auto step = [&](Int& v) { v = mod(v * v + c, n); };
    while (g == 1) {
        x = y;
        for (unsigned long i = 0; i < r; ++i) step(y);
        for (unsigned long k = 0; k < r && g == 1; k += m) {
            ys = y;
            unsigned long lim = std::min(m, r - k);
            for (unsigned long i = 0; i < lim; ++i) {
                step(y);
                q = mod(q * abs(x - y), n);
            }
            g = gcd(q, n);
        }
        r <<= 1;
    }
    if (g == n) {
        do {
            step(ys);
            g = gcd(abs(x - ys), n);
        } while (g == 1);
    }
    return g;
}

void factor_mpz(const Int& n, std::map<Int, unsigned>& out, unsigned long seed) {
    if (n == 1) return;
    if (fits_u64(n)) {
        factor_u64(to_u64(n), out, seed);
        return;
    }
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    Int d = n;
    for (unsigned long c = 1 + seed % 97;; ++c) {
        d = pollard_brent_mpz(n, c, 2 + c);
        if (d != n && d != 1) break;
    }
    factor_mpz(d, out, seed + 1);
    factor_mpz(n / d, out, seed + 1);
}

}  // namespace

Int Factorization::reconstruct() const {
    Int v(1);
    for (const auto& [p, e] : factors) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        v *= pe;
    }
    return v;
}

Factorization factorize(const Int& n) {
    if (sgn(n) <= 0) throw std::domain_error("factorize: argument must be >= 1");
    Factorization f;
    f.value = n;
    Int rest = n;
    std::map<Int, unsigned> acc;
    for (std::uint32_t p : small_primes()) {
        if (Int(p) * p > rest) break;
        unsigned e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++e;
        }
        if (e) acc[Int(p)] = e;
    }
    if (rest > 1) {
        // Seed the rho walk from the remaining cofactor.
        unsigned long seed = mpz_fdiv_ui(rest.get_mpz_t(), 1000003);
        factor_mpz(rest, acc, seed);
    }
    f.factors.assign(acc.begin(), acc.end());
    return f;
}

std::vector<Int> divisors(const Factorization& f, std::size_t cap) {
    std::size_t count = 1;
    for (const auto& [p, e] : f.factors) {
        count *= e + 1;
        if (count > cap)
            throw std::length_error("divisors: would exceed the divisor cap");
    }
    std::vector<Int> out{Int(1)};
    out.reserve(count);
    for (const auto& [p, e] : f.factors) {
        std::size_t n = out.size();
        Int pe(1);
        for (unsigned i = 1; i <= e; ++i) {
            pe *= p;
            for (std::size_t j = 0; j < n; ++j) out.push_back(out[j] * pe);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Factorization merge(const Factorization& a, const Factorization& b) {
    std::map<Int, unsigned> acc;
    for (const auto& [p, e] : a.factors) acc[p] += e;
    for (const auto& [p, e] : b.factors) acc[p] += e;
    Factorization f;
    f.value = a.value * b.value;
    f.factors.assign(acc.begin(), acc.end());
    return f;
}

Factorization square(const Factorization& f) {
    Factorization s;
    s.value = f.value * f.value;
    s.factors = f.factors;
    for (auto& [p, e] : s.factors) e *= 2;
    return s;
}

Factorization divide_out(const Factorization& f, const Factorization& g) {
    std::map<Int, unsigned> acc;
    for (const auto& [p, e] : f.factors) acc[p] = e;
    for (const auto& [p, e] : g.factors) {
        auto it = acc.find(p);
        if (it == acc.end() || it->second < e)
            throw std::domain_error("divide_out: not a divisor");
        it->second -= e;
        if (it->second == 0) acc.erase(it);
    }
    Factorization out;
    out.value = f.value / g.value;
    out.factors.assign(acc.begin(), acc.end());
    return out;
}

}  // namespace eslab
