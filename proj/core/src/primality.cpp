#include "eslab/primality.hpp"

#include <array>

namespace eslab {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

constexpr std::array<u64, 12> kWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool miller_rabin_u64(u64 n, u64 a) {
    if (a % n == 0) return true;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

bool miller_rabin_mpz(const Int& n, const Int& a) {
    if (divides(n, a)) return true;
    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    Int x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    Int nm1 = n - 1;
    if (x == 1 || x == nm1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == nm1) return true;
    }
    return false;
}

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    for (u64 a : kWitnesses)
        if (!miller_rabin_u64(n, a)) return false;
    return true;
}

bool is_prime(const Int& n) {
    if (sgn(n) <= 0) return false;
    if (fits_u64(n)) return is_prime_u64(to_u64(n));
    if (divides(2, n)) return false;
    for (u64 a : kWitnesses)
        if (!miller_rabin_mpz(n, Int(static_cast<unsigned long>(a)))) return false;
    // n >= 2^63 may exceed the proven witness range; add witnesses derived
    // from n itself to keep the verdict deterministic per input.
    Int bound("3317044064679887385961980");
    if (n >= bound) {
        Int a = 41;
        for (int i = 0; i < 24; ++i) {
            a = mod(a * a + Int(i) + mod(n, 1000003), n - 3) + 2;
            if (!miller_rabin_mpz(n, a)) return false;
        }
    }
    return true;
}

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> table = [] {
        std::vector<std::uint32_t> primes;
        std::vector<bool> composite(10000, false);
        for (std::uint32_t i = 2; i < 10000; ++i) {
            if (composite[i]) continue;
            primes.push_back(i);
            for (std::uint32_t j = i * i; j < 10000; j += i) composite[j] = true;
        }
        return primes;
    }();
    return table;
}

}  // namespace eslab
