#include "eslab/residue.hpp"

namespace eslab {

std::optional<ResidueClass> crt_intersect(const ResidueClass& a, const ResidueClass& b) {
    const Int g = gcd(a.modulus, b.modulus);
    const Int diff = b.residue - a.residue;
    if (!divides(g, diff)) return std::nullopt;
    // r = a.residue + a.modulus * t with t solving
    // (a.modulus/g) t == diff/g (mod b.modulus/g)
    const Int ma = a.modulus / g;
    const Int mb = b.modulus / g;
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), ma.get_mpz_t(), mb.get_mpz_t()) == 0) {
        // mb == 1; any t works.
        inv = 0;
    }
    const Int t = mod(diff / g * inv, mb);
    const Int m = a.modulus * mb;  // lcm
    return residue_class(m, a.residue + a.modulus * t);
}

}  // namespace eslab
