#pragma once

#include <optional>

#include "eslab/integer.hpp"

namespace eslab {

// Arithmetic progression r + m*t, t >= 0, with 0 <= r < m.
struct ResidueClass {
    Int modulus{1};
    Int residue{0};

    bool contains(const Int& n) const { return mod(n, modulus) == residue; }
    bool operator==(const ResidueClass&) const = default;
};

inline ResidueClass residue_class(const Int& modulus, const Int& residue) {
    return ResidueClass{modulus, mod(residue, modulus)};
}

// Intersection of two progressions: the class mod lcm when the residues are
// compatible mod gcd, empty otherwise.
std::optional<ResidueClass> crt_intersect(const ResidueClass& a, const ResidueClass& b);

}  // namespace eslab
