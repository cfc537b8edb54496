#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "eslab/egyptian.hpp"
#include "eslab/linear_form.hpp"

namespace eslab {

// One-parameter family  t/n(k) = 1/a(k) + m/(gamma * prod F_j(k))  over
// n(k) = P k + sigma. t is 4 for the conjecture families; the classical
// two-term warm-ups carry t = 1 or live on even n.
struct SplitIdentity {
    Int lhs_num{4};
    Int P, sigma;
    LinearForm unit;
    Int m;
    Int gamma{1};
    std::vector<LinearForm> residual_forms;

    LinearForm n_form() const { return LinearForm{sigma, P}; }
    Int n_at(const Int& k) const { return P * k + sigma; }
    Int residual_den(const Int& k) const;
};

// 4/n(k) = 1/T0(k) + 1/T1(k) + 1/T2(k); T0 is the unit term a(k).
struct ThreeTermIdentity {
    Int P, sigma;
    std::array<ProductTerm, 3> terms;
    int claimed_class{0};

    Int n_at(const Int& k) const { return P * k + sigma; }
    bool same_family(const Int& p, const Int& s) const { return P == p && sigma == s; }
    bool structurally_equal(const ThreeTermIdentity& o) const;
};

using Identity = std::variant<SplitIdentity, ThreeTermIdentity>;

// Exact decision of the rational-function identity by evaluation at
// deg+2 sample points past all poles (a nonzero numerator polynomial of
// degree <= deg cannot vanish that often).
bool verify_identity(const SplitIdentity& id);
bool verify_identity(const ThreeTermIdentity& id);
bool verify_identity(const Identity& id);

struct SplitInstance {
    Int unit_denominator;
    Rational residual;
};

// Concrete values at k; throws std::domain_error on a nonpositive
// denominator.
SplitInstance instantiate(const SplitIdentity& id, const Int& k);
Decomposition instantiate(const ThreeTermIdentity& id, const Int& k);

// i = ceil((4 a(0) - sigma + 1)/4), valid only when 4 a(k) - n(k) is
// constant in k (otherwise throws: the family has no uniform class).
int class_of_identity(const ThreeTermIdentity& id);

// Template search over unit terms a(k) = (P/4)k + (sigma-1)/4 + j:
// with d = content(a) and g = a/d the residual is m/(d n g), m = 4j - 1,
// and each constant split m/d = 1/u + 1/v yields
// 4/n = 1/(d g) + 1/(u n g) + 1/(v n g). Results ordered by (j, u).
std::vector<ThreeTermIdentity> search_simple_identity(const Int& P, const Int& sigma,
                                                      int j_max);

// Extended template: unit terms d*g(k) for every divisor d of P/4 and
// primitive g(k) = (P/(4d))k + g0, g0 <= j_max. A divisor pair x0*y0 | d
// with m | x0 n + y0 g (coefficient-wise) gives
//   m/(d n g) = 1/(alpha n G) + 1/(beta g G),
// alpha = d/y0, beta = d/x0, G = (x0 n + y0 g)/m, both tails bounded by
// coeff_bound. Simple-template results are included.
std::vector<ThreeTermIdentity> search_extended_identity(const Int& P, const Int& sigma,
                                                        int j_max, const Int& coeff_bound);

enum class CatalogStatus { verified, printed_form_invalid };

struct CatalogEntry {
    std::string name;
    Identity identity;
    CatalogStatus status;  // computed from verify_identity, never hand-set
    std::string provenance;

    const SplitIdentity* split() const { return std::get_if<SplitIdentity>(&identity); }
    const ThreeTermIdentity* three_term() const {
        return std::get_if<ThreeTermIdentity>(&identity);
    }
};

// Every identity the toolkit ships with, including the two misprinted
// variants kept for regression (status printed_form_invalid).
const std::vector<CatalogEntry>& builtin_catalog();
const CatalogEntry* find_identity(std::string_view name);

nlohmann::json catalog_to_json(const std::vector<CatalogEntry>& catalog);

}  // namespace eslab
