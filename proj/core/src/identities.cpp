#include "eslab/identities.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace eslab {

ProductTerm ProductTerm::normalized() const {
    ProductTerm t;
    t.constant = constant;
    for (const auto& f : forms) {
        if (f.degree() == 0) {
            t.constant *= f.c0;
            continue;
        }
        Int c = f.content();
        if (sgn(f.c1) < 0) c = -c;
        t.constant *= c;
        t.forms.push_back(LinearForm{f.c0 / c, f.c1 / c});
    }
    std::sort(t.forms.begin(), t.forms.end());
    return t;
}

Int SplitIdentity::residual_den(const Int& k) const {
    Int v = gamma;
    for (const auto& f : residual_forms) v *= f(k);
    return v;
}

bool ThreeTermIdentity::structurally_equal(const ThreeTermIdentity& o) const {
    return P == o.P && sigma == o.sigma && terms[0] == o.terms[0] &&
           ((terms[1] == o.terms[1] && terms[2] == o.terms[2]) ||
            (terms[1] == o.terms[2] && terms[2] == o.terms[1]));
}

namespace {

// Shared sampling loop: sums must match lhs_num/n(k) at degree+2 points
// with every denominator nonzero.
template <typename DenomRange>
bool verify_by_sampling(const Int& lhs_num, const LinearForm& n_form, int degree_bound,
                        const DenomRange& denominators_at) {
    int checked = 0;
    for (Int k(1); checked < degree_bound + 2; ++k) {
        if (k > 4 * (degree_bound + 2) + 64)
            throw std::logic_error("verify_identity: could not collect samples");
        const Int nk = n_form(k);
        if (sgn(nk) == 0) continue;
        const auto dens = denominators_at(k);
        bool pole = false;
        for (const auto& d : dens)
            if (sgn(d) == 0) pole = true;
        if (pole) continue;
        Rational lhs = make_rational(lhs_num, nk);
        Rational rhs(0);
        for (const auto& d : dens) rhs += make_rational(1, d);
        if (lhs != rhs) return false;
        ++checked;
    }
    return true;
}

}  // namespace

bool verify_identity(const SplitIdentity& id) {
    // 1/a + m/(gamma prod F)  ==  lhs/n
    int deg = 1 + id.unit.degree();
    for (const auto& f : id.residual_forms) deg += f.degree();
    int checked = 0;
    for (Int k(1); checked < deg + 2; ++k) {
        if (k > 4 * (deg + 2) + 64) throw std::logic_error("verify_identity: sample range");
        const Int nk = id.n_at(k);
        const Int ak = id.unit(k);
        const Int dk = id.residual_den(k);
        if (sgn(nk) == 0 || sgn(ak) == 0 || sgn(dk) == 0) continue;
        Rational lhs = make_rational(id.lhs_num, nk);
        Rational rhs = make_rational(1, ak) + make_rational(id.m, dk);
        if (lhs != rhs) return false;
        ++checked;
    }
    return true;
}

bool verify_identity(const ThreeTermIdentity& id) {
    int deg = 1;
    for (const auto& t : id.terms) deg += t.degree();
    return verify_by_sampling(Int(4), LinearForm{id.sigma, id.P}, deg, [&](const Int& k) {
        return std::array<Int, 3>{id.terms[0].eval(k), id.terms[1].eval(k),
                                  id.terms[2].eval(k)};
    });
}

bool verify_identity(const Identity& id) {
    return std::visit([](const auto& v) { return verify_identity(v); }, id);
}

SplitInstance instantiate(const SplitIdentity& id, const Int& k) {
    const Int ak = id.unit(k);
    const Int dk = id.residual_den(k);
    if (sgn(ak) <= 0 || sgn(dk) <= 0)
        throw std::domain_error("instantiate: nonpositive denominator at k = " + k.get_str());
    return SplitInstance{ak, make_rational(id.m, dk)};
}

Decomposition instantiate(const ThreeTermIdentity& id, const Int& k) {
    std::vector<Int> dens;
    for (const auto& t : id.terms) {
        Int v = t.eval(k);
        if (sgn(v) <= 0)
            throw std::domain_error("instantiate: nonpositive denominator at k = " +
                                    k.get_str());
        dens.push_back(v);
    }
    std::sort(dens.begin(), dens.end());
    return Decomposition{make_rational(4, id.n_at(k)), dens};
}

int class_of_identity(const ThreeTermIdentity& id) {
    const ProductTerm unit = id.terms[0].normalized();
    if (unit.degree() > 1)
        throw std::domain_error("class_of_identity: unit term is not linear");
    LinearForm a{unit.constant, 0};
    if (!unit.forms.empty()) {
        a.c0 = unit.constant * unit.forms[0].c0;
        a.c1 = unit.constant * unit.forms[0].c1;
    }
    if (4 * a.c1 != id.P)
        throw std::domain_error("class_of_identity: 4a(k) - n(k) is not constant");
    return static_cast<int>(cdiv(4 * a.c0 - id.sigma + 1, 4).get_si());
}

namespace {

void require_family(const Int& P, const Int& sigma) {
    if (!divides(4, P) || mod(sigma, 4) != 1)
        throw std::invalid_argument("identity search needs P == 0 and sigma == 1 (mod 4)");
}

}  // namespace

std::vector<ThreeTermIdentity> search_simple_identity(const Int& P, const Int& sigma,
                                                      int j_max) {
    require_family(P, sigma);
    std::vector<ThreeTermIdentity> out;
    const Int slope = P / 4;
    const LinearForm n_form{sigma, P};
    for (int j = 1; j <= j_max; ++j) {
        const Int a0 = (sigma - 1) / 4 + j;
        const Int d = gcd(slope, a0);
        const LinearForm g{a0 / d, slope / d};
        const Int m = 4 * Int(j) - 1;
        for (const auto& [u, v] : two_term_all(m, d)) {
            ThreeTermIdentity id{P, sigma,
                                 {ProductTerm{d, {g}}, ProductTerm{u, {n_form, g}},
                                  ProductTerm{v, {n_form, g}}},
                                 j};
            if (verify_identity(id)) out.push_back(id);
        }
    }
    return out;
}

std::vector<ThreeTermIdentity> search_extended_identity(const Int& P, const Int& sigma,
                                                        int j_max, const Int& coeff_bound) {
    require_family(P, sigma);
    std::vector<ThreeTermIdentity> out = search_simple_identity(P, sigma, j_max);
    const Int slope = P / 4;
    const LinearForm n_form{sigma, P};
    for (const auto& d : divisors(factorize(slope))) {
        const Int g1 = slope / d;
        const auto d_divs = divisors(factorize(d));
        for (int g0i = 1; g0i <= j_max; ++g0i) {
            const Int g0(g0i);
            if (gcd(g1, g0) != 1) continue;
            const Int m = 4 * d * g0 - sigma;
            if (sgn(m) <= 0) continue;
            const LinearForm g{g0, g1};
            // x0*y0 | d and m | x0*n + y0*g coefficient-wise give the tails
            // 1/(alpha n G) + 1/(beta g G).
            for (const auto& x0 : d_divs) {
                for (const auto& y0 : d_divs) {
                    if (!divides(x0 * y0, d)) continue;
                    if (!divides(m, x0 * P + y0 * g.c1)) continue;
                    if (!divides(m, x0 * sigma + y0 * g.c0)) continue;
                    const Int alpha = d / y0;
                    const Int beta = d / x0;
                    if (alpha > coeff_bound || beta > coeff_bound) continue;
                    const LinearForm G{(x0 * sigma + y0 * g.c0) / m,
                                       (x0 * P + y0 * g.c1) / m};
                    ThreeTermIdentity id{
                        P, sigma,
                        {ProductTerm{d, {g}}, ProductTerm{alpha, {n_form, G}},
                         ProductTerm{beta, {g, G}}},
                        static_cast<int>(cdiv(m + 1, 4).get_si())};
                    if (verify_identity(id)) out.push_back(id);
                }
            }
        }
    }
    return out;
}

namespace {

LinearForm lf(long c0, long c1) { return LinearForm{Int(c0), Int(c1)}; }

std::vector<CatalogEntry> build_catalog() {
    std::vector<CatalogEntry> cat;
    auto add = [&cat](std::string name, Identity id, std::string provenance) {
        CatalogStatus st = verify_identity(id) ? CatalogStatus::verified
                                               : CatalogStatus::printed_form_invalid;
        cat.push_back({std::move(name), std::move(id), st, std::move(provenance)});
    };

    // Classical warm-ups: even n and n == 3 (mod 4) need two terms only;
    // 1/n splits into two unit fractions.
    add("even", SplitIdentity{4, 4, 2, lf(1, 1), 1, 1, {lf(1, 1), lf(1, 2)}},
        "4/(4k+2) = 1/(k+1) + 1/((k+1)(2k+1))");
    add("4k3", SplitIdentity{4, 4, 3, lf(1, 1), 1, 1, {lf(1, 1), lf(3, 4)}},
        "4/(4k+3) = 1/(k+1) + 1/((k+1)(4k+3))");
    add("unit-split", SplitIdentity{1, 1, 1, lf(2, 1), 1, 1, {lf(1, 1), lf(2, 1)}},
        "1/(k+1) = 1/(k+2) + 1/((k+1)(k+2))");

    // The mod-4 family and its refinements; these drive the sieve plans.
    add("4k1", SplitIdentity{4, 4, 1, lf(1, 1), 3, 1, {lf(1, 1), lf(1, 4)}},
        "4/(4k+1) = 1/(k+1) + 3/((k+1)(4k+1))");
    add("12k1", SplitIdentity{4, 12, 1, lf(1, 3), 3, 1, {lf(1, 3), lf(1, 12)}},
        "4/(12k+1) = 1/(3k+1) + 3/((3k+1)(12k+1))");
    add("24k1-n7", SplitIdentity{4, 24, 1, lf(2, 6), 7, 2, {lf(1, 3), lf(1, 24)}},
        "4/(24k+1) = 1/(6k+2) + 7/(2(3k+1)(24k+1))");
    add("24k1-n3", SplitIdentity{4, 24, 1, lf(1, 6), 3, 1, {lf(1, 6), lf(1, 24)}},
        "4/(24k+1) = 1/(6k+1) + 3/((6k+1)(24k+1))");
    add("120k1", SplitIdentity{4, 120, 1, lf(3, 30), 11, 3, {lf(1, 10), lf(1, 120)}},
        "4/(120k+1) = 1/(30k+3) + 11/(3(10k+1)(120k+1))");
    add("120k49", SplitIdentity{4, 120, 49, lf(15, 30), 11, 15, {lf(1, 2), lf(49, 120)}},
        "4/(120k+49) = 1/(30k+15) + 11/(15(2k+1)(120k+49))");

    // Uniform-class families for two of the mod-9240 residues. The printed
    // variant of the 1201 family carries a misprinted tail factor 9240k+1;
    // it is kept, flagged, next to the corrected form.
    const LinearForm n1201 = lf(1201, 9240);
    const LinearForm n1201_misprint = lf(1, 9240);
    add("9240k1201-printed",
        ThreeTermIdentity{9240, 1201,
                          {ProductTerm{1, {lf(308, 2310)}},
                           ProductTerm{5, {n1201_misprint, lf(2, 15)}},
                           ProductTerm{770, {n1201_misprint, lf(2, 15)}}},
                          8},
        "1201 family, printed variant (tail factor 9240k+1)");
    add("9240k1201",
        ThreeTermIdentity{9240, 1201,
                          {ProductTerm{1, {lf(308, 2310)}},
                           ProductTerm{5, {n1201, lf(2, 15)}},
                           ProductTerm{770, {n1201, lf(2, 15)}}},
                          8},
        "4/(9240k+1201) = 1/(2310k+308) + 1/(5n(15k+2)) + 1/(770n(15k+2))");

    const LinearForm n6001 = lf(6001, 9240);
    add("9240k6001",
        ThreeTermIdentity{9240, 6001,
                          {ProductTerm{1, {lf(1540, 2310)}},
                           ProductTerm{385, {n6001, lf(1321, 2034)}},
                           ProductTerm{22, {lf(2, 3), lf(1321, 2034)}}},
                          40},
        "4/(9240k+6001) = 1/(2310k+1540) + 1/(385n(2034k+1321)) + 1/(22(3k+2)(2034k+1321))");

    // The 120120 family for residue 2521. The printed variant multiplies the
    // two tail fractions instead of adding them, which collapses to a single
    // squared tail; kept flagged next to the corrected sum.
    const LinearForm n2521 = lf(2521, 120120);
    add("120120k2521-printed",
        SplitIdentity{4, 120120, 2521, lf(4004, 30030), 1, 22022,
                      {n2521, lf(2, 15), lf(17, 810), lf(17, 810)}},
        "2521 family, printed variant (tails multiplied, not added)");
    add("120120k2521",
        ThreeTermIdentity{120120, 2521,
                          {ProductTerm{1, {lf(4004, 30030)}},
                           ProductTerm{1001, {n2521, lf(17, 810)}},
                           ProductTerm{22, {lf(2, 15), lf(17, 810)}}},
                          3374},
        "4/(120120k+2521) = 1/(30030k+4004) + 1/(1001n(810k+17)) + 1/(22(15k+2)(810k+17))");

    return cat;
}

}  // namespace

const std::vector<CatalogEntry>& builtin_catalog() {
    static const std::vector<CatalogEntry> cat = build_catalog();
    return cat;
}

const CatalogEntry* find_identity(std::string_view name) {
    for (const auto& e : builtin_catalog())
        if (e.name == name) return &e;
    return nullptr;
}

namespace {

nlohmann::json form_to_json(const LinearForm& f) {
    return nlohmann::json::array({f.c0.get_str(), f.c1.get_str()});
}

nlohmann::json term_to_json(const ProductTerm& t) {
    nlohmann::json forms = nlohmann::json::array();
    for (const auto& f : t.forms) forms.push_back(form_to_json(f));
    return {{"constant", t.constant.get_str()}, {"forms", forms}};
}

}  // namespace

nlohmann::json catalog_to_json(const std::vector<CatalogEntry>& catalog) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& e : catalog) {
        nlohmann::json j;
        j["name"] = e.name;
        j["status"] = e.status == CatalogStatus::verified ? "verified"
                                                          : "printed-form-invalid-corrected";
        j["provenance"] = e.provenance;
        if (const auto* s = e.split()) {
            j["kind"] = "split";
            j["family"] = {{"P", s->P.get_str()}, {"sigma", s->sigma.get_str()}};
            j["lhs_numerator"] = s->lhs_num.get_str();
            j["unit"] = form_to_json(s->unit);
            j["m"] = s->m.get_str();
            j["gamma"] = s->gamma.get_str();
            nlohmann::json forms = nlohmann::json::array();
            for (const auto& f : s->residual_forms) forms.push_back(form_to_json(f));
            j["residual_forms"] = forms;
        } else {
            const auto* t = e.three_term();
            j["kind"] = "three-term";
            j["family"] = {{"P", t->P.get_str()}, {"sigma", t->sigma.get_str()}};
            j["claimed_class"] = t->claimed_class;
            nlohmann::json terms = nlohmann::json::array();
            for (const auto& term : t->terms) terms.push_back(term_to_json(term));
            j["terms"] = terms;
        }
        out.push_back(j);
    }
    return out;
}

}  // namespace eslab
