#include "eslab/sieve.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "eslab/primality.hpp"

namespace eslab {

Int DivisorExpr::eval(const SplitIdentity& id, const Int& k) const {
    Int v = constant;
    for (const auto& [j, p] : parts) v *= sgn(p) == 0 ? id.residual_forms[j](k) : p;
    return v;
}

int DivisorExpr::degree() const {
    int d = 0;
    for (const auto& [j, p] : parts)
        if (sgn(p) == 0) ++d;
    return d;
}

std::string DivisorExpr::describe(const SplitIdentity& id) const {
    std::ostringstream os;
    os << constant.get_str();
    for (const auto& [j, p] : parts) {
        if (sgn(p) == 0) {
            const auto& f = id.residual_forms[j];
            os << "*(" << f.c1.get_str() << "k+" << f.c0.get_str() << ")";
        } else {
            os << "*" << p.get_str();
        }
    }
    return os.str();
}

namespace {

// f(rho + Q t) mod m is periodic in t with period m, so m consecutive
// t values decide class-wide divisibility exactly.
bool divides_classwide(const Int& m, const SplitIdentity& id, const ResidueClass& cls) {
    for (Int t(0); t < m; ++t) {
        const Int k = cls.residue + cls.modulus * t;
        if (!divides(m, id.gamma * [&] {
                Int v(1);
                for (const auto& f : id.residual_forms) v *= f(k);
                return v;
            }()))
            return false;
    }
    return true;
}

std::optional<Int> composite_witness(const SplitIdentity& id, const ResidueClass& cls) {
    const Int n0 = id.P * cls.residue + id.sigma;
    for (const auto& [p, e] : factorize(id.P * cls.modulus).factors) {
        if (divides(p, n0) && n0 > p) return p;
    }
    return std::nullopt;
}

struct Candidate {
    DivisorExpr x, y;
};

// All (x, y) splittings of constants dividing gamma, class-wide extracted
// primes and whole forms, each form used at most once overall.
std::vector<Candidate> certificate_candidates(const SplitIdentity& id,
                                              const ResidueClass& cls) {
    const std::size_t nf = id.residual_forms.size();
    // Extractable primes per form: p | F_j(rho) with p | c1_j * Q.
    std::vector<std::vector<Int>> extractable(nf);
    for (std::size_t j = 0; j < nf; ++j) {
        const Int g = gcd(id.residual_forms[j](cls.residue),
                          id.residual_forms[j].c1 * cls.modulus);
        if (g > 1)
            for (const auto& [p, e] : factorize(g).factors) extractable[j].push_back(p);
    }

    const auto gamma_divs = divisors(factorize(id.gamma));
    std::vector<Candidate> out;
    // Per-form choice: 0 unused, 1 x-whole, 2 y-whole, then extractions
    // alternating x/y.
    std::vector<std::size_t> option_count(nf);
    for (std::size_t j = 0; j < nf; ++j) option_count[j] = 3 + 2 * extractable[j].size();
    std::vector<std::size_t> choice(nf, 0);
    for (;;) {
        for (const auto& dx : gamma_divs) {
            for (const auto& dy : gamma_divs) {
                if (!divides(dx * dy, id.gamma)) continue;
                Candidate c;
                c.x.constant = dx;
                c.y.constant = dy;
                for (std::size_t j = 0; j < nf; ++j) {
                    if (choice[j] == 0) continue;
                    if (choice[j] == 1) c.x.parts.emplace_back(j, Int(0));
                    else if (choice[j] == 2) c.y.parts.emplace_back(j, Int(0));
                    else {
                        const std::size_t e = choice[j] - 3;
                        const Int& p = extractable[j][e / 2];
                        (e % 2 == 0 ? c.x : c.y).parts.emplace_back(j, p);
                    }
                }
                out.push_back(std::move(c));
            }
        }
        std::size_t j = 0;
        while (j < nf && ++choice[j] == option_count[j]) choice[j++] = 0;
        if (j == nf) break;
    }
    return out;
}

}  // namespace

CoverageStatus coverage_status(const SplitIdentity& id, const ResidueClass& k_class) {
    CoverageStatus st;
    if (auto p = composite_witness(id, k_class)) {
        st.kind = CoverageStatus::Kind::composite_witness;
        st.witness_prime = *p;
        return st;
    }
    if (divides_classwide(id.m, id, k_class)) {
        st.kind = CoverageStatus::Kind::unit_residual;
        return st;
    }
    auto candidates = certificate_candidates(id, k_class);
    const Int& rho = k_class.residue;
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](const Candidate& a, const Candidate& b) {
                         const int da = a.x.degree(), db = b.x.degree();
                         if (da != db) return da < db;
                         const Int va = a.x.eval(id, rho), vb = b.x.eval(id, rho);
                         if (va != vb) return va < vb;
                         const int ea = a.y.degree(), eb = b.y.degree();
                         if (ea != eb) return ea < eb;
                         return a.y.eval(id, rho) < b.y.eval(id, rho);
                     });
    const bool sum_modulus_ok = divides(id.m, k_class.modulus);
    for (const auto& c : candidates) {
        const int sum_degree = c.x.degree() + c.y.degree();
        const bool constant_sum = c.x.degree() == 0 && c.y.degree() == 0;
        if (!constant_sum && !sum_modulus_ok) continue;
        (void)sum_degree;
        if (!divides(id.m, c.x.eval(id, rho) + c.y.eval(id, rho))) continue;
        st.kind = CoverageStatus::Kind::certified;
        st.x = c.x;
        st.y = c.y;
        return st;
    }
    return st;
}

std::optional<Decomposition> instantiate_coverage(const SplitIdentity& id,
                                                  const CoverageStatus& st, const Int& k) {
    const Int n = id.n_at(k);
    const Int a = id.unit(k);
    const Int den = id.residual_den(k);
    switch (st.kind) {
        case CoverageStatus::Kind::unit_residual: {
            std::vector<Int> ds{a, den / id.m};
            std::sort(ds.begin(), ds.end());
            return Decomposition{make_rational(id.lhs_num, n), std::move(ds)};
        }
        case CoverageStatus::Kind::certified: {
            const Int x = st.x.eval(id, k);
            const Int y = st.y.eval(id, k);
            const Int scale = (x + y) / id.m * (den / (x * y));
            std::vector<Int> ds{a, scale * x, scale * y};
            std::sort(ds.begin(), ds.end());
            return Decomposition{make_rational(id.lhs_num, n), std::move(ds)};
        }
        default:
            return std::nullopt;
    }
}

std::vector<SubclassReport> refine(const std::vector<const CatalogEntry*>& ids, const Int& q,
                                   const ResidueClass& base) {
    std::vector<SubclassReport> out;
    const Int new_mod = base.modulus * q;
    for (Int r(0); r < q; ++r) {
        ResidueClass sub{new_mod, base.residue + base.modulus * r};
        SubclassReport rep{sub, CoverageStatus{}, ""};
        for (const auto* e : ids) {
            const auto* id = e->split();
            if (!id) continue;
            auto st = coverage_status(*id, sub);
            if (st.covered()) {
                rep.status = st;
                rep.covering_identity = e->name;
                break;
            }
        }
        out.push_back(std::move(rep));
    }
    return out;
}

bool ExceptedSet::contains(const Int& n) const {
    return std::binary_search(residues.begin(), residues.end(), mod(n, modulus));
}

namespace {

struct Branch {
    Int P, sigma;
    std::vector<const CatalogEntry*> all_ids;  // ids of this family, any step
    std::vector<ResidueClass> uncovered{ResidueClass{1, 0}};
};

const CatalogEntry* resolve_plan_identity(const SievePlan& plan, const std::string& name) {
    const CatalogEntry* e = find_identity(name);
    if (!e)
        throw PlanError("plan '" + plan.name + "': unknown identity '" + name + "'");
    if (!e->split())
        throw PlanError("plan '" + plan.name + "': identity '" + name +
                        "' is not a split family");
    if (e->status != CatalogStatus::verified)
        throw PlanError("plan '" + plan.name + "': identity '" + name + "' does not verify");
    return e;
}

}  // namespace

PlanRun run_plan_detailed(const SievePlan& plan) {
    if (plan.steps.empty()) throw PlanError("plan '" + plan.name + "': no steps");
    // One branch per identity family named anywhere in the plan.
    std::vector<Branch> branches;
    auto branch_of = [&](const SplitIdentity& id) -> Branch& {
        for (auto& b : branches)
            if (b.P == id.P && b.sigma == id.sigma) return b;
        branches.push_back(Branch{id.P, id.sigma, {}, {ResidueClass{1, 0}}});
        return branches.back();
    };
    for (const auto& step : plan.steps) {
        if (step.prime < 2 || !is_prime(step.prime))
            throw PlanError("plan '" + plan.name + "': refinement modulus " +
                            step.prime.get_str() + " is not prime");
        for (const auto& name : step.identities) {
            const auto* e = resolve_plan_identity(plan, name);
            auto& b = branch_of(*e->split());
            if (std::find(b.all_ids.begin(), b.all_ids.end(), e) == b.all_ids.end())
                b.all_ids.push_back(e);
        }
    }

    PlanRun run;
    for (std::size_t si = 0; si < plan.steps.size(); ++si) {
        const auto& step = plan.steps[si];
        run.class_bound_i = std::max(run.class_bound_i, step.class_bound_i);
        StepReport srep{si, step.prime, {}};
        std::vector<const CatalogEntry*> step_ids;
        for (const auto& name : step.identities) step_ids.push_back(find_identity(name));
        for (auto& branch : branches) {
            std::vector<const CatalogEntry*> ids;
            for (const auto* e : step_ids)
                if (e->split()->P == branch.P && e->split()->sigma == branch.sigma)
                    ids.push_back(e);
            std::vector<ResidueClass> next;
            for (const auto& cls : branch.uncovered) {
                const bool in_base =
                    step.base.empty() ||
                    std::find(step.base.begin(), step.base.end(), cls) != step.base.end();
                auto reports = refine(in_base ? ids : std::vector<const CatalogEntry*>{},
                                      step.prime, cls);
                for (auto& r : reports) {
                    if (!r.status.covered()) next.push_back(r.k_class);
                    srep.subclasses.push_back(std::move(r));
                }
            }
            branch.uncovered = std::move(next);
        }
        run.steps.push_back(std::move(srep));
    }

    std::set<Int> residues;
    Int modulus(0);
    for (const auto& branch : branches) {
        for (const auto& cls : branch.uncovered) {
            const Int m = branch.P * cls.modulus;
            if (sgn(modulus) == 0) modulus = m;
            if (m != modulus)
                throw PlanError("plan '" + plan.name +
                                "': branches end at different moduli");
            residues.insert(mod(branch.P * cls.residue + branch.sigma, m));
        }
        if (sgn(modulus) == 0) {
            // Fully covered branch still pins the modulus.
            Int q(1);
            for (const auto& step : plan.steps) q *= step.prime;
            modulus = branch.P * q;
        }
    }
    run.excepted.modulus = modulus;
    run.excepted.residues.assign(residues.begin(), residues.end());
    run.excepted.provenance = plan.name;
    return run;
}

ExceptedSet run_plan(const SievePlan& plan) { return run_plan_detailed(plan).excepted; }

namespace {

const std::map<std::string, SievePlan>& builtin_plans() {
    static const std::map<std::string, SievePlan> plans = [] {
        std::map<std::string, SievePlan> m;
        m["prop-1.2"] = SievePlan{"prop-1.2", {{{"4k1"}, 3, 1, {}}}};
        m["prop-1.3"] = SievePlan{"prop-1.3", {{{"12k1"}, 2, 1, {}}}};
        m["prop-1.4"] = SievePlan{"prop-1.4", {{{"24k1-n7"}, 7, 2, {}}}};
        m["prop-1.5"] = SievePlan{"prop-1.5", {{{"24k1-n7", "24k1-n3"}, 5, 2, {}}}};
        m["mordell-840"] =
            SievePlan{"mordell-840",
                      {{{"24k1-n7"}, 7, 2, {}}, {{"24k1-n7", "24k1-n3"}, 5, 2, {}}}};
        m["thm-1320"] = SievePlan{"thm-1320", {{{"120k1", "120k49"}, 11, 3, {}}}};
        return m;
    }();
    return plans;
}

}  // namespace

const std::vector<std::string>& builtin_plan_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, plan] : builtin_plans()) v.push_back(name);
        v.push_back("thm-9240");
        std::sort(v.begin(), v.end());
        return v;
    }();
    return names;
}

bool is_builtin_plan(std::string_view name) {
    const auto& names = builtin_plan_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

PlanRun run_named_plan(std::string_view name) {
    if (name == "thm-9240") {
        // The mod-9240 table is the mod-1320 analysis crossed with the
        // mod-168 one; the two use different identity families, so it is a
        // set intersection rather than a further refinement step.
        PlanRun a = run_named_plan("thm-1320");
        PlanRun b = run_named_plan("prop-1.4");
        PlanRun out;
        out.excepted = intersect_excepted(a.excepted, b.excepted);
        out.excepted.provenance = "thm-9240";
        out.class_bound_i = std::max(a.class_bound_i, b.class_bound_i);
        return out;
    }
    auto it = builtin_plans().find(std::string(name));
    if (it == builtin_plans().end())
        throw PlanError("unknown built-in plan '" + std::string(name) + "'");
    return run_plan_detailed(it->second);
}

ExceptedSet intersect_excepted(const ExceptedSet& a, const ExceptedSet& b) {
    ExceptedSet out;
    out.modulus = lcm(a.modulus, b.modulus);
    out.provenance = a.provenance + " & " + b.provenance;
    std::set<Int> acc;
    for (const auto& ra : a.residues) {
        for (const auto& rb : b.residues) {
            auto meet = crt_intersect(ResidueClass{a.modulus, ra}, ResidueClass{b.modulus, rb});
            if (meet) acc.insert(meet->residue);
        }
    }
    out.residues.assign(acc.begin(), acc.end());
    return out;
}

ReducedSet remove_identity_covered(const ExceptedSet& s,
                                   const std::vector<CatalogEntry>& catalog) {
    ReducedSet out;
    out.set.modulus = s.modulus;
    out.set.provenance = s.provenance + " minus identity-covered";
    for (const auto& r : s.residues) {
        const CatalogEntry* hit = nullptr;
        for (const auto& e : catalog) {
            const auto* t = e.three_term();
            if (t && e.status == CatalogStatus::verified && t->same_family(s.modulus, r)) {
                hit = &e;
                break;
            }
        }
        if (hit)
            out.removed.push_back(
                {r, hit->name, class_of_identity(*hit->three_term())});
        else
            out.set.residues.push_back(r);
    }
    return out;
}

ResidueHistogram classify_residues(const ExceptedSet& s) {
    ResidueHistogram h;
    for (const auto& r : s.residues) {
        if (is_perfect_square(r)) h.squares.push_back(r);
        else if (is_prime(r)) h.primes.push_back(r);
        else h.composites.push_back(r);
    }
    return h;
}

namespace {

Int json_to_int(const nlohmann::json& j) {
    if (j.is_string()) return Int(j.get<std::string>());
    return Int(j.get<long>());
}

nlohmann::json int_to_json(const Int& v) {
    if (fits_u64(v) && v < Int("9007199254740992")) return nlohmann::json(to_u64(v));
    return nlohmann::json(v.get_str());
}

}  // namespace

SievePlan plan_from_json(const nlohmann::json& j) {
    SievePlan plan;
    try {
        plan.name = j.at("name").get<std::string>();
        std::size_t idx = 0;
        for (const auto& js : j.at("steps")) {
            PlanStep step;
            for (const auto& n : js.at("identities"))
                step.identities.push_back(n.get<std::string>());
            step.prime = json_to_int(js.at("prime"));
            step.class_bound_i = js.value("class_bound_i", 0);
            if (js.contains("base"))
                for (const auto& b : js.at("base"))
                    step.base.push_back(residue_class(json_to_int(b.at("modulus")),
                                                      json_to_int(b.at("residue"))));
            plan.steps.push_back(std::move(step));
            ++idx;
        }
    } catch (const nlohmann::json::exception& e) {
        throw PlanError(std::string("plan parse error: ") + e.what());
    }
    return plan;
}

SievePlan load_plan_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PlanError("plan file '" + path + "': cannot open");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw PlanError("plan file '" + path + "': " + e.what());
    }
    try {
        return plan_from_json(j);
    } catch (const PlanError& e) {
        throw PlanError("plan file '" + path + "': " + e.what());
    }
}

nlohmann::json plan_to_json(const SievePlan& plan) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : plan.steps) {
        nlohmann::json js;
        js["identities"] = s.identities;
        js["prime"] = int_to_json(s.prime);
        js["class_bound_i"] = s.class_bound_i;
        if (!s.base.empty()) {
            nlohmann::json bases = nlohmann::json::array();
            for (const auto& b : s.base)
                bases.push_back({{"modulus", int_to_json(b.modulus)},
                                 {"residue", int_to_json(b.residue)}});
            js["base"] = bases;
        }
        steps.push_back(js);
    }
    return {{"name", plan.name}, {"steps", steps}};
}

nlohmann::json excepted_to_json(const ExceptedSet& s) {
    nlohmann::json residues = nlohmann::json::array();
    for (const auto& r : s.residues) residues.push_back(int_to_json(r));
    return {{"modulus", int_to_json(s.modulus)},
            {"residues", residues},
            {"provenance", s.provenance}};
}

ExceptedSet excepted_from_json(const nlohmann::json& j) {
    ExceptedSet s;
    s.modulus = json_to_int(j.at("modulus"));
    for (const auto& r : j.at("residues")) s.residues.push_back(json_to_int(r));
    std::sort(s.residues.begin(), s.residues.end());
    s.residues.erase(std::unique(s.residues.begin(), s.residues.end()), s.residues.end());
    s.provenance = j.value("provenance", "");
    return s;
}

std::string excepted_to_text(const ExceptedSet& s) {
    std::ostringstream os;
    for (const auto& r : s.residues) os << r.get_str() << "\n";
    return os.str();
}

}  // namespace eslab
