#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "eslab/identities.hpp"
#include "eslab/residue.hpp"

namespace eslab {

// Product of a constant, extracted primes and whole residual forms; the x/y
// sides of a uniform divisor certificate. parts entries are (form index,
// extracted prime); prime 0 means the whole form.
struct DivisorExpr {
    Int constant{1};
    std::vector<std::pair<std::size_t, Int>> parts;

    Int eval(const SplitIdentity& id, const Int& k) const;
    int degree() const;
    std::string describe(const SplitIdentity& id) const;
};

// How a residue class of k gets discharged, reported with the fixed
// priority composite-witness, unit-residual, certified.
struct CoverageStatus {
    enum class Kind { composite_witness, unit_residual, certified, uncovered };
    Kind kind{Kind::uncovered};
    Int witness_prime{0};  // composite_witness
    DivisorExpr x, y;      // certified

    bool covered() const { return kind != Kind::uncovered; }
};

// Decide the status of the class k == rho (mod q) for one split identity.
// Non-constant certificate sums are only accepted when m divides the class
// modulus; constant sums are accepted for any modulus.
CoverageStatus coverage_status(const SplitIdentity& id, const ResidueClass& k_class);

// The concrete decomposition of 4/n(k) promised by a unit-residual or
// certified status; nullopt for composite-witness and uncovered.
std::optional<Decomposition> instantiate_coverage(const SplitIdentity& id,
                                                  const CoverageStatus& st, const Int& k);

struct SubclassReport {
    ResidueClass k_class;
    CoverageStatus status;
    std::string covering_identity;  // empty when uncovered
};

// Split k == base into q subclasses mod q*base.modulus and report the first
// identity that covers each.
std::vector<SubclassReport> refine(const std::vector<const CatalogEntry*>& ids, const Int& q,
                                   const ResidueClass& base);

struct ExceptedSet {
    Int modulus{1};
    std::vector<Int> residues;  // sorted, duplicate-free
    std::string provenance;

    bool contains(const Int& n) const;
};

struct PlanStep {
    std::vector<std::string> identities;
    Int prime;
    int class_bound_i{0};
    std::vector<ResidueClass> base;  // empty: refine every uncovered class
};

struct SievePlan {
    std::string name;
    std::vector<PlanStep> steps;
};

struct PlanError : std::runtime_error {
    explicit PlanError(const std::string& what) : std::runtime_error(what) {}
};

struct StepReport {
    std::size_t step_index;
    Int prime;
    std::vector<SubclassReport> subclasses;  // per family, in residue order
};

struct PlanRun {
    ExceptedSet excepted;
    int class_bound_i{0};
    std::vector<StepReport> steps;
};

// Excepted residues of n at the plan's final modulus. Identity families in
// one step are sieved as separate branches of the same k-refinement; all
// branches must end at one n-modulus.
ExceptedSet run_plan(const SievePlan& plan);
PlanRun run_plan_detailed(const SievePlan& plan);

// prop-1.2, prop-1.3, prop-1.4, prop-1.5, mordell-840, thm-1320, thm-9240.
// thm-9240 is the intersection of thm-1320 with prop-1.4.
const std::vector<std::string>& builtin_plan_names();
bool is_builtin_plan(std::string_view name);
PlanRun run_named_plan(std::string_view name);

// Residues mod lcm lying in both sets, via CRT over all compatible pairs.
ExceptedSet intersect_excepted(const ExceptedSet& a, const ExceptedSet& b);

struct RemovalRecord {
    Int residue;
    std::string identity;
    int class_index;
};

struct ReducedSet {
    ExceptedSet set;
    std::vector<RemovalRecord> removed;
};

// Drop residues sigma for which the catalog holds a verified three-term
// identity of family (modulus, sigma).
ReducedSet remove_identity_covered(const ExceptedSet& s,
                                   const std::vector<CatalogEntry>& catalog);

struct ResidueHistogram {
    std::vector<Int> squares;     // includes 0 and 1
    std::vector<Int> primes;
    std::vector<Int> composites;  // composite non-squares
};

ResidueHistogram classify_residues(const ExceptedSet& s);

SievePlan plan_from_json(const nlohmann::json& j);
SievePlan load_plan_file(const std::string& path);
nlohmann::json plan_to_json(const SievePlan& plan);

nlohmann::json excepted_to_json(const ExceptedSet& s);
ExceptedSet excepted_from_json(const nlohmann::json& j);
std::string excepted_to_text(const ExceptedSet& s);

}  // namespace eslab
