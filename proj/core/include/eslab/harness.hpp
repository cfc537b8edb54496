#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "eslab/egyptian.hpp"
#include "eslab/sieve.hpp"

namespace eslab {

// Half-open range [lo, hi). With a plan set, primes whose residue falls
// outside the plan's excepted set are fast-pathed as "class <= plan bound"
// and counted separately instead of being solved.
struct RangeJob {
    Int lo{2};
    Int hi{2};
    bool primes_only{false};
    int class_cap{64};
    std::string plan;  // built-in name or @file; empty: no sieve skip
    Int chunk_size{4096};
};

struct VerificationReport {
    RangeJob job;
    std::uint64_t examined{0};
    std::map<int, std::uint64_t> counts;  // exact min-class tallies
    std::uint64_t fastpath_count{0};
    int fastpath_bound{0};
    std::vector<std::pair<int, Int>> first_occurrences;  // running-max records
    std::vector<Int> exceptions;                         // cap exceeded
    std::uint64_t elapsed_ms{0};
    std::uint64_t chunks_done{0};
};

struct RunOptions {
    int threads{0};  // 0: hardware concurrency
    std::string checkpoint_path;
    std::string csv_path;
    // Test hook: abandon the run after this many merged chunks (0 = off).
    std::uint64_t stop_after_chunks{0};
    bool progress{false};
    // Measured wall time is only embedded in JSON reports on request, so
    // that reports stay byte-identical across thread counts and resumes.
    bool timing_in_json{false};
};

struct RunAbandoned : std::runtime_error {
    explicit RunAbandoned(const std::string& what) : std::runtime_error(what) {}
};

VerificationReport verify_range(const RangeJob& job, const RunOptions& opts = {});

nlohmann::json report_to_json(const VerificationReport& r, bool include_timing = false);
std::string report_to_json_string(const VerificationReport& r, bool include_timing = false);

// min-class tallies over n = P s + sigma for s in [s_lo, s_hi].
struct FamilyDistribution {
    Int P, sigma;
    Int s_lo, s_hi;
    bool primes_only{true};
    std::uint64_t examined{0};
    int max_class{0};
    std::map<int, std::uint64_t> counts;
    std::vector<Int> exceptions;  // cap exceeded; the run continues
};

FamilyDistribution family_distribution(const Int& P, const Int& sigma, const Int& s_lo,
                                       const Int& s_hi, int class_cap,
                                       bool primes_only = true);

// Share of `count` in `total`, 4 significant digits, ties to even.
std::string format_share(std::uint64_t count, std::uint64_t total);

struct SingleCheck {
    Int n;
    int class_index;
    Decomposition witness;
    std::uint64_t elapsed_us;
};

SingleCheck check_single(const Int& n, int class_cap = 64);

// n in [lo, hi) with min_class(n) > class_index whose residue is outside
// the excepted set: the all-naturals reading of a prime-only covering
// statement, reported rather than asserted.
std::vector<Int> inclusion_discrepancies(const ExceptedSet& s, int class_index,
                                         const Int& lo, const Int& hi);

}  // namespace eslab
