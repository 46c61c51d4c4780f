#pragma once

// Acceptance criteria as executable checks. Every criterion draws its random
// instances from a generator seeded by (seed, criterion id) and compares the
// implementation against an oracle written independently in the suite.

#include <cstdint>
#include <string>
#include <vector>

namespace wcount {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    /// Counts, worst observed values and the first failure, if any.
    std::string detail;
    double seconds = 0;
    /// Wall-clock limit pinned for this criterion; 0 for none.
    double limit_seconds = 0;
};

struct SuiteOptions {
    std::uint64_t seed = 20240601;
    /// Forwarded to the parallel kernels; 0 keeps the runtime default.
    int workers = 0;
    /// Criterion ids to run; empty runs all of them.
    std::vector<int> only;
};

/// Number of criteria (ids 1..count).
int suite_criterion_count();

std::vector<CriterionResult> run_suite(const SuiteOptions& options);

/// One "PASS"/"FAIL" line per criterion plus a total line.
std::string format_suite(const std::vector<CriterionResult>& results, double total_seconds);

/// Wall-clock limit for a whole run.
constexpr double kSuiteLimitSeconds = 600;

}  // namespace wcount
