// One PASS/FAIL line per acceptance criterion; exit status 0 iff every line passes.
// Usage: acceptance [seed] [criterion ids...]

#include "wcount/suite.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>

int main(int argc, char** argv)
{
    wcount::SuiteOptions options;
    if (argc > 1) {
        options.seed = std::strtoull(argv[1], nullptr, 10);
    }
    for (int i = 2; i < argc; ++i) {
        options.only.push_back(std::atoi(argv[i]));
    }
    const auto start = std::chrono::steady_clock::now();
    const auto results = wcount::run_suite(options);
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << wcount::format_suite(results, total);
    bool ok = total < wcount::kSuiteLimitSeconds;
    for (const auto& r : results) {
        ok = ok && r.passed;
    }
    return ok ? 0 : 1;
}
