#pragma once

// Command-line front end: configuration, file ingestion and command dispatch.
// Exact values print as "a/b"; decision commands exit 0 for true and 1 for
// false; usage, file and domain errors exit 2.

#include "wcount/oracle.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace wcount::cli {

enum class OutputFormat { Rational, Dyadic, Decimal };

OutputFormat parse_format(std::string_view text);
std::string_view to_string(OutputFormat format);

struct Config {
    std::uint64_t cap = std::uint64_t{1} << 24;
    /// Bits used by the dyadic and decimal displays.
    std::uint64_t precision = 20;
    int workers = 0;
    OutputFormat format = OutputFormat::Rational;

    /// Throws InvariantViolation unless cap >= 2^10, precision >= 1 and workers >= 0.
    void validate() const;
    Limits limits() const { return {cap, workers}; }
};

/// Returns the variable's value or nullptr.
using EnvLookup = std::function<const char*(const char* name)>;

/// Defaults overridden by WCOUNT_CAP, WCOUNT_PRECISION, WCOUNT_WORKERS and WCOUNT_FORMAT.
/// Throws InvariantViolation on a malformed or out-of-range value.
Config config_from_environment(const EnvLookup& lookup);

/// rational: "a/b". dyadic: floor at `precision` bits as "m/2^e", followed by the exact
/// value when they differ. decimal: the exact value followed by "~ d.ddd".
std::string format_value(const BigRational& value, const Config& config);

/// Runs one command; args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             const EnvLookup& lookup);

}  // namespace wcount::cli
