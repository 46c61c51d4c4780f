#pragma once

#include "wcount/bitstring.hpp"
#include "wcount/polynomial.hpp"
#include "wcount/rational.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace wcount {

/// Weight class of an oracle. Tags are declared and checked, never inferred.
enum class RangeTag {
    B01,    ///< {0, 1}
    PM1,    ///< {-1, 1}
    T101,   ///< {-1, 0, 1}
    NAT,    ///< natural numbers
    INT,    ///< integers
    QPOLY,  ///< rationals computable in polynomial time
    REAL,   ///< anything approximable
};

std::string_view to_string(RangeTag tag);
RangeTag parse_range_tag(std::string_view text);

/// True when q lies in the set named by tag (QPOLY and REAL admit everything).
bool in_range(RangeTag tag, const BigRational& q);

/// Tags whose oracles must expose an exact map.
bool requires_exact(RangeTag tag);

/// v(x, u, b): an integer with |w(x,u) - v / 2^b| <= 2^-b.
using ApproxFn = std::function<BigInt(const BitString& x, const BitString& u, std::uint64_t b)>;
/// w(x, u) as an exact rational.
using ExactFn = std::function<BigRational(const BitString& x, const BitString& u)>;

struct WeightOracle {
    ApproxFn approx;
    std::optional<ExactFn> exact;
    RangeTag tag = RangeTag::REAL;
    /// Optional a with |w(x,u)| <= 2^a for every path; needed by product closures.
    std::optional<std::int64_t> magnitude_log2;

    /// Oracle whose approximation is floor(w * 2^b) of the exact map.
    static WeightOracle from_exact(ExactFn exact, RangeTag tag,
                                   std::optional<std::int64_t> magnitude_log2 = std::nullopt);

    /// The magnitude bound, falling back to 0 for the bounded tags B01/PM1/T101.
    std::optional<std::int64_t> magnitude_bound() const;
};

/// f(x) = sum over u in {0,1}^{path_length(|x|)} of w(x, u).
struct WeightedCountingProblem {
    SizeFunction path_length = IntPolynomial{};
    WeightOracle oracle;
    std::string name;

    std::uint64_t path_bits(const BitString& x) const { return path_length(x.size()); }
};

/// Enumeration limits and worker count for path-space sums.
struct Limits {
    std::uint64_t max_paths = std::uint64_t{1} << 24;
    /// OpenMP thread count; 0 keeps the runtime default, 1 forces the serial kernel.
    int workers = 0;
};

/// Throws CapExceeded when 2^bits exceeds limits.max_paths.
void check_cap(std::uint64_t bits, const Limits& limits);

/// Decide whether f(x) >= threshold.
struct DecisionInstance {
    WeightedCountingProblem problem;
    BigRational threshold;
    /// q with encoding_bits(f(x)) <= q(|x|).
    std::optional<IntPolynomial> output_bit_bound;
};

/// Every exact weight of problem on x lies in the set named by `tag`.
/// Throws ExactUnavailable when the oracle carries no exact map.
bool weights_in_range(const WeightedCountingProblem& problem, const BitString& x, RangeTag tag,
                      const Limits& limits = {});

/// Copy of problem carrying `tag`, after an exhaustive scan over x's path space.
/// Throws InvariantViolation if a weight falls outside the tagged set.
WeightedCountingProblem retag(const WeightedCountingProblem& problem, const BitString& x,
                              RangeTag tag, const Limits& limits = {});

/// The problem with every weight negated; B01 widens to T101 and NAT to INT.
WeightedCountingProblem negated(const WeightedCountingProblem& problem);

}  // namespace wcount
