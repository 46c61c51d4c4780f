#pragma once

// Path-space summation kernels. The default entry points run the OpenMP
// kernel; wcount::serial holds the plain-loop reference used by tests and
// the benchmark.

#include "wcount/oracle.hpp"

namespace wcount {

/// Sum of exact weights over the whole path space.
/// Throws ExactUnavailable or CapExceeded.
BigRational exact_sum(const WeightedCountingProblem& problem, const BitString& x,
                      const Limits& limits = {});

/// sum_u v(x, u, p+b) / 2^{p+b}, within 2^-b of f(x).
Dyadic approx_sum(const WeightedCountingProblem& problem, const BitString& x, std::uint64_t b,
                  const Limits& limits = {});

/// sum_u (v(x, u, p+c+1) + 1) / 2^{p+c+1}: one extra bit plus an upward shift,
/// so 0 <= result - f(x) <= 2^-c.
Dyadic approx_sum_above(const WeightedCountingProblem& problem, const BitString& x,
                        std::uint64_t c, const Limits& limits = {});

/// Sum of the signed integer weights v(x, u, precision) (no scaling).
BigInt approx_numerator_sum(const WeightedCountingProblem& problem, const BitString& x,
                            std::uint64_t precision, std::int64_t offset_per_path,
                            const Limits& limits = {});

namespace serial {

BigRational exact_sum(const WeightedCountingProblem& problem, const BitString& x,
                      const Limits& limits = {});
BigInt approx_numerator_sum(const WeightedCountingProblem& problem, const BitString& x,
                            std::uint64_t precision, std::int64_t offset_per_path,
                            const Limits& limits = {});

}  // namespace serial

}  // namespace wcount
