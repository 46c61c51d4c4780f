#include "wcount/summation.hpp"

#include "wcount/errors.hpp"
#include "wcount/parallel.hpp"

namespace wcount {

namespace {

const ExactFn& require_exact(const WeightedCountingProblem& problem)
{
    if (!problem.oracle.exact) {
        throw ExactUnavailable("problem '" + problem.name + "' has no exact weight map");
    }
    return *problem.oracle.exact;
}

}  // namespace

void check_cap(std::uint64_t bits, const Limits& limits)
{
    if (bits >= 63 || (std::uint64_t{1} << bits) > limits.max_paths) {
        throw CapExceeded("path space 2^" + std::to_string(bits) + " exceeds the cap of " +
                          std::to_string(limits.max_paths) + " weights");
    }
}

namespace serial {

BigRational exact_sum(const WeightedCountingProblem& problem, const BitString& x,
                      const Limits& limits)
{
    const auto& exact = require_exact(problem);
    const auto bits = problem.path_bits(x);
    check_cap(bits, limits);
    BigRational total = 0;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << bits); ++i) {
        total += exact(x, BitString::from_uint(i, bits));
    }
    return total;
}

BigInt approx_numerator_sum(const WeightedCountingProblem& problem, const BitString& x,
                            std::uint64_t precision, std::int64_t offset_per_path,
                            const Limits& limits)
{
    const auto bits = problem.path_bits(x);
    check_cap(bits, limits);
    BigInt total = 0;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << bits); ++i) {
        total += problem.oracle.approx(x, BitString::from_uint(i, bits), precision);
        total += offset_per_path;
    }
    return total;
}

}  // namespace serial

BigRational exact_sum(const WeightedCountingProblem& problem, const BitString& x,
                      const Limits& limits)
{
    const auto& exact = require_exact(problem);
    const auto bits = problem.path_bits(x);
    check_cap(bits, limits);
    return parallel_accumulate(
        std::uint64_t{1} << bits, limits.workers, BigRational(0),
        [&](std::uint64_t i, BigRational& acc) { acc += exact(x, BitString::from_uint(i, bits)); },
        [](BigRational& into, const BigRational& part) { into += part; });
}

BigInt approx_numerator_sum(const WeightedCountingProblem& problem, const BitString& x,
                            std::uint64_t precision, std::int64_t offset_per_path,
                            const Limits& limits)
{
    const auto bits = problem.path_bits(x);
    check_cap(bits, limits);
    const auto& approx = problem.oracle.approx;
    return parallel_accumulate(
        std::uint64_t{1} << bits, limits.workers, BigInt(0),
        [&](std::uint64_t i, BigInt& acc) {
            acc += approx(x, BitString::from_uint(i, bits), precision);
            acc += offset_per_path;
        },
        [](BigInt& into, const BigInt& part) { into += part; });
}

Dyadic approx_sum(const WeightedCountingProblem& problem, const BitString& x, std::uint64_t b,
                  const Limits& limits)
{
    const auto precision = problem.path_bits(x) + b;
    return {approx_numerator_sum(problem, x, precision, 0, limits), precision};
}

Dyadic approx_sum_above(const WeightedCountingProblem& problem, const BitString& x,
                        std::uint64_t c, const Limits& limits)
{
    const auto precision = problem.path_bits(x) + c + 1;
    return {approx_numerator_sum(problem, x, precision, 1, limits), precision};
}

}  // namespace wcount
