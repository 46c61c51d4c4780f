#pragma once

#include "wcount/oracle.hpp"

#include <random>
#include <vector>

namespace wcount::testing {

/// Problem whose weight on path u is table[#u]; the input is ignored.
inline WeightedCountingProblem table_problem(std::vector<BigRational> table, std::uint64_t p,
                                             RangeTag tag = RangeTag::QPOLY,
                                             std::optional<std::int64_t> magnitude = std::nullopt)
{
    WeightedCountingProblem problem;
    problem.name = "table";
    problem.path_length = IntPolynomial::constant(p);
    problem.oracle = WeightOracle::from_exact(
        [table = std::move(table)](const BitString&, const BitString& u) {
            return table.at(u.to_uint64());
        },
        tag, magnitude);
    return problem;
}

inline WeightedCountingProblem constant_problem(const BigRational& w, std::uint64_t p,
                                                RangeTag tag = RangeTag::QPOLY)
{
    // |w| <= 2^bits(ceil |w|).
    const auto magnitude = static_cast<std::int64_t>(bit_length(ceil(abs(w))));
    return table_problem(std::vector<BigRational>(std::size_t{1} << p, w), p, tag, magnitude);
}

/// Deterministic generator for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    std::int64_t range(std::int64_t lo, std::int64_t hi)
    {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
    }
    bool coin() { return range(0, 1) == 1; }

    BigRational rational(std::int64_t max_num, std::int64_t max_den)
    {
        return make_rational(range(-max_num, max_num), range(1, max_den));
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace wcount::testing
