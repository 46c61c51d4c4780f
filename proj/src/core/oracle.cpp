#include "wcount/oracle.hpp"

#include "wcount/errors.hpp"
#include "wcount/summation.hpp"

#include <array>
#include <stdexcept>

namespace wcount {

namespace {

constexpr std::array<std::pair<RangeTag, std::string_view>, 7> kTagNames{{
    {RangeTag::B01, "B01"},
    {RangeTag::PM1, "PM1"},
    {RangeTag::T101, "T101"},
    {RangeTag::NAT, "NAT"},
    {RangeTag::INT, "INT"},
    {RangeTag::QPOLY, "QPOLY"},
    {RangeTag::REAL, "REAL"},
}};

}  // namespace

std::string_view to_string(RangeTag tag)
{
    for (const auto& [t, name] : kTagNames) {
        if (t == tag) {
            return name;
        }
    }
    return "?";
}

RangeTag parse_range_tag(std::string_view text)
{
    for (const auto& [t, name] : kTagNames) {
        if (name == text) {
            return t;
        }
    }
    throw std::invalid_argument("unknown range tag '" + std::string(text) + "'");
}

bool in_range(RangeTag tag, const BigRational& q)
{
    switch (tag) {
    case RangeTag::B01:
        return q == 0 || q == 1;
    case RangeTag::PM1:
        return q == -1 || q == 1;
    case RangeTag::T101:
        return q == -1 || q == 0 || q == 1;
    case RangeTag::NAT:
        return q.get_den() == 1 && q >= 0;
    case RangeTag::INT:
        return q.get_den() == 1;
    case RangeTag::QPOLY:
    case RangeTag::REAL:
        return true;
    }
    return false;
}

bool requires_exact(RangeTag tag) { return tag != RangeTag::QPOLY && tag != RangeTag::REAL; }

WeightOracle WeightOracle::from_exact(ExactFn exact, RangeTag tag,
                                      std::optional<std::int64_t> magnitude_log2)
{
    WeightOracle o;
    o.approx = [exact](const BitString& x, const BitString& u, std::uint64_t b) {
        return floor_scaled(exact(x, u), b);
    };
    o.exact = std::move(exact);
    o.tag = tag;
    o.magnitude_log2 = magnitude_log2;
    return o;
}

std::optional<std::int64_t> WeightOracle::magnitude_bound() const
{
    if (magnitude_log2) {
        return magnitude_log2;
    }
    if (tag == RangeTag::B01 || tag == RangeTag::PM1 || tag == RangeTag::T101) {
        return 0;
    }
    return std::nullopt;
}

bool weights_in_range(const WeightedCountingProblem& problem, const BitString& x, RangeTag tag,
                      const Limits& limits)
{
    if (!problem.oracle.exact) {
        throw ExactUnavailable("range check needs an exact weight map");
    }
    const auto bits = problem.path_bits(x);
    check_cap(bits, limits);
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << bits); ++i) {
        if (!in_range(tag, (*problem.oracle.exact)(x, BitString::from_uint(i, bits)))) {
            return false;
        }
    }
    return true;
}

WeightedCountingProblem retag(const WeightedCountingProblem& problem, const BitString& x,
                              RangeTag tag, const Limits& limits)
{
    if (!weights_in_range(problem, x, tag, limits)) {
        throw InvariantViolation("weights of '" + problem.name + "' are not all in " +
                                 std::string(to_string(tag)));
    }
    auto copy = problem;
    copy.oracle.tag = tag;
    return copy;
}

WeightedCountingProblem negated(const WeightedCountingProblem& problem)
{
    WeightedCountingProblem out = problem;
    out.name = "-(" + problem.name + ")";
    // -v / 2^b is within 2^-b of -w.
    out.oracle.approx = [approx = problem.oracle.approx](const BitString& x, const BitString& u,
                                                        std::uint64_t b) -> BigInt {
        return -approx(x, u, b);
    };
    if (problem.oracle.exact) {
        out.oracle.exact = [exact = *problem.oracle.exact](const BitString& x, const BitString& u) {
            return BigRational(-exact(x, u));
        };
    }
    switch (problem.oracle.tag) {
    case RangeTag::B01: out.oracle.tag = RangeTag::T101; break;
    case RangeTag::NAT: out.oracle.tag = RangeTag::INT; break;
    default: break;
    }
    out.oracle.magnitude_log2 = problem.oracle.magnitude_bound();
    return out;
}

}  // namespace wcount
