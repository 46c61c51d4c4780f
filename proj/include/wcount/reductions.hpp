#pragma once

#include "wcount/errors.hpp"
#include "wcount/oracle.hpp"

#include <functional>
#include <utility>

namespace wcount {

/// f(x) = scale(x) * g(input_map(x)) + offset(x).
struct AffineReduction {
    std::function<BitString(const BitString&)> input_map;
    std::function<BigRational(const BitString&)> scale;
    std::function<BigRational(const BitString&)> offset;

    static AffineReduction identity();
};

/// scale(x) * g_value + offset(x).
BigRational apply_reduction(const AffineReduction& red, const BigRational& g_value,
                            const BitString& x);

/// Reduction whose source is `inner`'s source and whose target is `outer`'s target:
/// f = inner(h), h = outer(g).
AffineReduction compose(const AffineReduction& inner, const AffineReduction& outer);

/// Paths u1 u2 with |u2| = bit_bound(|x|); weight 1 iff #u2 < w(x, u1).
/// Throws BoundViolated (during evaluation) on a weight >= 2^bit_bound.
WeightedCountingProblem lift_nat_to_binary(const WeightedCountingProblem& problem,
                                           const IntPolynomial& bit_bound);

/// As lift_nat_to_binary, weight sign(w) iff #u2 < |w(x, u1)|.
WeightedCountingProblem lift_int_to_ternary(const WeightedCountingProblem& problem,
                                            const IntPolynomial& bit_bound);

/// Weights 2w - 1; f = g/2 + 2^{p-1}.
std::pair<WeightedCountingProblem, AffineReduction> embed_binary_in_pm1(
    const WeightedCountingProblem& problem);

/// Weights w + 1; f = g - 2^p.
std::pair<WeightedCountingProblem, AffineReduction> embed_ternary_in_nat(
    const WeightedCountingProblem& problem);

}  // namespace wcount
