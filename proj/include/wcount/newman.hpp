#pragma once

#include "wcount/enclosure.hpp"
#include "wcount/errors.hpp"
#include "wcount/oracle.hpp"

#include <vector>

namespace wcount {

/// Univariate polynomial with rational coefficients, lowest degree first.
struct RationalPolynomial {
    std::vector<BigRational> coefficients;

    BigRational operator()(const BigRational& x) const;
    std::size_t degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
};

/// r/q approximating |x| on [-1, 1]; q >= 1 on the whole real line.
struct RationalFunctionPair {
    RationalPolynomial numerator;
    RationalPolynomial denominator;
    std::uint64_t m = 0;

    BigRational operator()(const BigRational& x) const;
};

/// Newman's construction with nodes a^k, a = e^{-1/sqrt(m)}, k < m, each node
/// a 128-bit dyadic enclosure: p(x) = prod (x + a^k), r = x (p(x) - p(-x)),
/// q = p(x) + p(-x), both divided by q(0).
/// Throws PreconditionViolated unless m >= 4 is a perfect square.
RationalFunctionPair newman_rational(std::uint64_t m);

/// Certified bracket of 3 e^{-sqrt(m)} for a perfect square m.
Bracket newman_bound(std::uint64_t m);

/// max over grid points -1 + 2j/(grid-1) of | |x| - r(x)/q(x) |, exactly.
BigRational newman_grid_error(const RationalFunctionPair& pair, std::uint64_t grid = 1001,
                              int workers = 0);

/// c r(x/c) / q(x/c). Throws DomainViolation if |x| > c.
BigRational eval_scaled_abs(const RationalFunctionPair& pair, const BigRational& c,
                            const BigRational& x);

/// GapP functions f_i with f_i(x) >= 0 iff x in L_i and |f_i(x)| <= 2^{magnitude_poly(|x|)}.
struct GapInstance {
    std::vector<WeightedCountingProblem> problems;
    IntPolynomial magnitude_poly;
};

/// The numerator/denominator handed to the sign decision, with the values they encode.
struct SignCertificate {
    BigRational numerator;
    BigRational denominator;
    /// Lower bound 2^-t on both, as used by the sign decision.
    std::uint64_t t = 0;
};

/// x in the intersection of the L_i: sign of 1 - sum_i (r_i/q_i - f_i) with every
/// r_i/q_i a Newman pair of degree 4p^2 scaled to [-2^p, 2^p], over the common
/// denominator prod q_i. Throws PromiseViolated, InvariantViolation.
bool pp_intersect_decide(const GapInstance& inst, const BitString& x, const Limits& limits = {});

/// table[a] for a = (f_1(x) >= 0, ..., f_k(x) >= 0), bit i of a being the i-th answer
/// (most significant first). The table's multilinear extension is evaluated at the soft
/// bits beta_i = 1/(1 + 4 d_i^2), d_i = r_i/q_i - f_i, and compared against 1/2.
bool pp_truthtable_decide(const GapInstance& inst, const std::vector<bool>& table,
                          const BitString& x, const Limits& limits = {});

/// The certificates behind the two decisions, exposed for checking.
SignCertificate intersect_certificate(const GapInstance& inst, const BitString& x,
                                      const Limits& limits = {});
SignCertificate truthtable_certificate(const GapInstance& inst, const std::vector<bool>& table,
                                       const BitString& x, const Limits& limits = {});

}  // namespace wcount
