#pragma once

// Closure operators on weighted counting problems. Every operator builds a new
// problem whose approximation is re-derived from the children's
// approximations at raised precision, so |w' - v'/2^b| <= 2^-b holds for the
// result whenever it holds for the children. Exact maps are carried through
// when every child has one.

#include "wcount/errors.hpp"
#include "wcount/oracle.hpp"

#include <memory>
#include <vector>

namespace wcount {

/// Self-delimiting pairing: each bit of x doubled, then "01", then y.
BitString pair_input(const BitString& x, const BitString& y);
/// Inverse of pair_input. Throws std::invalid_argument on a non-pair.
std::pair<BitString, BitString> unpair_input(const BitString& z);

/// f + c, with c placed on the all-zero path.
WeightedCountingProblem add_const(const WeightedCountingProblem& f, const BigRational& c);

/// c * f.
WeightedCountingProblem scale(const WeightedCountingProblem& f, const BigRational& c);

enum class CombineKind { Sum, Product };

/// Sum: u = s v with ceil(log2 k) selector bits s and |v| = max p_i; child s reads
/// the first p_s bits of v and the rest must be zero.
/// Product: u = u_1 ... u_k, weight prod w_i(x, u_i). Needs magnitude bounds.
/// Throws EmptyList, MissingBound.
WeightedCountingProblem finite_combine(CombineKind kind,
                                       const std::vector<WeightedCountingProblem>& fs);

/// g(x) = sum over y in {0,1}^{p(|x|)} of f(<x, y>).
WeightedCountingProblem uniform_exp_sum(const WeightedCountingProblem& f, const IntPolynomial& p);

/// g(x) = prod over y = 1..p(|x|) of f(<x, y>), y written in ceil(log2(p(|x|)+1)) bits.
WeightedCountingProblem uniform_poly_product(const WeightedCountingProblem& f,
                                             const IntPolynomial& p);

/// Width of the index block i in <x, i> for multivariate_poly.
std::uint64_t multivariate_index_bits(std::uint64_t q);

/// sum over e in {0..r}^q of c(<x, e>) * prod_i f(<x, i>)^{e_i}, q = q(|x|), r = r(|x|).
/// e is q blocks of ceil(log2(r+1)) bits; i runs over 1..q in multivariate_index_bits(q) bits.
WeightedCountingProblem multivariate_poly(const WeightedCountingProblem& c,
                                          const WeightedCountingProblem& f, const IntPolynomial& q,
                                          const IntPolynomial& r);

/// Sign of num(x)/den(x) from two approximations with error 2^{-t-1}.
/// Throws PromiseViolated when either lands within 2^{-t-1} of zero.
int rational_sign_decide(const WeightedCountingProblem& num, const WeightedCountingProblem& den,
                         const IntPolynomial& t, const BitString& x, const Limits& limits = {});

/// Expression tree over the operators above.
struct ClosureExpr {
    enum class Kind {
        Leaf,
        AddConst,
        Scale,
        FiniteSum,
        FiniteProduct,
        UniformExpSum,
        UniformPolyProduct,
        MultivariatePoly,
    };

    Kind kind = Kind::Leaf;
    std::shared_ptr<const WeightedCountingProblem> leaf;
    std::vector<ClosureExpr> children;
    BigRational constant;
    std::vector<IntPolynomial> polynomials;

    static ClosureExpr of(WeightedCountingProblem problem);

    /// Throws InvariantViolation on an arity mismatch.
    WeightedCountingProblem build() const;
};

}  // namespace wcount
