#include "wcount/reductions.hpp"

#include <initializer_list>

namespace wcount {

namespace {

const ExactFn& exact_of(const WeightedCountingProblem& problem, const char* op)
{
    if (!problem.oracle.exact) {
        throw ExactUnavailable(std::string(op) + " needs an exact weight map");
    }
    return *problem.oracle.exact;
}

void require_tag(const WeightedCountingProblem& problem, std::initializer_list<RangeTag> allowed,
                 const char* op)
{
    for (RangeTag t : allowed) {
        if (problem.oracle.tag == t) {
            return;
        }
    }
    throw PreconditionViolated(std::string(op) + ": unsupported source tag " +
                               std::string(to_string(problem.oracle.tag)));
}

BigInt integer_weight(const BigRational& w, const char* op)
{
    if (w.get_den() != 1) {
        throw DomainViolation(std::string(op) + ": non-integer weight " + to_string(w));
    }
    return w.get_num();
}

// Shared body of the two lifts: u = u1 u2 with |u1| = p, |u2| = q.
WeightedCountingProblem lift(const WeightedCountingProblem& problem, const IntPolynomial& bit_bound,
                             bool signed_weights, const char* op)
{
    const ExactFn exact = exact_of(problem, op);
    const SizeFunction inner = problem.path_length;
    const RangeTag tag = signed_weights ? RangeTag::T101 : RangeTag::B01;

    WeightedCountingProblem out;
    out.name = std::string(op) + "(" + problem.name + ")";
    out.path_length = inner + SizeFunction(bit_bound);
    out.oracle = WeightOracle::from_exact(
        [exact, inner, bit_bound, signed_weights, op](const BitString& x,
                                                      const BitString& u) -> BigRational {
            const auto p = inner(x.size());
            const auto q = bit_bound(x.size());
            const BigInt w = integer_weight(exact(x, u.prefix(p)), op);
            if (!signed_weights && w < 0) {
                throw DomainViolation(std::string(op) + ": negative weight " + to_string(w));
            }
            const BigInt mag = abs(w);
            if (mag >= pow2(q)) {
                throw BoundViolated(std::string(op) + ": weight " + to_string(w) +
                                    " needs more than " + std::to_string(q) + " bits");
            }
            if (u.suffix(q).to_number() < mag) {
                return sgn(w);
            }
            return 0;
        },
        tag, 0);
    return out;
}

}  // namespace

AffineReduction AffineReduction::identity()
{
    return {[](const BitString& x) { return x; }, [](const BitString&) { return BigRational(1); },
            [](const BitString&) { return BigRational(0); }};
}

BigRational apply_reduction(const AffineReduction& red, const BigRational& g_value,
                            const BitString& x)
{
    return red.scale(x) * g_value + red.offset(x);
}

AffineReduction compose(const AffineReduction& inner, const AffineReduction& outer)
{
    // f(x) = s1(x) * h(m1(x)) + o1(x), h(y) = s2(y) * g(m2(y)) + o2(y).
    AffineReduction r;
    r.input_map = [inner, outer](const BitString& x) { return outer.input_map(inner.input_map(x)); };
    r.scale = [inner, outer](const BitString& x) {
        return BigRational(inner.scale(x) * outer.scale(inner.input_map(x)));
    };
    r.offset = [inner, outer](const BitString& x) {
        return BigRational(inner.scale(x) * outer.offset(inner.input_map(x)) + inner.offset(x));
    };
    return r;
}

WeightedCountingProblem lift_nat_to_binary(const WeightedCountingProblem& problem,
                                           const IntPolynomial& bit_bound)
{
    require_tag(problem, {RangeTag::B01, RangeTag::NAT}, "lift_nat_to_binary");
    return lift(problem, bit_bound, false, "lift_nat_to_binary");
}

WeightedCountingProblem lift_int_to_ternary(const WeightedCountingProblem& problem,
                                            const IntPolynomial& bit_bound)
{
    require_tag(problem,
                {RangeTag::B01, RangeTag::PM1, RangeTag::T101, RangeTag::NAT, RangeTag::INT},
                "lift_int_to_ternary");
    return lift(problem, bit_bound, true, "lift_int_to_ternary");
}

std::pair<WeightedCountingProblem, AffineReduction> embed_binary_in_pm1(
    const WeightedCountingProblem& problem)
{
    require_tag(problem, {RangeTag::B01}, "embed_binary_in_pm1");
    const ExactFn exact = exact_of(problem, "embed_binary_in_pm1");
    WeightedCountingProblem out;
    out.name = "pm1(" + problem.name + ")";
    out.path_length = problem.path_length;
    out.oracle = WeightOracle::from_exact(
        [exact](const BitString& x, const BitString& u) {
            const BigRational w = exact(x, u);
            if (!in_range(RangeTag::B01, w)) {
                throw DomainViolation("embed_binary_in_pm1: weight " + to_string(w) + " not in {0,1}");
            }
            return BigRational(2 * w - 1);
        },
        RangeTag::PM1, 0);

    const SizeFunction p = problem.path_length;
    AffineReduction red = AffineReduction::identity();
    red.scale = [](const BitString&) { return make_rational(1, 2); };
    red.offset = [p](const BitString& x) {
        // 2^{p-1}, which is 1/2 when p = 0.
        return make_rational(pow2(p(x.size())), 2);
    };
    return {std::move(out), std::move(red)};
}

std::pair<WeightedCountingProblem, AffineReduction> embed_ternary_in_nat(
    const WeightedCountingProblem& problem)
{
    require_tag(problem, {RangeTag::B01, RangeTag::PM1, RangeTag::T101}, "embed_ternary_in_nat");
    const ExactFn exact = exact_of(problem, "embed_ternary_in_nat");
    WeightedCountingProblem out;
    out.name = "nat(" + problem.name + ")";
    out.path_length = problem.path_length;
    out.oracle = WeightOracle::from_exact(
        [exact](const BitString& x, const BitString& u) {
            const BigRational w = exact(x, u);
            if (!in_range(RangeTag::T101, w)) {
                throw DomainViolation("embed_ternary_in_nat: weight " + to_string(w) +
                                      " not in {-1,0,1}");
            }
            return BigRational(w + 1);
        },
        RangeTag::NAT, 1);

    const SizeFunction p = problem.path_length;
    AffineReduction red = AffineReduction::identity();
    red.offset = [p](const BitString& x) { return BigRational(-pow2(p(x.size()))); };
    return {std::move(out), std::move(red)};
}

}  // namespace wcount
