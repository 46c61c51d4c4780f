#include "wcount/closure.hpp"

#include "wcount/summation.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>

namespace wcount {

namespace {

constexpr std::array<RangeTag, 7> kTagOrder = {RangeTag::B01, RangeTag::PM1,   RangeTag::T101,
                                               RangeTag::NAT, RangeTag::INT,   RangeTag::QPOLY,
                                               RangeTag::REAL};

bool tag_subset(RangeTag a, RangeTag b)
{
    if (a == b || b == RangeTag::REAL) {
        return true;
    }
    switch (a) {
    case RangeTag::B01:
        return b != RangeTag::PM1;
    case RangeTag::PM1:
        return b == RangeTag::T101 || b == RangeTag::INT || b == RangeTag::QPOLY;
    case RangeTag::T101:
    case RangeTag::NAT:
        return b == RangeTag::INT || b == RangeTag::QPOLY;
    case RangeTag::INT:
        return b == RangeTag::QPOLY;
    default:
        return false;
    }
}

// Smallest listed tag containing both; every listed set is closed under products.
RangeTag tag_join(RangeTag a, RangeTag b)
{
    for (RangeTag t : kTagOrder) {
        if (tag_subset(a, t) && tag_subset(b, t)) {
            return t;
        }
    }
    return RangeTag::REAL;
}

// Tag of {w, w + c : w in tag}.
RangeTag shifted_tag(RangeTag tag, const BigRational& c)
{
    if (c == 0) {
        return tag;
    }
    if (tag == RangeTag::REAL) {
        return RangeTag::REAL;
    }
    if (c.get_den() == 1 && tag_subset(tag, RangeTag::INT)) {
        return c > 0 && tag_subset(tag, RangeTag::NAT) ? RangeTag::NAT : RangeTag::INT;
    }
    return RangeTag::QPOLY;
}

// Tag of {c * w : w in tag}.
RangeTag scaled_tag(RangeTag tag, const BigRational& c)
{
    if (c == 0) {
        return RangeTag::B01;
    }
    if (c == 1 || tag == RangeTag::REAL) {
        return tag;
    }
    if (c == -1 && tag_subset(tag, RangeTag::T101)) {
        return tag == RangeTag::PM1 ? RangeTag::PM1 : RangeTag::T101;
    }
    if (c.get_den() == 1 && tag_subset(tag, RangeTag::INT)) {
        return c > 0 && tag_subset(tag, RangeTag::NAT) ? RangeTag::NAT : RangeTag::INT;
    }
    return RangeTag::QPOLY;
}

// Smallest a >= 0 with |c| <= 2^a.
std::int64_t log2_ceil_abs(const BigRational& c)
{
    const BigInt m = ceil(abs(c));
    if (m <= 1) {
        return 0;
    }
    return static_cast<std::int64_t>(bit_length(BigInt(m - 1)));
}

std::int64_t required_bound(const WeightedCountingProblem& f, const char* op)
{
    auto a = f.oracle.magnitude_bound();
    if (!a) {
        throw MissingBound(std::string(op) + " needs a magnitude bound for '" + f.name + "'");
    }
    return *a;
}

struct Factor {
    const WeightOracle* oracle;
    BitString x;
    BitString u;
    std::int64_t magnitude;
};

// round(prod v_i(b_i) / 2^{sum b_i - b}) with b_i = b + 1 + ceil(log2 k) + sum_{j != i}(a_j + 1),
// a_j clamped at 0. Each of the k first-order error terms is at most 2^{-b-1}/k and the final
// rounding adds at most 2^{-b-1}.
BigInt product_approx(const std::vector<Factor>& factors, std::uint64_t b)
{
    if (factors.empty()) {
        return pow2(b);
    }
    const auto lk = ceil_log2(factors.size());
    std::uint64_t all = 0;
    for (const auto& f : factors) {
        all += static_cast<std::uint64_t>(std::max<std::int64_t>(f.magnitude, 0)) + 1;
    }
    BigInt prod = 1;
    std::uint64_t total = 0;
    for (const auto& f : factors) {
        const auto own = static_cast<std::uint64_t>(std::max<std::int64_t>(f.magnitude, 0)) + 1;
        const std::uint64_t bi = b + 1 + lk + all - own;
        prod *= f.oracle->approx(f.x, f.u, bi);
        total += bi;
        if (prod == 0) {
            return 0;
        }
    }
    return round_shift(prod, total - b);
}

BigRational product_exact(const std::vector<Factor>& factors)
{
    BigRational prod = 1;
    for (const auto& f : factors) {
        prod *= (*f.oracle->exact)(f.x, f.u);
        if (prod == 0) {
            break;
        }
    }
    return prod;
}

bool all_exact(const std::vector<const WeightedCountingProblem*>& fs)
{
    return std::all_of(fs.begin(), fs.end(), [](auto* f) { return f->oracle.exact.has_value(); });
}

// Fills in exact from a path-level evaluator when every child has an exact map.
template <class Eval>
void attach(WeightOracle& oracle, bool exact_available, Eval eval)
{
    oracle.approx = [eval](const BitString& x, const BitString& u, std::uint64_t b) -> BigInt {
        return eval(x, u, std::optional<std::uint64_t>(b)).first;
    };
    if (exact_available) {
        oracle.exact = [eval](const BitString& x, const BitString& u) -> BigRational {
            return eval(x, u, std::nullopt).second;
        };
    }
}

// Evaluators return (approx at b, 0) or (0, exact) depending on the mode.
using EvalResult = std::pair<BigInt, BigRational>;

EvalResult eval_factors(const std::vector<Factor>& factors, std::optional<std::uint64_t> b)
{
    if (b) {
        return {product_approx(factors, *b), 0};
    }
    return {0, product_exact(factors)};
}

const EvalResult kZero{0, 0};

bool zero_bits(const BitString& u, std::size_t from)
{
    for (std::size_t i = from; i < u.size(); ++i) {
        if (u[i]) {
            return false;
        }
    }
    return true;
}

}  // namespace

BitString pair_input(const BitString& x, const BitString& y)
{
    std::string s;
    s.reserve(2 * x.size() + 2 + y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const char c = x[i] ? '1' : '0';
        s.push_back(c);
        s.push_back(c);
    }
    s += "01";
    s += y.str();
    return BitString(s);
}

std::pair<BitString, BitString> unpair_input(const BitString& z)
{
    std::string x;
    std::size_t i = 0;
    for (; i + 1 < z.size(); i += 2) {
        if (z[i] == z[i + 1]) {
            x.push_back(z[i] ? '1' : '0');
            continue;
        }
        if (!z[i] && z[i + 1]) {
            return {BitString(x), z.slice(i + 2, z.size() - i - 2)};
        }
        break;
    }
    throw std::invalid_argument("'" + z.str() + "' is not a paired input");
}

WeightedCountingProblem add_const(const WeightedCountingProblem& f, const BigRational& c)
{
    WeightedCountingProblem g;
    g.name = "(" + f.name + " + " + to_string(c) + ")";
    g.path_length = f.path_length;
    g.oracle.tag = shifted_tag(f.oracle.tag, c);
    if (auto a = f.oracle.magnitude_bound()) {
        g.oracle.magnitude_log2 = c == 0 ? *a : std::max(*a, log2_ceil_abs(c)) + 1;
    }
    const WeightOracle src = f.oracle;
    // Two guard bits: the child and the constant each contribute at most 2^{-b-2},
    // the final rounding at most 2^{-b-1}.
    attach(g.oracle, src.exact.has_value(),
           [src, c](const BitString& x, const BitString& u,
                    std::optional<std::uint64_t> b) -> EvalResult {
               const bool origin = u.is_zero();
               if (b) {
                   BigInt v = src.approx(x, u, *b + 2);
                   if (origin) {
                       v += floor_scaled(c, *b + 2);
                   }
                   return {round_shift(v, 2), 0};
               }
               BigRational w = (*src.exact)(x, u);
               if (origin) {
                   w += c;
               }
               return {0, w};
           });
    return g;
}

WeightedCountingProblem scale(const WeightedCountingProblem& f, const BigRational& c)
{
    WeightedCountingProblem g;
    g.name = "(" + to_string(c) + " * " + f.name + ")";
    g.path_length = f.path_length;
    g.oracle.tag = scaled_tag(f.oracle.tag, c);
    const std::int64_t a = log2_ceil_abs(c);
    if (c == 0) {
        g.oracle = WeightOracle::from_exact(
            [](const BitString&, const BitString&) { return BigRational(0); }, RangeTag::B01, 0);
        return g;
    }
    if (auto fa = f.oracle.magnitude_bound()) {
        g.oracle.magnitude_log2 = *fa + a;
    }
    const WeightOracle src = f.oracle;
    const auto shift = static_cast<std::uint64_t>(a) + 1;
    // |c| 2^{-(b+a+1)} <= 2^{-b-1} from the child, 2^{-b-1} from the rounding.
    attach(g.oracle, src.exact.has_value(),
           [src, c, shift](const BitString& x, const BitString& u,
                           std::optional<std::uint64_t> b) -> EvalResult {
               if (b) {
                   const BigRational scaled = c * BigRational(src.approx(x, u, *b + shift));
                   return {round_nearest(BigRational(scaled / BigRational(pow2(shift)))), 0};
               }
               return {0, c * (*src.exact)(x, u)};
           });
    return g;
}

WeightedCountingProblem finite_combine(CombineKind kind,
                                       const std::vector<WeightedCountingProblem>& fs)
{
    if (fs.empty()) {
        throw EmptyList("finite_combine needs at least one problem");
    }
    std::vector<const WeightedCountingProblem*> ptrs;
    std::string name;
    for (const auto& f : fs) {
        ptrs.push_back(&f);
        name += (name.empty() ? "" : (kind == CombineKind::Sum ? " + " : " * ")) + f.name;
    }
    const bool exact = all_exact(ptrs);
    std::vector<SizeFunction> lengths;
    std::vector<WeightOracle> oracles;
    for (const auto& f : fs) {
        lengths.push_back(f.path_length);
        oracles.push_back(f.oracle);
    }

    WeightedCountingProblem g;
    g.name = "(" + name + ")";
    const std::size_t k = fs.size();

    if (kind == CombineKind::Sum) {
        const auto sel = ceil_log2(k);
        g.path_length = SizeFunction(
            [lengths, sel](std::uint64_t n) {
                std::uint64_t m = 0;
                for (const auto& l : lengths) {
                    m = std::max(m, l(n));
                }
                return sel + m;
            },
            std::to_string(sel) + " + max(child path lengths)");
        RangeTag tag = RangeTag::B01;
        std::optional<std::int64_t> mag = 0;
        for (const auto& f : fs) {
            tag = tag_join(tag, f.oracle.tag);
            auto a = f.oracle.magnitude_bound();
            mag = (mag && a) ? std::optional<std::int64_t>(std::max(*mag, *a)) : std::nullopt;
        }
        g.oracle.tag = tag;
        g.oracle.magnitude_log2 = mag;
        attach(g.oracle, exact,
               [lengths, oracles, sel, k](const BitString& x, const BitString& u,
                                          std::optional<std::uint64_t> b) -> EvalResult {
                   const std::uint64_t s = u.prefix(sel).to_uint64();
                   if (s >= k) {
                       return kZero;
                   }
                   const auto ps = lengths[s](x.size());
                   if (!zero_bits(u, sel + ps)) {
                       return kZero;
                   }
                   const BitString us = u.slice(sel, ps);
                   if (b) {
                       return {oracles[s].approx(x, us, *b), 0};
                   }
                   return {0, (*oracles[s].exact)(x, us)};
               });
        return g;
    }

    std::vector<std::int64_t> mags;
    std::int64_t total_mag = 0;
    RangeTag tag = fs.front().oracle.tag;
    for (const auto& f : fs) {
        mags.push_back(required_bound(f, "finite product"));
        total_mag += mags.back();
        tag = tag_join(tag, f.oracle.tag);
    }
    g.oracle.tag = tag;
    g.oracle.magnitude_log2 = total_mag;
    g.path_length = SizeFunction(
        [lengths](std::uint64_t n) {
            std::uint64_t s = 0;
            for (const auto& l : lengths) {
                s += l(n);
            }
            return s;
        },
        "sum(child path lengths)");
    // Oracles live in the closure; Factor holds pointers into this shared copy.
    auto shared = std::make_shared<const std::vector<WeightOracle>>(oracles);
    attach(g.oracle, exact,
           [lengths, shared, mags](const BitString& x, const BitString& u,
                                   std::optional<std::uint64_t> b) -> EvalResult {
               std::vector<Factor> factors;
               std::size_t pos = 0;
               for (std::size_t i = 0; i < lengths.size(); ++i) {
                   const auto pi = lengths[i](x.size());
                   factors.push_back({&(*shared)[i], x, u.slice(pos, pi), mags[i]});
                   pos += pi;
               }
               return eval_factors(factors, b);
           });
    return g;
}

WeightedCountingProblem uniform_exp_sum(const WeightedCountingProblem& f, const IntPolynomial& p)
{
    const SizeFunction pf = f.path_length;
    WeightedCountingProblem g;
    g.name = "sum_y " + f.name;
    g.path_length = SizeFunction(
        [pf, p](std::uint64_t n) { return p(n) + pf(2 * n + 2 + p(n)); },
        "p(n) + p_f(2n + 2 + p(n)), p = " + p.str());
    g.oracle.tag = f.oracle.tag;
    g.oracle.magnitude_log2 = f.oracle.magnitude_log2;
    const WeightOracle src = f.oracle;
    attach(g.oracle, src.exact.has_value(),
           [src, p](const BitString& x, const BitString& u,
                    std::optional<std::uint64_t> b) -> EvalResult {
               const auto m = p(x.size());
               const BitString xy = pair_input(x, u.prefix(m));
               const BitString rest = u.slice(m, u.size() - m);
               if (b) {
                   return {src.approx(xy, rest, *b), 0};
               }
               return {0, (*src.exact)(xy, rest)};
           });
    return g;
}

WeightedCountingProblem uniform_poly_product(const WeightedCountingProblem& f,
                                             const IntPolynomial& p)
{
    const std::int64_t a = required_bound(f, "uniform_poly_product");
    const SizeFunction pf = f.path_length;
    WeightedCountingProblem g;
    g.name = "prod_y " + f.name;
    g.path_length = SizeFunction(
        [pf, p](std::uint64_t n) {
            const auto m = p(n);
            return m * pf(2 * n + 2 + ceil_log2(m + 1));
        },
        "p(n) * p_f(2n + 2 + ceil(log2(p(n)+1))), p = " + p.str());
    g.oracle.tag = f.oracle.tag;
    if (a <= 0) {
        g.oracle.magnitude_log2 = 0;
    }
    auto src = std::make_shared<const WeightOracle>(f.oracle);
    attach(g.oracle, src->exact.has_value(),
           [src, pf, p, a](const BitString& x, const BitString& u,
                           std::optional<std::uint64_t> b) -> EvalResult {
               const auto m = p(x.size());
               const auto width = ceil_log2(m + 1);
               std::vector<Factor> factors;
               std::size_t pos = 0;
               for (std::uint64_t y = 1; y <= m; ++y) {
                   BitString xy = pair_input(x, BitString::from_uint(y, width));
                   const auto len = pf(xy.size());
                   factors.push_back({src.get(), std::move(xy), u.slice(pos, len), a});
                   pos += len;
               }
               return eval_factors(factors, b);
           });
    return g;
}

std::uint64_t multivariate_index_bits(std::uint64_t q) { return ceil_log2(q + 1); }

WeightedCountingProblem multivariate_poly(const WeightedCountingProblem& c,
                                          const WeightedCountingProblem& f, const IntPolynomial& q,
                                          const IntPolynomial& r)
{
    const std::int64_t ac = required_bound(c, "multivariate_poly");
    const std::int64_t af = required_bound(f, "multivariate_poly");
    const SizeFunction pc = c.path_length;
    const SizeFunction pf = f.path_length;

    WeightedCountingProblem g;
    g.name = "poly(" + c.name + ", " + f.name + ")";
    g.path_length = SizeFunction(
        [pc, pf, q, r](std::uint64_t n) {
            const auto qn = q(n);
            const auto rn = r(n);
            const auto eb = qn * ceil_log2(rn + 1);
            return eb + pc(2 * n + 2 + eb) + qn * rn * pf(2 * n + 2 + multivariate_index_bits(qn));
        },
        "q R + p_c(2n+2+q R) + q r p_f(2n+2+I), q = " + q.str() + ", r = " + r.str());
    g.oracle.tag = tag_join(tag_join(c.oracle.tag, f.oracle.tag), RangeTag::B01);
    if (af <= 0) {
        g.oracle.magnitude_log2 = ac;
    }
    auto oc = std::make_shared<const WeightOracle>(c.oracle);
    auto of = std::make_shared<const WeightOracle>(f.oracle);
    const bool exact = c.oracle.exact && f.oracle.exact;
    attach(g.oracle, exact,
           [oc, of, pc, pf, q, r, ac, af](const BitString& x, const BitString& u,
                                          std::optional<std::uint64_t> b) -> EvalResult {
               const auto qn = q(x.size());
               const auto rn = r(x.size());
               const auto eb_width = ceil_log2(rn + 1);
               const auto ib = multivariate_index_bits(qn);
               const BitString e = u.prefix(qn * eb_width);
               std::vector<std::uint64_t> exps(qn);
               for (std::uint64_t i = 0; i < qn; ++i) {
                   exps[i] = e.slice(i * eb_width, eb_width).to_uint64();
                   if (exps[i] > rn) {
                       return kZero;
                   }
               }
               std::vector<Factor> factors;
               std::size_t pos = e.size();
               BitString xe = pair_input(x, e);
               const auto lc = pc(xe.size());
               factors.push_back({oc.get(), std::move(xe), u.slice(pos, lc), ac});
               pos += lc;
               for (std::uint64_t i = 0; i < qn; ++i) {
                   const BitString xi = pair_input(x, BitString::from_uint(i + 1, ib));
                   const auto lf = pf(xi.size());
                   for (std::uint64_t j = 0; j < rn; ++j) {
                       const BitString slot = u.slice(pos, lf);
                       pos += lf;
                       if (j < exps[i]) {
                           factors.push_back({of.get(), xi, slot, af});
                       } else if (!slot.is_zero()) {
                           return kZero;
                       }
                   }
               }
               return eval_factors(factors, b);
           });
    return g;
}

int rational_sign_decide(const WeightedCountingProblem& num, const WeightedCountingProblem& den,
                         const IntPolynomial& t, const BitString& x, const Limits& limits)
{
    const auto b = t(x.size()) + 1;
    const BigRational error = make_rational(1, pow2(b));
    auto sign_of = [&](const WeightedCountingProblem& f, const char* which) {
        const BigRational v = approx_sum(f, x, b, limits).to_rational();
        if (abs(v) < error) {
            throw PromiseViolated(std::string(which) + " approximation " + to_string(v) +
                                  " is within 2^-" + std::to_string(b) + " of zero");
        }
        return sign(v);
    };
    return sign_of(num, "numerator") * sign_of(den, "denominator");
}

ClosureExpr ClosureExpr::of(WeightedCountingProblem problem)
{
    ClosureExpr e;
    e.leaf = std::make_shared<const WeightedCountingProblem>(std::move(problem));
    return e;
}

WeightedCountingProblem ClosureExpr::build() const
{
    auto arity = [&](std::size_t children_count, std::size_t polys) {
        if (children.size() != children_count || polynomials.size() != polys) {
            throw InvariantViolation("closure node has the wrong arity");
        }
    };
    switch (kind) {
    case Kind::Leaf:
        if (!leaf) {
            throw InvariantViolation("closure leaf without a problem");
        }
        return *leaf;
    case Kind::AddConst:
        arity(1, 0);
        return add_const(children[0].build(), constant);
    case Kind::Scale:
        arity(1, 0);
        return scale(children[0].build(), constant);
    case Kind::FiniteSum:
    case Kind::FiniteProduct: {
        if (!polynomials.empty()) {
            throw InvariantViolation("closure node has the wrong arity");
        }
        std::vector<WeightedCountingProblem> built;
        for (const auto& c : children) {
            built.push_back(c.build());
        }
        return finite_combine(kind == Kind::FiniteSum ? CombineKind::Sum : CombineKind::Product,
                              built);
    }
    case Kind::UniformExpSum:
        arity(1, 1);
        return uniform_exp_sum(children[0].build(), polynomials[0]);
    case Kind::UniformPolyProduct:
        arity(1, 1);
        return uniform_poly_product(children[0].build(), polynomials[0]);
    case Kind::MultivariatePoly:
        arity(2, 2);
        return multivariate_poly(children[0].build(), children[1].build(), polynomials[0],
                                 polynomials[1]);
    }
    throw InvariantViolation("unknown closure node");
}

}  // namespace wcount
