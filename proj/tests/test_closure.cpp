#include "test_support.hpp"

#include "wcount/closure.hpp"
#include "wcount/summation.hpp"

#include <doctest.h>

using namespace wcount;
using wcount::testing::constant_problem;
using wcount::testing::Gen;
using wcount::testing::table_problem;

namespace {

const BitString kEmpty{};

BigRational q(const char* s) { return parse_rational(s); }

// Single-path problem with weight w.
WeightedCountingProblem value(const BigRational& w, RangeTag tag = RangeTag::QPOLY)
{
    return table_problem({w}, 0, tag, 4);
}

// Weight depends on the paired input: f(<x, y>) = #y on a single path.
WeightedCountingProblem number_of_suffix()
{
    WeightedCountingProblem f;
    f.name = "#y";
    f.path_length = IntPolynomial{};
    f.oracle = WeightOracle::from_exact(
        [](const BitString& z, const BitString&) {
            return BigRational(unpair_input(z).second.to_number());
        },
        RangeTag::NAT, 8);
    return f;
}

// Random table whose approximation rounds up or down depending on (u, b), still within 2^-b.
WeightedCountingProblem random_child(Gen& gen, std::uint64_t p, std::vector<BigRational>* table_out)
{
    std::vector<BigRational> table;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << p); ++i) {
        table.push_back(gen.rational(8, 6));
    }
    if (table_out) {
        *table_out = table;
    }
    WeightedCountingProblem f = table_problem(table, p, RangeTag::QPOLY, 3);
    const ExactFn exact = *f.oracle.exact;
    f.oracle.approx = [exact](const BitString& x, const BitString& u, std::uint64_t b) {
        const BigRational w = exact(x, u);
        return (u.to_uint64() + b) % 2 == 0 ? floor_scaled(w, b) : ceil_scaled(w, b);
    };
    return f;
}

BigRational child_sum(const std::vector<BigRational>& table)
{
    BigRational s = 0;
    for (const auto& w : table) {
        s += w;
    }
    return s;
}

// |w - v/2^b| <= 2^-b on every path of x, for b = 0..max_b.
bool approximation_sound(const WeightedCountingProblem& g, const BitString& x, std::uint64_t max_b)
{
    const auto bits = g.path_bits(x);
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << bits); ++i) {
        const BitString u = BitString::from_uint(i, bits);
        const BigRational w = (*g.oracle.exact)(x, u);
        for (std::uint64_t b = 0; b <= max_b; ++b) {
            const BigRational v = make_rational(g.oracle.approx(x, u, b), pow2(b));
            if (abs(BigRational(w - v)) > make_rational(1, pow2(b))) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

TEST_CASE("pairing round trip")
{
    Gen gen(11);
    for (int i = 0; i < 200; ++i) {
        const BitString x = BitString::from_uint(gen.range(0, 255), gen.range(0, 8));
        const BitString y = BitString::from_uint(gen.range(0, 255), gen.range(0, 8));
        auto [x2, y2] = unpair_input(pair_input(x, y));
        CHECK(x2 == x);
        CHECK(y2 == y);
    }
    CHECK_THROWS_AS(unpair_input(BitString("0011")), std::invalid_argument);
}

TEST_CASE("add_const examples")
{
    CHECK(exact_sum(add_const(value(2), 3), kEmpty) == 5);
    CHECK(exact_sum(add_const(value(0), 0), kEmpty) == 0);
    CHECK(exact_sum(add_const(constant_problem(q("1/3"), 2), q("-1/3")), kEmpty) == 1);
    CHECK(add_const(value(2, RangeTag::NAT), 3).oracle.tag == RangeTag::NAT);
    CHECK(add_const(value(2, RangeTag::NAT), -3).oracle.tag == RangeTag::INT);
}

TEST_CASE("scale examples")
{
    CHECK(exact_sum(scale(value(6), -1), kEmpty) == -6);
    CHECK(exact_sum(scale(constant_problem(q("1/3"), 2), 3), kEmpty) == 4);
    CHECK(exact_sum(scale(constant_problem(q("1/3"), 2), 0), kEmpty) == 0);
    CHECK(scale(value(1, RangeTag::B01), -1).oracle.tag == RangeTag::T101);
}

TEST_CASE("finite_combine examples")
{
    CHECK(exact_sum(finite_combine(CombineKind::Sum, {value(2), value(3)}), kEmpty) == 5);
    CHECK(exact_sum(finite_combine(CombineKind::Product, {value(2), value(3)}), kEmpty) == 6);
    CHECK(exact_sum(finite_combine(CombineKind::Product,
                                   {constant_problem(q("1/3"), 2), value(q("3/4"))}),
                    kEmpty) == 1);
    CHECK_THROWS_AS(finite_combine(CombineKind::Sum, {}), EmptyList);

    WeightedCountingProblem unbounded = table_problem({BigRational(5)}, 0, RangeTag::NAT);
    CHECK_THROWS_AS(finite_combine(CombineKind::Product, {unbounded, value(1)}), MissingBound);
    // A sum needs no magnitude bound.
    CHECK(exact_sum(finite_combine(CombineKind::Sum, {unbounded, value(1)}), kEmpty) == 6);
}

TEST_CASE("finite sum path layout")
{
    auto g = finite_combine(CombineKind::Sum,
                            {constant_problem(1, 1), constant_problem(1, 3), constant_problem(1, 0)});
    CHECK(g.path_bits(kEmpty) == 2 + 3);
    CHECK(exact_sum(g, kEmpty) == 2 + 8 + 1);
}

TEST_CASE("uniform_exp_sum examples")
{
    CHECK(exact_sum(uniform_exp_sum(value(1), IntPolynomial{2}), kEmpty) == 4);
    CHECK(exact_sum(uniform_exp_sum(number_of_suffix(), IntPolynomial{2}), kEmpty) == 6);
    CHECK(exact_sum(uniform_exp_sum(value(0), IntPolynomial{3}), kEmpty) == 0);
    // Depends on |x|: p(n) = n.
    CHECK(exact_sum(uniform_exp_sum(number_of_suffix(), IntPolynomial::identity()), BitString("101")) ==
          28);
}

TEST_CASE("uniform_poly_product examples")
{
    CHECK(exact_sum(uniform_poly_product(value(1), IntPolynomial{5}), kEmpty) == 1);
    CHECK(exact_sum(uniform_poly_product(number_of_suffix(), IntPolynomial{3}), kEmpty) == 6);
    CHECK(exact_sum(uniform_poly_product(value(0), IntPolynomial{4}), kEmpty) == 0);
    CHECK(exact_sum(uniform_poly_product(value(7), IntPolynomial{0}), kEmpty) == 1);
    // Factors with several paths: (1/3 + 1/3)^2 over disjoint path blocks.
    CHECK(exact_sum(uniform_poly_product(constant_problem(q("1/3"), 1), IntPolynomial{2}), kEmpty) ==
          q("4/9"));
}

TEST_CASE("multivariate_poly examples")
{
    CHECK(exact_sum(multivariate_poly(value(1), value(2), IntPolynomial{1}, IntPolynomial{1}), kEmpty) ==
          3);
    CHECK(exact_sum(multivariate_poly(value(0), value(2), IntPolynomial{1}, IntPolynomial{1}), kEmpty) ==
          0);
    CHECK(exact_sum(multivariate_poly(value(1), value(1), IntPolynomial{2}, IntPolynomial{1}), kEmpty) ==
          4);
    // q = 0: the empty product leaves c alone.
    CHECK(exact_sum(multivariate_poly(value(q("5/7")), value(3), IntPolynomial{0}, IntPolynomial{2}),
                    kEmpty) == q("5/7"));
}

TEST_CASE("multivariate_poly against a direct expansion")
{
    // f(<x, i>) = i, c(<x, e>) = 1 + #e; q = 2, r = 2.
    WeightedCountingProblem f;
    f.name = "i";
    f.oracle = WeightOracle::from_exact(
        [](const BitString& z, const BitString&) {
            return BigRational(unpair_input(z).second.to_number());
        },
        RangeTag::NAT, 2);
    WeightedCountingProblem c;
    c.name = "1+#e";
    c.oracle = WeightOracle::from_exact(
        [](const BitString& z, const BitString&) {
            return BigRational(unpair_input(z).second.to_number() + 1);
        },
        RangeTag::NAT, 5);
    BigRational expected = 0;
    for (int e1 = 0; e1 <= 2; ++e1) {
        for (int e2 = 0; e2 <= 2; ++e2) {
            const int code = e1 * 4 + e2;  // two 2-bit blocks
            BigInt pw;
            mpz_ui_pow_ui(pw.get_mpz_t(), 2, e2);
            expected += BigRational((code + 1) * pw);
        }
    }
    auto g = multivariate_poly(c, f, IntPolynomial{2}, IntPolynomial{2});
    CHECK(exact_sum(g, kEmpty) == expected);
    CHECK(approximation_sound(g, kEmpty, 12));
}

TEST_CASE("rational_sign_decide examples")
{
    CHECK(rational_sign_decide(value(q("1/2")), value(q("-1/4")), IntPolynomial{4}, kEmpty) == -1);
    CHECK(rational_sign_decide(value(-1), value(-1), IntPolynomial{4}, kEmpty) == 1);
    CHECK(rational_sign_decide(value(q("3/8")), value(q("5/8")), IntPolynomial{4}, kEmpty) == 1);
    CHECK_THROWS_AS(rational_sign_decide(value(0), value(1), IntPolynomial{4}, kEmpty),
                    PromiseViolated);
}

TEST_CASE("closure nodes combine exact sums")
{
    Gen gen(0xc105e);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<BigRational> ta, tb;
        const auto pa = static_cast<std::uint64_t>(gen.range(0, 6));
        const auto pb = static_cast<std::uint64_t>(gen.range(0, 6));
        auto fa = random_child(gen, pa, &ta);
        auto fb = random_child(gen, pb, &tb);
        const BigRational sa = child_sum(ta);
        const BigRational sb = child_sum(tb);
        const BigRational c = gen.rational(9, 7);

        CHECK(exact_sum(add_const(fa, c), kEmpty) == sa + c);
        CHECK(exact_sum(scale(fa, c), kEmpty) == c * sa);
        CHECK(exact_sum(finite_combine(CombineKind::Sum, {fa, fb, fa}), kEmpty) == sa + sb + sa);
        if (pa + pb <= 8) {
            CHECK(exact_sum(finite_combine(CombineKind::Product, {fa, fb}), kEmpty) == sa * sb);
        }
        CHECK(exact_sum(uniform_exp_sum(fa, IntPolynomial{2}), kEmpty) == 4 * sa);
        if (pa <= 3) {
            CHECK(exact_sum(uniform_poly_product(fa, IntPolynomial{2}), kEmpty) == sa * sa);
        }
    }
}

TEST_CASE("built oracles keep the approximation bound")
{
    Gen gen(0xa11c);
    for (int trial = 0; trial < 12; ++trial) {
        auto fa = random_child(gen, static_cast<std::uint64_t>(gen.range(0, 3)), nullptr);
        auto fb = random_child(gen, static_cast<std::uint64_t>(gen.range(0, 3)), nullptr);
        const BigRational c = gen.rational(9, 7);
        CHECK(approximation_sound(add_const(fa, c), kEmpty, 24));
        CHECK(approximation_sound(scale(fa, c), kEmpty, 24));
        CHECK(approximation_sound(finite_combine(CombineKind::Sum, {fa, fb, fb}), kEmpty, 24));
        CHECK(approximation_sound(finite_combine(CombineKind::Product, {fa, fb, fa}), kEmpty, 24));
        CHECK(approximation_sound(uniform_exp_sum(fa, IntPolynomial{1}), kEmpty, 24));
        CHECK(approximation_sound(uniform_poly_product(fb, IntPolynomial{2}), kEmpty, 24));
        CHECK(approximation_sound(multivariate_poly(fa, fb, IntPolynomial{1}, IntPolynomial{2}), kEmpty,
                                  16));
    }
}

TEST_CASE("approx_sum of a built problem stays within 2^-b")
{
    Gen gen(0x5eed);
    for (int trial = 0; trial < 20; ++trial) {
        auto fa = random_child(gen, 2, nullptr);
        auto fb = random_child(gen, 1, nullptr);
        auto g = finite_combine(CombineKind::Product, {scale(fa, gen.rational(5, 3)), fb});
        const BigRational exact = exact_sum(g, kEmpty);
        for (std::uint64_t b = 1; b <= 24; b += 3) {
            const BigRational err = abs(BigRational(approx_sum(g, kEmpty, b).to_rational() - exact));
            CHECK(err <= make_rational(1, pow2(b)));
        }
    }
}

TEST_CASE("rational_sign_decide agrees with the exact sign under the promise")
{
    Gen gen(0x5167);
    int decided = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const BigRational a = gen.rational(20, 16);
        const BigRational b = gen.rational(20, 16);
        const IntPolynomial t{5};
        const BigRational floor_value = make_rational(1, 32);
        if (abs(a) < floor_value || abs(b) < floor_value) {
            continue;
        }
        CHECK(rational_sign_decide(value(a), value(b), t, kEmpty) == sign(a) * sign(b));
        ++decided;
    }
    CHECK(decided > 200);
}

TEST_CASE("ClosureExpr builds trees")
{
    ClosureExpr sum;
    sum.kind = ClosureExpr::Kind::FiniteSum;
    sum.children = {ClosureExpr::of(value(2)), ClosureExpr::of(value(3))};
    ClosureExpr scaled;
    scaled.kind = ClosureExpr::Kind::Scale;
    scaled.constant = q("1/5");
    scaled.children = {sum};
    CHECK(exact_sum(scaled.build(), kEmpty) == 1);

    ClosureExpr bad;
    bad.kind = ClosureExpr::Kind::AddConst;
    CHECK_THROWS_AS(bad.build(), InvariantViolation);
}
