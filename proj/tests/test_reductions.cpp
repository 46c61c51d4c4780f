#include "test_support.hpp"

#include "wcount/reductions.hpp"
#include "wcount/summation.hpp"

#include <doctest.h>

using namespace wcount;
using wcount::testing::Gen;
using wcount::testing::table_problem;

namespace {

const BitString kEmpty{};

std::vector<BigRational> ints(std::initializer_list<long> values)
{
    std::vector<BigRational> out;
    for (long v : values) {
        out.emplace_back(v);
    }
    return out;
}

std::vector<BigRational> random_table(Gen& gen, std::uint64_t p, long lo, long hi)
{
    std::vector<BigRational> out;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << p); ++i) {
        out.emplace_back(gen.range(lo, hi));
    }
    return out;
}

// Brute-force sum of a table, independent of the summation kernels.
BigRational table_sum(const std::vector<BigRational>& table)
{
    BigRational s = 0;
    for (const auto& w : table) {
        s += w;
    }
    return s;
}

}  // namespace

TEST_CASE("lift_nat_to_binary examples")
{
    auto lifted = lift_nat_to_binary(table_problem(ints({3, 0}), 1, RangeTag::NAT), IntPolynomial{2});
    CHECK(lifted.path_bits(kEmpty) == 3);
    CHECK(lifted.oracle.tag == RangeTag::B01);
    CHECK(exact_sum(lifted, kEmpty) == 3);

    CHECK(exact_sum(lift_nat_to_binary(table_problem(ints({0, 0, 0, 0}), 2, RangeTag::NAT),
                                       IntPolynomial{3}),
                    kEmpty) == 0);
    CHECK(exact_sum(lift_nat_to_binary(table_problem(ints({1, 1, 1, 1}), 2, RangeTag::NAT),
                                       IntPolynomial{1}),
                    kEmpty) == 4);
}

TEST_CASE("lift_nat_to_binary enforces the bit bound")
{
    auto lifted = lift_nat_to_binary(table_problem(ints({4, 0}), 1, RangeTag::NAT), IntPolynomial{2});
    CHECK_THROWS_AS(exact_sum(lifted, kEmpty), BoundViolated);
    auto negative = lift_nat_to_binary(table_problem(ints({-1, 0}), 1, RangeTag::NAT), IntPolynomial{2});
    CHECK_THROWS_AS(exact_sum(negative, kEmpty), DomainViolation);
    CHECK_THROWS_AS(lift_nat_to_binary(table_problem(ints({1, 0}), 1, RangeTag::INT), IntPolynomial{2}),
                    PreconditionViolated);
}

TEST_CASE("lift_int_to_ternary examples")
{
    auto lifted = lift_int_to_ternary(table_problem(ints({-3, 2}), 1, RangeTag::INT), IntPolynomial{2});
    CHECK(lifted.oracle.tag == RangeTag::T101);
    CHECK(exact_sum(lifted, kEmpty) == -1);
    CHECK(exact_sum(lift_int_to_ternary(table_problem(ints({0, 0}), 1, RangeTag::INT), IntPolynomial{2}),
                    kEmpty) == 0);
    CHECK(exact_sum(lift_int_to_ternary(table_problem(ints({-1, 1}), 1, RangeTag::INT), IntPolynomial{1}),
                    kEmpty) == 0);
    auto big = lift_int_to_ternary(table_problem(ints({-4, 0}), 1, RangeTag::INT), IntPolynomial{2});
    CHECK_THROWS_AS(exact_sum(big, kEmpty), BoundViolated);
}

TEST_CASE("embed_binary_in_pm1 examples")
{
    auto [g1, r1] = embed_binary_in_pm1(table_problem(ints({1, 1, 1, 1}), 2, RangeTag::B01));
    CHECK(exact_sum(g1, kEmpty) == 4);
    CHECK(apply_reduction(r1, 4, kEmpty) == 4);

    auto [g2, r2] = embed_binary_in_pm1(table_problem(ints({0, 0, 0, 0}), 2, RangeTag::B01));
    CHECK(exact_sum(g2, kEmpty) == -4);
    CHECK(apply_reduction(r2, -4, kEmpty) == 0);

    auto [g3, r3] = embed_binary_in_pm1(table_problem(ints({1, 0}), 1, RangeTag::B01));
    CHECK(exact_sum(g3, kEmpty) == 0);
    CHECK(apply_reduction(r3, exact_sum(g3, kEmpty), kEmpty) == 1);
}

TEST_CASE("embed_ternary_in_nat examples")
{
    auto [g1, r1] = embed_ternary_in_nat(table_problem(ints({-1, 1}), 1, RangeTag::T101));
    CHECK(exact_sum(g1, kEmpty) == 2);
    CHECK(apply_reduction(r1, 2, kEmpty) == 0);

    auto [g2, r2] = embed_ternary_in_nat(table_problem(ints({-1, -1, -1, -1}), 2, RangeTag::T101));
    CHECK(exact_sum(g2, kEmpty) == 0);
    CHECK(apply_reduction(r2, 0, kEmpty) == -4);

    auto [g3, r3] = embed_ternary_in_nat(table_problem(ints({1, 0, -1, 1}), 2, RangeTag::T101));
    CHECK(exact_sum(g3, kEmpty) == 5);
    CHECK(apply_reduction(r3, 5, kEmpty) == 1);
}

TEST_CASE("apply_reduction examples")
{
    auto id = AffineReduction::identity();
    CHECK(apply_reduction(id, 7, kEmpty) == 7);
    AffineReduction half = id;
    half.scale = [](const BitString&) { return make_rational(1, 2); };
    half.offset = [](const BitString&) { return BigRational(2); };
    CHECK(apply_reduction(half, 4, kEmpty) == 4);
    AffineReduction shift = id;
    shift.offset = [](const BitString&) { return BigRational(-4); };
    CHECK(apply_reduction(shift, 0, kEmpty) == -4);
}

TEST_CASE("round trips over random problems")
{
    Gen gen(0x7265647563ULL);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = static_cast<std::uint64_t>(gen.range(0, 10));

        auto b01 = random_table(gen, p, 0, 1);
        auto [pm, r_pm] = embed_binary_in_pm1(table_problem(b01, p, RangeTag::B01));
        CHECK(weights_in_range(pm, kEmpty, RangeTag::PM1));
        CHECK(pm.path_bits(kEmpty) == p);
        CHECK(apply_reduction(r_pm, exact_sum(pm, kEmpty), kEmpty) == table_sum(b01));

        auto t101 = random_table(gen, p, -1, 1);
        auto [nat, r_nat] = embed_ternary_in_nat(table_problem(t101, p, RangeTag::T101));
        CHECK(weights_in_range(nat, kEmpty, RangeTag::NAT));
        CHECK(apply_reduction(r_nat, exact_sum(nat, kEmpty), kEmpty) == table_sum(t101));
    }
}

TEST_CASE("lifts preserve sums over random problems")
{
    Gen gen(0x6c696674ULL);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = static_cast<std::uint64_t>(gen.range(0, 6));
        const auto q = static_cast<std::uint64_t>(gen.range(1, 4));
        const long top = (1L << q) - 1;

        auto nat = random_table(gen, p, 0, top);
        auto bin = lift_nat_to_binary(table_problem(nat, p, RangeTag::NAT), IntPolynomial{q});
        CHECK(bin.path_bits(kEmpty) == p + q);
        CHECK(weights_in_range(bin, kEmpty, RangeTag::B01));
        CHECK(exact_sum(bin, kEmpty) == table_sum(nat));

        auto in = random_table(gen, p, -top, top);
        auto ter = lift_int_to_ternary(table_problem(in, p, RangeTag::INT), IntPolynomial{q});
        CHECK(weights_in_range(ter, kEmpty, RangeTag::T101));
        CHECK(exact_sum(ter, kEmpty) == table_sum(in));
    }
}

TEST_CASE("integer weights reach a binary problem through the chain")
{
    Gen gen(0x636861696eULL);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = static_cast<std::uint64_t>(gen.range(0, 5));
        const auto q = static_cast<std::uint64_t>(gen.range(1, 4));
        const long top = (1L << q) - 1;
        auto in = random_table(gen, p, -top, top);

        auto ter = lift_int_to_ternary(table_problem(in, p, RangeTag::INT), IntPolynomial{q});
        auto [nat, red] = embed_ternary_in_nat(ter);
        auto bin = lift_nat_to_binary(nat, IntPolynomial{2});
        CHECK(bin.path_bits(kEmpty) == p + q + 2);
        CHECK(weights_in_range(bin, kEmpty, RangeTag::B01));
        CHECK(apply_reduction(red, exact_sum(bin, kEmpty), kEmpty) == table_sum(in));
    }
}

TEST_CASE("compose chains affine maps")
{
    Gen gen(0x636f6dULL);
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = static_cast<std::uint64_t>(gen.range(0, 6));
        auto b01 = random_table(gen, p, 0, 1);
        // B01 -> PM1 (g = 2f - 2^p), then view the PM1 weights as T101 and shift to NAT.
        auto [pm, r1] = embed_binary_in_pm1(table_problem(b01, p, RangeTag::B01));
        auto [nat, r2] = embed_ternary_in_nat(pm);
        AffineReduction both = compose(r1, r2);
        CHECK(apply_reduction(both, exact_sum(nat, kEmpty), kEmpty) == table_sum(b01));
    }
}

TEST_CASE("reductions need exact maps")
{
    WeightedCountingProblem approx_only = table_problem(ints({1, 0}), 1, RangeTag::B01);
    approx_only.oracle.exact.reset();
    CHECK_THROWS_AS(embed_binary_in_pm1(approx_only), ExactUnavailable);
}
