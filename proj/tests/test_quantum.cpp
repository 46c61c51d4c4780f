#include "test_support.hpp"

#include "wcount/quantum.hpp"
#include "wcount/summation.hpp"

#include <doctest.h>

using namespace wcount;
using wcount::testing::Gen;

namespace {

const BitString kZero{"0"};

Circuit make(std::size_t n, std::vector<Gate> ops, std::vector<std::pair<std::size_t, int>> accept)
{
    Circuit c;
    c.n_qubits = n;
    c.ops = std::move(ops);
    c.accept = std::move(accept);
    return c;
}

Gate random_gate(Gen& gen, std::size_t n, bool allow_measure)
{
    std::vector<GateKind> kinds = {GateKind::H, GateKind::X, GateKind::Y,
                                   GateKind::Z, GateKind::S, GateKind::T};
    if (n > 1) {
        kinds.push_back(GateKind::CNOT);
        kinds.push_back(GateKind::CZ);
    }
    if (allow_measure) {
        kinds.push_back(GateKind::Measure);
    }
    const GateKind kind = kinds[static_cast<std::size_t>(gen.range(0, static_cast<std::int64_t>(kinds.size()) - 1))];
    auto q = [&] { return static_cast<std::size_t>(gen.range(0, static_cast<std::int64_t>(n) - 1)); };
    if (kind == GateKind::CNOT || kind == GateKind::CZ) {
        const std::size_t a = q();
        std::size_t b = q();
        while (b == a) {
            b = q();
        }
        return {kind, {a, b}};
    }
    return {kind, {q()}};
}

Circuit random_circuit(Gen& gen, std::size_t max_qubits, std::size_t max_gates, bool allow_measure)
{
    Circuit c;
    c.n_qubits = static_cast<std::size_t>(gen.range(1, static_cast<std::int64_t>(max_qubits)));
    const auto gates = gen.range(0, static_cast<std::int64_t>(max_gates));
    for (std::int64_t i = 0; i < gates; ++i) {
        c.ops.push_back(random_gate(gen, c.n_qubits, allow_measure));
    }
    const auto constraints = gen.range(1, static_cast<std::int64_t>(c.n_qubits));
    for (std::int64_t i = 0; i < constraints; ++i) {
        c.accept.emplace_back(static_cast<std::size_t>(i), gen.coin() ? 1 : 0);
    }
    return c;
}

BitString random_input(Gen& gen, std::size_t n)
{
    return BitString::from_uint(static_cast<std::uint64_t>(gen.range(0, (1 << n) - 1)), n);
}

// OR of two uniform bits computed into qubit 2 through a Toffoli: accepts with probability 3/4.
Circuit or_circuit()
{
    Circuit c = make(3, {Gate::single(GateKind::H, 0), Gate::single(GateKind::H, 1),
                         Gate::single(GateKind::X, 0), Gate::single(GateKind::X, 1)},
                     {{2, 1}});
    c.add_toffoli(0, 1, 2);
    c.ops.push_back(Gate::single(GateKind::X, 0));
    c.ops.push_back(Gate::single(GateKind::X, 1));
    c.ops.push_back(Gate::single(GateKind::X, 2));
    return c;
}

}  // namespace

TEST_CASE("ring arithmetic is exact and canonical")
{
    const RingAmplitude h = RingAmplitude::inv_sqrt2();
    CHECK(h * h + h * h == RingAmplitude::one());
    CHECK((h * h).real() == QuadraticRational(make_rational(1, 2)));
    const RingAmplitude w = RingAmplitude::omega();
    RingAmplitude w8 = RingAmplitude::one();
    for (int i = 0; i < 8; ++i) {
        w8 = w8 * w;
    }
    CHECK(w8 == RingAmplitude::one());
    CHECK(w * w == RingAmplitude::i());
    CHECK(w.norm2() == QuadraticRational(1));
    CHECK(w.real() == QuadraticRational(0, make_rational(1, 2)));
    CHECK((w * w.conj()).imag() == QuadraticRational(0));
}

TEST_CASE("quadratic rational sign and order")
{
    CHECK(QuadraticRational(3, -2).sign() == 1);   // 3 > 2 sqrt2
    CHECK(QuadraticRational(-3, 2).sign() == -1);
    CHECK(QuadraticRational(2, -2).sign() == -1);  // 2 < 2 sqrt2
    CHECK(QuadraticRational(0, 1).sign() == 1);
    CHECK(QuadraticRational(0).sign() == 0);
    CHECK(QuadraticRational(make_rational(141, 100)) < QuadraticRational(0, 1));
    CHECK(QuadraticRational(0, 1) < QuadraticRational(make_rational(142, 100)));
    CHECK(QuadraticRational(0, 1).decimal(6) == "1.414214");
}

TEST_CASE("every gate matrix is unitary in the ring")
{
    for (GateKind kind : {GateKind::H, GateKind::X, GateKind::Y, GateKind::Z, GateKind::S,
                          GateKind::T, GateKind::CNOT, GateKind::CZ}) {
        const RingMatrix u = gate_matrix(kind);
        const std::size_t d = u.size();
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                RingAmplitude acc;
                for (std::size_t k = 0; k < d; ++k) {
                    acc += u[r][k] * u[c][k].conj();
                }
                CHECK_MESSAGE(acc == (r == c ? RingAmplitude::one() : RingAmplitude::zero()),
                              to_string(kind), " ", r, ",", c);
            }
        }
    }
    CHECK_THROWS_AS(gate_matrix(GateKind::Measure), std::invalid_argument);
}

TEST_CASE("statevector examples")
{
    const Gate h = Gate::single(GateKind::H, 0);
    CHECK(statevector_accept(make(1, {h}, {{0, 1}}), kZero) == QuadraticRational(make_rational(1, 2)));
    CHECK(statevector_accept(make(1, {h, h}, {{0, 1}}), kZero) == QuadraticRational(0));
    CHECK(statevector_accept(make(1, {}, {{0, 0}}), kZero) == QuadraticRational(1));
    CHECK_THROWS_AS(statevector_accept(make(11, {}, {{0, 0}}), BitString{}), CapExceeded);
}

TEST_CASE("pathsum examples")
{
    const Gate h = Gate::single(GateKind::H, 0);
    const PathSumResult one = pathsum_detail(make(1, {h}, {{0, 1}}), kZero);
    CHECK(one.real == QuadraticRational(make_rational(1, 2)));
    CHECK(one.compatible_pairs == 1);
    const PathSumResult two = pathsum_detail(make(1, {h, h}, {{0, 1}}), kZero);
    CHECK(two.real == QuadraticRational(0));
    CHECK(two.compatible_pairs == 4);
    CHECK(two.paths == 4);

    const Gate x = Gate::single(GateKind::X, 0);
    CHECK(pathsum_accept(make(1, {x, x, x}, {{0, 1}}), kZero) == QuadraticRational(1));
    CHECK(pathsum_accept(make(1, {x, x}, {{0, 1}}), kZero) == QuadraticRational(0));

    Circuit wide = make(1, std::vector<Gate>(13, h), {{0, 0}});
    CHECK_THROWS_AS(pathsum_accept(wide, kZero), CapExceeded);
}

TEST_CASE("pathsum equals statevector on random Clifford+T circuits")
{
    Gen gen(101);
    for (int trial = 0; trial < 600; ++trial) {
        const Circuit c = random_circuit(gen, 4, 8, trial % 3 == 0);
        const BitString x = random_input(gen, c.n_qubits);
        const QuadraticRational sv = statevector_accept(c, x);
        const PathSumResult ps = pathsum_detail(c, x);
        REQUIRE_MESSAGE(ps.real == sv, c.to_text());
        CHECK(ps.imag == QuadraticRational(0));
        CHECK(sv >= QuadraticRational(0));
        CHECK(sv <= QuadraticRational(1));
    }
}

TEST_CASE("complementary accept predicates sum to one")
{
    Gen gen(202);
    for (int trial = 0; trial < 150; ++trial) {
        Circuit c = random_circuit(gen, 3, 8, trial % 2 == 0);
        const BitString x = random_input(gen, c.n_qubits);
        // All 2^k assignments of the constrained qubits partition the outcome space.
        const std::size_t k = c.accept.size();
        QuadraticRational total_sv, total_ps;
        for (std::uint64_t a = 0; a < (std::uint64_t{1} << k); ++a) {
            for (std::size_t i = 0; i < k; ++i) {
                c.accept[i].second = static_cast<int>((a >> i) & 1U);
            }
            total_sv += statevector_accept(c, x);
            total_ps += pathsum_accept(c, x);
        }
        CHECK(total_sv == QuadraticRational(1));
        CHECK(total_ps == QuadraticRational(1));
    }
}

TEST_CASE("deferred measurement examples")
{
    const Gate h = Gate::single(GateKind::H, 0);
    const Circuit plain = make(2, {h, Gate::cnot(0, 1)}, {{1, 1}});
    const Circuit same = defer_measurements(plain);
    CHECK(same.to_text() == plain.to_text());

    const Circuit once = make(1, {h, Gate::measure(0)}, {{0, 1}});
    const Circuit once_d = defer_measurements(once);
    CHECK(once_d.n_qubits == 2);
    CHECK(once_d.measurements() == 0);
    CHECK(statevector_accept(once, kZero) == QuadraticRational(make_rational(1, 2)));
    CHECK(statevector_accept(once_d, kZero) == QuadraticRational(make_rational(1, 2)));

    const Circuit mid = make(1, {h, Gate::measure(0), h}, {{0, 1}});
    CHECK(statevector_accept(mid, kZero) == QuadraticRational(make_rational(1, 2)));
    CHECK(statevector_accept(defer_measurements(mid), kZero) == QuadraticRational(make_rational(1, 2)));
    // Without the measurement, HH returns to |0>.
    CHECK(statevector_accept(make(1, {h, h}, {{0, 1}}), kZero) == QuadraticRational(0));
}

TEST_CASE("deferring measurements preserves acceptance")
{
    Gen gen(303);
    int with_measure = 0;
    for (int trial = 0; trial < 250; ++trial) {
        Circuit c = random_circuit(gen, 3, 8, false);
        const auto measures = gen.range(0, 2);
        for (std::int64_t m = 0; m < measures; ++m) {
            const auto pos = gen.range(0, static_cast<std::int64_t>(c.ops.size()));
            const auto q = static_cast<std::size_t>(gen.range(0, static_cast<std::int64_t>(c.n_qubits) - 1));
            c.ops.insert(c.ops.begin() + pos, Gate::measure(q));
        }
        with_measure += measures > 0 ? 1 : 0;
        const BitString x = random_input(gen, c.n_qubits);
        const Circuit d = defer_measurements(c);
        REQUIRE(d.measurements() == 0);
        const QuadraticRational p = statevector_accept(c, x);
        CHECK(statevector_accept(d, x) == p);
        CHECK(pathsum_accept(d, x) == p);
    }
    CHECK(with_measure >= 150);
}

TEST_CASE("toffoli decomposition realizes the truth table")
{
    for (std::uint64_t in = 0; in < 8; ++in) {
        Circuit c;
        c.n_qubits = 3;
        c.add_toffoli(0, 1, 2);
        const BitString x = BitString::from_uint(in, 3);
        const bool a = x[0], b = x[1];
        const int t = (x[2] ? 1 : 0) ^ (a && b ? 1 : 0);
        c.accept = {{0, a ? 1 : 0}, {1, b ? 1 : 0}, {2, t}};
        CHECK(statevector_accept(c, x) == QuadraticRational(1));
        CHECK(pathsum_accept(c, x) == QuadraticRational(1));
    }
}

TEST_CASE("path-pair oracle examples")
{
    const Gate h = Gate::single(GateKind::H, 0);
    const CircuitInstance inst = weight_oracle_from_circuit(make(1, {h}, {{0, 1}}), kZero);
    CHECK(inst.problem.oracle.tag == RangeTag::REAL);
    REQUIRE(inst.problem.oracle.exact.has_value());
    CHECK(exact_sum(inst.problem, inst.input) == make_rational(1, 2));
    CHECK(inst.problem.path_bits(inst.input) == 2);

    const Gate x = Gate::single(GateKind::X, 0);
    const CircuitInstance all_x = weight_oracle_from_circuit(make(1, {x}, {{0, 1}}), kZero);
    CHECK(all_x.problem.path_bits(all_x.input) == 0);
    CHECK((*all_x.problem.oracle.exact)(kZero, BitString{}) == 1);
    CHECK(exact_sum(all_x.problem, all_x.input) == 1);

    const Circuit with_t = make(1, {h, Gate::single(GateKind::T, 0), h}, {{0, 0}});
    CHECK_FALSE(weight_oracle_from_circuit(with_t, kZero).problem.oracle.exact.has_value());
    CHECK_THROWS_AS(weight_oracle_from_circuit(make(1, {h}, {{0, 1}}), BitString{"01"}),
                    DomainViolation);
}

TEST_CASE("path-pair weights sum to the acceptance probability")
{
    Gen gen(404);
    for (int trial = 0; trial < 60; ++trial) {
        const Circuit c = random_circuit(gen, 3, 6, trial % 2 == 0);
        const BitString x = random_input(gen, c.n_qubits);
        const std::size_t bits = 2 * c.branching_gates();
        QuadraticRational total;
        for (std::uint64_t u = 0; u < (std::uint64_t{1} << bits); ++u) {
            total += path_pair_weight(c, x, BitString::from_uint(u, bits));
        }
        CHECK(total == statevector_accept(c, x));
    }
}

TEST_CASE("approximate path weights stay within 2^-b of the exact weight")
{
    Gen gen(505);
    for (int trial = 0; trial < 40; ++trial) {
        const Circuit c = random_circuit(gen, 3, 7, false);
        const BitString x = random_input(gen, c.n_qubits);
        const CircuitInstance inst = weight_oracle_from_circuit(c, x);
        const std::size_t bits = 2 * c.branching_gates();
        for (std::uint64_t u = 0; u < (std::uint64_t{1} << bits); ++u) {
            const BitString path = BitString::from_uint(u, bits);
            const QuadraticRational w = path_pair_weight(c, x, path);
            for (std::uint64_t b : {0U, 1U, 3U, 9U, 24U}) {
                const QuadraticRational v(make_rational(inst.problem.oracle.approx(x, path, b), pow2(b)));
                const QuadraticRational err = make_rational(1, pow2(b));
                CHECK(v - w <= err);
                CHECK(w - v <= err);
            }
        }
    }
}

TEST_CASE("approx_sum at b = 20 tracks the state-vector probability")
{
    Gen gen(606);
    const QuadraticRational tol(make_rational(1, pow2(20)));
    for (int trial = 0; trial < 40; ++trial) {
        Circuit c;
        c.n_qubits = 3;
        for (int g = 0; g < 6; ++g) {
            c.ops.push_back(random_gate(gen, 3, false));
        }
        c.accept = {{0, gen.coin() ? 1 : 0}};
        const BitString x = random_input(gen, 3);
        const CircuitInstance inst = weight_oracle_from_circuit(c, x);
        const QuadraticRational a(approx_sum(inst.problem, inst.input, 20).to_rational());
        const QuadraticRational p = statevector_accept(c, x);
        CHECK(a - p <= tol);
        CHECK(p - a <= tol);
    }
}

TEST_CASE("awpp gap check")
{
    const std::vector<std::pair<BitString, bool>> in = {{kZero, true}, {BitString{"1"}, true}};
    const std::vector<std::pair<BitString, bool>> out = {{kZero, false}};
    CHECK(awpp_gap_check(testing::constant_problem(1, 0), in, make_rational(1, 3)));
    CHECK_FALSE(awpp_gap_check(testing::constant_problem(make_rational(1, 2), 0), in, make_rational(1, 3)));
    CHECK_FALSE(awpp_gap_check(testing::constant_problem(make_rational(1, 2), 0), out, make_rational(1, 3)));
    CHECK_THROWS_AS(awpp_gap_check(testing::constant_problem(1, 0), in, make_rational(1, 2)),
                    PreconditionViolated);

    // H T H accepting |0> has probability (2 + sqrt2)/4, about 0.854; no exact map exists.
    const Gate h = Gate::single(GateKind::H, 0);
    const Circuit hth = make(1, {h, Gate::single(GateKind::T, 0), h}, {{0, 0}});
    CHECK(statevector_accept(hth, kZero) ==
          QuadraticRational(make_rational(1, 2), make_rational(1, 4)));
    const CircuitInstance inst = weight_oracle_from_circuit(hth, kZero);
    CHECK(awpp_gap_check(inst.problem, {{kZero, true}}, make_rational(1, 3)));
    CHECK_FALSE(awpp_gap_check(inst.problem, {{kZero, false}}, make_rational(1, 3)));
}

TEST_CASE("bqp decision")
{
    const Gate x = Gate::single(GateKind::X, 0);
    CHECK(bqp_decide(make(1, {x}, {{0, 1}}), kZero));
    CHECK_FALSE(bqp_decide(make(1, {}, {{0, 1}}), kZero));

    const Circuit orc = or_circuit();
    const BitString zeros{"000"};
    CHECK(statevector_accept(orc, zeros) == QuadraticRational(make_rational(3, 4)));
    CHECK(bqp_decide(orc, zeros));

    const Gate h = Gate::single(GateKind::H, 0);
    CHECK_THROWS_AS(bqp_decide(make(1, {h}, {{0, 1}}), kZero), PromiseViolated);
}

TEST_CASE("circuit text round trip and parse errors")
{
    const Circuit orc = or_circuit();
    const Circuit back = Circuit::parse(orc.to_text());
    CHECK(back.to_text() == orc.to_text());
    CHECK(Circuit::parse("# comment\nWCQC\n1\nH 0  # gate\nACCEPT 0=1\n").ops.size() == 1);

    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            Circuit::parse(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("WCQ\n1\nACCEPT 0=1\n") == 1);
    CHECK(line_of("WCQC\nzero\nACCEPT 0=1\n") == 2);
    CHECK(line_of("WCQC\n1\nFOO 0\nACCEPT 0=1\n") == 3);
    CHECK(line_of("WCQC\n1\nH 1\nACCEPT 0=1\n") == 3);
    CHECK(line_of("WCQC\n2\nCNOT 0 0\nACCEPT 0=1\n") == 3);
    CHECK(line_of("WCQC\n1\nH\nACCEPT 0=1\n") == 3);
    CHECK(line_of("WCQC\n1\nACCEPT 0=2\n") == 3);
    CHECK(line_of("WCQC\n1\nACCEPT 0=1\nH 0\n") == 4);
    CHECK(line_of("WCQC\n1\nH 0\n") == 3);
    CHECK_THROWS_AS(make(1, {}, {}).validate(), InvariantViolation);
}
