#include "wcount/suite.hpp"

#include "wcount/closure.hpp"
#include "wcount/core.hpp"
#include "wcount/newman.hpp"
#include "wcount/pgm.hpp"
#include "wcount/quantum.hpp"
#include "wcount/reductions.hpp"
#include "wcount/stochastic.hpp"
#include "wcount/summation.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

namespace wcount {

namespace {

using Clock = std::chrono::steady_clock;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::int64_t range(std::int64_t lo, std::int64_t hi)
    {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
    }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(range(0, static_cast<std::int64_t>(n) - 1)); }
    bool coin() { return range(0, 1) == 1; }
    BigRational rational(std::int64_t max_num, std::int64_t max_den)
    {
        return make_rational(range(-max_num, max_num), range(1, max_den));
    }

private:
    std::mt19937_64 engine_;
};

// Tally of one criterion; the first failure is kept verbatim.
struct Tally {
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;
    std::ostringstream notes;

    void expect(bool ok, const std::string& what)
    {
        ++cases;
        if (!ok && failures++ == 0) {
            first_failure = what;
        }
    }
};

const BitString kEmpty{};

BigRational table_sum(const std::vector<BigRational>& table)
{
    BigRational s = 0;
    for (const auto& w : table) {
        s += w;
    }
    return s;
}

WeightedCountingProblem table_problem(std::vector<BigRational> table, std::uint64_t p, RangeTag tag,
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

// Approximation alternating between floor and ceiling by (u, b): still within 2^-b.
void make_adversarial(WeightedCountingProblem& f)
{
    const ExactFn exact = *f.oracle.exact;
    f.oracle.approx = [exact](const BitString& x, const BitString& u, std::uint64_t b) {
        const BigRational w = exact(x, u);
        return (u.to_uint64() + b) % 2 == 0 ? floor_scaled(w, b) : ceil_scaled(w, b);
    };
}

std::vector<BigRational> random_table(std::uint64_t p, const std::function<BigRational()>& draw)
{
    std::vector<BigRational> t;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << p); ++i) {
        t.push_back(draw());
    }
    return t;
}

// ---- 1. approximation error ----

void approximation(Rng& rng, const Limits& limits, Tally& tally)
{
    std::size_t paths = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const auto p = static_cast<std::uint64_t>(rng.range(0, 12));
        const auto table = random_table(p, [&] {
            return make_rational(rng.range(-(1 << 20), 1 << 20), rng.range(1, 1 << 16));
        });
        auto problem = table_problem(table, p, RangeTag::QPOLY);
        if (trial % 2 == 1) {
            make_adversarial(problem);
        }
        const BigRational exact = table_sum(table);
        paths += table.size();
        for (std::uint64_t b = 1; b <= 32; ++b) {
            const BigRational err = abs(BigRational(approx_sum(problem, kEmpty, b, limits).to_rational() - exact));
            tally.expect(err <= make_rational(1, pow2(b)),
                         "trial " + std::to_string(trial) + " b=" + std::to_string(b));
        }
    }
    tally.notes << "500 oracles, " << paths << " paths, b = 1..32";
}

// ---- 2. reduction round trips ----

void reductions(Rng& rng, const Limits& limits, Tally& tally)
{
    auto ints = [&](std::uint64_t p, long lo, long hi) {
        return random_table(p, [&] { return BigRational(rng.range(lo, hi)); });
    };
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = static_cast<std::uint64_t>(rng.range(0, 6));
        const auto q = static_cast<std::uint64_t>(rng.range(1, 4));
        const long top = (1L << q) - 1;
        const std::string tag = "trial " + std::to_string(trial);

        const auto nat = ints(p, 0, top);
        const auto bin = lift_nat_to_binary(table_problem(nat, p, RangeTag::NAT), IntPolynomial{q});
        tally.expect(exact_sum(bin, kEmpty, limits) == table_sum(nat) &&
                         weights_in_range(bin, kEmpty, RangeTag::B01, limits),
                     tag + " NAT -> B01");

        const auto in = ints(p, -top, top);
        const auto ter = lift_int_to_ternary(table_problem(in, p, RangeTag::INT), IntPolynomial{q});
        tally.expect(exact_sum(ter, kEmpty, limits) == table_sum(in) &&
                         weights_in_range(ter, kEmpty, RangeTag::T101, limits),
                     tag + " INT -> T101");

        const auto b01 = ints(p, 0, 1);
        const auto [pm, r_pm] = embed_binary_in_pm1(table_problem(b01, p, RangeTag::B01));
        tally.expect(apply_reduction(r_pm, exact_sum(pm, kEmpty, limits), kEmpty) == table_sum(b01) &&
                         weights_in_range(pm, kEmpty, RangeTag::PM1, limits),
                     tag + " B01 -> PM1");

        const auto t101 = ints(p, -1, 1);
        const auto [shifted, r_nat] = embed_ternary_in_nat(table_problem(t101, p, RangeTag::T101));
        tally.expect(apply_reduction(r_nat, exact_sum(shifted, kEmpty, limits), kEmpty) == table_sum(t101) &&
                         weights_in_range(shifted, kEmpty, RangeTag::NAT, limits),
                     tag + " T101 -> NAT");
    }
    tally.notes << "4 classes x 100 problems";
}

// ---- 3. rational recovery ----

void recovery(Rng& rng, const Limits& limits, Tally& tally)
{
    for (int trial = 0; trial < 200; ++trial) {
        const BigRational target = make_rational(rng.range(-255, 255), rng.range(1, 255));
        // Spread the value over 2^p paths: random weights plus one balancing weight.
        const auto p = static_cast<std::uint64_t>(rng.range(0, 3));
        auto table = random_table(p, [&] { return rng.rational(9, 13); });
        table.back() += target - table_sum(table);
        const BigRational got =
            solve_bounded_output(table_problem(table, p, RangeTag::QPOLY), kEmpty,
                                 IntPolynomial::constant(16), limits);
        tally.expect(encoding_bits(target) <= 16 && got == target,
                     "expected " + to_string(target) + ", got " + to_string(got));
    }
    tally.notes << "200 rationals, q = 16, one sum at b = 34";
}

// ---- 4. threshold decision ----

void threshold(Rng& rng, const Limits& limits, Tally& tally)
{
    std::size_t equal = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const auto p = static_cast<std::uint64_t>(rng.range(0, 4));
        const auto table = random_table(p, [&] { return rng.rational(20, 12); });
        const BigRational f = table_sum(table);
        BigRational t;
        if (trial < 50) {
            t = f;
            ++equal;
        } else if (trial % 3 == 0) {
            // Just above or below f.
            t = f + (rng.coin() ? 1 : -1) * make_rational(1, rng.range(100, 100000));
        } else {
            t = rng.rational(60, 12);
        }
        DecisionInstance inst{table_problem(table, p, RangeTag::QPOLY), t,
                              IntPolynomial::constant(encoding_bits(f))};
        tally.expect(decide_threshold(inst, kEmpty, limits) == (f >= t),
                     "f = " + to_string(f) + ", t = " + to_string(t));
    }
    tally.notes << "500 instances, " << equal << " with f = t";
}

// ---- 5. closure calculus ----

struct Child {
    WeightedCountingProblem problem;
    BigRational sum;
    std::uint64_t p = 0;
};

Child table_child(Rng& rng, std::uint64_t max_p)
{
    Child c;
    c.p = static_cast<std::uint64_t>(rng.range(0, static_cast<std::int64_t>(max_p)));
    const auto table = random_table(c.p, [&] { return rng.rational(8, 6); });
    c.sum = table_sum(table);
    c.problem = table_problem(table, c.p, RangeTag::QPOLY, 4);
    make_adversarial(c.problem);
    return c;
}

// Weight table[u] + #y on input <x, y>: sum over paths S + 2^p #y.
Child paired_child(Rng& rng, std::uint64_t max_p, std::int64_t magnitude)
{
    Child c;
    c.p = static_cast<std::uint64_t>(rng.range(0, static_cast<std::int64_t>(max_p)));
    const auto table = random_table(c.p, [&] { return rng.rational(8, 6); });
    c.sum = table_sum(table);
    c.problem.name = "table+#y";
    c.problem.path_length = IntPolynomial::constant(c.p);
    c.problem.oracle = WeightOracle::from_exact(
        [table](const BitString& z, const BitString& u) {
            return BigRational(table.at(u.to_uint64()) + unpair_input(z).second.to_number());
        },
        RangeTag::QPOLY, magnitude);
    make_adversarial(c.problem);
    return c;
}

BitString random_bits(Rng& rng, std::size_t max_len)
{
    const auto n = rng.index(max_len + 1);
    return BitString::from_uint(static_cast<std::uint64_t>(rng.range(0, (1 << n) - 1)), n);
}

void closure(Rng& rng, const Limits& limits, Tally& tally)
{
    const auto tag = [](const char* node, int trial) {
        return std::string(node) + " trial " + std::to_string(trial);
    };
    for (int trial = 0; trial < 100; ++trial) {
        const Child a = table_child(rng, 4);
        const BigRational c = rng.rational(9, 7);
        tally.expect(exact_sum(add_const(a.problem, c), kEmpty, limits) == a.sum + c, tag("add_const", trial));
        tally.expect(exact_sum(scale(a.problem, c), kEmpty, limits) == c * a.sum, tag("scale", trial));

        std::vector<WeightedCountingProblem> fs;
        BigRational total = 0;
        for (auto k = rng.range(1, 4); k > 0; --k) {
            const Child ch = table_child(rng, 4);
            fs.push_back(ch.problem);
            total += ch.sum;
        }
        tally.expect(exact_sum(finite_combine(CombineKind::Sum, fs), kEmpty, limits) == total,
                     tag("finite sum", trial));

        fs.clear();
        BigRational product = 1;
        for (auto k = rng.range(1, 3); k > 0; --k) {
            const Child ch = table_child(rng, 3);
            fs.push_back(ch.problem);
            product *= ch.sum;
        }
        tally.expect(exact_sum(finite_combine(CombineKind::Product, fs), kEmpty, limits) == product,
                     tag("finite product", trial));

        const BitString x = random_bits(rng, 3);
        const Child g = paired_child(rng, 3, 5);
        const auto big_p = static_cast<std::uint64_t>(rng.range(0, 3));
        BigRational expect = 0;
        for (std::uint64_t y = 0; y < (std::uint64_t{1} << big_p); ++y) {
            expect += g.sum + BigRational(pow2(g.p) * y);
        }
        tally.expect(exact_sum(uniform_exp_sum(g.problem, IntPolynomial{big_p}), x, limits) == expect,
                     tag("uniform_exp_sum", trial));

        const Child h = paired_child(rng, 2, 5);
        const auto m = static_cast<std::uint64_t>(rng.range(0, 3));
        expect = 1;
        for (std::uint64_t y = 1; y <= m; ++y) {
            expect *= h.sum + BigRational(pow2(h.p) * y);
        }
        tally.expect(exact_sum(uniform_poly_product(h.problem, IntPolynomial{m}), x, limits) == expect,
                     tag("uniform_poly_product", trial));

        // sum over e in {0..r}^q of c(e) prod_i f(i)^{e_i}; e_1 is the leading block.
        const Child cc = paired_child(rng, 1, 5);
        const Child ff = paired_child(rng, 1, 5);
        const auto q = static_cast<std::uint64_t>(rng.range(0, 2));
        const auto r = static_cast<std::uint64_t>(rng.range(0, 2));
        const std::uint64_t width = ceil_log2(r + 1);
        expect = 0;
        std::vector<std::uint64_t> e(q, 0);
        while (true) {
            std::uint64_t code = 0;
            BigRational term = 1;
            for (std::uint64_t i = 0; i < q; ++i) {
                code = (code << width) | e[i];
                const BigRational fi = ff.sum + BigRational(pow2(ff.p) * (i + 1));
                for (std::uint64_t k = 0; k < e[i]; ++k) {
                    term *= fi;
                }
            }
            expect += (cc.sum + BigRational(pow2(cc.p) * code)) * term;
            std::size_t k = 0;
            while (k < q && ++e[k] > r) {
                e[k++] = 0;
            }
            if (k == q) {
                break;
            }
        }
        tally.expect(exact_sum(multivariate_poly(cc.problem, ff.problem, IntPolynomial{q}, IntPolynomial{r}),
                               x, limits) == expect,
                     tag("multivariate_poly", trial));
    }
    tally.notes << "7 node types x 100 instances";
}

// ---- 6. Newman bound and PP closure decisions ----

// T101 table over p bits summing to `target`, padded with cancelling +1/-1 pairs.
WeightedCountingProblem gap_value(Rng& rng, long target, std::uint64_t p)
{
    const std::size_t n = std::size_t{1} << p;
    std::vector<BigRational> table(n, 0);
    const std::size_t count = static_cast<std::size_t>(std::labs(target));
    for (std::size_t i = 0; i < count; ++i) {
        table[i] = target < 0 ? -1 : 1;
    }
    for (std::size_t i = count; i + 1 < n; i += 2) {
        if (rng.coin()) {
            table[i] = 1;
            table[i + 1] = -1;
        }
    }
    return table_problem(table, p, RangeTag::T101);
}

void newman(Rng& rng, const Limits& limits, Tally& tally)
{
    for (std::uint64_t m : {4, 9, 16, 25, 36}) {
        const BigRational err = newman_grid_error(newman_rational(m), 1001, limits.workers);
        const Bracket bound = newman_bound(m);
        tally.expect(err <= bound.lo, "m = " + std::to_string(m) + " error " + to_decimal(err));
        tally.notes << "m=" << m << ": " << to_decimal(err, 6) << " <= " << to_decimal(bound.lo, 6) << "; ";
    }
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = static_cast<std::uint64_t>(rng.range(1, 3));
        const long top = 1L << p;
        const auto k = static_cast<std::size_t>(rng.range(1, 3));
        GapInstance inst;
        inst.magnitude_poly = IntPolynomial{p};
        bool all = true;
        std::size_t index = 0;
        for (std::size_t i = 0; i < k; ++i) {
            const long v = rng.range(-top, top);
            inst.problems.push_back(gap_value(rng, v, p));
            all = all && v >= 0;
            index = index * 2 + (v >= 0 ? 1 : 0);
        }
        std::vector<bool> table(std::size_t{1} << k);
        for (auto&& entry : table) {
            entry = rng.coin();
        }
        tally.expect(pp_intersect_decide(inst, kEmpty, limits) == all,
                     "intersect trial " + std::to_string(trial));
        tally.expect(pp_truthtable_decide(inst, table, kEmpty, limits) == table[index],
                     "truth table trial " + std::to_string(trial));
    }
    tally.notes << "200 gap instances";
}

// ---- 7. quantum path pairs ----

Gate random_gate(Rng& rng, std::size_t n)
{
    std::vector<GateKind> kinds = {GateKind::H, GateKind::X, GateKind::Y, GateKind::Z, GateKind::S, GateKind::T};
    if (n > 1) {
        kinds.push_back(GateKind::CNOT);
        kinds.push_back(GateKind::CZ);
    }
    const GateKind kind = kinds[rng.index(kinds.size())];
    const std::size_t a = rng.index(n);
    if (kind != GateKind::CNOT && kind != GateKind::CZ) {
        return Gate::single(kind, a);
    }
    std::size_t b = rng.index(n);
    while (b == a) {
        b = rng.index(n);
    }
    return {kind, {a, b}};
}

Circuit random_circuit(Rng& rng)
{
    Circuit c;
    c.n_qubits = static_cast<std::size_t>(rng.range(1, 4));
    const auto measures = rng.range(0, 2);
    const auto gates = rng.range(0, 8 - measures);
    for (std::int64_t i = 0; i < gates; ++i) {
        c.ops.push_back(random_gate(rng, c.n_qubits));
    }
    for (std::int64_t m = 0; m < measures; ++m) {
        c.ops.insert(c.ops.begin() + rng.range(0, static_cast<std::int64_t>(c.ops.size())),
                     Gate::measure(rng.index(c.n_qubits)));
    }
    for (std::size_t q = 0; q < c.n_qubits; ++q) {
        if (q == 0 || rng.coin()) {
            c.accept.emplace_back(q, rng.coin() ? 1 : 0);
        }
    }
    return c;
}

void quantum(Rng& rng, const Limits& limits, Tally& tally)
{
    std::size_t with_t = 0, with_measure = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const Circuit c = random_circuit(rng);
        const BitString x = BitString::from_uint(rng.index(std::size_t{1} << c.n_qubits), c.n_qubits);
        const PathSumResult ps = pathsum_detail(c, x, limits);
        const QuadraticRational sv = statevector_accept(c, x);
        tally.expect(ps.real == sv, "pathsum != statevector on\n" + c.to_text());
        tally.expect(ps.imag == QuadraticRational(0), "imaginary part on\n" + c.to_text());
        with_measure += c.measurements() > 0 ? 1 : 0;
        for (const Gate& g : c.ops) {
            if (g.kind == GateKind::T) {
                ++with_t;
                break;
            }
        }
        if (trial < 200) {
            const Circuit d = defer_measurements(c);
            tally.expect(d.measurements() == 0 && statevector_accept(d, x) == sv,
                         "deferral changed\n" + c.to_text());
        }
    }
    tally.notes << "500 circuits (" << with_t << " with T, " << with_measure
                << " with measurements), 200 deferred";
}

// ---- 8. graphical models ----

template <class Visit>
void for_each_assignment(const std::vector<std::size_t>& cards, Visit&& visit)
{
    std::vector<std::size_t> a(cards.size(), 0);
    while (true) {
        visit(a);
        std::size_t k = 0;
        while (k < a.size() && ++a[k] == cards[k]) {
            a[k++] = 0;
        }
        if (k == a.size()) {
            return;
        }
    }
}

BigRational brute_z(const Pgm& pgm, const Assignment& fixed = {})
{
    BigRational z = 0;
    for_each_assignment(pgm.cardinalities, [&](const std::vector<std::size_t>& a) {
        for (const auto& [v, value] : fixed) {
            if (a[v] != value) {
                return;
            }
        }
        BigRational w = 1;
        for (const Factor& f : pgm.factors) {
            std::size_t row = 0;
            for (std::size_t v : f.scope) {
                row = row * pgm.cardinalities[v] + a[v];
            }
            w *= f.table[row];
        }
        z += w;
    });
    return z;
}

Pgm random_pgm(Rng& rng, bool bayesian)
{
    Pgm pgm;
    const auto n = static_cast<std::size_t>(rng.range(1, bayesian ? 5 : 6));
    for (std::size_t i = 0; i < n; ++i) {
        pgm.cardinalities.push_back(static_cast<std::size_t>(rng.range(1, 3)));
    }
    auto rows = [&](const std::vector<std::size_t>& scope) {
        std::size_t r = 1;
        for (std::size_t v : scope) {
            r *= pgm.cardinalities[v];
        }
        return r;
    };
    if (bayesian) {
        for (std::size_t i = 0; i < n; ++i) {
            Factor f;
            for (std::size_t j = 0; j < i; ++j) {
                if (rng.coin()) {
                    f.scope.push_back(j);
                }
            }
            f.scope.push_back(i);
            const std::size_t card = pgm.cardinalities[i];
            for (std::size_t r = rows(f.scope) / card; r > 0; --r) {
                std::vector<BigRational> raw(card);
                BigRational total = 0;
                for (auto& v : raw) {
                    v = rng.range(0, 4);
                    total += v;
                }
                if (total == 0) {
                    raw[0] = total = 1;
                }
                for (const auto& v : raw) {
                    f.table.push_back(v / total);
                }
            }
            pgm.factors.push_back(std::move(f));
        }
        return pgm;
    }
    std::vector<bool> covered(n, false);
    auto add = [&](std::vector<std::size_t> scope) {
        Factor f;
        for (std::size_t v : scope) {
            covered[v] = true;
        }
        for (std::size_t r = rows(scope); r > 0; --r) {
            f.table.push_back(make_rational(rng.range(0, 5), rng.range(1, 4)));
        }
        f.scope = std::move(scope);
        pgm.factors.push_back(std::move(f));
    };
    for (auto m = rng.range(1, 4); m > 0; --m) {
        std::vector<std::size_t> scope;
        for (std::size_t v = 0; v < n; ++v) {
            if (rng.range(0, 2) == 0) {
                scope.push_back(v);
            }
        }
        add(std::move(scope));
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (!covered[v]) {
            add({v});
        }
    }
    return pgm;
}

Assignment random_partial(Rng& rng, const Pgm& pgm)
{
    Assignment a;
    for (std::size_t v = 0; v < pgm.variable_count(); ++v) {
        if (rng.range(0, 2) == 0) {
            a.emplace_back(v, rng.index(pgm.cardinalities[v]));
        }
    }
    return a;
}

Formula random_formula(Rng& rng, std::size_t vars, int depth)
{
    Formula f;
    if (depth == 0 || rng.range(0, 3) == 0) {
        f.var = static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(vars)));
        return f;
    }
    const auto op = rng.range(0, 2);
    f.kind = op == 0 ? Formula::Kind::Not : (op == 1 ? Formula::Kind::And : Formula::Kind::Or);
    f.children.push_back(random_formula(rng, vars, depth - 1));
    if (f.kind != Formula::Kind::Not) {
        f.children.push_back(random_formula(rng, vars, depth - 1));
    }
    return f;
}

bool truth(const Formula& f, std::uint64_t assignment)
{
    switch (f.kind) {
    case Formula::Kind::Var: return ((assignment >> (f.var - 1)) & 1U) != 0;
    case Formula::Kind::Not: return !truth(f.children[0], assignment);
    case Formula::Kind::And: return truth(f.children[0], assignment) && truth(f.children[1], assignment);
    case Formula::Kind::Or: return truth(f.children[0], assignment) || truth(f.children[1], assignment);
    }
    return false;
}

void graphical_models(Rng& rng, const Limits& limits, Tally& tally)
{
    for (int trial = 0; trial < 300; ++trial) {
        const Pgm pgm = random_pgm(rng, false);
        tally.expect(partition_function(pgm, limits) == brute_z(pgm), "partition trial " + std::to_string(trial));
    }
    for (int trial = 0; trial < 100; ++trial) {
        const Pgm bn = random_pgm(rng, true);
        tally.expect(is_bayesian_network(bn) && partition_function(bn, limits) == 1,
                     "network trial " + std::to_string(trial));
    }
    std::size_t queries = 0;
    for (int trial = 0; queries < 200; ++trial) {
        const Pgm pgm = random_pgm(rng, trial % 2 == 0);
        Query q{random_partial(rng, pgm), random_partial(rng, pgm), 0};
        const BigRational ze = brute_z(pgm, q.evidence);
        if (ze == 0) {
            continue;
        }
        Assignment both = q.target;
        both.insert(both.end(), q.evidence.begin(), q.evidence.end());
        const BigRational pr = brute_z(pgm, both) / ze;
        q.threshold = rng.coin() ? pr : rng.rational(3, 7);
        const BigRational cp = conditional_probability(pgm, q, limits);
        tally.expect(cp == pr && conditional_decide(pgm, q, limits) == (cp > q.threshold),
                     "query trial " + std::to_string(trial));
        ++queries;
    }
    for (int trial = 0; trial < 100; ++trial) {
        const Formula f = random_formula(rng, static_cast<std::size_t>(rng.range(1, 10)), 3);
        const std::size_t n = f.variable_count();
        std::uint64_t sat = 0;
        for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
            sat += truth(f, a) ? 1 : 0;
        }
        tally.expect(partition_function(majsat_to_pgm(f), limits) == make_rational(sat, pow2(n)), f.str());
    }
    tally.notes << "300 PGMs, 100 networks, 200 queries, 100 formulas";
}

// ---- 9. prime reciprocals ----

void primes(Rng&, const Limits& limits, Tally& tally)
{
    const auto problem = prime_reciprocal_oracle();
    const BigRational at10 = exact_sum(problem, BitString::encode_natural(10), limits);
    tally.expect(at10 == make_rational(247, 210), "f(10) = " + to_string(at10));
    // Primorial by trial division, independent of the library's sieve.
    BigInt primorial_x = 1;
    for (std::uint64_t x = 1; x <= 50; ++x) {
        bool prime = x >= 2;
        for (std::uint64_t d = 2; d * d <= x && prime; ++d) {
            prime = x % d != 0;
        }
        if (prime) {
            primorial_x *= static_cast<unsigned long>(x);
        }
        const BigRational f = exact_sum(problem, BitString::encode_natural(x), limits);
        tally.expect(f.get_den() == primorial_x, "denominator at x = " + std::to_string(x));
    }
    tally.expect(prime_gap_check(10000), "prime gap check on [17, 10000]");
    tally.notes << "f(10) = " << to_string(at10) << ", x = 1..50, gap check to 10000";
}

// ---- 10. stochastic optimization ----

void stochastic(Rng& rng, const Limits& limits, Tally& tally)
{
    std::size_t widest = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<PreselectionItem> items(static_cast<std::size_t>(rng.range(1, 7)));
        for (auto& item : items) {
            item.cost = make_rational(rng.range(0, 9), rng.range(1, 4));
            item.penalty = make_rational(rng.range(0, 12), rng.range(1, 3));
            const auto den = rng.range(1, 6);
            item.probability = make_rational(rng.range(0, den), den);
        }
        widest = std::max(widest, items.size());
        const std::size_t n = items.size();
        auto closed = [&](std::uint64_t v) {
            BigRational total = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const bool bought = ((v >> (n - 1 - i)) & 1U) != 0;
                total += bought ? items[i].cost : items[i].probability * items[i].penalty;
            }
            return total;
        };
        const TwoStageProblem problem = preselection(items);
        const std::uint64_t probe = rng.index(std::size_t{1} << n);
        tally.expect(expected_cost(problem, BitString::from_uint(probe, n), limits) == closed(probe),
                     "closed form trial " + std::to_string(trial));
        const Solution best = best_solution(problem, limits);
        bool optimal = best.cost == closed(best.x.to_uint64());
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << n) && optimal; ++v) {
            const BigRational c = closed(v);
            optimal = c > best.cost || (c == best.cost && v >= best.x.to_uint64());
        }
        tally.expect(optimal, "best solution trial " + std::to_string(trial));
    }
    tally.notes << "300 instances, up to " << widest << " first-stage bits";
}

// ---- 11. halting oracle ----

void halting(Rng&, const Limits& limits, Tally& tally)
{
    struct Known {
        ToyMachine machine;
        BitString input;
        std::uint64_t steps;
    };
    std::vector<Known> halts;
    for (int t = 0; t <= 6; ++t) {
        halts.push_back({ToyMachine::halts_after(t), BitString{"01"}, static_cast<std::uint64_t>(t)});
    }
    // Scans |y| cells and one blank.
    for (const char* y : {"", "1", "0101"}) {
        halts.push_back({ToyMachine::scan_to_blank(), BitString{y}, std::string(y).size() + 1});
    }
    const std::vector<ToyMachine> loops = {
        ToyMachine::idle_loop(), ToyMachine::runaway(), ToyMachine::bounce(),
        ToyMachine::parse("states 2 start 0 halt 1\n0 0 0 L 0\n0 1 1 L 0\n0 _ _ L 0\n"),
        ToyMachine::parse("states 4 start 0 halt 3\n"
                          "0 0 1 S 1\n0 1 0 S 1\n0 _ 1 S 1\n"
                          "1 0 0 S 2\n1 1 1 S 2\n1 _ _ S 2\n"
                          "2 0 0 S 0\n2 1 1 S 0\n2 _ _ S 0\n"),
    };
    for (std::size_t i = 0; i < halts.size(); ++i) {
        const auto inst = halting_oracle(halts[i].machine, halts[i].input);
        const BigRational truth = make_rational(1, pow2(halts[i].steps));
        for (std::uint64_t b = 0; b <= 16; ++b) {
            const BigRational v = approx_sum(inst.problem, inst.input, b, limits).to_rational();
            tally.expect(abs(BigRational(v - truth)) <= make_rational(1, pow2(b)),
                         "halting machine " + std::to_string(i) + " at b = " + std::to_string(b));
        }
    }
    for (std::size_t i = 0; i < loops.size(); ++i) {
        const auto inst = halting_oracle(loops[i], BitString{"10"});
        for (std::uint64_t b = 0; b <= 16; ++b) {
            tally.expect(approx_sum(inst.problem, inst.input, b, limits).to_rational() == 0,
                         "looping machine " + std::to_string(i) + " at b = " + std::to_string(b));
        }
    }
    tally.notes << halts.size() << " halting and " << loops.size() << " looping machines, b = 0..16";
}

struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    void (*run)(Rng&, const Limits&, Tally&);
};

const std::vector<Criterion>& criteria()
{
    static const std::vector<Criterion> all = {
        {1, "approximation error within 2^-b", 120, approximation},
        {2, "reduction round trips", 0, reductions},
        {3, "rational recovery", 0, recovery},
        {4, "threshold decision", 0, threshold},
        {5, "closure calculus", 0, closure},
        {6, "Newman bound and PP closure", 60, newman},
        {7, "quantum path-pair sum", 180, quantum},
        {8, "graphical models", 0, graphical_models},
        {9, "prime reciprocal case study", 0, primes},
        {10, "two-stage stochastic optimization", 0, stochastic},
        {11, "halting oracle", 0, halting},
    };
    return all;
}

}  // namespace

int suite_criterion_count() { return static_cast<int>(criteria().size()); }

std::vector<CriterionResult> run_suite(const SuiteOptions& options)
{
    Limits limits;
    limits.workers = options.workers;
    std::vector<CriterionResult> out;
    for (const Criterion& c : criteria()) {
        if (!options.only.empty() &&
            std::find(options.only.begin(), options.only.end(), c.id) == options.only.end()) {
            continue;
        }
        // Distinct, reproducible stream per criterion.
        Rng rng(options.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(c.id));
        Tally tally;
        CriterionResult r;
        r.id = c.id;
        r.name = c.name;
        r.limit_seconds = c.limit_seconds;
        const auto start = Clock::now();
        std::string error;
        try {
            c.run(rng, limits, tally);
        } catch (const std::exception& e) {
            error = e.what();
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        const bool in_time = c.limit_seconds == 0 || r.seconds < c.limit_seconds;
        r.passed = error.empty() && tally.failures == 0 && in_time;
        std::ostringstream detail;
        detail << tally.cases << " checks, " << tally.failures << " failed; " << tally.notes.str();
        if (!error.empty()) {
            detail << "; exception: " << error;
        }
        if (tally.failures > 0) {
            detail << "; first failure: " << tally.first_failure;
        }
        if (!in_time) {
            detail << "; over the " << c.limit_seconds << " s limit";
        }
        r.detail = detail.str();
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_suite(const std::vector<CriterionResult>& results, double total_seconds)
{
    std::ostringstream os;
    std::size_t passed = 0;
    for (const auto& r : results) {
        passed += r.passed ? 1 : 0;
        os << (r.passed ? "PASS" : "FAIL") << "  C" << std::left << std::setw(3) << r.id
           << std::setw(36) << r.name << std::right << std::fixed << std::setprecision(2)
           << std::setw(8) << r.seconds << " s";
        if (r.limit_seconds > 0) {
            os << " (limit " << std::setprecision(0) << r.limit_seconds << " s)";
        }
        os << "  " << r.detail << "\n";
    }
    const bool in_time = total_seconds < kSuiteLimitSeconds;
    os << (passed == results.size() && in_time ? "PASS" : "FAIL") << "  total " << passed << "/"
       << results.size() << " criteria in " << std::fixed << std::setprecision(2) << total_seconds
       << " s (limit " << std::setprecision(0) << kSuiteLimitSeconds << " s)\n";
    return os.str();
}

}  // namespace wcount
