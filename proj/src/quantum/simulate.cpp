#include "wcount/quantum.hpp"

#include "wcount/parallel.hpp"
#include "wcount/summation.hpp"

#include <algorithm>
#include <tuple>

namespace wcount {

namespace {

constexpr std::size_t kMaxStatevectorQubits = 10;

std::uint64_t initial_state(const Circuit& circuit, const BitString& input)
{
    if (input.size() > circuit.n_qubits) {
        throw DomainViolation("input has " + std::to_string(input.size()) + " bits for " +
                              std::to_string(circuit.n_qubits) + " qubits");
    }
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < input.size(); ++i) {
        if (input[i]) {
            s |= std::uint64_t{1} << i;
        }
    }
    return s;
}

bool accepting(const Circuit& circuit, std::uint64_t state)
{
    for (const auto& [q, bit] : circuit.accept) {
        if (static_cast<int>((state >> q) & 1U) != bit) {
            return false;
        }
    }
    return true;
}

int bit_of(std::uint64_t state, std::size_t q) { return static_cast<int>((state >> q) & 1U); }

// ---- state-vector route: matrices applied to full amplitude vectors ----

using StateVector = std::vector<RingAmplitude>;

void apply_one(StateVector& psi, const RingMatrix& m, std::size_t q)
{
    const std::uint64_t mask = std::uint64_t{1} << q;
    for (std::uint64_t idx = 0; idx < psi.size(); ++idx) {
        if (idx & mask) {
            continue;
        }
        const RingAmplitude a0 = psi[idx];
        const RingAmplitude a1 = psi[idx | mask];
        psi[idx] = m[0][0] * a0 + m[0][1] * a1;
        psi[idx | mask] = m[1][0] * a0 + m[1][1] * a1;
    }
}

void apply_two(StateVector& psi, const RingMatrix& m, std::size_t q1, std::size_t q2)
{
    const std::uint64_t m1 = std::uint64_t{1} << q1;
    const std::uint64_t m2 = std::uint64_t{1} << q2;
    for (std::uint64_t idx = 0; idx < psi.size(); ++idx) {
        if (idx & (m1 | m2)) {
            continue;
        }
        const std::uint64_t slots[4] = {idx, idx | m2, idx | m1, idx | m1 | m2};
        RingAmplitude in[4];
        for (int r = 0; r < 4; ++r) {
            in[r] = psi[slots[r]];
        }
        for (int r = 0; r < 4; ++r) {
            RingAmplitude acc;
            for (int col = 0; col < 4; ++col) {
                if (!m[r][col].is_zero()) {
                    acc += m[r][col] * in[col];
                }
            }
            psi[slots[r]] = acc;
        }
    }
}

// ---- path route: one basis state per step, transitions written out by hand ----

enum class Phase { MinusOne, I, MinusI, InvSqrt2, MinusInvSqrt2, Omega };

struct Trace {
    std::uint64_t state = 0;
    std::uint64_t record = 0;
    RingAmplitude amplitude = RingAmplitude::one();
};

// Follows the path selected by choices[offset, offset + h) and reports each non-unit factor.
template <class OnPhase>
std::pair<std::uint64_t, std::uint64_t> walk(const Circuit& circuit, std::uint64_t state,
                                             const BitString& choices, std::size_t offset,
                                             OnPhase&& on_phase)
{
    std::uint64_t record = 0;
    std::size_t record_len = 0;
    std::size_t next_choice = offset;
    for (const Gate& g : circuit.ops) {
        const std::size_t q = g.qubits[0];
        const std::uint64_t mask = std::uint64_t{1} << q;
        const int v = bit_of(state, q);
        switch (g.kind) {
        case GateKind::H: {
            const bool c = choices[next_choice++];
            on_phase(v == 1 && c ? Phase::MinusInvSqrt2 : Phase::InvSqrt2);
            state = c ? (state | mask) : (state & ~mask);
            break;
        }
        case GateKind::X:
            state ^= mask;
            break;
        case GateKind::Y:
            on_phase(v == 0 ? Phase::I : Phase::MinusI);
            state ^= mask;
            break;
        case GateKind::Z:
            if (v == 1) {
                on_phase(Phase::MinusOne);
            }
            break;
        case GateKind::S:
            if (v == 1) {
                on_phase(Phase::I);
            }
            break;
        case GateKind::T:
            if (v == 1) {
                on_phase(Phase::Omega);
            }
            break;
        case GateKind::CNOT:
            if (v == 1) {
                state ^= std::uint64_t{1} << g.qubits[1];
            }
            break;
        case GateKind::CZ:
            if (v == 1 && bit_of(state, g.qubits[1]) == 1) {
                on_phase(Phase::MinusOne);
            }
            break;
        case GateKind::Measure:
            record |= static_cast<std::uint64_t>(v) << record_len++;
            break;
        }
    }
    return {state, record};
}

RingAmplitude phase_value(Phase p)
{
    switch (p) {
    case Phase::MinusOne: return -RingAmplitude::one();
    case Phase::I: return RingAmplitude::i();
    case Phase::MinusI: return -RingAmplitude::i();
    case Phase::InvSqrt2: return RingAmplitude::inv_sqrt2();
    case Phase::MinusInvSqrt2: return -RingAmplitude::inv_sqrt2();
    case Phase::Omega: return RingAmplitude::omega();
    }
    return RingAmplitude::one();
}

Trace exact_trace(const Circuit& circuit, std::uint64_t state, const BitString& choices,
                  std::size_t offset)
{
    Trace t;
    std::tie(t.state, t.record) = walk(circuit, state, choices, offset,
                                       [&](Phase p) { t.amplitude = t.amplitude * phase_value(p); });
    return t;
}

// Complex dyadic (re + i im) / 2^P.
struct ApproxComplex {
    BigInt re;
    BigInt im;
};

class ApproxWalker {
public:
    explicit ApproxWalker(std::uint64_t precision) : precision_(precision)
    {
        // floor(2^P / sqrt2) = floor(sqrt(2^{2P-1})).
        mpz_sqrt(root_half_.get_mpz_t(), pow2(2 * precision - 1).get_mpz_t());
    }

    ApproxComplex one() const { return {pow2(precision_), 0}; }

    void apply(ApproxComplex& z, Phase p) const
    {
        switch (p) {
        case Phase::MinusOne:
            z.re = -z.re;
            z.im = -z.im;
            return;
        case Phase::I: {
            BigInt re = -z.im;
            z.im = z.re;
            z.re = std::move(re);
            return;
        }
        case Phase::MinusI: {
            BigInt re = z.im;
            z.im = -z.re;
            z.re = std::move(re);
            return;
        }
        case Phase::InvSqrt2:
        case Phase::MinusInvSqrt2:
            z.re = scaled(z.re);
            z.im = scaled(z.im);
            if (p == Phase::MinusInvSqrt2) {
                z.re = -z.re;
                z.im = -z.im;
            }
            return;
        case Phase::Omega: {
            BigInt re = scaled(BigInt(z.re - z.im));
            z.im = scaled(BigInt(z.re + z.im));
            z.re = std::move(re);
            return;
        }
        }
    }

private:
    BigInt scaled(const BigInt& v) const
    {
        BigInt out;
        mpz_fdiv_q_2exp(out.get_mpz_t(), BigInt(v * root_half_).get_mpz_t(), precision_);
        return out;
    }

    std::uint64_t precision_;
    BigInt root_half_;
};

struct PairPaths {
    Trace first;
    Trace second;
};

bool compatible(const Circuit& circuit, const Trace& a, const Trace& b)
{
    return a.state == b.state && a.record == b.record && accepting(circuit, a.state);
}

bool has_t_gate(const Circuit& circuit)
{
    return std::any_of(circuit.ops.begin(), circuit.ops.end(),
                       [](const Gate& g) { return g.kind == GateKind::T; });
}

void require_path_width(const Circuit& circuit)
{
    circuit.validate();
    if (circuit.n_qubits > 64 || circuit.measurements() > 64) {
        throw CapExceeded("path evaluation supports at most 64 qubits and 64 measurements");
    }
}

}  // namespace

QuadraticRational statevector_accept(const Circuit& circuit, const BitString& input)
{
    circuit.validate();
    if (circuit.n_qubits > kMaxStatevectorQubits) {
        throw CapExceeded("state-vector simulation supports at most " +
                          std::to_string(kMaxStatevectorQubits) + " qubits");
    }
    const std::size_t dim = std::size_t{1} << circuit.n_qubits;
    std::vector<StateVector> branches(1, StateVector(dim));
    branches[0][initial_state(circuit, input)] = RingAmplitude::one();

    for (const Gate& g : circuit.ops) {
        if (g.kind == GateKind::Measure) {
            const std::uint64_t mask = std::uint64_t{1} << g.qubits[0];
            std::vector<StateVector> next;
            for (const auto& psi : branches) {
                for (int outcome = 0; outcome < 2; ++outcome) {
                    StateVector part(dim);
                    bool nonzero = false;
                    for (std::uint64_t idx = 0; idx < dim; ++idx) {
                        if (((idx & mask) != 0) == (outcome == 1) && !psi[idx].is_zero()) {
                            part[idx] = psi[idx];
                            nonzero = true;
                        }
                    }
                    if (nonzero) {
                        next.push_back(std::move(part));
                    }
                }
            }
            branches = std::move(next);
            continue;
        }
        const RingMatrix m = gate_matrix(g.kind);
        for (auto& psi : branches) {
            if (g.qubits.size() == 1) {
                apply_one(psi, m, g.qubits[0]);
            } else {
                apply_two(psi, m, g.qubits[0], g.qubits[1]);
            }
        }
    }

    QuadraticRational total;
    for (const auto& psi : branches) {
        for (std::uint64_t idx = 0; idx < dim; ++idx) {
            if (!psi[idx].is_zero() && accepting(circuit, idx)) {
                total += psi[idx].norm2();
            }
        }
    }
    return total;
}

PathSumResult pathsum_detail(const Circuit& circuit, const BitString& input, const Limits& limits)
{
    require_path_width(circuit);
    const std::size_t h = circuit.branching_gates();
    check_cap(2 * h, limits);
    const std::uint64_t start = initial_state(circuit, input);
    const std::uint64_t paths = std::uint64_t{1} << h;

    using Traces = std::vector<Trace>;
    Traces traces = parallel_accumulate(
        paths, limits.workers, Traces{},
        [&](std::uint64_t i, Traces& acc) {
            Trace t = exact_trace(circuit, start, BitString::from_uint(i, h), 0);
            if (accepting(circuit, t.state)) {
                acc.push_back(std::move(t));
            }
        },
        [](Traces& into, Traces& part) {
            into.insert(into.end(), std::make_move_iterator(part.begin()),
                        std::make_move_iterator(part.end()));
        });
    std::sort(traces.begin(), traces.end(), [](const Trace& a, const Trace& b) {
        return std::tie(a.state, a.record) < std::tie(b.state, b.record);
    });

    // group_end[i]: one past the last trace sharing trace i's final configuration.
    std::vector<std::size_t> group_begin(traces.size()), group_end(traces.size());
    for (std::size_t i = 0; i < traces.size();) {
        std::size_t j = i;
        while (j < traces.size() && traces[j].state == traces[i].state &&
               traces[j].record == traces[i].record) {
            ++j;
        }
        for (std::size_t t = i; t < j; ++t) {
            group_begin[t] = i;
            group_end[t] = j;
        }
        i = j;
    }

    using Acc = std::pair<RingAmplitude, std::uint64_t>;
    Acc sum = parallel_accumulate(
        traces.size(), limits.workers, Acc{},
        [&](std::uint64_t i, Acc& acc) {
            const RingAmplitude& a1 = traces[i].amplitude;
            for (std::size_t j = group_begin[i]; j < group_end[i]; ++j) {
                acc.first += a1 * traces[j].amplitude.conj();
                ++acc.second;
            }
        },
        [](Acc& into, const Acc& part) {
            into.first += part.first;
            into.second += part.second;
        });

    PathSumResult r;
    r.real = sum.first.real();
    r.imag = sum.first.imag();
    r.paths = paths;
    r.compatible_pairs = sum.second;
    return r;
}

QuadraticRational pathsum_accept(const Circuit& circuit, const BitString& input,
                                 const Limits& limits)
{
    return pathsum_detail(circuit, input, limits).real;
}

Circuit defer_measurements(const Circuit& circuit)
{
    Circuit out = circuit;
    out.ops.clear();
    std::size_t ancilla = circuit.n_qubits;
    for (const Gate& g : circuit.ops) {
        if (g.kind == GateKind::Measure) {
            out.ops.push_back(Gate::cnot(g.qubits[0], ancilla++));
        } else {
            out.ops.push_back(g);
        }
    }
    out.n_qubits = ancilla;
    return out;
}

QuadraticRational path_pair_weight(const Circuit& circuit, const BitString& input,
                                   const BitString& u)
{
    const std::size_t h = circuit.branching_gates();
    if (u.size() != 2 * h) {
        throw DomainViolation("path pair needs " + std::to_string(2 * h) + " bits");
    }
    const std::uint64_t start = initial_state(circuit, input);
    const Trace a = exact_trace(circuit, start, u, 0);
    const Trace b = exact_trace(circuit, start, u, h);
    if (!compatible(circuit, a, b)) {
        return {};
    }
    return (a.amplitude * b.amplitude.conj()).real();
}

CircuitInstance weight_oracle_from_circuit(const Circuit& circuit, const BitString& input)
{
    require_path_width(circuit);
    initial_state(circuit, input);
    const std::size_t h = circuit.branching_gates();
    const std::uint64_t factors = circuit.ops.size();
    const std::uint64_t lg = ceil_log2(factors + 1);

    CircuitInstance inst;
    inst.input = input;
    WeightedCountingProblem& problem = inst.problem;
    problem.name = "circuit-path-pairs";
    problem.path_length = IntPolynomial::constant(2 * h);
    problem.oracle.tag = RangeTag::REAL;
    problem.oracle.magnitude_log2 = 0;
    // At most L = |ops| inexact factors per path: each step adds < 3 * 2^-P to the path error,
    // the pair product < 7 L 2^-P; P = b + 5 + ceil(log2(L+1)) keeps that below 2^{-b-1}.
    problem.oracle.approx = [circuit, h, lg](const BitString& x, const BitString& u,
                                             std::uint64_t b) -> BigInt {
        if (u.size() != 2 * h) {
            throw DomainViolation("path pair needs " + std::to_string(2 * h) + " bits");
        }
        const std::uint64_t start = initial_state(circuit, x);
        const std::uint64_t precision = std::max(b + 5 + lg, lg + 8);
        const ApproxWalker walker(precision);
        ApproxComplex z1 = walker.one();
        ApproxComplex z2 = walker.one();
        const auto end1 = walk(circuit, start, u, 0, [&](Phase p) { walker.apply(z1, p); });
        const auto end2 = walk(circuit, start, u, h, [&](Phase p) { walker.apply(z2, p); });
        if (end1 != end2 || !accepting(circuit, end1.first)) {
            return 0;
        }
        // Re(z1 conj z2) = (re1 re2 + im1 im2) / 2^{2P}.
        return round_shift(BigInt(z1.re * z2.re + z1.im * z2.im), 2 * precision - b);
    };
    if (!has_t_gate(circuit)) {
        problem.oracle.exact = [circuit](const BitString& x, const BitString& u) -> BigRational {
            const QuadraticRational w = path_pair_weight(circuit, x, u);
            if (!w.is_rational()) {
                throw InvariantViolation("irrational path-pair weight in a circuit without T");
            }
            return w.alpha();
        };
    }
    return inst;
}

bool awpp_gap_check(const WeightedCountingProblem& problem,
                    const std::vector<std::pair<BitString, bool>>& samples, const BigRational& c,
                    const Limits& limits)
{
    if (c < 0 || c >= make_rational(1, 2)) {
        throw PreconditionViolated("awpp_gap_check needs 0 <= c < 1/2");
    }
    // Smallest b with 2^-b <= (1/2 - c)/4.
    const BigRational margin = (make_rational(1, 2) - c) / 4;
    std::uint64_t b = 0;
    while (make_rational(1, pow2(b)) > margin) {
        ++b;
    }
    const BigRational slack = problem.oracle.exact ? BigRational(0) : make_rational(1, pow2(b));
    for (const auto& [x, in] : samples) {
        const BigRational g = problem.oracle.exact ? exact_sum(problem, x, limits)
                                                   : approx_sum(problem, x, b, limits).to_rational();
        const BigRational lo = in ? BigRational(1 - c) : BigRational(0);
        const BigRational hi = in ? BigRational(1) : c;
        if (g < lo - slack || g > hi + slack) {
            return false;
        }
    }
    return true;
}

bool bqp_decide(const Circuit& circuit, const BitString& input, const Limits& limits)
{
    const CircuitInstance inst = weight_oracle_from_circuit(circuit, input);
    const BigRational v = approx_sum(inst.problem, inst.input, 3, limits).to_rational();
    if (v > make_rational(11, 24) && v < make_rational(13, 24)) {
        throw PromiseViolated("acceptance estimate " + to_string(v) +
                              " lies in the promise gap (11/24, 13/24)");
    }
    return v >= make_rational(1, 2);
}

}  // namespace wcount
