#pragma once

// Clifford+T circuits with intermediate measurements, evaluated exactly by
// state-vector evolution and by the sum over compatible path pairs, and turned
// into a weighted counting problem whose paths are pairs of branch strings.

#include "wcount/errors.hpp"
#include "wcount/oracle.hpp"
#include "wcount/ring.hpp"

#include <string>
#include <utility>
#include <vector>

namespace wcount {

enum class GateKind { H, X, Y, Z, S, T, CNOT, CZ, Measure };

std::string_view to_string(GateKind kind);

struct Gate {
    GateKind kind = GateKind::X;
    /// One qubit, or (control, target) for CNOT, or (a, b) for CZ.
    std::vector<std::size_t> qubits;

    static Gate single(GateKind kind, std::size_t q) { return {kind, {q}}; }
    static Gate cnot(std::size_t control, std::size_t target) { return {GateKind::CNOT, {control, target}}; }
    static Gate cz(std::size_t a, std::size_t b) { return {GateKind::CZ, {a, b}}; }
    static Gate measure(std::size_t q) { return {GateKind::Measure, {q}}; }
};

/// Row-major matrix over the ring; 2x2 for one-qubit gates, 4x4 for two-qubit gates with
/// basis index 2*bit(first) + bit(second).
using RingMatrix = std::vector<std::vector<RingAmplitude>>;
RingMatrix gate_matrix(GateKind kind);

struct Circuit {
    std::size_t n_qubits = 1;
    std::vector<Gate> ops;
    /// Accept iff every (qubit, bit) holds on the final basis state.
    std::vector<std::pair<std::size_t, int>> accept;

    /// Throws InvariantViolation on bad indices, a CNOT/CZ on one qubit or an empty accept.
    void validate() const;

    std::size_t branching_gates() const;
    std::size_t measurements() const;

    /// Appends T^dagger as Z; S; T.
    void add_tdg(std::size_t q);
    /// Appends a Toffoli gate (controls a, b, target t) in H, T, T^dagger, CNOT.
    void add_toffoli(std::size_t a, std::size_t b, std::size_t t);

    /// Text form: "WCQC", n_qubits, one op per line, "ACCEPT q=b ...". '#' starts a comment.
    static Circuit parse(const std::string& text);
    std::string to_text() const;
};

/// Acceptance probability by evolving unnormalized state vectors, one per
/// measurement record. Throws CapExceeded above 10 qubits.
QuadraticRational statevector_accept(const Circuit& circuit, const BitString& input);

struct PathSumResult {
    /// sum over compatible pairs of Re(a1 conj(a2)).
    QuadraticRational real;
    /// sum over compatible pairs of Im(a1 conj(a2)); zero for every circuit.
    QuadraticRational imag;
    std::uint64_t paths = 0;
    std::uint64_t compatible_pairs = 0;
};

/// Sum over pairs of computational paths that end in the same accepting basis
/// state with the same measurement record. Paths branch only at H.
/// Throws CapExceeded when the pair space exceeds limits.max_paths.
PathSumResult pathsum_detail(const Circuit& circuit, const BitString& input,
                             const Limits& limits = {});
QuadraticRational pathsum_accept(const Circuit& circuit, const BitString& input,
                                 const Limits& limits = {});

/// Every MEASURE q becomes CNOT q -> fresh ancilla; ancillas are never constrained.
Circuit defer_measurements(const Circuit& circuit);

struct CircuitInstance {
    /// Input x is the initial register (qubit i = x[i], missing qubits 0).
    WeightedCountingProblem problem;
    BitString input;
};

/// Paths u = c1 c2 with |c1| = |c2| = branching gates; w(x, u) = Re(a_{c1} conj(a_{c2})) for
/// compatible paths, else 0. Tag REAL; exact map present only for circuits without T gates
/// (all weights rational). approx multiplies per-transition dyadic enclosures.
CircuitInstance weight_oracle_from_circuit(const Circuit& circuit, const BitString& input);

/// Exact w(x, u) of the path-pair oracle in Q(sqrt2).
QuadraticRational path_pair_weight(const Circuit& circuit, const BitString& input,
                                   const BitString& u);

/// Every labelled-in x has g(x) in [1-c, 1], every labelled-out x has g(x) in [0, c].
/// g is summed exactly when the oracle has an exact map; otherwise approximated with error
/// 2^-b <= (1/2 - c)/4 and tested against the intervals widened by 2^-b.
bool awpp_gap_check(const WeightedCountingProblem& problem,
                    const std::vector<std::pair<BitString, bool>>& samples, const BigRational& c,
                    const Limits& limits = {});

/// approx_sum at b = 3 compared against 1/2. Throws PromiseViolated for a value in (11/24, 13/24).
bool bqp_decide(const Circuit& circuit, const BitString& input, const Limits& limits = {});

}  // namespace wcount
