#pragma once

// Decision, recovery and case-study constructions built on the summation
// kernels.

#include "wcount/enclosure.hpp"
#include "wcount/errors.hpp"
#include "wcount/oracle.hpp"
#include "wcount/summation.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wcount {

/// Decides f(x) >= threshold with one one-sided approximate sum.
///
/// Uses precision c = q(|x|) + bits(den(threshold)): c = q(|x|) + 1 for integer
/// thresholds, one more bit per denominator bit otherwise, so that a value
/// below the threshold stays below it after the upward error. Throws
/// MissingBound.
bool decide_threshold(const DecisionInstance& instance, const BitString& x,
                      const Limits& limits = {});

/// The rational with least denominator in [lo, hi] (closest to zero on ties),
/// found by the continued-fraction walk. Throws NoUniqueRational when that
/// rational needs more than q bits as a fraction.
BigRational recover_rational(const BigRational& lo, const BigRational& hi, std::uint64_t q);

/// Unbounded variant: the least-denominator rational in [lo, hi].
BigRational simplest_rational(const BigRational& lo, const BigRational& hi);

/// Exact f(x) from a single approximate sum at b = 2q(|x|)+2 followed by
/// rational recovery.
BigRational solve_bounded_output(const WeightedCountingProblem& problem, const BitString& x,
                                 const IntPolynomial& q, const Limits& limits = {});

/// w(x,u) = 1/(#u+1) if #u+1 is prime and #u < #x, else 0; path length |x|.
WeightedCountingProblem prime_reciprocal_oracle();

/// Product of all primes <= x.
BigInt primorial(std::uint64_t x);

/// pi(x) - pi(x/e) >= x / (3 ln x) for every integer x in [17, x_max],
/// with exact prime counts and certified brackets for e and ln.
bool prime_gap_check(std::uint64_t x_max);

/// Single-tape machine over {0, 1, blank}.
struct ToyMachine {
    enum class Move { Left, Right, Stay };
    static constexpr int kBlank = 2;

    struct Action {
        int write = 0;
        Move move = Move::Stay;
        int next = 0;
    };

    int states = 1;
    int start = 0;
    int halt = 0;
    /// transitions[state][symbol]; a missing entry is (write same, stay, same state).
    std::map<std::pair<int, int>, Action> transitions;

    /// Steps taken before entering the halt state, if within max_steps.
    std::optional<std::uint64_t> run(const BitString& input, std::uint64_t max_steps) const;

    /// Machine that walks right t times and halts.
    static ToyMachine halts_after(int t);
    /// Machine that scans right over its input and halts on the first blank.
    static ToyMachine scan_to_blank();
    /// Machine that never halts: sits in place.
    static ToyMachine idle_loop();
    /// Machine that never halts: writes 1 and walks right forever.
    static ToyMachine runaway();
    /// Machine that never halts: bounces between two cells.
    static ToyMachine bounce();

    /// Text form: "states S start A halt H" then lines "state symbol write move next",
    /// symbol/write in {0,1,_}, move in {L,R,S}; '#' starts a comment.
    static ToyMachine parse(const std::string& text);
};

struct HaltingInstance {
    WeightedCountingProblem problem;
    /// Input on which to evaluate the problem (the machine's tape contents).
    BitString input;
};

/// w(x, 0) = 2^-t if the machine halts after t steps on y, else 0; w(x, u) = 0
/// for u != 0. Path length 1. The approximation at precision b simulates
/// b + p(|x|) steps. No exact map is available.
HaltingInstance halting_oracle(const ToyMachine& machine, const BitString& y);

}  // namespace wcount
