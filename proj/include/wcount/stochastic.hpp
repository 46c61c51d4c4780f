#pragma once

// Two-stage stochastic optimization with independent binary events. The
// expected cost of a first-stage decision is a weighted count over scenarios.

#include "wcount/errors.hpp"
#include "wcount/oracle.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace wcount {

struct EventModel {
    /// Independent events; p_i in [0, 1].
    std::vector<BigRational> probabilities;

    /// Throws InvariantViolation for p_i outside [0, 1].
    void validate() const;
    std::size_t size() const { return probabilities.size(); }
    /// prod_i p_i^{A_i} (1 - p_i)^{1 - A_i}; A_i = scenario[i].
    BigRational scenario_probability(const BitString& scenario) const;
};

struct TwoStageProblem {
    std::size_t first_stage_bits = 0;
    EventModel events;
    /// c(x)
    std::function<BigRational(const BitString& x)> first_cost;
    /// f_A(x, y(A)) with the second-stage reaction already chosen.
    std::function<BigRational(const BitString& x, const BitString& scenario)> recourse_cost;
    std::string name = "two-stage";
};

/// Paths are scenarios A; w(x, A) = Pr(A) (c(x) + f_A(x)), so f(x) = c(x) + E[f_A(x)].
/// Throws DomainViolation when |x| differs from first_stage_bits.
WeightedCountingProblem scenario_problem(const TwoStageProblem& problem);

/// Exact expected cost. Throws CapExceeded.
BigRational expected_cost(const TwoStageProblem& problem, const BitString& x,
                          const Limits& limits = {});

/// Within 2^-b of the expected cost.
Dyadic expected_cost_approx(const TwoStageProblem& problem, const BitString& x, std::uint64_t b,
                            const Limits& limits = {});

/// expected_cost(x) <= t, decided as -f(x) >= -t with one threshold decision.
/// q bounds the encoding bits of the expected cost; throws MissingBound without it.
bool decide_cost(const TwoStageProblem& problem, const BitString& x, const BigRational& t,
                 std::optional<std::uint64_t> q, const Limits& limits = {});

struct Solution {
    BitString x;
    BigRational cost;
};

/// Exhaustive argmin over {0,1}^first_stage_bits; ties go to the lexicographically
/// smallest x. Throws CapExceeded above 16 first-stage bits.
Solution best_solution(const TwoStageProblem& problem, const Limits& limits = {});

/// Item i: buy now at c_i, or pay r_i if event i (probability p_i) occurs and the
/// item was not bought.
struct PreselectionItem {
    BigRational cost;
    BigRational penalty;
    BigRational probability;
};

/// x_i = 1 buys item i. Event i is the demand for item i.
TwoStageProblem preselection(const std::vector<PreselectionItem>& items);

/// Encoding-bit bound on every expected cost of the preselection instance.
std::uint64_t preselection_output_bits(const std::vector<PreselectionItem>& items);

/// Text form: "WC2SSP", item count m, then m lines "c_i r_i p_i". '#' starts a comment.
std::vector<PreselectionItem> parse_preselection(const std::string& text);
std::string preselection_text(const std::vector<PreselectionItem>& items);

}  // namespace wcount
