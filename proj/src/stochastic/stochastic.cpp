#include "wcount/stochastic.hpp"

#include "wcount/core.hpp"
#include "wcount/summation.hpp"

#include <sstream>

namespace wcount {

namespace {

constexpr std::size_t kMaxFirstStageBits = 16;

void check_decision(const TwoStageProblem& problem, const BitString& x)
{
    if (x.size() != problem.first_stage_bits) {
        throw DomainViolation("first-stage decision needs " +
                              std::to_string(problem.first_stage_bits) + " bits, got " +
                              std::to_string(x.size()));
    }
}

}  // namespace

void EventModel::validate() const
{
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        if (probabilities[i] < 0 || probabilities[i] > 1) {
            throw InvariantViolation("event " + std::to_string(i) + " has probability " +
                                     to_string(probabilities[i]));
        }
    }
}

BigRational EventModel::scenario_probability(const BitString& scenario) const
{
    if (scenario.size() != probabilities.size()) {
        throw DomainViolation("scenario needs " + std::to_string(probabilities.size()) + " bits");
    }
    BigRational p = 1;
    for (std::size_t i = 0; i < probabilities.size() && p != 0; ++i) {
        p *= scenario[i] ? probabilities[i] : BigRational(1 - probabilities[i]);
    }
    return p;
}

WeightedCountingProblem scenario_problem(const TwoStageProblem& problem)
{
    problem.events.validate();
    WeightedCountingProblem out;
    out.name = problem.name + "-scenarios";
    out.path_length = IntPolynomial::constant(problem.events.size());
    out.oracle = WeightOracle::from_exact(
        [problem](const BitString& x, const BitString& scenario) -> BigRational {
            check_decision(problem, x);
            const BigRational p = problem.events.scenario_probability(scenario);
            if (p == 0) {
                return 0;
            }
            return p * (problem.first_cost(x) + problem.recourse_cost(x, scenario));
        },
        RangeTag::QPOLY);
    return out;
}

BigRational expected_cost(const TwoStageProblem& problem, const BitString& x, const Limits& limits)
{
    check_decision(problem, x);
    return exact_sum(scenario_problem(problem), x, limits);
}

Dyadic expected_cost_approx(const TwoStageProblem& problem, const BitString& x, std::uint64_t b,
                            const Limits& limits)
{
    check_decision(problem, x);
    return approx_sum(scenario_problem(problem), x, b, limits);
}

bool decide_cost(const TwoStageProblem& problem, const BitString& x, const BigRational& t,
                 std::optional<std::uint64_t> q, const Limits& limits)
{
    if (!q) {
        throw MissingBound("decide_cost needs a bound on the expected-cost encoding");
    }
    check_decision(problem, x);
    DecisionInstance inst;
    inst.problem = negated(scenario_problem(problem));
    inst.threshold = -t;
    inst.output_bit_bound = IntPolynomial::constant(*q);
    return decide_threshold(inst, x, limits);
}

Solution best_solution(const TwoStageProblem& problem, const Limits& limits)
{
    if (problem.first_stage_bits > kMaxFirstStageBits) {
        throw CapExceeded("best_solution enumerates at most 2^" +
                          std::to_string(kMaxFirstStageBits) + " first-stage decisions");
    }
    std::optional<Solution> best;
    // Increasing #x is lexicographic order; a strict improvement is needed to move.
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << problem.first_stage_bits); ++v) {
        const BitString x = BitString::from_uint(v, problem.first_stage_bits);
        BigRational cost = expected_cost(problem, x, limits);
        if (!best || cost < best->cost) {
            best = Solution{x, std::move(cost)};
        }
    }
    return *best;
}

TwoStageProblem preselection(const std::vector<PreselectionItem>& items)
{
    TwoStageProblem p;
    p.name = "preselection";
    p.first_stage_bits = items.size();
    for (const auto& item : items) {
        p.events.probabilities.push_back(item.probability);
    }
    p.events.validate();
    p.first_cost = [items](const BitString& x) {
        BigRational c = 0;
        for (std::size_t i = 0; i < items.size(); ++i) {
            c += x[i] ? items[i].cost : BigRational(0);
        }
        return c;
    };
    p.recourse_cost = [items](const BitString& x, const BitString& scenario) {
        BigRational r = 0;
        for (std::size_t i = 0; i < items.size(); ++i) {
            r += (!x[i] && scenario[i]) ? items[i].penalty : BigRational(0);
        }
        return r;
    };
    return p;
}

std::uint64_t preselection_output_bits(const std::vector<PreselectionItem>& items)
{
    // Every expected cost is sum over i of c_i or p_i r_i: den | prod den(c_i) den(p_i r_i),
    // |value| <= sum |c_i| + |p_i r_i|.
    BigInt den = 1;
    BigRational magnitude = 0;
    for (const auto& item : items) {
        const BigRational pr = item.probability * item.penalty;
        den *= item.cost.get_den();
        den *= pr.get_den();
        magnitude += abs(item.cost) + abs(pr);
    }
    return bit_length(ceil(magnitude * den)) + bit_length(den);
}

std::vector<PreselectionItem> parse_preselection(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> row_lines;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) {
            tok.push_back(t);
        }
        if (!tok.empty()) {
            rows.push_back(std::move(tok));
            row_lines.push_back(line_no);
        }
    }
    if (rows.empty() || rows[0].size() != 1 || rows[0][0] != "WC2SSP") {
        throw ParseError(row_lines.empty() ? 1 : row_lines[0], "expected 'WC2SSP'");
    }
    if (rows.size() < 2 || rows[1].size() != 1) {
        throw ParseError(rows.size() < 2 ? line_no : row_lines[1], "expected the item count");
    }
    std::size_t m = 0;
    {
        std::size_t pos = 0;
        try {
            m = std::stoul(rows[1][0], &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != rows[1][0].size() || rows[1][0][0] == '-') {
            throw ParseError(row_lines[1], "bad item count '" + rows[1][0] + "'");
        }
    }
    if (rows.size() - 2 != m) {
        throw ParseError(rows.size() - 2 < m ? line_no : row_lines[2 + m],
                         "expected " + std::to_string(m) + " item lines");
    }
    std::vector<PreselectionItem> items;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& row = rows[2 + i];
        const std::size_t ln = row_lines[2 + i];
        if (row.size() != 3) {
            throw ParseError(ln, "expected 'c r p'");
        }
        BigRational v[3];
        for (int k = 0; k < 3; ++k) {
            try {
                v[k] = parse_rational(row[static_cast<std::size_t>(k)]);
            } catch (const std::exception&) {
                throw ParseError(ln, "bad rational '" + row[static_cast<std::size_t>(k)] + "'");
            }
        }
        if (v[2] < 0 || v[2] > 1) {
            throw ParseError(ln, "probability outside [0, 1]");
        }
        items.push_back({v[0], v[1], v[2]});
    }
    return items;
}

std::string preselection_text(const std::vector<PreselectionItem>& items)
{
    std::ostringstream os;
    os << "WC2SSP\n" << items.size() << "\n";
    for (const auto& item : items) {
        os << to_string(item.cost) << " " << to_string(item.penalty) << " "
           << to_string(item.probability) << "\n";
    }
    return os.str();
}

}  // namespace wcount
