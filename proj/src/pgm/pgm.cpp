#include "wcount/pgm.hpp"

#include "wcount/core.hpp"
#include "wcount/summation.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace wcount {

namespace {

std::uint64_t table_size(const Pgm& pgm, const std::vector<std::size_t>& scope)
{
    std::uint64_t n = 1;
    for (std::size_t v : scope) {
        n *= pgm.cardinalities[v];
    }
    return n;
}

// Scope values of table row `index` (last scope variable fastest).
std::vector<std::size_t> row_values(const Pgm& pgm, const std::vector<std::size_t>& scope,
                                    std::uint64_t index)
{
    std::vector<std::size_t> values(scope.size());
    for (std::size_t k = scope.size(); k-- > 0;) {
        const std::size_t card = pgm.cardinalities[scope[k]];
        values[k] = static_cast<std::size_t>(index % card);
        index /= card;
    }
    return values;
}

std::uint64_t row_index(const Pgm& pgm, const std::vector<std::size_t>& scope,
                        const std::vector<std::size_t>& values)
{
    std::uint64_t index = 0;
    for (std::size_t k = 0; k < scope.size(); ++k) {
        index = index * pgm.cardinalities[scope[k]] + values[k];
    }
    return index;
}

BigRational entry(const Pgm& pgm, const Factor& f, const std::vector<std::size_t>& values)
{
    if (f.is_computed()) {
        BigRational v = f.computed(values);
        if (v < 0) {
            throw InvariantViolation("computed factor returned a negative value");
        }
        return v;
    }
    return f.table[row_index(pgm, f.scope, values)];
}

bool matches(const std::vector<std::size_t>& assignment, const Assignment& partial)
{
    return std::all_of(partial.begin(), partial.end(),
                       [&](const auto& p) { return assignment[p.first] == p.second; });
}

std::uint64_t field_bits(std::size_t card) { return ceil_log2(card); }

void check_assignment(const Pgm& pgm, const Assignment& a)
{
    for (const auto& [var, value] : a) {
        if (var >= pgm.variable_count() || value >= pgm.cardinalities[var]) {
            throw DomainViolation("assignment X" + std::to_string(var) + "=" +
                                  std::to_string(value) + " is out of range");
        }
    }
}

// Product of the distinct reduced denominators of every table entry.
BigInt denominator_product(const Pgm& pgm)
{
    std::set<BigInt> dens;
    for (const Factor& f : pgm.factors) {
        for (const BigRational& v : f.table) {
            if (v.get_den() != 1) {
                dens.insert(v.get_den());
            }
        }
    }
    BigInt d = 1;
    for (const BigInt& r : dens) {
        d *= r;
    }
    return d;
}

// Bit bound on coefficient-weighted sums: every path weight is c * prod phi with
// |c| <= coeff and den(c) | coeff_den, so den(f) | coeff_den * d^m and
// |f| <= coeff * #assignments * prod_i max phi_i.
std::uint64_t weighted_output_bits(const Pgm& tabled, const BigRational& coeff,
                                   const BigInt& coeff_den)
{
    BigInt den = coeff_den;
    const BigInt d = denominator_product(tabled);
    for (std::size_t i = 0; i < tabled.factors.size(); ++i) {
        den *= d;
    }
    BigRational magnitude = coeff;
    for (std::size_t c : tabled.cardinalities) {
        magnitude *= static_cast<unsigned long>(c);
    }
    for (const Factor& f : tabled.factors) {
        BigRational top = 0;
        for (const BigRational& v : f.table) {
            top = std::max(top, v);
        }
        magnitude *= top;
    }
    const BigInt num_bound = ceil(magnitude * den);
    return bit_length(num_bound) + bit_length(den);
}

// f > 0 decided as not(-f >= 0) with a single threshold decision.
bool sum_positive(const WeightedCountingProblem& problem, std::uint64_t bits, const Limits& limits)
{
    DecisionInstance inst;
    inst.problem = negated(problem);
    inst.threshold = 0;
    inst.output_bit_bound = IntPolynomial::constant(bits);
    return !decide_threshold(inst, BitString{}, limits);
}

}  // namespace

Factor Factor::computed_factor(std::vector<std::size_t> scope, FactorFn fn)
{
    Factor f;
    f.scope = std::move(scope);
    f.computed = std::move(fn);
    return f;
}

void Pgm::validate() const
{
    for (std::size_t i = 0; i < cardinalities.size(); ++i) {
        if (cardinalities[i] == 0) {
            throw InvariantViolation("variable " + std::to_string(i) + " has cardinality 0");
        }
    }
    std::vector<bool> covered(cardinalities.size(), false);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const Factor& f = factors[i];
        std::set<std::size_t> seen;
        for (std::size_t v : f.scope) {
            if (v >= cardinalities.size()) {
                throw InvariantViolation("factor " + std::to_string(i) + " names variable " +
                                         std::to_string(v) + " out of range");
            }
            if (!seen.insert(v).second) {
                throw InvariantViolation("factor " + std::to_string(i) + " repeats variable " +
                                         std::to_string(v));
            }
            covered[v] = true;
        }
        if (f.is_computed()) {
            continue;
        }
        if (f.table.size() != table_size(*this, f.scope)) {
            throw InvariantViolation("factor " + std::to_string(i) + " has " +
                                     std::to_string(f.table.size()) + " entries, expected " +
                                     std::to_string(table_size(*this, f.scope)));
        }
        for (const BigRational& v : f.table) {
            if (v < 0) {
                throw InvariantViolation("factor " + std::to_string(i) + " has a negative entry");
            }
        }
    }
    for (std::size_t v = 0; v < covered.size(); ++v) {
        if (!covered[v]) {
            throw InvariantViolation("variable " + std::to_string(v) + " is in no factor scope");
        }
    }
}

BigRational Pgm::factor_value(std::size_t i, const std::vector<std::size_t>& assignment) const
{
    const Factor& f = factors[i];
    std::vector<std::size_t> values(f.scope.size());
    for (std::size_t k = 0; k < f.scope.size(); ++k) {
        values[k] = assignment[f.scope[k]];
    }
    return entry(*this, f, values);
}

BigRational Pgm::weight(const std::vector<std::size_t>& assignment) const
{
    BigRational w = 1;
    for (std::size_t i = 0; i < factors.size() && w != 0; ++i) {
        w *= factor_value(i, assignment);
    }
    return w;
}

std::uint64_t assignment_bits(const Pgm& pgm)
{
    std::uint64_t bits = 0;
    for (std::size_t c : pgm.cardinalities) {
        bits += field_bits(c);
    }
    return bits;
}

std::vector<std::size_t> decode_assignment(const Pgm& pgm, const BitString& u)
{
    if (u.size() != assignment_bits(pgm)) {
        throw DomainViolation("assignment code needs " + std::to_string(assignment_bits(pgm)) +
                              " bits");
    }
    std::vector<std::size_t> a(pgm.variable_count());
    std::size_t pos = 0;
    for (std::size_t v = 0; v < a.size(); ++v) {
        const std::uint64_t width = field_bits(pgm.cardinalities[v]);
        const std::uint64_t value = u.slice(pos, width).to_uint64();
        if (value >= pgm.cardinalities[v]) {
            return {};
        }
        a[v] = static_cast<std::size_t>(value);
        pos += width;
    }
    return a;
}

BitString encode_assignment(const Pgm& pgm, const std::vector<std::size_t>& assignment)
{
    BitString out;
    for (std::size_t v = 0; v < pgm.variable_count(); ++v) {
        out = out + BitString::from_uint(assignment.at(v), field_bits(pgm.cardinalities[v]));
    }
    return out;
}

WeightedCountingProblem pgm_problem(const Pgm& pgm)
{
    pgm.validate();
    bool integral = true;
    for (const Factor& f : pgm.factors) {
        integral = integral && !f.is_computed() &&
                   std::all_of(f.table.begin(), f.table.end(),
                               [](const BigRational& v) { return v.get_den() == 1; });
    }
    WeightedCountingProblem problem;
    problem.name = "pgm-partition";
    problem.path_length = IntPolynomial::constant(assignment_bits(pgm));
    problem.oracle = WeightOracle::from_exact(
        [pgm](const BitString&, const BitString& u) -> BigRational {
            const auto a = decode_assignment(pgm, u);
            return a.empty() && pgm.variable_count() > 0 ? BigRational(0) : pgm.weight(a);
        },
        integral ? RangeTag::NAT : RangeTag::QPOLY);
    return problem;
}

BigRational partition_function(const Pgm& pgm, const Limits& limits)
{
    return exact_sum(pgm_problem(pgm), BitString{}, limits);
}

Pgm materialize(const Pgm& pgm)
{
    pgm.validate();
    Pgm out = pgm;
    for (Factor& f : out.factors) {
        if (!f.is_computed()) {
            continue;
        }
        const std::uint64_t rows = table_size(pgm, f.scope);
        f.table.clear();
        f.table.reserve(rows);
        for (std::uint64_t r = 0; r < rows; ++r) {
            f.table.push_back(entry(pgm, f, row_values(pgm, f.scope, r)));
        }
        f.computed = nullptr;
    }
    return out;
}

ClearedPgm clear_denominators(const Pgm& pgm)
{
    ClearedPgm out{materialize(pgm), 1};
    const BigInt d = denominator_product(out.pgm);
    for (Factor& f : out.pgm.factors) {
        for (BigRational& v : f.table) {
            v *= d;
        }
        out.scale /= d;
    }
    return out;
}

bool is_bayesian_network(const Pgm& pgm)
{
    try {
        pgm.validate();
    } catch (const InvariantViolation&) {
        return false;
    }
    if (pgm.factors.size() != pgm.variable_count()) {
        return false;
    }
    std::vector<bool> has_factor(pgm.variable_count(), false);
    for (std::size_t i = 0; i < pgm.factors.size(); ++i) {
        const Factor& f = pgm.factors[i];
        if (f.scope.empty()) {
            return false;
        }
        const auto head_pos = static_cast<std::size_t>(
            std::max_element(f.scope.begin(), f.scope.end()) - f.scope.begin());
        const std::size_t head = f.scope[head_pos];
        if (has_factor[head]) {
            return false;
        }
        has_factor[head] = true;

        // Sum over the head for every configuration of the other scope variables.
        const std::uint64_t rows = table_size(pgm, f.scope);
        for (std::uint64_t r = 0; r < rows; ++r) {
            std::vector<std::size_t> values = row_values(pgm, f.scope, r);
            if (values[head_pos] != 0) {
                continue;
            }
            BigRational total = 0;
            for (std::size_t h = 0; h < pgm.cardinalities[head]; ++h) {
                values[head_pos] = h;
                total += entry(pgm, f, values);
            }
            if (total != 1) {
                return false;
            }
        }
    }
    return true;
}

Pgm query_bn(const Pgm& pgm, const Assignment& evidence)
{
    check_assignment(pgm, evidence);
    Pgm out = pgm;
    for (const auto& [var, value] : evidence) {
        Factor psi;
        psi.scope = {var};
        psi.table.assign(pgm.cardinalities[var], 0);
        psi.table[value] = 1;
        out.factors.push_back(std::move(psi));
    }
    return out;
}

BigRational conditional_probability(const Pgm& pgm, const Query& query, const Limits& limits)
{
    check_assignment(pgm, query.target);
    const BigRational ze = partition_function(query_bn(pgm, query.evidence), limits);
    if (ze == 0) {
        throw ZeroEvidence("the evidence has probability 0");
    }
    Assignment both = query.target;
    both.insert(both.end(), query.evidence.begin(), query.evidence.end());
    return partition_function(query_bn(pgm, both), limits) / ze;
}

WeightedCountingProblem conditional_signed_problem(const Pgm& pgm, const Query& query)
{
    pgm.validate();
    check_assignment(pgm, query.target);
    check_assignment(pgm, query.evidence);
    WeightedCountingProblem problem;
    problem.name = "pgm-conditional-signed";
    problem.path_length = IntPolynomial::constant(assignment_bits(pgm));
    problem.oracle = WeightOracle::from_exact(
        [pgm, query](const BitString&, const BitString& u) -> BigRational {
            const auto a = decode_assignment(pgm, u);
            if ((a.empty() && pgm.variable_count() > 0) || !matches(a, query.evidence)) {
                return 0;
            }
            const BigRational w = pgm.weight(a);
            return matches(a, query.target) ? BigRational((1 - query.threshold) * w)
                                            : BigRational(-query.threshold * w);
        },
        RangeTag::QPOLY);
    return problem;
}

bool conditional_decide(const Pgm& pgm, const Query& query, const Limits& limits)
{
    const Pgm tabled = materialize(pgm);
    const Pgm evidence_bn = query_bn(tabled, query.evidence);
    if (!sum_positive(pgm_problem(evidence_bn), weighted_output_bits(evidence_bn, 1, 1), limits)) {
        throw ZeroEvidence("the evidence has probability 0");
    }
    const BigRational& q = query.threshold;
    const BigRational coeff = std::max(abs(q), abs(BigRational(1 - q)));
    return sum_positive(conditional_signed_problem(tabled, query),
                        weighted_output_bits(tabled, coeff, q.get_den()), limits);
}

Pgm Pgm::parse(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    // Non-empty lines with comments stripped.
    auto next = [&](const char* what) -> std::vector<std::string> {
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
                return tok;
            }
        }
        throw ParseError(line_no, std::string("unexpected end of file, expected ") + what);
    };
    auto natural = [&](const std::string& tok) -> std::size_t {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(tok, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (tok.empty() || tok[0] == '-' || pos != tok.size()) {
            throw ParseError(line_no, "expected a natural number, got '" + tok + "'");
        }
        return v;
    };
    auto single = [&](const char* what) {
        const auto tok = next(what);
        if (tok.size() != 1) {
            throw ParseError(line_no, std::string("expected a single ") + what);
        }
        return natural(tok[0]);
    };

    if (const auto magic = next("'WCPGM'"); magic.size() != 1 || magic[0] != "WCPGM") {
        throw ParseError(line_no, "expected 'WCPGM'");
    }
    Pgm pgm;
    const std::size_t n = single("variable count");
    const auto cards = next("cardinalities");
    if (cards.size() != n) {
        throw ParseError(line_no, "expected " + std::to_string(n) + " cardinalities");
    }
    for (const auto& c : cards) {
        const std::size_t v = natural(c);
        if (v == 0) {
            throw ParseError(line_no, "cardinality must be at least 1");
        }
        pgm.cardinalities.push_back(v);
    }
    const std::size_t m = single("factor count");
    for (std::size_t i = 0; i < m; ++i) {
        const auto scope = next("scope line");
        if (natural(scope[0]) != scope.size() - 1) {
            throw ParseError(line_no, "scope size does not match the listed variables");
        }
        Factor f;
        for (std::size_t k = 1; k < scope.size(); ++k) {
            const std::size_t v = natural(scope[k]);
            if (v >= n) {
                throw ParseError(line_no, "variable " + scope[k] + " out of range");
            }
            if (std::find(f.scope.begin(), f.scope.end(), v) != f.scope.end()) {
                throw ParseError(line_no, "variable " + scope[k] + " repeated in scope");
            }
            f.scope.push_back(v);
        }
        const auto table = next("table line");
        if (table.size() != table_size(pgm, f.scope)) {
            throw InvariantViolation("line " + std::to_string(line_no) + ": factor " +
                                     std::to_string(i) + " needs " +
                                     std::to_string(table_size(pgm, f.scope)) + " table entries, got " +
                                     std::to_string(table.size()));
        }
        for (const auto& t : table) {
            BigRational v;
            try {
                v = parse_rational(t);
            } catch (const std::exception&) {
                throw ParseError(line_no, "bad rational '" + t + "'");
            }
            if (v < 0) {
                throw InvariantViolation("line " + std::to_string(line_no) + ": factor " +
                                         std::to_string(i) + " has negative entry " + t);
            }
            f.table.push_back(v);
        }
        pgm.factors.push_back(std::move(f));
    }
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        if (line.find_first_not_of(" \t\r") != std::string::npos) {
            throw ParseError(line_no, "content after the last factor");
        }
    }
    pgm.validate();
    return pgm;
}

std::string Pgm::to_text() const
{
    const Pgm tabled = materialize(*this);
    std::ostringstream os;
    os << "WCPGM\n" << cardinalities.size() << "\n";
    for (std::size_t i = 0; i < cardinalities.size(); ++i) {
        os << (i ? " " : "") << cardinalities[i];
    }
    os << "\n" << factors.size() << "\n";
    for (const Factor& f : tabled.factors) {
        os << f.scope.size();
        for (std::size_t v : f.scope) {
            os << " " << v;
        }
        os << "\n";
        for (std::size_t k = 0; k < f.table.size(); ++k) {
            os << (k ? " " : "") << to_string(f.table[k]);
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace wcount
