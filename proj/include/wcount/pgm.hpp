#pragma once

// Probabilistic graphical models over discrete variables. Partition functions
// are sums over assignment encodings; conditional queries are decided through a
// signed-weight sum.

#include "wcount/errors.hpp"
#include "wcount/oracle.hpp"

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace wcount {

/// Values of the scope variables, in scope order.
using FactorFn = std::function<BigRational(const std::vector<std::size_t>& values)>;

struct Factor {
    std::vector<std::size_t> scope;
    /// Row-major over the scope, last scope variable fastest.
    std::vector<BigRational> table;
    /// When set, entries are computed on demand and `table` is unused.
    FactorFn computed;

    static Factor computed_factor(std::vector<std::size_t> scope, FactorFn fn);

    bool is_computed() const { return static_cast<bool>(computed); }
};

struct Pgm {
    /// cardinalities[i] >= 1 is the number of values of X_i.
    std::vector<std::size_t> cardinalities;
    std::vector<Factor> factors;

    /// Throws InvariantViolation: bad cardinality or scope index, repeated scope entry,
    /// wrong table length, negative entry, or a variable outside every scope.
    void validate() const;

    std::size_t variable_count() const { return cardinalities.size(); }

    /// phi_i at a full assignment.
    BigRational factor_value(std::size_t i, const std::vector<std::size_t>& assignment) const;
    /// prod_i phi_i at a full assignment.
    BigRational weight(const std::vector<std::size_t>& assignment) const;

    /// Text form: "WCPGM", n, cardinalities, m, then per factor a scope line "s i_1 .. i_s"
    /// and a table line. '#' starts a comment. Variable indices are 0-based.
    /// Throws ParseError (with line) on malformed syntax and InvariantViolation when the
    /// parsed model breaks an invariant, such as a wrong table length.
    static Pgm parse(const std::string& text);
    /// Computed factors are written out as tables.
    std::string to_text() const;
};

/// (variable, value) pairs.
using Assignment = std::vector<std::pair<std::size_t, std::size_t>>;

struct Query {
    Assignment target;
    Assignment evidence;
    BigRational threshold;
};

/// Assignments are encoded with ceil(log2 card) bits per variable, X_0 first,
/// each field big-endian; codes >= card have weight 0.
std::uint64_t assignment_bits(const Pgm& pgm);
/// The assignment named by u, or an empty vector for a dead code.
std::vector<std::size_t> decode_assignment(const Pgm& pgm, const BitString& u);
BitString encode_assignment(const Pgm& pgm, const std::vector<std::size_t>& assignment);

/// Weight prod_i phi_i(u) on assignment codes (input ignored). Tagged NAT when every
/// table is integral, else QPOLY.
WeightedCountingProblem pgm_problem(const Pgm& pgm);

/// Z = sum over assignments of prod_i phi_i. Throws CapExceeded.
BigRational partition_function(const Pgm& pgm, const Limits& limits = {});

/// Copy with every computed factor replaced by its table.
Pgm materialize(const Pgm& pgm);

struct ClearedPgm {
    Pgm pgm;
    /// Z(original) = scale * Z(pgm).
    BigRational scale;
};

/// Multiplies every table by d, the product of the distinct reduced denominators; scale = d^-m.
ClearedPgm clear_denominators(const Pgm& pgm);

/// One factor per variable whose head (largest scope index) is that variable, and
/// every such factor sums to 1 over its head for each configuration of the rest.
bool is_bayesian_network(const Pgm& pgm);

/// Appends one indicator factor per evidence pair. Throws DomainViolation for a
/// bad variable or value.
Pgm query_bn(const Pgm& pgm, const Assignment& evidence);

/// Z(target and evidence) / Z(evidence). Throws ZeroEvidence.
BigRational conditional_probability(const Pgm& pgm, const Query& query,
                                    const Limits& limits = {});

/// Weight 0 off the evidence, -q prod phi on evidence but off target,
/// (1 - q) prod phi on both. Its sum is Z * (Pr(target, evidence) - q Pr(evidence)).
WeightedCountingProblem conditional_signed_problem(const Pgm& pgm, const Query& query);

/// Decides Pr(target | evidence) > q: first Z(evidence) > 0, then the signed sum > 0,
/// each through decide_threshold on the negated problem. Throws ZeroEvidence.
bool conditional_decide(const Pgm& pgm, const Query& query, const Limits& limits = {});

/// Propositional formula over variables x1.., negation, conjunction and disjunction.
struct Formula {
    enum class Kind { Var, Not, And, Or };
    Kind kind = Kind::Var;
    /// 1-based variable index for Var.
    std::size_t var = 1;
    std::vector<Formula> children;

    /// Syntax: x<k> (k >= 1), '!' or '~', '&', '|', parentheses; '!' binds tightest,
    /// then '&', then '|'. Throws MalformedFormula.
    static Formula parse(const std::string& text);

    /// Largest variable index N; the formula ranges over x1..xN.
    std::size_t variable_count() const;
    /// assignment[k-1] is x_k.
    bool evaluate(const std::vector<bool>& assignment) const;
    std::size_t connectives() const;
    std::string str() const;
};

/// One [1/2, 1/2] variable per propositional variable, one deterministic gate
/// variable per connective, an indicator on the output: Z = #SAT / 2^N.
Pgm majsat_to_pgm(const Formula& formula);

}  // namespace wcount
