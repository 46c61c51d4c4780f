#include "wcount/pgm.hpp"

#include <algorithm>
#include <cctype>

namespace wcount {

namespace {

class FormulaParser {
public:
    explicit FormulaParser(const std::string& text) : text_(strip_comments(text)) {}

    Formula run()
    {
        Formula f = parse_or();
        skip_space();
        if (pos_ != text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return f;
    }

private:
    static std::string strip_comments(const std::string& text)
    {
        std::string out;
        bool comment = false;
        for (char c : text) {
            if (c == '#') {
                comment = true;
            } else if (c == '\n') {
                comment = false;
            }
            out.push_back(comment ? ' ' : c);
        }
        return out;
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw MalformedFormula("formula position " + std::to_string(pos_) + ": " + what);
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Formula binary(Formula::Kind kind, Formula lhs, Formula rhs)
    {
        Formula f;
        f.kind = kind;
        f.children.push_back(std::move(lhs));
        f.children.push_back(std::move(rhs));
        return f;
    }

    Formula parse_or()
    {
        Formula f = parse_and();
        while (accept('|')) {
            f = binary(Formula::Kind::Or, std::move(f), parse_and());
        }
        return f;
    }

    Formula parse_and()
    {
        Formula f = parse_unary();
        while (accept('&')) {
            f = binary(Formula::Kind::And, std::move(f), parse_unary());
        }
        return f;
    }

    Formula parse_unary()
    {
        if (accept('!') || accept('~')) {
            Formula f;
            f.kind = Formula::Kind::Not;
            f.children.push_back(parse_unary());
            return f;
        }
        if (accept('(')) {
            Formula f = parse_or();
            if (!accept(')')) {
                fail("expected ')'");
            }
            return f;
        }
        skip_space();
        if (pos_ >= text_.size()) {
            fail("unexpected end of formula");
        }
        if (text_[pos_] != 'x') {
            fail("expected a variable x<k>");
        }
        ++pos_;
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (start == pos_ || pos_ - start > 9) {
            fail("bad variable index");
        }
        Formula f;
        f.var = std::stoul(text_.substr(start, pos_ - start));
        if (f.var == 0) {
            fail("variables are numbered from x1");
        }
        return f;
    }

    std::string text_;
    std::size_t pos_ = 0;
};

}  // namespace

Formula Formula::parse(const std::string& text) { return FormulaParser(text).run(); }

std::size_t Formula::variable_count() const
{
    if (kind == Kind::Var) {
        return var;
    }
    std::size_t n = 0;
    for (const Formula& c : children) {
        n = std::max(n, c.variable_count());
    }
    return n;
}

bool Formula::evaluate(const std::vector<bool>& assignment) const
{
    switch (kind) {
    case Kind::Var: return assignment.at(var - 1);
    case Kind::Not: return !children[0].evaluate(assignment);
    case Kind::And: return children[0].evaluate(assignment) && children[1].evaluate(assignment);
    case Kind::Or: return children[0].evaluate(assignment) || children[1].evaluate(assignment);
    }
    return false;
}

std::size_t Formula::connectives() const
{
    std::size_t n = kind == Kind::Var ? 0 : 1;
    for (const Formula& c : children) {
        n += c.connectives();
    }
    return n;
}

std::string Formula::str() const
{
    switch (kind) {
    case Kind::Var: return "x" + std::to_string(var);
    case Kind::Not: return "!" + children[0].str();
    case Kind::And: return "(" + children[0].str() + " & " + children[1].str() + ")";
    case Kind::Or: return "(" + children[0].str() + " | " + children[1].str() + ")";
    }
    return "?";
}

namespace {

// Adds the gate variables of f and returns the variable holding its value.
std::size_t add_gates(Pgm& pgm, const Formula& f)
{
    if (f.kind == Formula::Kind::Var) {
        return f.var - 1;
    }
    std::vector<std::size_t> args;
    for (const Formula& c : f.children) {
        args.push_back(add_gates(pgm, c));
    }
    // x & x names one variable twice; the scope lists it once.
    std::vector<std::size_t> scope;
    for (std::size_t v : args) {
        if (std::find(scope.begin(), scope.end(), v) == scope.end()) {
            scope.push_back(v);
        }
    }
    const std::size_t out = pgm.cardinalities.size();
    pgm.cardinalities.push_back(2);
    scope.push_back(out);

    // Deterministic table over (inputs..., out): 1 iff out equals the gate on the inputs.
    Factor gate;
    gate.scope = scope;
    const std::size_t rows = std::size_t{1} << scope.size();
    for (std::size_t r = 0; r < rows; ++r) {
        auto bit = [&](std::size_t var) {
            const auto k = static_cast<std::size_t>(
                std::find(scope.begin(), scope.end(), var) - scope.begin());
            return ((r >> (scope.size() - 1 - k)) & 1U) != 0;
        };
        bool value = false;
        switch (f.kind) {
        case Formula::Kind::Not: value = !bit(args[0]); break;
        case Formula::Kind::And: value = bit(args[0]) && bit(args[1]); break;
        case Formula::Kind::Or: value = bit(args[0]) || bit(args[1]); break;
        case Formula::Kind::Var: break;
        }
        gate.table.push_back(value == bit(out) ? 1 : 0);
    }
    pgm.factors.push_back(std::move(gate));
    return out;
}

}  // namespace

Pgm majsat_to_pgm(const Formula& formula)
{
    Pgm pgm;
    const std::size_t n = formula.variable_count();
    for (std::size_t i = 0; i < n; ++i) {
        pgm.cardinalities.push_back(2);
        Factor prior;
        prior.scope = {i};
        prior.table = {make_rational(1, 2), make_rational(1, 2)};
        pgm.factors.push_back(std::move(prior));
    }
    const std::size_t out = add_gates(pgm, formula);
    Factor indicator;
    indicator.scope = {out};
    indicator.table = {0, 1};
    pgm.factors.push_back(std::move(indicator));
    return pgm;
}

}  // namespace wcount
