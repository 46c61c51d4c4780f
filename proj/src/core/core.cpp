#include "wcount/core.hpp"

#include <sstream>

namespace wcount {

bool decide_threshold(const DecisionInstance& instance, const BitString& x, const Limits& limits)
{
    if (!instance.output_bit_bound) {
        throw MissingBound("decide_threshold needs an output bit bound");
    }
    const auto q = (*instance.output_bit_bound)(x.size());
    const auto c = q + bit_length(instance.threshold.get_den());
    Dyadic above = approx_sum_above(instance.problem, x, c, limits);
    // Compare sum_u v'(x,u) against t * 2^{p+c+1} without leaving the integers.
    BigInt lhs = above.mantissa() * instance.threshold.get_den();
    BigInt rhs = instance.threshold.get_num() * pow2(above.exponent());
    return lhs >= rhs;
}

BigRational simplest_rational(const BigRational& lo, const BigRational& hi)
{
    if (lo > hi) {
        throw std::invalid_argument("simplest_rational needs lo <= hi");
    }
    if (lo <= 0 && hi >= 0) {
        return 0;
    }
    if (hi < 0) {
        return -simplest_rational(-hi, -lo);
    }
    BigInt whole = floor(lo);
    if (lo == whole) {
        return lo;
    }
    if (whole + 1 <= hi) {
        return BigRational(whole + 1);
    }
    // lo and hi share the integer part; continue on the reciprocal of the fractional parts.
    BigRational inner = simplest_rational(1 / (hi - whole), 1 / (lo - whole));
    return BigRational(whole) + 1 / inner;
}

BigRational recover_rational(const BigRational& lo, const BigRational& hi, std::uint64_t q)
{
    BigRational r = simplest_rational(lo, hi);
    if (encoding_bits(r) > q) {
        throw NoUniqueRational("least-denominator rational " + to_string(r) + " in [" +
                               to_string(lo) + ", " + to_string(hi) + "] needs " +
                               std::to_string(encoding_bits(r)) + " > " + std::to_string(q) +
                               " bits");
    }
    return r;
}

BigRational solve_bounded_output(const WeightedCountingProblem& problem, const BitString& x,
                                 const IntPolynomial& q, const Limits& limits)
{
    const auto qn = q(x.size());
    const auto b = 2 * qn + 2;
    BigRational centre = approx_sum(problem, x, b, limits).to_rational();
    BigRational radius = make_rational(1, pow2(b));
    return recover_rational(centre - radius, centre + radius, qn);
}

namespace {

bool is_prime(const BigInt& n)
{
    if (n < 2) {
        return false;
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::vector<bool> sieve(std::uint64_t n)
{
    std::vector<bool> prime(n + 1, true);
    prime[0] = false;
    if (n >= 1) {
        prime[1] = false;
    }
    for (std::uint64_t i = 2; i * i <= n; ++i) {
        if (prime[i]) {
            for (std::uint64_t j = i * i; j <= n; j += i) {
                prime[j] = false;
            }
        }
    }
    return prime;
}

}  // namespace

WeightedCountingProblem prime_reciprocal_oracle()
{
    WeightedCountingProblem problem;
    problem.name = "prime-reciprocal";
    problem.path_length = IntPolynomial::identity();
    problem.oracle = WeightOracle::from_exact(
        [](const BitString& x, const BitString& u) -> BigRational {
            BigInt k = u.to_number();
            if (k < x.to_number() && is_prime(k + 1)) {
                return make_rational(1, k + 1);
            }
            return 0;
        },
        RangeTag::QPOLY, 0);
    return problem;
}

BigInt primorial(std::uint64_t x)
{
    BigInt r;
    mpz_primorial_ui(r.get_mpz_t(), x);
    return r;
}

bool prime_gap_check(std::uint64_t x_max)
{
    if (x_max < 17) {
        throw PreconditionViolated("prime_gap_check needs x_max >= 17");
    }
    const auto prime = sieve(x_max);
    std::vector<std::uint64_t> pi(x_max + 1, 0);
    for (std::uint64_t i = 1; i <= x_max; ++i) {
        pi[i] = pi[i - 1] + (prime[i] ? 1 : 0);
    }

    for (std::uint64_t x = 17; x <= x_max; ++x) {
        for (std::uint64_t bits = 64;; bits *= 2) {
            if (bits > 4096) {
                throw Error("prime_gap_check: comparison undecided at x = " + std::to_string(x));
            }
            const Bracket e = e_bracket(bits);
            // floor(x/e) is decided once both ends of the bracket agree.
            const BigInt cut_lo = floor(BigRational(BigRational(x) / e.hi));
            const BigInt cut_hi = floor(BigRational(BigRational(x) / e.lo));
            if (cut_lo != cut_hi) {
                continue;
            }
            const auto count = pi[x] - pi[cut_lo.get_ui()];
            const Bracket ln = ln_bracket(BigInt(static_cast<unsigned long>(x)), bits);
            const BigRational bound_lo = BigRational(x) / (3 * ln.hi);
            const BigRational bound_hi = BigRational(x) / (3 * ln.lo);
            const BigRational have(static_cast<unsigned long>(count));
            if (have >= bound_hi) {
                break;
            }
            if (have < bound_lo) {
                return false;
            }
        }
    }
    return true;
}

std::optional<std::uint64_t> ToyMachine::run(const BitString& input, std::uint64_t max_steps) const
{
    // Tape cells indexed from the input's first bit; blanks elsewhere.
    std::map<std::int64_t, int> tape;
    for (std::size_t i = 0; i < input.size(); ++i) {
        tape[static_cast<std::int64_t>(i)] = input[i] ? 1 : 0;
    }
    std::int64_t head = 0;
    int state = start;
    for (std::uint64_t step = 0;; ++step) {
        if (state == halt) {
            return step;
        }
        if (step == max_steps) {
            return std::nullopt;
        }
        auto cell = tape.find(head);
        const int symbol = cell == tape.end() ? kBlank : cell->second;
        auto it = transitions.find({state, symbol});
        if (it == transitions.end()) {
            continue;  // implicit self-loop
        }
        const Action& a = it->second;
        tape[head] = a.write;
        if (a.move == Move::Left) {
            --head;
        } else if (a.move == Move::Right) {
            ++head;
        }
        state = a.next;
    }
}

ToyMachine ToyMachine::halts_after(int t)
{
    ToyMachine m;
    m.states = t + 1;
    m.start = 0;
    m.halt = t;
    for (int s = 0; s < t; ++s) {
        for (int sym = 0; sym <= kBlank; ++sym) {
            m.transitions[{s, sym}] = {sym, Move::Right, s + 1};
        }
    }
    return m;
}

ToyMachine ToyMachine::scan_to_blank()
{
    ToyMachine m;
    m.states = 2;
    m.start = 0;
    m.halt = 1;
    m.transitions[{0, 0}] = {0, Move::Right, 0};
    m.transitions[{0, 1}] = {1, Move::Right, 0};
    m.transitions[{0, kBlank}] = {kBlank, Move::Stay, 1};
    return m;
}

ToyMachine ToyMachine::idle_loop()
{
    ToyMachine m;
    m.states = 2;
    m.start = 0;
    m.halt = 1;
    return m;
}

ToyMachine ToyMachine::runaway()
{
    ToyMachine m;
    m.states = 2;
    m.start = 0;
    m.halt = 1;
    for (int sym = 0; sym <= kBlank; ++sym) {
        m.transitions[{0, sym}] = {1, Move::Right, 0};
    }
    return m;
}

ToyMachine ToyMachine::bounce()
{
    ToyMachine m;
    m.states = 3;
    m.start = 0;
    m.halt = 2;
    for (int sym = 0; sym <= kBlank; ++sym) {
        m.transitions[{0, sym}] = {sym, Move::Right, 1};
        m.transitions[{1, sym}] = {sym, Move::Left, 0};
    }
    return m;
}

ToyMachine ToyMachine::parse(const std::string& text)
{
    auto symbol = [](const std::string& tok) {
        if (tok == "0") {
            return 0;
        }
        if (tok == "1") {
            return 1;
        }
        if (tok == "_") {
            return kBlank;
        }
        throw std::invalid_argument("bad tape symbol '" + tok + "'");
    };
    std::istringstream in(text);
    std::string line;
    ToyMachine m;
    bool header = false;
    std::size_t line_no = 0;
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
        if (tok.empty()) {
            continue;
        }
        try {
            if (!header) {
                if (tok.size() != 6 || tok[0] != "states" || tok[2] != "start" || tok[4] != "halt") {
                    throw std::invalid_argument("expected 'states S start A halt H'");
                }
                m.states = std::stoi(tok[1]);
                m.start = std::stoi(tok[3]);
                m.halt = std::stoi(tok[5]);
                header = true;
                continue;
            }
            if (tok.size() != 5) {
                throw std::invalid_argument("expected 'state symbol write move next'");
            }
            Action a;
            a.write = symbol(tok[2]);
            if (tok[3] == "L") {
                a.move = Move::Left;
            } else if (tok[3] == "R") {
                a.move = Move::Right;
            } else if (tok[3] == "S") {
                a.move = Move::Stay;
            } else {
                throw std::invalid_argument("move must be L, R or S");
            }
            a.next = std::stoi(tok[4]);
            m.transitions[{std::stoi(tok[0]), symbol(tok[1])}] = a;
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& ex) {
            throw ParseError(line_no, ex.what());
        }
    }
    if (!header) {
        throw ParseError(line_no, "missing machine header");
    }
    auto valid_state = [&](int s) { return s >= 0 && s < m.states; };
    if (m.states < 1 || !valid_state(m.start) || !valid_state(m.halt)) {
        throw InvariantViolation("machine start/halt states out of range");
    }
    for (const auto& [key, action] : m.transitions) {
        if (!valid_state(key.first) || !valid_state(action.next)) {
            throw InvariantViolation("transition names a state out of range");
        }
    }
    return m;
}

HaltingInstance halting_oracle(const ToyMachine& machine, const BitString& y)
{
    const IntPolynomial path = IntPolynomial::constant(1);
    WeightedCountingProblem problem;
    problem.name = "halting";
    problem.path_length = path;
    problem.oracle.tag = RangeTag::REAL;
    problem.oracle.magnitude_log2 = 0;
    problem.oracle.approx = [machine, path](const BitString& x, const BitString& u,
                                            std::uint64_t b) -> BigInt {
        if (!u.is_zero()) {
            return 0;
        }
        auto t = machine.run(x, b + path(x.size()));
        if (!t || *t > b) {
            return 0;
        }
        return pow2(b - *t);
    };
    return {std::move(problem), y};
}

}  // namespace wcount
