#include "wcount/newman.hpp"

#include "wcount/closure.hpp"
#include "wcount/parallel.hpp"
#include "wcount/summation.hpp"

#include <map>
#include <mutex>

namespace wcount {

namespace {

constexpr std::uint64_t kNodeBits = 128;

std::uint64_t exact_sqrt(std::uint64_t m)
{
    BigInt root;
    mpz_sqrt(root.get_mpz_t(), BigInt(static_cast<unsigned long>(m)).get_mpz_t());
    const auto s = root.get_ui();
    if (s * s != m) {
        throw PreconditionViolated("Newman degree " + std::to_string(m) + " is not a perfect square");
    }
    return s;
}

RationalPolynomial multiply(const RationalPolynomial& a, const RationalPolynomial& b)
{
    RationalPolynomial out;
    out.coefficients.assign(a.coefficients.size() + b.coefficients.size() - 1, 0);
    for (std::size_t i = 0; i < a.coefficients.size(); ++i) {
        for (std::size_t j = 0; j < b.coefficients.size(); ++j) {
            out.coefficients[i + j] += a.coefficients[i] * b.coefficients[j];
        }
    }
    return out;
}

const RationalFunctionPair& cached_pair(std::uint64_t m)
{
    static std::mutex mutex;
    static std::map<std::uint64_t, RationalFunctionPair> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(m);
    if (it == cache.end()) {
        it = cache.emplace(m, newman_rational(m)).first;
    }
    return it->second;
}

WeightedCountingProblem single_value(const BigRational& v, const std::string& name)
{
    WeightedCountingProblem problem;
    problem.name = name;
    problem.path_length = IntPolynomial{};
    problem.oracle = WeightOracle::from_exact(
        [v](const BitString&, const BitString&) { return v; }, RangeTag::QPOLY);
    return problem;
}

// Per-call quantities: f_i, Q_i = q(f_i/c), N_i = c r(f_i/c) - f_i Q_i (so d_i = N_i / Q_i).
struct Flattened {
    BigRational f;
    BigRational q;
    BigRational n;
};

struct Prepared {
    std::vector<Flattened> calls;
    std::uint64_t p = 0;
};

Prepared prepare(const GapInstance& inst, const BitString& x, const Limits& limits)
{
    if (inst.problems.empty()) {
        throw EmptyList("GapInstance without problems");
    }
    Prepared out;
    out.p = std::max<std::uint64_t>(inst.magnitude_poly(x.size()), 1);
    const BigRational c(pow2(out.p));
    const RationalFunctionPair& pair = cached_pair(4 * out.p * out.p);
    for (const auto& problem : inst.problems) {
        const BigRational f = exact_sum(problem, x, limits);
        if (f.get_den() != 1 || abs(f) > c) {
            throw InvariantViolation("GapP value " + to_string(f) + " of '" + problem.name +
                                     "' is not an integer within 2^" + std::to_string(out.p));
        }
        const BigRational y = f / c;
        const BigRational q = pair.denominator(y);
        const BigRational r = c * pair.numerator(y);
        out.calls.push_back({f, q, BigRational(r - f * q)});
    }
    return out;
}

bool decide(const SignCertificate& cert, const BitString& x, const Limits& limits)
{
    const BigRational floor_value = make_rational(1, pow2(cert.t));
    if (abs(cert.numerator) < floor_value || abs(cert.denominator) < floor_value) {
        throw PromiseViolated("sign certificate below 2^-" + std::to_string(cert.t));
    }
    return rational_sign_decide(single_value(cert.numerator, "numerator"),
                                single_value(cert.denominator, "denominator"),
                                IntPolynomial{cert.t}, x, limits) > 0;
}

}  // namespace

BigRational RationalPolynomial::operator()(const BigRational& x) const
{
    BigRational acc = 0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

BigRational RationalFunctionPair::operator()(const BigRational& x) const
{
    return numerator(x) / denominator(x);
}

RationalFunctionPair newman_rational(std::uint64_t m)
{
    if (m < 4) {
        throw PreconditionViolated("Newman degree must be at least 4");
    }
    const auto s = exact_sqrt(m);
    RationalPolynomial plus{{1}};
    for (std::uint64_t k = 0; k < m; ++k) {
        const Bracket node = exp_neg_bracket(make_rational(static_cast<unsigned long>(k),
                                                           static_cast<unsigned long>(s)),
                                             kNodeBits);
        plus = multiply(plus, RationalPolynomial{{node.lo, 1}});
    }
    // p(x) +- p(-x) keep the even / odd coefficients of p, doubled.
    RationalFunctionPair pair;
    pair.m = m;
    const auto& pc = plus.coefficients;
    pair.numerator.coefficients.assign(pc.size() + 1, 0);
    pair.denominator.coefficients.assign(pc.size(), 0);
    for (std::size_t i = 0; i < pc.size(); ++i) {
        if (i % 2 == 0) {
            pair.denominator.coefficients[i] = 2 * pc[i];
        } else {
            pair.numerator.coefficients[i + 1] = 2 * pc[i];
        }
    }
    const BigRational q0 = pair.denominator.coefficients[0];
    for (auto& c : pair.numerator.coefficients) {
        c /= q0;
    }
    for (auto& c : pair.denominator.coefficients) {
        c /= q0;
    }
    return pair;
}

Bracket newman_bound(std::uint64_t m)
{
    const auto s = exact_sqrt(m);
    Bracket e = exp_neg_bracket(BigRational(static_cast<unsigned long>(s)), 64);
    return {3 * e.lo, 3 * e.hi};
}

BigRational newman_grid_error(const RationalFunctionPair& pair, std::uint64_t grid, int workers)
{
    if (grid < 2) {
        throw PreconditionViolated("grid needs at least 2 points");
    }
    const BigRational step = make_rational(2, static_cast<unsigned long>(grid - 1));
    return parallel_accumulate(
        grid, workers, BigRational(0),
        [&](std::uint64_t j, BigRational& worst) {
            const BigRational x = BigRational(-1) + step * BigRational(static_cast<unsigned long>(j));
            const BigRational err = abs(BigRational(abs(x) - pair(x)));
            if (err > worst) {
                worst = err;
            }
        },
        [](BigRational& into, const BigRational& part) {
            if (part > into) {
                into = part;
            }
        });
}

BigRational eval_scaled_abs(const RationalFunctionPair& pair, const BigRational& c,
                            const BigRational& x)
{
    if (c <= 0 || abs(x) > c) {
        throw DomainViolation("eval_scaled_abs needs |x| <= c with c > 0");
    }
    return c * pair(x / c);
}

SignCertificate intersect_certificate(const GapInstance& inst, const BitString& x,
                                      const Limits& limits)
{
    const Prepared prep = prepare(inst, x, limits);
    const std::size_t k = prep.calls.size();
    // r = sum_i (f_i Q_i - R_i) prod_{j != i} Q_j + prod_j Q_j, q = prod_j Q_j.
    SignCertificate cert;
    cert.denominator = 1;
    for (const auto& call : prep.calls) {
        cert.denominator *= call.q;
    }
    cert.numerator = cert.denominator;
    for (std::size_t i = 0; i < k; ++i) {
        BigRational term = -prep.calls[i].n;
        for (std::size_t j = 0; j < k; ++j) {
            if (j != i) {
                term *= prep.calls[j].q;
            }
        }
        cert.numerator += term;
    }
    cert.t = 2 * k * prep.p;
    return cert;
}

SignCertificate truthtable_certificate(const GapInstance& inst, const std::vector<bool>& table,
                                       const BitString& x, const Limits& limits)
{
    const std::size_t k = inst.problems.size();
    if (k >= 16 || table.size() != (std::size_t{1} << k)) {
        throw PreconditionViolated("truth table needs exactly 2^k entries");
    }
    const Prepared prep = prepare(inst, x, limits);
    // beta_i = Q_i^2 / D_i and 1 - beta_i = 4 N_i^2 / D_i with D_i = Q_i^2 + 4 N_i^2.
    std::vector<BigRational> yes, no;
    SignCertificate cert;
    cert.denominator = 1;
    for (const auto& call : prep.calls) {
        yes.push_back(call.q * call.q);
        no.push_back(4 * call.n * call.n);
        cert.denominator *= yes.back() + no.back();
    }
    BigRational weighted = 0;
    for (std::size_t a = 0; a < table.size(); ++a) {
        if (!table[a]) {
            continue;
        }
        BigRational term = 1;
        for (std::size_t i = 0; i < k; ++i) {
            term *= ((a >> (k - 1 - i)) & 1U) ? yes[i] : no[i];
        }
        weighted += term;
    }
    cert.numerator = 2 * weighted - cert.denominator;
    cert.t = 2 * k * prep.p;
    return cert;
}

bool pp_intersect_decide(const GapInstance& inst, const BitString& x, const Limits& limits)
{
    return decide(intersect_certificate(inst, x, limits), x, limits);
}

bool pp_truthtable_decide(const GapInstance& inst, const std::vector<bool>& table,
                          const BitString& x, const Limits& limits)
{
    return decide(truthtable_certificate(inst, table, x, limits), x, limits);
}

}  // namespace wcount
