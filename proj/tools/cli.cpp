#include "cli.hpp"

#include "wcount/closure.hpp"
#include "wcount/core.hpp"
#include "wcount/newman.hpp"
#include "wcount/pgm.hpp"
#include "wcount/quantum.hpp"
#include "wcount/reductions.hpp"
#include "wcount/stochastic.hpp"
#include "wcount/suite.hpp"
#include "wcount/summation.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace wcount::cli {

using wcount::to_string;

namespace {

constexpr std::uint64_t kMinCap = std::uint64_t{1} << 10;

// Bad command-line values; reported like any other usage error.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::uint64_t parse_natural(std::string_view text, const std::string& what)
{
    std::uint64_t v = 0;
    std::size_t pos = 0;
    const std::string s(text);
    try {
        v = std::stoull(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (s.empty() || s[0] == '-' || pos != s.size()) {
        throw InvariantViolation(what + " must be a natural number, got '" + s + "'");
    }
    return v;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot open '" + path + "'");
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

BitString parse_bits(const std::string& text, const char* flag)
{
    if (text.find_first_not_of("01") != std::string::npos) {
        throw UsageError(std::string(flag) + " expects a bit string, got '" + text + "'");
    }
    return BitString{text};
}

BigRational parse_value(const std::string& text, const char* flag)
{
    try {
        return parse_rational(text);
    } catch (const std::exception&) {
        throw UsageError(std::string(flag) + " expects a rational a/b, got '" + text + "'");
    }
}

// "i=v,i=v"; an empty string is the empty assignment.
Assignment parse_assignment(const std::string& text, const char* flag)
{
    Assignment out;
    std::istringstream in(text);
    for (std::string item; std::getline(in, item, ',');) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw UsageError(std::string(flag) + " expects i=v pairs, got '" + item + "'");
        }
        try {
            out.emplace_back(parse_natural(item.substr(0, eq), flag),
                             parse_natural(item.substr(eq + 1), flag));
        } catch (const InvariantViolation&) {
            throw UsageError(std::string(flag) + " expects i=v pairs, got '" + item + "'");
        }
    }
    return out;
}

std::string decimal_digits_display(const BigRational& value, std::uint64_t precision)
{
    // ceil(precision * log10 2) fractional digits.
    const auto digits = static_cast<unsigned>((precision * 30103 + 99999) / 100000);
    return to_decimal(value, std::max(1U, digits));
}

int decision(std::ostream& out, bool value)
{
    out << (value ? "true" : "false") << "\n";
    return value ? 0 : 1;
}

WeightedCountingProblem weights_problem(const std::vector<BigRational>& weights, RangeTag tag)
{
    std::uint64_t p = 0;
    while ((std::size_t{1} << p) < weights.size()) {
        ++p;
    }
    if (weights.empty() || (std::size_t{1} << p) != weights.size()) {
        throw UsageError("--weights needs a power-of-two number of entries");
    }
    for (const auto& w : weights) {
        if (!in_range(tag, w)) {
            throw UsageError("weight " + to_string(w) + " is outside " + std::string(to_string(tag)));
        }
    }
    std::int64_t magnitude = 0;
    for (const auto& w : weights) {
        magnitude = std::max<std::int64_t>(magnitude, static_cast<std::int64_t>(bit_length(ceil(abs(w)))));
    }
    WeightedCountingProblem problem;
    problem.name = "table";
    problem.path_length = IntPolynomial::constant(p);
    problem.oracle = WeightOracle::from_exact(
        [weights](const BitString&, const BitString& u) { return weights.at(u.to_uint64()); }, tag,
        magnitude);
    return problem;
}

std::vector<BigRational> parse_weights(const std::string& text)
{
    std::vector<BigRational> out;
    std::istringstream in(text);
    for (std::string item; std::getline(in, item, ',');) {
        out.push_back(parse_value(item, "--weights"));
    }
    return out;
}

std::string path_bits_text(const WeightedCountingProblem& p, const BitString& x)
{
    return std::to_string(p.path_bits(x));
}

ToyMachine builtin_machine(const std::string& name)
{
    if (name == "scan") {
        return ToyMachine::scan_to_blank();
    }
    if (name == "idle") {
        return ToyMachine::idle_loop();
    }
    if (name == "runaway") {
        return ToyMachine::runaway();
    }
    if (name == "bounce") {
        return ToyMachine::bounce();
    }
    if (name.rfind("halts-after-", 0) == 0) {
        return ToyMachine::halts_after(static_cast<int>(parse_natural(name.substr(12), "--builtin")));
    }
    throw UsageError("unknown machine '" + name + "'");
}

}  // namespace

OutputFormat parse_format(std::string_view text)
{
    if (text == "rational") {
        return OutputFormat::Rational;
    }
    if (text == "dyadic") {
        return OutputFormat::Dyadic;
    }
    if (text == "decimal") {
        return OutputFormat::Decimal;
    }
    throw InvariantViolation("format must be rational, dyadic or decimal, got '" + std::string(text) + "'");
}

std::string_view to_string(OutputFormat format)
{
    switch (format) {
    case OutputFormat::Rational: return "rational";
    case OutputFormat::Dyadic: return "dyadic";
    case OutputFormat::Decimal: return "decimal";
    }
    return "rational";
}

void Config::validate() const
{
    if (cap < kMinCap) {
        throw InvariantViolation("cap must be at least 2^10, got " + std::to_string(cap));
    }
    if (precision < 1) {
        throw InvariantViolation("precision must be at least 1");
    }
    if (workers < 0) {
        throw InvariantViolation("workers must be nonnegative");
    }
}

Config config_from_environment(const EnvLookup& lookup)
{
    Config c;
    if (const char* v = lookup("WCOUNT_CAP")) {
        c.cap = parse_natural(v, "WCOUNT_CAP");
    }
    if (const char* v = lookup("WCOUNT_PRECISION")) {
        c.precision = parse_natural(v, "WCOUNT_PRECISION");
    }
    if (const char* v = lookup("WCOUNT_WORKERS")) {
        c.workers = static_cast<int>(std::min<std::uint64_t>(parse_natural(v, "WCOUNT_WORKERS"), 1024));
    }
    if (const char* v = lookup("WCOUNT_FORMAT")) {
        c.format = parse_format(v);
    }
    c.validate();
    return c;
}

std::string format_value(const BigRational& value, const Config& config)
{
    switch (config.format) {
    case OutputFormat::Rational: return to_string(value);
    case OutputFormat::Dyadic: {
        const Dyadic d(floor_scaled(value, config.precision), config.precision);
        return d.to_rational() == value ? d.str() : d.str() + " (exact " + to_string(value) + ")";
    }
    case OutputFormat::Decimal:
        return to_string(value) + " ~ " + decimal_digits_display(value, config.precision);
    }
    return to_string(value);
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             const EnvLookup& lookup)
{
    CLI::App app{"Exact weighted counting: summation, reductions, closure, Newman, quantum, "
                 "graphical models and stochastic costs.\nDecision commands exit 0 for true, 1 for "
                 "false, 2 on errors.\nEnvironment: WCOUNT_CAP, WCOUNT_PRECISION, WCOUNT_WORKERS, "
                 "WCOUNT_FORMAT (rational|dyadic|decimal).",
                 "wcount"};
    app.require_subcommand(1);

    std::optional<std::uint64_t> cap_flag;
    std::optional<std::uint64_t> precision_flag;
    std::optional<int> workers_flag;
    std::optional<std::string> format_flag;
    app.add_option("--cap", cap_flag, "Path-enumeration cap (default 2^24, at least 2^10)");
    app.add_option("--precision", precision_flag, "Bits for dyadic/decimal display (default 20)");
    app.add_option("--workers", workers_flag, "OpenMP threads; 0 = runtime default, 1 = serial");
    app.add_option("--format", format_flag, "Output format")
        ->check(CLI::IsMember({"rational", "dyadic", "decimal"}));

    Config config;
    std::vector<std::pair<CLI::App*, std::function<int()>>> commands;
    auto command = [&](const char* name, const char* help) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->fallthrough();
        return sub;
    };

    // ---- graphical models ----
    std::string file;
    auto* pgm_z = command("pgm-z", "Partition function of a WCPGM file");
    pgm_z->add_option("file", file, "WCPGM file")->required();
    commands.emplace_back(pgm_z, [&] {
        out << format_value(partition_function(Pgm::parse(read_file(file)), config.limits()), config) << "\n";
        return 0;
    });

    std::string target_text, given_text, threshold_text;
    auto* pgm_cond = command("pgm-cond", "Pr(target | given); with --threshold, decide Pr > threshold");
    pgm_cond->add_option("file", file, "WCPGM file")->required();
    pgm_cond->add_option("--target", target_text, "Target assignment i=v[,i=v...]")->required();
    pgm_cond->add_option("--given", given_text, "Evidence assignment i=v[,i=v...]");
    pgm_cond->add_option("--threshold", threshold_text, "Threshold a/b; prints the decision");
    commands.emplace_back(pgm_cond, [&] {
        const Pgm pgm = Pgm::parse(read_file(file));
        Query q{parse_assignment(target_text, "--target"), parse_assignment(given_text, "--given"), 0};
        out << format_value(conditional_probability(pgm, q, config.limits()), config) << "\n";
        if (threshold_text.empty()) {
            return 0;
        }
        q.threshold = parse_value(threshold_text, "--threshold");
        return decision(out, conditional_decide(pgm, q, config.limits()));
    });

    auto* majsat = command("majsat", "#SAT/2^N of a formula file through its graphical model; "
                                     "decides #SAT > 2^(N-1)");
    majsat->add_option("file", file, "Formula file (x1.., !, &, |, parentheses, # comments)")->required();
    commands.emplace_back(majsat, [&] {
        const Formula f = Formula::parse(read_file(file));
        const BigRational z = partition_function(majsat_to_pgm(f), config.limits());
        out << format_value(z, config) << "\n";
        return decision(out, z > make_rational(1, 2));
    });

    // ---- quantum ----
    std::string input_text;
    bool use_pathsum = false, use_statevector = false;
    std::optional<std::uint64_t> bits;
    auto* qc = command("qc-accept", "Acceptance probability of a WCQC circuit");
    qc->add_option("file", file, "WCQC file")->required();
    qc->add_option("--input", input_text, "Initial register bits, qubit 0 first (missing qubits 0)");
    auto* pathsum_flag = qc->add_flag("--pathsum", use_pathsum, "Sum over compatible path pairs (default)");
    qc->add_flag("--statevector", use_statevector, "State-vector evolution")->excludes(pathsum_flag);
    qc->add_option("--bits", bits, "Approximate the path-pair weighted count within 2^-B");
    commands.emplace_back(qc, [&] {
        const Circuit c = Circuit::parse(read_file(file));
        const BitString x = parse_bits(input_text, "--input");
        if (bits) {
            const auto inst = weight_oracle_from_circuit(c, x);
            out << approx_sum(inst.problem, inst.input, *bits, config.limits()).str() << "\n";
            return 0;
        }
        const QuadraticRational p =
            use_statevector ? statevector_accept(c, x) : pathsum_accept(c, x, config.limits());
        out << p.str();
        if (config.format == OutputFormat::Decimal || !p.is_rational()) {
            out << " ~ " << p.decimal(static_cast<unsigned>((config.precision * 30103 + 99999) / 100000));
        }
        out << "\n";
        return 0;
    });

    // ---- Newman ----
    std::uint64_t newman_m = 16, grid = 1001;
    auto* newman = command("newman", "Grid error of Newman's rational approximation of |x| against "
                                     "3e^-sqrt(m); exit 0 iff the error is within the bound");
    newman->add_option("--m", newman_m, "Perfect square m >= 4")->capture_default_str();
    newman->add_option("--grid", grid, "Grid points on [-1, 1]")->capture_default_str();
    commands.emplace_back(newman, [&] {
        const BigRational e = newman_grid_error(newman_rational(newman_m), grid, config.workers);
        const Bracket bound = newman_bound(newman_m);
        std::uint64_t root = 0;
        while ((root + 1) * (root + 1) <= newman_m) {
            ++root;
        }
        out << "m " << newman_m << " grid " << grid << "\n";
        out << "max error " << to_decimal(e, 12) << "\n";
        out << "bound 3e^-" << root << " " << to_decimal(bound.lo, 12) << "\n";
        // A certified lower end of the bracket keeps "within" sound.
        return decision(out, e <= bound.lo);
    });

    // ---- reductions ----
    std::string kind = "int-ternary", weights_text = "3,-2,0,1";
    std::optional<std::uint64_t> lift_bits;
    auto* reduce = command("reduce", "Apply a range reduction to a table problem and verify the round trip");
    reduce->add_option("--kind", kind, "nat-binary | int-ternary | binary-pm1 | ternary-nat")
        ->check(CLI::IsMember({"nat-binary", "int-ternary", "binary-pm1", "ternary-nat"}))
        ->capture_default_str();
    reduce->add_option("--weights", weights_text, "Comma-separated path weights (2^p entries)")
        ->capture_default_str();
    reduce->add_option("--bits", lift_bits, "Bit bound q for the lifts (default: smallest that fits)");
    commands.emplace_back(reduce, [&] {
        const auto weights = parse_weights(weights_text);
        const BitString x;
        const Limits limits = config.limits();
        std::uint64_t q = 0;
        for (const auto& w : weights) {
            q = std::max<std::uint64_t>(q, bit_length(ceil(abs(w))));
        }
        q = lift_bits.value_or(std::max<std::uint64_t>(q, 1));
        WeightedCountingProblem source, target;
        AffineReduction red = AffineReduction::identity();
        if (kind == "nat-binary") {
            source = weights_problem(weights, RangeTag::NAT);
            target = lift_nat_to_binary(source, IntPolynomial{q});
        } else if (kind == "int-ternary") {
            source = weights_problem(weights, RangeTag::INT);
            target = lift_int_to_ternary(source, IntPolynomial{q});
        } else if (kind == "binary-pm1") {
            source = weights_problem(weights, RangeTag::B01);
            std::tie(target, red) = embed_binary_in_pm1(source);
        } else {
            source = weights_problem(weights, RangeTag::T101);
            std::tie(target, red) = embed_ternary_in_nat(source);
        }
        const BigRational f = exact_sum(source, x, limits);
        const BigRational g = exact_sum(target, x, limits);
        const BigRational back = apply_reduction(red, g, x);
        const bool in_range = weights_in_range(target, x, target.oracle.tag, limits);
        out << "source " << source.name << " tag " << to_string(source.oracle.tag) << " path bits "
            << path_bits_text(source, x) << " sum " << format_value(f, config) << "\n";
        out << "target " << target.name << " tag " << to_string(target.oracle.tag) << " path bits "
            << path_bits_text(target, x) << " sum " << format_value(g, config) << "\n";
        out << "recovered " << format_value(back, config) << "\n";
        out << "round trip " << (back == f && in_range ? "ok" : "FAILED") << "\n";
        return back == f && in_range ? 0 : 1;
    });

    // ---- closure ----
    std::string constant_text = "1/3";
    std::uint64_t exp_bits = 2, degree = 3, vars = 2, max_exp = 2;
    auto* closure = command("closure-demo", "Evaluate every closure operator on a table problem f "
                                            "and compare with direct arithmetic on S = sum f");
    std::string closure_weights = "1,2,-1/2,3/4";
    closure->add_option("--weights", closure_weights, "Path weights of f (2^p entries)")->capture_default_str();
    closure->add_option("--const", constant_text, "Constant c for add/scale")->capture_default_str();
    closure->add_option("--P", exp_bits, "Exponential-sum width P")->capture_default_str();
    closure->add_option("--degree", degree, "Product length m")->capture_default_str();
    closure->add_option("--q", vars, "Multivariate: variable count q")->capture_default_str();
    closure->add_option("--r", max_exp, "Multivariate: exponent bound r")->capture_default_str();
    commands.emplace_back(closure, [&] {
        const auto weights = parse_weights(closure_weights);
        const BigRational c = parse_value(constant_text, "--const");
        const ClosureExpr leaf = ClosureExpr::of(weights_problem(weights, RangeTag::QPOLY));
        const BigRational s = exact_sum(leaf.build(), BitString{}, config.limits());
        auto node = [&](ClosureExpr::Kind k, std::vector<ClosureExpr> children,
                        std::vector<IntPolynomial> polys = {}) {
            ClosureExpr e;
            e.kind = k;
            e.children = std::move(children);
            e.polynomials = std::move(polys);
            e.constant = c;
            return e;
        };
        auto power = [](const BigRational& base, std::uint64_t e) {
            BigRational r = 1;
            for (std::uint64_t i = 0; i < e; ++i) {
                r *= base;
            }
            return r;
        };
        // sum_{e in {0..r}^q} S * S^{|e|} = S (1 + S + .. + S^r)^q
        BigRational geometric = 0;
        for (std::uint64_t k = 0; k <= max_exp; ++k) {
            geometric += power(s, k);
        }
        using K = ClosureExpr::Kind;
        const std::vector<std::tuple<std::string, ClosureExpr, BigRational>> rows = {
            {"add_const", node(K::AddConst, {leaf}), s + c},
            {"scale", node(K::Scale, {leaf}), c * s},
            {"finite_sum", node(K::FiniteSum, {leaf, leaf}), s + s},
            {"finite_product", node(K::FiniteProduct, {leaf, leaf}), s * s},
            {"uniform_exp_sum", node(K::UniformExpSum, {leaf}, {IntPolynomial{exp_bits}}),
             BigRational(pow2(exp_bits) * s)},
            {"uniform_poly_product", node(K::UniformPolyProduct, {leaf}, {IntPolynomial{degree}}),
             power(s, degree)},
            {"multivariate_poly",
             node(K::MultivariatePoly, {leaf, leaf}, {IntPolynomial{vars}, IntPolynomial{max_exp}}),
             s * power(geometric, vars)},
        };
        out << "S " << format_value(s, config) << "\n";
        bool all = true;
        for (const auto& [name, expr, direct] : rows) {
            const BigRational got = exact_sum(expr.build(), BitString{}, config.limits());
            all = all && got == direct;
            out << name << " " << format_value(got, config) << " direct " << format_value(direct, config)
                << (got == direct ? " ok" : " MISMATCH") << "\n";
        }
        return all ? 0 : 1;
    });

    // ---- stochastic ----
    std::string x_text, t_text;
    auto* stoch_eval = command("stoch-eval", "Expected cost of a first-stage decision (WC2SSP file)");
    stoch_eval->add_option("file", file, "WC2SSP file")->required();
    stoch_eval->add_option("--x", x_text, "First-stage bits, item 1 first")->required();
    stoch_eval->add_option("--bits", bits, "Approximate within 2^-B instead");
    commands.emplace_back(stoch_eval, [&] {
        const TwoStageProblem p = preselection(parse_preselection(read_file(file)));
        const BitString x = parse_bits(x_text, "--x");
        if (bits) {
            out << expected_cost_approx(p, x, *bits, config.limits()).str() << "\n";
        } else {
            out << format_value(expected_cost(p, x, config.limits()), config) << "\n";
        }
        return 0;
    });

    auto* stoch_opt = command("stoch-opt", "Minimum expected cost over all first-stage decisions");
    stoch_opt->add_option("file", file, "WC2SSP file")->required();
    commands.emplace_back(stoch_opt, [&] {
        const Solution s = best_solution(preselection(parse_preselection(read_file(file))), config.limits());
        out << "x " << s.x.str() << "\ncost " << format_value(s.cost, config) << "\n";
        return 0;
    });

    auto* stoch_decide = command("stoch-decide", "Decide expected cost <= t");
    stoch_decide->add_option("file", file, "WC2SSP file")->required();
    stoch_decide->add_option("--x", x_text, "First-stage bits, item 1 first")->required();
    stoch_decide->add_option("--t", t_text, "Threshold a/b")->required();
    commands.emplace_back(stoch_decide, [&] {
        const auto items = parse_preselection(read_file(file));
        return decision(out, decide_cost(preselection(items), parse_bits(x_text, "--x"),
                                         parse_value(t_text, "--t"), preselection_output_bits(items),
                                         config.limits()));
    });

    // ---- case studies ----
    std::uint64_t prime_x = 10;
    std::optional<std::uint64_t> gap_max;
    auto* primes = command("primes", "Sum of 1/p over primes p <= x; with --gap-check, decide the "
                                     "prime-gap inequality on [17, X]");
    primes->add_option("--x", prime_x, "x")->capture_default_str();
    primes->add_option("--gap-check", gap_max, "Upper end X >= 17 of the checked range");
    commands.emplace_back(primes, [&] {
        const BigRational f =
            exact_sum(prime_reciprocal_oracle(), BitString::encode_natural(prime_x), config.limits());
        out << "f(" << prime_x << ") " << format_value(f, config) << "\n";
        out << "denominator is the primorial: " << (f.get_den() == primorial(prime_x) ? "yes" : "no") << "\n";
        if (!gap_max) {
            return 0;
        }
        out << "gap check [17, " << *gap_max << "]: ";
        return decision(out, prime_gap_check(*gap_max));
    });

    std::string machine_file, builtin = "scan";
    std::uint64_t halt_bits = 10;
    auto* halting = command("halting-demo", "Approximate the halting weight 2^-t of a toy machine");
    halting->add_option("--machine", machine_file, "Machine file (states S start A halt H, then transitions)");
    halting->add_option("--builtin", builtin, "scan | idle | runaway | bounce | halts-after-T")
        ->capture_default_str();
    halting->add_option("--input", input_text, "Tape contents");
    halting->add_option("--bits", halt_bits, "Precision b")->capture_default_str();
    commands.emplace_back(halting, [&] {
        const ToyMachine m = machine_file.empty() ? builtin_machine(builtin) : ToyMachine::parse(read_file(machine_file));
        const BitString y = parse_bits(input_text, "--input");
        const auto inst = halting_oracle(m, y);
        const Dyadic v = approx_sum(inst.problem, inst.input, halt_bits, config.limits());
        out << "approx " << v.str() << "\n";
        return 0;
    });

    // ---- acceptance suite ----
    SuiteOptions suite_options;
    auto* suite = command("suite", "Run the acceptance criteria; exit 0 iff all pass");
    suite->add_option("--seed", suite_options.seed, "Generator seed")->capture_default_str();
    suite->add_option("--only", suite_options.only, "Criterion ids to run");
    commands.emplace_back(suite, [&] {
        suite_options.workers = config.workers;
        const auto start = std::chrono::steady_clock::now();
        const auto results = run_suite(suite_options);
        const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out << format_suite(results, total);
        bool ok = total < kSuiteLimitSeconds;
        for (const auto& r : results) {
            ok = ok && r.passed;
        }
        return ok ? 0 : 1;
    });

    // Top-level --help lists every command with its flags.
    app.set_help_flag();
    app.set_help_all_flag("-h,--help", "Print every command and flag, then exit");

    std::vector<const char*> argv{"wcount"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        config = config_from_environment(lookup);
        if (cap_flag) {
            config.cap = *cap_flag;
        }
        if (precision_flag) {
            config.precision = *precision_flag;
        }
        if (workers_flag) {
            config.workers = *workers_flag;
        }
        if (format_flag) {
            config.format = parse_format(*format_flag);
        }
        config.validate();
        for (auto& [sub, run] : commands) {
            if (sub->parsed()) {
                return run();
            }
        }
    } catch (const ParseError& e) {
        err << "error: " << file << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace wcount::cli
