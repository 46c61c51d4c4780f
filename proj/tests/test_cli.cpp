#include "cli.hpp"

#include "wcount/errors.hpp"
#include "wcount/suite.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <unistd.h>

using namespace wcount;
using namespace wcount::cli;

namespace {

const std::string kData = WCOUNT_DATA_DIR;

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args, std::map<std::string, std::string> env = {})
{
    std::ostringstream out, err;
    Run r;
    r.code = dispatch(args, out, err, [&env](const char* name) -> const char* {
        const auto it = env.find(name);
        return it == env.end() ? nullptr : it->second.c_str();
    });
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string data(const std::string& name) { return kData + "/" + name; }

// Temporary file removed on scope exit.
struct TempFile {
    std::string path;
    explicit TempFile(const std::string& text)
    {
        static int counter = 0;
        path = (std::filesystem::temp_directory_path() /
                ("wcount_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++)))
                   .string();
        std::ofstream(path) << text;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("shipped data files reproduce their documented output")
{
    const std::vector<std::tuple<std::vector<std::string>, std::string, int>> cases = {
        {{"pgm-z", data("two_var.wcpgm")}, "2\n", 0},
        {{"pgm-z", data("sprinkler.wcpgm")}, "1\n", 0},
        {{"pgm-cond", data("sprinkler.wcpgm"), "--target", "0=1", "--given", "2=1"}, "891/2491\n", 0},
        {{"pgm-cond", data("sprinkler.wcpgm"), "--target", "0=1", "--given", "2=1", "--threshold", "1/3"},
         "891/2491\ntrue\n", 0},
        {{"pgm-cond", data("sprinkler.wcpgm"), "--target", "0=1", "--given", "2=1", "--threshold", "891/2491"},
         "891/2491\nfalse\n", 1},
        {{"majsat", data("or_and.wcf")}, "5/8\ntrue\n", 0},
        {{"qc-accept", data("h.wcqc"), "--input", "0", "--pathsum"}, "1/2\n", 0},
        {{"qc-accept", data("h.wcqc"), "--input", "0", "--statevector"}, "1/2\n", 0},
        {{"qc-accept", data("hth_measure.wcqc"), "--input", "00"}, "1/2 + 1/4*sqrt(2) ~ 0.8535534\n", 0},
        {{"stoch-eval", data("two_items.wc2ssp"), "--x", "10"}, "3/2\n", 0},
        {{"stoch-eval", data("two_items.wc2ssp"), "--x", "10", "--bits", "10"}, "3/2^1\n", 0},
        {{"stoch-opt", data("two_items.wc2ssp")}, "x 10\ncost 3/2\n", 0},
        {{"stoch-decide", data("two_items.wc2ssp"), "--x", "10", "--t", "3/2"}, "true\n", 0},
        {{"stoch-decide", data("two_items.wc2ssp"), "--x", "10", "--t", "1"}, "false\n", 1},
        {{"halting-demo", "--machine", data("scan.wctm"), "--input", "0110", "--bits", "10"}, "approx 1/2^5\n", 0},
        {{"halting-demo", "--builtin", "idle", "--bits", "10"}, "approx 0/2^0\n", 0},
    };
    for (const auto& [args, expected, code] : cases) {
        const Run r = run(args);
        INFO(args[0] << " " << args[1]);
        CHECK(r.out == expected);
        CHECK(r.code == code);
        CHECK(r.err.empty());
    }
}

TEST_CASE("computed commands")
{
    const Run newman = run({"newman", "--m", "16", "--grid", "1001"});
    CHECK(newman.code == 0);
    CHECK(newman.out == "m 16 grid 1001\nmax error 0.001440445813\nbound 3e^-4 0.054946916666\ntrue\n");

    const Run primes = run({"primes", "--x", "10", "--gap-check", "500"});
    CHECK(primes.out == "f(10) 247/210\ndenominator is the primorial: yes\ngap check [17, 500]: true\n");
    CHECK(primes.code == 0);

    for (const char* kind : {"nat-binary", "int-ternary", "binary-pm1", "ternary-nat"}) {
        const std::string weights = std::string(kind) == "binary-pm1"    ? "1,0,0,1"
                                    : std::string(kind) == "ternary-nat" ? "1,-1,0,1"
                                    : std::string(kind) == "nat-binary"  ? "3,0,5,1"
                                                                         : "3,-2,0,1";
        const Run r = run({"reduce", "--kind", kind, "--weights", weights});
        INFO(kind);
        CHECK(r.code == 0);
        CHECK(r.out.find("round trip ok\n") != std::string::npos);
    }
    CHECK(run({"reduce", "--kind", "binary-pm1", "--weights", "1,2"}).code == 2);
    CHECK(run({"reduce", "--weights", "1,2,3"}).code == 2);

    const Run closure = run({"closure-demo"});
    CHECK(closure.code == 0);
    CHECK(closure.out.find("MISMATCH") == std::string::npos);
    CHECK(closure.out.rfind("S 13/4\n", 0) == 0);

    const Run approx = run({"qc-accept", data("hth_measure.wcqc"), "--input", "00", "--bits", "20"});
    CHECK(approx.code == 0);
    CHECK(approx.out == "7160125/2^23\n");
}

TEST_CASE("configuration from the environment and flags")
{
    const Config defaults = config_from_environment([](const char*) { return nullptr; });
    CHECK(defaults.cap == (std::uint64_t{1} << 24));
    CHECK(defaults.precision == 20);
    CHECK(defaults.workers == 0);
    CHECK(defaults.format == OutputFormat::Rational);

    const std::map<std::string, std::string> env = {
        {"WCOUNT_CAP", "4096"}, {"WCOUNT_PRECISION", "8"}, {"WCOUNT_WORKERS", "1"}, {"WCOUNT_FORMAT", "decimal"}};
    const Config c = config_from_environment([&](const char* n) -> const char* {
        const auto it = env.find(n);
        return it == env.end() ? nullptr : it->second.c_str();
    });
    CHECK(c.cap == 4096);
    CHECK(c.precision == 8);
    CHECK(c.workers == 1);
    CHECK(c.format == OutputFormat::Decimal);

    CHECK_THROWS_AS((Config{1023, 20, 0, OutputFormat::Rational}.validate()), InvariantViolation);
    CHECK_THROWS_AS((Config{1024, 0, 0, OutputFormat::Rational}.validate()), InvariantViolation);
    CHECK_NOTHROW((Config{1024, 1, 0, OutputFormat::Rational}.validate()));
    CHECK_THROWS_AS(parse_format("hex"), InvariantViolation);

    const auto z = std::vector<std::string>{"pgm-z", data("two_var.wcpgm")};
    CHECK(run(z, {{"WCOUNT_CAP", "100"}}).code == 2);
    CHECK(run(z, {{"WCOUNT_PRECISION", "0"}}).code == 2);
    CHECK(run(z, {{"WCOUNT_FORMAT", "hex"}}).code == 2);
    CHECK(run(z, {{"WCOUNT_CAP", "-5"}}).code == 2);
    CHECK(run({"--cap", "512", "pgm-z", data("two_var.wcpgm")}).code == 2);

    // The smallest allowed cap still covers the 2^3 assignments.
    const Run capped = run({"pgm-z", data("sprinkler.wcpgm")}, {{"WCOUNT_CAP", "1024"}});
    CHECK(capped.out == "1\n");

    // Flags after the command override the environment.
    const Run dec = run({"pgm-cond", data("sprinkler.wcpgm"), "--target", "0=1", "--given", "2=1", "--format",
                         "decimal", "--precision", "10"},
                        {{"WCOUNT_FORMAT", "dyadic"}});
    CHECK(dec.out == "891/2491 ~ 0.3577\n");
    const Run dy = run({"pgm-z", data("two_var.wcpgm")}, {{"WCOUNT_FORMAT", "dyadic"}});
    CHECK(dy.out == "2/2^0\n");
}

TEST_CASE("value formatting")
{
    Config c;
    CHECK(format_value(make_rational(3, 4), c) == "3/4");
    CHECK(format_value(BigRational(-5), c) == "-5");
    c.format = OutputFormat::Dyadic;
    c.precision = 4;
    CHECK(format_value(make_rational(3, 4), c) == "3/2^2");
    CHECK(format_value(make_rational(1, 3), c) == "5/2^4 (exact 1/3)");
    c.format = OutputFormat::Decimal;
    // ceil(4 log10 2) = 2 digits.
    CHECK(format_value(make_rational(1, 3), c) == "1/3 ~ 0.33");
}

TEST_CASE("errors exit with status 2")
{
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"pgm-z"}).code == 2);
    CHECK(run({"pgm-z", data("missing.wcpgm")}).code == 2);
    CHECK(run({"qc-accept", data("h.wcqc"), "--input", "2"}).code == 2);
    CHECK(run({"qc-accept", data("h.wcqc"), "--pathsum", "--statevector"}).code == 2);
    CHECK(run({"stoch-decide", data("two_items.wc2ssp"), "--x", "10", "--t", "x"}).code == 2);
    CHECK(run({"pgm-cond", data("sprinkler.wcpgm"), "--target", "0"}).code == 2);
    CHECK(run({"newman", "--m", "15"}).code == 2);
    CHECK(run({"halting-demo", "--builtin", "nothing"}).code == 2);

    const TempFile no_accept("WCQC\n1\nH 0\n");
    const Run r = run({"qc-accept", no_accept.path, "--input", "0"});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 3") != std::string::npos);

    const TempFile short_table("WCPGM\n1\n2\n1\n1 0\n1\n");
    const Run t = run({"pgm-z", short_table.path});
    CHECK(t.code == 2);
    CHECK(t.err.find("table entries") != std::string::npos);

    const TempFile zero_evidence("WCPGM\n1\n2\n1\n1 0\n1 0\n");
    CHECK(run({"pgm-cond", zero_evidence.path, "--target", "0=0", "--given", "0=1"}).code == 2);
}

TEST_CASE("help enumerates every command and flag")
{
    const Run r = run({"--help"});
    CHECK(r.code == 0);
    for (const char* word :
         {"pgm-z", "pgm-cond", "majsat", "qc-accept", "newman", "reduce", "closure-demo", "stoch-eval", "stoch-opt",
          "stoch-decide", "primes", "halting-demo", "suite", "--target", "--given", "--threshold", "--input",
          "--pathsum", "--statevector", "--bits", "--m", "--grid", "--kind", "--weights", "--const", "--x", "--t",
          "--gap-check", "--machine", "--builtin", "--seed", "--only", "--cap", "--precision", "--workers",
          "--format", "WCOUNT_CAP", "WCOUNT_PRECISION", "WCOUNT_WORKERS", "WCOUNT_FORMAT"}) {
        INFO(word);
        CHECK(r.out.find(word) != std::string::npos);
    }
}

TEST_CASE("suite is deterministic for a fixed seed")
{
    auto strip = [](const std::vector<CriterionResult>& rs) {
        std::vector<std::pair<bool, std::string>> out;
        for (const auto& r : rs) {
            out.emplace_back(r.passed, r.detail);
        }
        return out;
    };
    SuiteOptions o;
    o.seed = 7;
    o.only = {2, 3, 4, 5};
    const auto a = run_suite(o);
    const auto b = run_suite(o);
    REQUIRE(a.size() == 4);
    CHECK(strip(a) == strip(b));
    for (const auto& r : a) {
        CHECK(r.passed);
    }

    const Run cli = run({"suite", "--seed", "7", "--only", "3"});
    CHECK(cli.code == 0);
    CHECK(cli.out.rfind("PASS  C3 ", 0) == 0);
}
