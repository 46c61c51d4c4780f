// Serial reference kernels against the OpenMP kernels on the same problems.
// Set OMP_NUM_THREADS to vary the parallel width.

#include "wcount/pgm.hpp"
#include "wcount/quantum.hpp"
#include "wcount/summation.hpp"

#include <benchmark/benchmark.h>

using namespace wcount;

namespace {

// w(u) = (#u mod 97 - 48) / (#u mod 13 + 1): rational weights with varied denominators.
WeightedCountingProblem mixed_problem(std::uint64_t p)
{
    WeightedCountingProblem problem;
    problem.name = "mixed";
    problem.path_length = IntPolynomial::constant(p);
    problem.oracle = WeightOracle::from_exact(
        [](const BitString&, const BitString& u) {
            const auto v = static_cast<long>(u.to_uint64());
            return make_rational(v % 97 - 48, v % 13 + 1);
        },
        RangeTag::QPOLY);
    return problem;
}

const Limits kLimits{std::uint64_t{1} << 24, 0};

void BM_exact_serial(benchmark::State& state)
{
    const auto problem = mixed_problem(static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(serial::exact_sum(problem, BitString{}, kLimits));
    }
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << state.range(0)));
}

void BM_exact_parallel(benchmark::State& state)
{
    const auto problem = mixed_problem(static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(exact_sum(problem, BitString{}, kLimits));
    }
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << state.range(0)));
}

void BM_approx_serial(benchmark::State& state)
{
    const auto p = static_cast<std::uint64_t>(state.range(0));
    const auto problem = mixed_problem(p);
    for (auto _ : state) {
        benchmark::DoNotOptimize(serial::approx_numerator_sum(problem, BitString{}, p + 32, 0, kLimits));
    }
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << p));
}

void BM_approx_parallel(benchmark::State& state)
{
    const auto p = static_cast<std::uint64_t>(state.range(0));
    const auto problem = mixed_problem(p);
    for (auto _ : state) {
        benchmark::DoNotOptimize(approx_numerator_sum(problem, BitString{}, p + 32, 0, kLimits));
    }
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << p));
}

// Path-pair sum of a 4-qubit circuit with 2 * 6 branching gates; workers = 1 is serial.
void BM_pathsum(benchmark::State& state)
{
    Circuit c;
    c.n_qubits = 4;
    for (std::size_t q = 0; q < 4; ++q) {
        c.ops.push_back(Gate::single(GateKind::H, q));
        c.ops.push_back(Gate::single(GateKind::T, q));
    }
    c.ops.push_back(Gate::cnot(0, 1));
    c.ops.push_back(Gate::cnot(2, 3));
    c.ops.push_back(Gate::single(GateKind::H, 1));
    c.ops.push_back(Gate::single(GateKind::H, 3));
    c.accept = {{1, 0}, {3, 1}};
    const Limits limits{std::uint64_t{1} << 24, static_cast<int>(state.range(0))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(pathsum_accept(c, BitString{"0000"}, limits));
    }
}

}  // namespace

BENCHMARK(BM_exact_serial)->Arg(12)->Arg(14)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_exact_parallel)->Arg(12)->Arg(14)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_approx_serial)->Arg(12)->Arg(14)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_approx_parallel)->Arg(12)->Arg(14)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pathsum)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
