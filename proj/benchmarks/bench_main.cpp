#include <random>

#include <benchmark/benchmark.h>

#include "hwpoly/equations.hpp"
#include "hwpoly/evaluation.hpp"
#include "hwpoly/expander.hpp"
#include "hwpoly/family.hpp"
#include "hwpoly/gray_code.hpp"
#include "hwpoly/incremental_hash.hpp"
#include "hwpoly/tableaux.hpp"

using namespace hwpoly;

namespace {

// Gray-code walk with the incremental hash over (6,6,6,6) with column 0 fixed.
void BM_WalkAndHash(benchmark::State& state) {
    const Partition shape({6, 6, 6, 6});
    auto t = TableauCounter(shape, 8, 3).unrank(0);
    auto domain = enumerate_weight_monomials(shape, 8, 3);
    auto chain = HashChain::build(domain, 4, 1);
    std::uint64_t steps = 0;
    for (auto _ : state) {
        AssignmentWalker walker(shape, 0);
        IncrementalBlockHash h(chain.level(0), t, walker);
        AssignmentWalker::Move mv;
        std::uint64_t acc = 0;
        while (walker.next(mv)) {
            h.apply(mv, walker);
            acc += h.value();
            ++steps;
        }
        benchmark::DoNotOptimize(acc);
    }
    state.counters["steps/s"] = benchmark::Counter(static_cast<double>(steps), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_WalkAndHash)->Unit(benchmark::kMillisecond);

void BM_ExpandTableau(benchmark::State& state) {
    const Partition shape({6, 6, 3, 3});
    TableauCounter counter(shape, 6, 3);
    auto t = counter.unrank(counter.count() / 2);
    for (auto _ : state) {
        auto hwp = expand_hwv(t, {.seed = 1, .workers = 1});
        benchmark::DoNotOptimize(hwp.terms.data());
    }
}
BENCHMARK(BM_ExpandTableau)->Unit(benchmark::kMillisecond);

void BM_UnrankTableau(benchmark::State& state) {
    TableauCounter counter(Partition({15, 6, 6, 6}), 11, 3);
    const auto count = counter.count();
    std::mt19937_64 rng(1);
    for (auto _ : state)
        benchmark::DoNotOptimize(counter.unrank(rng() % count));
}
BENCHMARK(BM_UnrankTableau);

void BM_EvaluateMod(benchmark::State& state) {
    auto basis = select_basis(Partition({6, 3, 3}), 4, 3, nullptr, {});
    HwpEvaluator ev(basis.elements.at(0).hwp);
    std::mt19937_64 rng(2);
    auto f = Family::symmetroid(3, 4).sample(rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(ev.mod(f, kPrimeA));
    state.counters["terms"] = static_cast<double>(ev.terms());
}
BENCHMARK(BM_EvaluateMod);

void BM_SymmetroidJacobian(benchmark::State& state) {
    auto fam = Family::symmetroid(static_cast<int>(state.range(0)), 4);
    std::mt19937_64 rng(3);
    auto p = fam.draw_parameters(rng, 100);
    for (auto _ : state)
        benchmark::DoNotOptimize(fam.jacobian(p));
}
BENCHMARK(BM_SymmetroidJacobian)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
