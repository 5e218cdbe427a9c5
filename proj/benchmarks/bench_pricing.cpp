#include <benchmark/benchmark.h>

#include "biv/biv.hpp"

namespace {

const biv::OptionQuote kQuote{100, 105, 0.5, 0.02, std::nullopt};

void BM_LatticePrice(benchmark::State& state) {
    const biv::LatticeSpec spec{static_cast<int>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(biv::lattice_price(kQuote, 0.25, spec));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LatticePrice)->RangeMultiplier(2)->Range(8, 512)->Complexity(benchmark::oNSquared);

void BM_LatticePriceAndVega(benchmark::State& state) {
    const biv::LatticeSpec spec{static_cast<int>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(biv::lattice_price_and_vega(kQuote, 0.25, spec));
}
BENCHMARK(BM_LatticePriceAndVega)->Arg(10)->Arg(100);

void BM_BlackScholes(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(biv::bs_call_price({100, 105, 0.02, 0.5, 0.25}));
}
BENCHMARK(BM_BlackScholes);

void BM_SolveImpliedVol(benchmark::State& state) {
    biv::OptionQuote q = kQuote;
    q.market_price = biv::lattice_price(q, 0.37);
    biv::SolverConfig config;
    if (state.range(0) == 1) config.derivative = biv::CentralDifference{};
    for (auto _ : state) benchmark::DoNotOptimize(biv::solve_implied_vol(q, {}, config));
}
BENCHMARK(BM_SolveImpliedVol)->Arg(0)->Arg(1)->ArgNames({"central_difference"});

void BM_BatchThousand(benchmark::State& state) {
    const auto path = biv::simulate_gbm({100, 0, 0.2, 90, 1, 1});
    const std::vector<double> strikes{95.0, 100.0, 105.0};
    const std::vector<double> sigmas{0.15, 0.3, 0.45};
    auto quotes = biv::generate_synthetic_quotes(path, strikes, 90, sigmas, {}, 0.0);
    const auto records = biv::to_records(quotes, path, 90,
                                         biv::Date{std::chrono::year{2020}, std::chrono::month{1}, std::chrono::day{1}});
    for (auto _ : state) {
        benchmark::DoNotOptimize(biv::run_batch(records, {}, {}, static_cast<unsigned>(state.range(0))));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(records.size()));
}
BENCHMARK(BM_BatchThousand)->Arg(1)->Arg(4)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
