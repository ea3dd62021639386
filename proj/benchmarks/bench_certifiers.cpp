#include "patchcert/certifiers.hpp"
#include "patchcert/oracle.hpp"
#include "patchcert/synthetic.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace patchcert;

VoteDataset imagenet_shaped(SyntheticProfile profile, int samples) {
    RunConfig config;  // 224 / 19 / 1000 labels
    return gen_synthetic(profile, config, 7, samples);
}

void BM_AnalyzeSample(benchmark::State& state) {
    const VoteDataset d =
        imagenet_shaped(SyntheticProfile::random_votes, 32);
    const PatchSpec patch{static_cast<int>(state.range(0))};
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            analyze_sample(d.samples[i % d.samples.size()], d.scheme, d.labels, patch));
        ++i;
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_AnalyzeSample)->Arg(16)->Arg(96)->Arg(112);

void BM_CostcertMinkUnanimous(benchmark::State& state) {
    const VoteDataset d = imagenet_shaped(SyntheticProfile::well_classified, 8);
    const PatchSpec patch{96};
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(costcert_mink(d.samples[i % d.samples.size()], d.scheme,
                                               d.labels, patch));
        ++i;
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_CostcertMinkUnanimous);

void BM_ComputeDelta(benchmark::State& state) {
    const AblationScheme scheme{224, 224, 19, true};
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_delta(scheme, PatchSpec{96}));
    }
}
BENCHMARK(BM_ComputeDelta);

void BM_OracleMinPushCost(benchmark::State& state) {
    CleanLevel level;
    level.num_labels = 5;
    level.alpha = {{0, 5}, {1, 3}, {2, 2}, {3, 1}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle_min_push_cost(level, 0, 3));
    }
}
BENCHMARK(BM_OracleMinPushCost);

}  // namespace

BENCHMARK_MAIN();
