// Serial path (workers = 1) against the OpenMP path for each parallel kernel.
// The argument is the worker count; 0 means the OpenMP default.

#include "bgax/decision.hpp"
#include "bgax/models.hpp"
#include "bgax/parallel.hpp"
#include "bgax/pipeline.hpp"

#include <benchmark/benchmark.h>

namespace
{

void naive_models(benchmark::State &state)
{
    std::vector<bgax::Identity> ids{bgax::parse_identity("x·yz = y·xz")};
    int workers = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(bgax::enumerate_models_naive(ids, 3, workers));
    state.counters["threads"] = bgax::resolve_workers(workers);
}

void agreement_sweep(benchmark::State &state)
{
    int workers = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(bgax::parity_z2_sweep(6, "exyz", workers));
    state.counters["threads"] = bgax::resolve_workers(workers);
}

void fixture_batch(benchmark::State &state)
{
    bgax::ClassifyConfig config;
    config.prove = false;
    const std::string file = bgax::fixture_file();
    int workers = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(bgax::run_batch(file, config, workers));
    state.counters["threads"] = bgax::resolve_workers(workers);
}

} // namespace

BENCHMARK(naive_models)->Arg(bgax::serial_workers)->Arg(bgax::default_workers)->Unit(benchmark::kMillisecond);
BENCHMARK(agreement_sweep)->Arg(bgax::serial_workers)->Arg(bgax::default_workers)->Unit(benchmark::kMillisecond);
BENCHMARK(fixture_batch)->Arg(bgax::serial_workers)->Arg(bgax::default_workers)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
