#include "clpb/baselines.hpp"
#include "clpb/clpb.hpp"

#include <benchmark/benchmark.h>

using namespace clpb;

static void BM_ChaoticStream(benchmark::State& state) {
    const auto kind = kAllChaoticMaps[static_cast<std::size_t>(state.range(0))];
    ChaoticStream stream(kind);
    for (auto _ : state) benchmark::DoNotOptimize(stream.next_unit());
    state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_ChaoticStream)->DenseRange(0, 9);

static void BM_Evaluate(benchmark::State& state, const char* id) {
    const auto spec = make_function(id);
    Rng rng(1);
    const auto x = random_position(spec.bounds, rng);
    for (auto _ : state) benchmark::DoNotOptimize(spec.evaluate(x));
}
BENCHMARK_CAPTURE(BM_Evaluate, sphere, "TF1");
BENCHMARK_CAPTURE(BM_Evaluate, rastrigin, "TF9");
BENCHMARK_CAPTURE(BM_Evaluate, composite, "TF17");
BENCHMARK_CAPTURE(BM_Evaluate, lennard_jones, "CEC03");
BENCHMARK_CAPTURE(BM_Evaluate, rotated_schaffer, "CEC06");

static void BM_Crossover(benchmark::State& state) {
    Rng rng(2);
    const auto bounds = Bounds::uniform(30, -100, 100);
    const Individual a(random_position(bounds, rng));
    const Individual b(random_position(bounds, rng));
    const auto kind = static_cast<CrossoverKind>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(crossover(a, b, 1.0, rng, kind));
}
BENCHMARK(BM_Crossover)->DenseRange(0, 2);

static void BM_RunLpb(benchmark::State& state) {
    const auto spec = make_function("TF9", 10);
    LpbConfig c = clpb_config(ChaoticMapKind::Logistic);
    c.max_iterations = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_clpb(c, spec).best_cost);
}
BENCHMARK(BM_RunLpb)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

static void BM_RunBaseline(benchmark::State& state) {
    const auto spec = make_function("TF9", 10);
    for (auto _ : state) {
        if (state.range(0) == 0) {
            benchmark::DoNotOptimize(run_ga(GaConfig{}, spec).best_cost);
        } else {
            benchmark::DoNotOptimize(run_pso(PsoConfig{}, spec).best_cost);
        }
    }
    state.SetLabel(state.range(0) == 0 ? "ga" : "pso");
}
BENCHMARK(BM_RunBaseline)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
