#include <benchmark/benchmark.h>

#include "bellforge/geometry.hpp"
#include "bellforge/quantum.hpp"
#include "bellforge/randomness.hpp"

namespace {

using namespace bellforge;

void BM_ConditionalVerticesExact(benchmark::State& state) {
    BellScenario sc;
    const Rat eps(1, 4);
    for (auto _ : state) {
        auto v = pd_conditional_vertices(eps, eps, sc);
        benchmark::DoNotOptimize(v.vertices.size());
    }
}
BENCHMARK(BM_ConditionalVerticesExact)->Unit(benchmark::kMillisecond);

void BM_MaxOverVertices(benchmark::State& state) {
    BellScenario sc;
    const auto V = pd_conditional_vertices(Rat(1, 4), Rat(1, 4), sc);
    RelaxationParams<Rat> params;
    params.epsA = params.epsB = Rat(1, 4);
    const auto f = build_inequality<Rat>("pd_facet", params, sc);
    const int jobs = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto mx = max_over_vertices(f, V, jobs);
        benchmark::DoNotOptimize(mx.value);
    }
}
BENCHMARK(BM_MaxOverVertices)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_DetWitnessMatrix(benchmark::State& state) {
    const auto m = facet_witness_matrix(Rat(1, 4));
    for (auto _ : state) {
        auto d = det_exact(m);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_DetWitnessMatrix);

void BM_MembershipDouble(benchmark::State& state) {
    BellScenario sc;
    const auto Vr = pd_conditional_vertices(Rat(1, 4), Rat(1, 4), sc);
    VertexSet<double> V{Vr.scenario, Vr.kind, {}, {}};
    for (const auto& v : Vr.vertices) {
        std::vector<double> w;
        for (const Rat& x : v) w.push_back(x.to_double());
        V.vertices.push_back(std::move(w));
    }
    const auto query = behavior_of(tilted_hardy_strategy(0.25)).values();
    for (auto _ : state) {
        auto res = membership(query, V);
        benchmark::DoNotOptimize(res.status);
    }
}
BENCHMARK(BM_MembershipDouble)->Unit(benchmark::kMillisecond);

void BM_GuessCurve(benchmark::State& state) {
    for (auto _ : state) {
        auto pts = curve(0.25, 1000);
        benchmark::DoNotOptimize(pts.back().pg);
    }
}
BENCHMARK(BM_GuessCurve)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
