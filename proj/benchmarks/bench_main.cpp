// Microbenchmarks for the hot paths: chart transfers, the Jacobi solver,
// weight extraction, Karcher descent, and the domain-reduction walk.

#include <benchmark/benchmark.h>

#include "htri/balance.hpp"
#include "htri/kernel.hpp"
#include "htri/rng.hpp"
#include "htri/surface.hpp"
#include "htri/triangulation.hpp"

using namespace htri;

namespace {

const genus2_surface& surf() {
    static genus2_surface s = build_genus2();
    return s;
}

const geodesic_mapping& base_mapping() {
    static geodesic_mapping m = build_base_triangulation(surf().domain, surf().group);
    return m;
}

void BM_exp_log_roundtrip(benchmark::State& state) {
    rng r(7);
    hpoint p = r.point_in_ball(2.0);
    vec3 v = r.tangent_at(p, 1.5);
    for (auto _ : state) {
        hpoint q = exp_map(p, v);
        benchmark::DoNotOptimize(log_map(p, q));
    }
}
BENCHMARK(BM_exp_log_roundtrip);

void BM_build_base(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(build_base_triangulation(surf().domain, surf().group));
}
BENCHMARK(BM_build_base);

void BM_residual_sweep(benchmark::State& state) {
    const geodesic_mapping& m = base_mapping();
    weight_vector w = uniform_weights(*m.cx);
    for (auto _ : state) benchmark::DoNotOptimize(max_residual_norm(m, w));
}
BENCHMARK(BM_residual_sweep);

void BM_solve_uniform(benchmark::State& state) {
    const geodesic_mapping& m = base_mapping();
    weight_vector w = uniform_weights(*m.cx);
    for (auto _ : state) benchmark::DoNotOptimize(solve_balanced(w, m));
}
BENCHMARK(BM_solve_uniform)->Unit(benchmark::kMillisecond);

void BM_mean_value_weights(benchmark::State& state) {
    const geodesic_mapping& m = base_mapping();
    for (auto _ : state) benchmark::DoNotOptimize(mean_value_weights(m));
}
BENCHMARK(BM_mean_value_weights);

void BM_karcher_mean(benchmark::State& state) {
    convex_disk d = compute_kernel(star_polygon(base_mapping(), 0));
    for (auto _ : state) benchmark::DoNotOptimize(karcher_mean(d));
}
BENCHMARK(BM_karcher_mean);

void BM_reduce_to_domain(benchmark::State& state) {
    rng r(11);
    hpoint p = r.point_in_ball(6.0);
    for (auto _ : state) benchmark::DoNotOptimize(reduce_to_domain(surf().group, surf().domain, p));
}
BENCHMARK(BM_reduce_to_domain);

}  // namespace

BENCHMARK_MAIN();
