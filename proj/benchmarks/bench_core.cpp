#include <benchmark/benchmark.h>

#include "generators.hpp"
#include "oracles.hpp"

#include "leglab/legdyn.hpp"
#include "leglab/numerics.hpp"
#include "leglab/reservoir.hpp"
#include "leglab/rng.hpp"
#include "leglab/symp.hpp"

using namespace leglab;

namespace {

void BM_MatExp(benchmark::State& state) {
    Xoshiro256pp rng(1);
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const Matrix a = harness::random_matrix(rng, n, n, -1.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(mat_exp(a));
}
BENCHMARK(BM_MatExp)->Arg(4)->Arg(8)->Arg(16);

void BM_Phi1(benchmark::State& state) {
    Xoshiro256pp rng(2);
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const Matrix a = harness::random_matrix(rng, n, n, -1.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(phi1(a));
}
BENCHMARK(BM_Phi1)->Arg(8);

void BM_BuildQuadratic(benchmark::State& state) {
    Xoshiro256pp rng(3);
    const auto spec =
        harness::random_quadratic_spec(rng, static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(reservoir::build_quadratic(spec));
}
BENCHMARK(BM_BuildQuadratic)->Arg(4)->Arg(8);

void BM_ReservoirRun(benchmark::State& state) {
    Xoshiro256pp rng(4);
    const auto spec = harness::random_quadratic_spec(rng, 8, 1);
    const auto res = reservoir::build_quadratic(spec);
    const std::vector<Vector> inputs(1000, Vector{0.3});
    const Vector x0 = harness::random_vector(rng, 16, -1.0, 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(reservoir::run(res, x0, std::span<const Vector>(inputs)));
}
BENCHMARK(BM_ReservoirRun);

void BM_GprStep(benchmark::State& state) {
    Xoshiro256pp rng(5);
    const std::size_t d = static_cast<std::size_t>(state.range(0));
    const auto ss = harness::random_state_space(rng, d, 1);
    const auto theta = harness::random_natural(rng, d);
    const Vector y{0.4};
    for (auto _ : state) benchmark::DoNotOptimize(legdyn::gpr_step(theta, ss, y));
}
BENCHMARK(BM_GprStep)->Arg(2)->Arg(4);

void BM_OuFlowNatural(benchmark::State& state) {
    Xoshiro256pp rng(6);
    const auto ou = harness::random_ou(rng, 3);
    const auto theta0 = harness::random_natural(rng, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(legdyn::ou_flow_natural(theta0, ou, 2.0, 200));
}
BENCHMARK(BM_OuFlowNatural);

void BM_TransportGraph(benchmark::State& state) {
    Xoshiro256pp rng(7);
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const Matrix w = harness::random_symplectic(rng, n);
    const symp::AffineSymplecticMap map(w, harness::random_vector(rng, 2 * n, -1.0, 1.0));
    const symp::QuadraticPotential psi(harness::random_symmetric(rng, n, 1.0),
                                       harness::random_vector(rng, n, -1.0, 1.0), 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(symp::transport_quadratic_graph(map, psi));
}
BENCHMARK(BM_TransportGraph)->Arg(4)->Arg(8);

void BM_Decompose(benchmark::State& state) {
    Xoshiro256pp rng(8);
    const auto spec = harness::random_linear_p_spec(rng, 8, 2);
    const auto res = reservoir::build_linear_p(spec);
    const Vector u{0.5, -0.25};
    const symp::AffineSymplecticMap update(res.w, res.w_in * u);
    for (auto _ : state) benchmark::DoNotOptimize(symp::decompose_graph_preserving(update));
}
BENCHMARK(BM_Decompose);

void BM_ChiValue(benchmark::State& state) {
    Xoshiro256pp rng(9);
    const auto spec = harness::random_linear_p_spec(rng, 4, 1);
    const reservoir::ChiQuadrature chi(spec, Vector{0.7}, spec.dt, 16);
    const Vector q = harness::random_vector(rng, 4, -1.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(chi.value(q));
}
BENCHMARK(BM_ChiValue);

}  // namespace

BENCHMARK_MAIN();
