#include "rieszwave/densela.hpp"
#include "rieszwave/fracops.hpp"
#include "rieszwave/problems.hpp"
#include "rieszwave/solver2d.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

using namespace rieszwave;

namespace {

std::vector<double> smooth(std::size_t n) {
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = std::sin(0.01 * static_cast<double>(i * i));
    return u;
}

void BM_ApplyRiesz(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const RieszStencil stencil(FractionalOrder(1.5), 1.0 / static_cast<double>(n + 1), n);
    const auto u = smooth(n);
    std::vector<double> out(n);
    for (auto _ : state) {
        apply_riesz(stencil, u, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ApplyRiesz)->RangeMultiplier(2)->Range(64, 1024)->Complexity(benchmark::oNSquared);

void BM_LuSolve(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const RieszStencil stencil(FractionalOrder(1.5), 1.0 / static_cast<double>(n + 1), n);
    DenseMatrix m = stencil.matrix();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = -0.1 * m(i, j) + (i == j ? 1.0 : 0.0);
    const LuFactors lu = lu_factor(m);
    const auto b = smooth(n);
    for (auto _ : state) {
        auto x = b;
        lu_solve_in_place(lu, x);
        benchmark::DoNotOptimize(x.data());
    }
}
BENCHMARK(BM_LuSolve)->RangeMultiplier(2)->Range(64, 1024);

void BM_AdiStep(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto problem = example_4_2(FractionalOrder(1.3), FractionalOrder(1.7));
    const Grid2D grid(1.0, n, 1.0, n);
    const double tau = 1.0 / static_cast<double>(n);
    const AdiSystems systems(Scheme2D(problem, grid, tau, Theta(0.75)));
    SolverState2D s;
    s.tau = tau;
    s.u_prev = Field2D(grid.nx(), grid.ny(), grid.sample(problem.initial_displacement));
    s.u_curr = first_step_2d(problem, grid, tau);
    const Field2D f = sample_source(problem, grid, tau);
    for (auto _ : state) {
        benchmark::DoNotOptimize(adi_step(s, systems, f).values().data());
    }
}
BENCHMARK(BM_AdiStep)->Arg(20)->Arg(40)->Arg(80)->Arg(160)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
