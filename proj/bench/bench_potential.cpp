// Parallel vs serial reference potential evaluation on a 1D grid and on a
// scattered 3D Riesz configuration.

#include "potlab/potential.hpp"
#include "potlab/random.hpp"
#include "potlab/reference.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace potlab;

namespace {

Measure sin_grid(std::size_t n)
{
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * static_cast<double>(i % 7);
    return Measure::grid(std::move(v));
}

Measure cloud(std::size_t n)
{
    Rng rng(7);
    std::vector<double> xyz(3 * n);
    for (auto& x : xyz) x = rng.uniform(-1.0, 1.0);
    std::vector<double> w(n, 1.0 / static_cast<double>(n));
    return Measure::atomic(SiteSet::points(std::move(xyz), 3), std::move(w));
}

void grid_parallel(benchmark::State& st)
{
    const auto omega = sin_grid(static_cast<std::size_t>(st.range(0)));
    const auto k = Kernel::interval1d();
    const auto targets = omega.support_sites();
    for (auto _ : st) benchmark::DoNotOptimize(potential(k, omega, targets));
}

void grid_serial(benchmark::State& st)
{
    const auto omega = sin_grid(static_cast<std::size_t>(st.range(0)));
    const auto k = Kernel::interval1d();
    const auto targets = omega.support_sites();
    for (auto _ : st) benchmark::DoNotOptimize(reference::potential(k, omega, targets));
}

void riesz_parallel(benchmark::State& st)
{
    const auto omega = cloud(static_cast<std::size_t>(st.range(0)));
    const auto k = Kernel::riesz(1.0, 3);
    Rng rng(11);
    std::vector<double> xyz(3 * 256);
    for (auto& x : xyz) x = rng.uniform(-2.0, 2.0);
    const auto targets = SiteSet::points(std::move(xyz), 3);
    for (auto _ : st) benchmark::DoNotOptimize(potential(k, omega, targets));
}

void riesz_serial(benchmark::State& st)
{
    const auto omega = cloud(static_cast<std::size_t>(st.range(0)));
    const auto k = Kernel::riesz(1.0, 3);
    Rng rng(11);
    std::vector<double> xyz(3 * 256);
    for (auto& x : xyz) x = rng.uniform(-2.0, 2.0);
    const auto targets = SiteSet::points(std::move(xyz), 3);
    for (auto _ : st) benchmark::DoNotOptimize(reference::potential(k, omega, targets));
}

void operator_parallel(benchmark::State& st)
{
    const auto omega = sin_grid(static_cast<std::size_t>(st.range(0)));
    const PotentialOperator op(Kernel::interval1d(), omega, omega.support_sites());
    const auto c = omega.coefficients();
    for (auto _ : st) benchmark::DoNotOptimize(op.apply(c));
}

void operator_serial(benchmark::State& st)
{
    const auto omega = sin_grid(static_cast<std::size_t>(st.range(0)));
    const PotentialOperator op(Kernel::interval1d(), omega, omega.support_sites());
    const auto c = omega.coefficients();
    for (auto _ : st) benchmark::DoNotOptimize(reference::apply(op, c));
}

} // namespace

BENCHMARK(grid_parallel)->Arg(500)->Arg(2000);
BENCHMARK(grid_serial)->Arg(500)->Arg(2000);
BENCHMARK(riesz_parallel)->Arg(1000)->Arg(4000);
BENCHMARK(riesz_serial)->Arg(1000)->Arg(4000);
BENCHMARK(operator_parallel)->Arg(2000);
BENCHMARK(operator_serial)->Arg(2000);

BENCHMARK_MAIN();
