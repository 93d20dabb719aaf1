#include "potlab/energy.hpp"
#include "potlab/potential.hpp"

#include "../support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace potlab;

namespace {
Field sampled(std::size_t n, double (*f)(double))
{
    Field u{std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) u.values[i] = f((static_cast<double>(i) + 0.5) / static_cast<double>(n));
    return u;
}
double parabola(double x) { return x * (1 - x) / 2; }
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
} // namespace

TEST_CASE("Green energy")
{
    const auto k = Kernel::matrix({{2, 1}, {1, 2}});
    CHECK(green_energy(k, Measure::atomic(SiteSet::indices({0, 1}), {1, 1}), 1.0) == doctest::Approx(6.0));
    CHECK(green_energy(k, Measure::atomic(SiteSet::indices({1}), {1}), 2.5) == doctest::Approx(std::pow(2.0, 2.5)));
    CHECK(std::abs(green_energy(Kernel::interval1d(), Measure::lebesgue(2000), 1.0) - oracle::kLebesgueGreenEnergy1) < 1e-5);
}

TEST_CASE("Green energy scales like c^(gamma+1)")
{
    const auto k = Kernel::matrix({{2, 0.5, 0.1}, {0.5, 1.5, 0.7}, {0.1, 0.7, 1}});
    const auto w = Measure::atomic(SiteSet::indices({0, 1, 2}), {0.3, 1.1, 0.6});
    for (double gamma : {0.5, 1.0, 2.0})
        for (double c : {0.25, 3.0})
            CHECK(green_energy(k, w.scaled(c), gamma) ==
                  doctest::Approx(std::pow(c, gamma + 1) * green_energy(k, w, gamma)).epsilon(1e-13));
}

TEST_CASE("gradient energy")
{
    const auto u = sampled(2000, parabola);
    CHECK(std::abs(gradient_energy(u, 1.0).value - oracle::kLebesgueGradientEnergy1) < 1e-4);
    CHECK(std::abs(gradient_energy(u, 2.0).value - oracle::kLebesgueGradientEnergy2) < 1e-4);
    CHECK(gradient_energy(Field{std::vector<double>(50, 2.0)}, 1.5).value == 0.0);
    const auto small = gradient_energy(u, 0.5, 1e-3);
    CHECK(small.excluded_mass > 0.0);
    CHECK(std::isfinite(small.value));
}

TEST_CASE("IBP identity on Lebesgue data")
{
    const auto k = Kernel::interval1d();
    const auto r1 = ibp_check(k, Measure::lebesgue(2000), 1.0);
    REQUIRE(r1.ibp_relative_residual);
    CHECK(*r1.ibp_relative_residual <= 1e-3);
    CHECK(rel(r1.green_energy, oracle::kLebesgueGreenEnergy1) < 1e-4);

    const auto r2 = ibp_check(k, Measure::lebesgue(2000), 2.0);
    REQUIRE(r2.ibp_relative_residual);
    CHECK(*r2.ibp_relative_residual <= 1e-3);
    CHECK(rel(r2.green_energy, oracle::kLebesgueGreenEnergy2) < 1e-4);
    CHECK(rel(r2.gradient_energy, oracle::kLebesgueGradientEnergy2) < 1e-3);

    for (double gamma : {1.0, 2.0}) {
        const auto coarse = ibp_check(k, Measure::lebesgue(250), gamma);
        const auto fine = ibp_check(k, Measure::lebesgue(2000), gamma);
        CHECK(*fine.ibp_relative_residual < *coarse.ibp_relative_residual);
    }
}

TEST_CASE("IBP identity for a near point mass")
{
    const std::size_t n = 2000;
    const std::size_t cell = 600;
    std::vector<double> v(n, 0.0);
    v[cell] = static_cast<double>(n);
    const auto r = ibp_check(Kernel::interval1d(), Measure::grid(v), 1.0);
    REQUIRE(r.ibp_relative_residual);
    CHECK(*r.ibp_relative_residual <= 2e-2);
    const double y = (static_cast<double>(cell) + 0.5) / static_cast<double>(n);
    CHECK(rel(r.green_energy, oracle::tent_green_energy(y)) < 2e-2);
    CHECK(rel(r.gradient_energy, oracle::tent_gradient_energy(y)) < 2e-2);
}

TEST_CASE("energy input errors")
{
    CHECK_THROWS_AS(ibp_check(Kernel::matrix({{1}}), Measure::lebesgue(10), 1.0), InputError);
    CHECK_THROWS_AS(grid_derivative({1.0, 2.0}), InputError);
}
