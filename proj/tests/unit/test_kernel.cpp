#include "potlab/kernel.hpp"
#include "potlab/random.hpp"

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace potlab;

TEST_CASE("kernel evaluation")
{
    const auto riesz = Kernel::riesz(1.0, 3);
    CHECK(eval_kernel(riesz, Site{std::vector<double>{0, 0, 0}}, Site{std::vector<double>{1, 0, 0}}) == doctest::Approx(1.0));
    CHECK(std::isinf(eval_kernel(riesz, Site{std::vector<double>{0, 0, 0}}, Site{std::vector<double>{0, 0, 0}})));

    const auto m = Kernel::matrix({{2, 1}, {1, 2}});
    CHECK(eval_kernel(m, Site{std::size_t{0}}, Site{std::size_t{1}}) == 1.0);

    const auto g = Kernel::interval1d();
    const double oracle = oracle::interval_green_by_shooting(0.25, 0.5);
    CHECK(oracle == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(eval_kernel(g, Site{std::vector<double>{0.25}}, Site{std::vector<double>{0.5}}) ==
          doctest::Approx(oracle).epsilon(1e-12));
    for (double x : {0.1, 0.37, 0.8})
        for (double y : {0.05, 0.5, 0.93})
            CHECK(eval_kernel(g, Site{std::vector<double>{x}}, Site{std::vector<double>{y}}) ==
                  doctest::Approx(oracle::interval_green_by_shooting(x, y)).epsilon(1e-9));
}

TEST_CASE("Riesz scaling")
{
    // G(tx, ty) = t^(2 alpha - n) G(x, y)
    Rng rng(3);
    for (double alpha : {0.5, 1.0, 1.25}) {
        const auto k = Kernel::riesz(alpha, 3);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> x(3), y(3), tx(3), ty(3);
            const double t = rng.uniform(0.1, 10.0);
            for (int c = 0; c < 3; ++c) {
                x[c] = rng.uniform(-1, 1);
                y[c] = rng.uniform(-1, 1);
                tx[c] = t * x[c];
                ty[c] = t * y[c];
            }
            const double lhs = k.at(tx, ty);
            const double rhs = std::pow(t, 2 * alpha - 3) * k.at(x, y);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
        }
    }
}

TEST_CASE("kernel validation")
{
    CHECK_THROWS_AS(Kernel::riesz(1.5, 3), InputError);
    CHECK_THROWS_AS(Kernel::riesz(0.0, 3), InputError);
    CHECK_THROWS_AS(Kernel::matrix({{1, -1}, {1, 1}}), InputError);
    CHECK_THROWS_AS(Kernel::matrix({{1, 1}, {1}}), InputError);
    CHECK_THROWS_AS(eval_kernel(Kernel::matrix({{1}}), Site{std::size_t{3}}, Site{std::size_t{0}}), InputError);
    CHECK_THROWS_AS(eval_kernel(Kernel::interval1d(), Site{std::vector<double>{1.5}}, Site{std::vector<double>{0.5}}),
                    InputError);
}

TEST_CASE("quasi-symmetry")
{
    CHECK(estimate_quasi_symmetry(Kernel::matrix({{2, 1}, {1, 2}})) == 1.0);
    CHECK(estimate_quasi_symmetry(Kernel::matrix({{1, 2}, {1, 1}})) == 2.0);
    CHECK(estimate_quasi_symmetry(Kernel::riesz(1.0, 3)) == 1.0);
    CHECK(std::isinf(estimate_quasi_symmetry(Kernel::matrix({{1, 2}, {0, 1}}))));
}

TEST_CASE("WMP constant")
{
    const auto sym = Kernel::matrix({{2, 1}, {1, 2}});
    CHECK(single_atom_wmp_bound(sym) == 1.0);
    CHECK(estimate_wmp_constant(sym, 256, 0) == 1.0);
    CHECK(oracle::wmp_simplex_scan({{2, 1}, {1, 2}}) == doctest::Approx(1.0));

    CHECK(estimate_wmp_constant(Kernel::matrix({{1, 10}, {10, 1}}), 64, 0) >= 10.0);
    CHECK(estimate_wmp_constant(Kernel::interval1d(), 64, 0) == 1.0);
    CHECK(estimate_wmp_constant(Kernel::riesz(1.0, 3), 64, 0) == 1.0);
    CHECK_THROWS_AS(estimate_wmp_constant(Kernel::riesz(1.2, 3), 64, 0), InputError);

    auto declared = Kernel::riesz(1.2, 3);
    declared.declared_h = 2.5;
    CHECK(resolve_wmp_constant(declared) == 2.5);
    CHECK_THROWS_AS(single_atom_wmp_bound(Kernel::matrix({{0, 1}, {1, 1}})), InputError);
}

TEST_CASE("WMP estimate is nondecreasing in the sample count")
{
    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::vector<double>> rows(4, std::vector<double>(4));
        for (auto& r : rows)
            for (auto& v : r) v = rng.uniform(0.1, 3.0);
        const auto k = Kernel::matrix(rows);
        double prev = 0.0;
        for (std::size_t s : {1, 8, 32, 128, 512}) {
            const double h = estimate_wmp_constant(k, s, 5);
            CHECK(h >= prev);
            CHECK(h <= oracle::wmp_simplex_scan(rows, 60) * (1 + 1e-12) + 1e-12);
            prev = h;
        }
        CHECK(prev >= single_atom_wmp_bound(k));
    }
}

TEST_CASE("graph Green kernels satisfy the maximum principle")
{
    Rng rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + rng.below(2);
        const auto k = fixture::random_green_kernel(rng, n);
        const auto rows = fixture::rows_of(k);
        for (std::size_t i = 0; i < n; ++i) {
            double off = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                CHECK(rows[i][j] == rows[j][i]);
                if (j != i) off = std::max(off, rows[i][j]);
            }
            CHECK(off <= rows[i][i]);
        }
        CHECK(oracle::wmp_simplex_scan(rows, n == 2 ? 400 : 60) <= 1.0 + 1e-12);
        CHECK(estimate_wmp_constant(k, 128, 1) == 1.0);
    }
}
