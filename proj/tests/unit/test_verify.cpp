#include "potlab/potential.hpp"
#include "potlab/solver.hpp"
#include "potlab/verify.hpp"

#include "../support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace potlab;

namespace {
Measure atoms(std::vector<std::size_t> idx, std::vector<double> w)
{
    return Measure::atomic(SiteSet::indices(std::move(idx)), std::move(w));
}
double extra(const VerifyReport& r, const std::string& key)
{
    for (const auto& [k, v] : r.extras)
        if (k == key) return v;
    FAIL("missing extra " << key);
    return 0.0;
}
const auto kSym = Kernel::matrix({{2, 1}, {1, 2}});
} // namespace

TEST_CASE("lower bound")
{
    const auto r = check_lower_bound(Kernel::matrix({{2}}), atoms({0}, {3}), 0.5, Field{{36}}, 1.0);
    CHECK(r.passed);
    CHECK(r.constant_used == doctest::Approx(0.25));
    CHECK(r.lhs == doctest::Approx(9.0));

    Problem p;
    p.kernel = kSym;
    p.sigma = atoms({0, 1}, {1, 1});
    const auto sol = solve(p);
    CHECK(check_lower_bound(p.kernel, p.sigma, 0.5, sol.u_sigma, 1.0).passed);

    const auto bad = check_lower_bound(Kernel::matrix({{2}}), atoms({0}, {3}), 0.5, Field{{1}}, 1.0);
    CHECK(bad.status == CheckStatus::HypothesisFailed);
}

TEST_CASE("iterated inequalities on the 2x2 fixture")
{
    const auto w = atoms({0, 1}, {1, 1});
    const auto up = check_iterated(kSym, w, 2.0, 1.0);
    CHECK(up.passed);
    CHECK(up.lhs == doctest::Approx(9.0));
    CHECK(up.rhs == doctest::Approx(18.0));
    const auto down = check_iterated(kSym, w, 0.5, 1.0);
    CHECK(down.passed);
    CHECK(down.lhs == doctest::Approx(std::sqrt(3.0)));
    CHECK(down.rhs == doctest::Approx(0.5 * std::sqrt(3.0)));
    const auto eq = check_iterated(kSym, w, 1.0, 1.0);
    CHECK(eq.passed);
    CHECK(std::abs(eq.margin) <= 1e-12);

    const auto fails = check_iterated(Kernel::matrix({{1, 10}, {10, 1}}), atoms({0}, {1}), 2.0, 1.0);
    CHECK_FALSE(fails.passed);
    CHECK(check_iterated(Kernel::matrix({{1, 10}, {10, 1}}), atoms({0}, {1}), 2.0, 10.0).passed);
}

TEST_CASE("norm constant estimates")
{
    CHECK(estimate_norm_constant(Kernel::matrix({{1}}), atoms({0}, {1}), 2, 1, 64, 0) == doctest::Approx(1.0));
    CHECK(estimate_norm_constant(Kernel::matrix({{4.5}}), atoms({0}, {1}), 3, 0.7, 64, 0) == doctest::Approx(4.5));

    const double est = estimate_norm_constant(kSym, atoms({0, 1}, {1, 1}), 3, 1.5, 256, 0);
    const double grid = oracle::norm_constant_search({{2, 1}, {1, 2}}, {1, 1}, 3, 1.5, 200, false);
    CHECK(est <= grid * (1 + 1e-12) + 1e-12);
    CHECK(est >= 0.95 * grid);
    CHECK_THROWS_AS(estimate_norm_constant(kSym, Measure::zero(), 3, 1.5, 8, 0), InputError);
    CHECK_THROWS_AS(estimate_norm_constant(kSym, atoms({0}, {1}), 1.0, 0.5, 8, 0), InputError);
}

TEST_CASE("norm equivalence")
{
    const auto r = check_norm_equivalence(kSym, atoms({0, 1}, {1, 1}), 3, 1.5, 256, 0, 1.0);
    CHECK(r.passed);
    CHECK(extra(r, "energy") == doctest::Approx(54.0));
    CHECK(check_norm_equivalence(Kernel::matrix({{1}}), atoms({0}, {1}), 2, 1, 16, 0, 1.0).passed);

    const auto riesz = check_norm_equivalence(Kernel::riesz(1.0, 3),
                                              Measure::atomic(SiteSet::points({0, 0, 0, 1, 0, 0}, 3), {1, 1}),
                                              2, 1, 16, 0, 1.0);
    CHECK(riesz.note == "infinite energy");
    CHECK(std::isinf(extra(riesz, "energy")));
}

TEST_CASE("relation lemma, scalar all-ones in each case")
{
    const auto one = Kernel::matrix({{1}});
    const auto w = atoms({0}, {1});
    for (double gamma : {1.0, 0.25, 0.5}) {
        const auto r = check_relation_lemma(one, w, w, 0.5, gamma, 1.0);
        CHECK(r.passed);
        CHECK(extra(r, "I_cross") == 1.0);
        CHECK(r.lhs <= r.rhs);
    }
    const double a = relation_case3_parameter(0.5);
    CHECK(a == doctest::Approx(5.0 / 6.0));
    CHECK(a > 2.0 / 3.0);
    CHECK(a < 1.0);
}

TEST_CASE("Hardy ratios")
{
    const std::size_t n = 2000;
    const auto omega = Measure::lebesgue(n);
    const auto u = potential_on_support(Kernel::interval1d(), omega);
    Field phi{std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) phi.values[i] = std::sin(M_PI * (static_cast<double>(i) + 0.5) / n);
    const auto r = check_hardy(u, omega, phi);
    CHECK(std::isfinite(r.ratio_a));
    CHECK(r.ratio_a >= 0.1);
    CHECK(r.ratio_a <= 10.0);
    CHECK(std::isfinite(r.ratio_b));

    const auto zero = check_hardy(u, omega, Field{std::vector<double>(n, 0.0)});
    CHECK(zero.zero_denominator);
    CHECK(zero.ratio_a == 0.0);
    CHECK(zero.ratio_b == 0.0);

    const auto self = check_hardy(u, omega, u);
    CHECK(std::isfinite(self.ratio_a));
    CHECK(std::isfinite(self.ratio_b));

    CHECK_THROWS_AS(check_hardy(u, omega, Field{std::vector<double>(n, 1.0)}), InputError);
}

TEST_CASE("exponent table")
{
    const auto row = exponent_table(3, 2.0, 0.5);
    CHECK(row.gamma == 1.0);
    CHECK(row.r == 3.0);
    CHECK(row.s == 1.0);
    CHECK(row.r2 == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(row.s2 == doctest::Approx(6.0 / 5.0).epsilon(1e-15));
    for (int n = 3; n <= 10; ++n)
        for (int k = 1; k <= 10; ++k) {
            const double lo = n / (n - 1.0);
            const double p = lo + (2.0 - lo) * k / 10.0;
            CHECK(std::abs(exponent_table(n, p, 0.3).p_of_gamma - p) <= 1e-12);
        }
    CHECK_THROWS_AS(exponent_table(2, 1.8, 0.5), InputError);
    CHECK_THROWS_AS(exponent_table(3, 1.5, 0.5), InputError);
    CHECK_THROWS_AS(exponent_table(3, 2.1, 0.5), InputError);
    CHECK_THROWS_AS(exponent_table(3, 2.0, 1.0), InputError);
}

TEST_CASE("HLS condition")
{
    CHECK(hls_exponent(1, 3, 1) == doctest::Approx(1.2));
    CHECK(hls_exponent(1, 3, 1e-9) > 1.0);
    CHECK(hls_exponent(1, 3, 1e-9) == doctest::Approx(1.0).epsilon(1e-8));

    std::vector<double> xyz;
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            for (int k = 0; k < 10; ++k) {
                const std::vector<double> p{(i + 0.5) / 10, (j + 0.5) / 10, (k + 0.5) / 10};
                xyz.insert(xyz.end(), p.begin(), p.end());
                pts.push_back(p);
            }
    const std::vector<double> w(1000, 1e-3);
    const auto r = check_hls_condition(1, 3, 1, Measure::atomic(SiteSet::points(xyz, 3), w), 1e-3);
    CHECK(r.passed);
    CHECK(extra(r, "s") == doctest::Approx(1.2));
    CHECK(extra(r, "energy") == doctest::Approx(oracle::riesz_lattice_energy(pts, w, 1, 1)).epsilon(1e-12));
    CHECK(extra(r, "density_norm") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(check_hls_condition(2, 3, 1, Measure::atomic(SiteSet::points(xyz, 3), w), 1e-3), InputError);
}

TEST_CASE("digest is stable")
{
    CHECK(digest_of("") == "cbf29ce484222325");
    CHECK(digest_of("a") == "af63dc4c8601ec8c");
}
