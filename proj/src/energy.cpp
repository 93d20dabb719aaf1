#include "potlab/energy.hpp"

#include "potlab/extended.hpp"
#include "potlab/potential.hpp"

#include <algorithm>
#include <cmath>

namespace potlab {

double green_energy(const Kernel& k, const Measure& omega, double gamma)
{
    if (!(gamma > 0.0)) throw InputError("energy exponent gamma must be positive");
    return lp_integral(potential_on_support(k, omega), gamma, omega);
}

std::vector<double> grid_derivative(const std::vector<double>& u)
{
    const std::size_t n = u.size();
    if (n < 3) throw InputError("gradient needs a grid with at least 3 cells");
    const double h = 1.0 / static_cast<double>(n);
    std::vector<double> du(n);
    du[0] = (u[1] - u[0]) / h;
    du[n - 1] = (u[n - 1] - u[n - 2]) / h;
    for (std::size_t i = 1; i + 1 < n; ++i) du[i] = (u[i + 1] - u[i - 1]) / (2.0 * h);
    return du;
}

GradientEnergy gradient_energy(const Field& u, double gamma, double floor_eps)
{
    if (!(gamma > 0.0)) throw InputError("energy exponent gamma must be positive");
    if (!(floor_eps >= 0.0)) throw InputError("floor_eps must be nonnegative");
    const auto du = grid_derivative(u.values);
    const double h = 1.0 / static_cast<double>(u.size());
    CompensatedSum acc;
    std::size_t excluded = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] < floor_eps) {
            ++excluded;
            continue;
        }
        acc.add(ext_mul(du[i] * du[i] * h, ext_pow(u[i], gamma - 1.0)));
    }
    return {acc.value(), static_cast<double>(excluded) * h};
}

EnergyReport ibp_check(const Kernel& k, const Measure& omega, double gamma, double floor_eps)
{
    if (k.kind() != KernelKind::Interval1D || !omega.is_grid())
        throw InputError("integration-by-parts check needs the interval kernel and a grid measure");
    EnergyReport r;
    r.gamma = gamma;
    r.n_cells = omega.size();
    const Field u = potential_on_support(k, omega);
    r.green_energy = lp_integral(u, gamma, omega);
    const auto grad = gradient_energy(u, gamma, floor_eps);
    r.gradient_energy = grad.value;
    r.excluded_mass = grad.excluded_mass;
    if (std::isfinite(r.green_energy) && std::isfinite(r.gradient_energy)) {
        r.ibp_relative_residual = std::abs(r.green_energy - gamma * r.gradient_energy) /
                                  std::max(r.green_energy, kTiny);
        if (r.green_energy > 0.0) r.equivalence_ratio = r.gradient_energy / r.green_energy;
    }
    return r;
}

} // namespace potlab
