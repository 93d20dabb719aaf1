#pragma once

// Green energy E_gamma[omega] = int (G omega)^gamma d omega, gradient energy
// int |u'|^2 u^(gamma-1) dx on a 1D grid, and the integration-by-parts check
// E_gamma[omega] = gamma * int |u'|^2 u^(gamma-1) dx for u = G omega.

#include "potlab/kernel.hpp"
#include "potlab/measure.hpp"

#include <optional>
#include <vector>

namespace potlab {

inline constexpr double kDefaultFloorEps = 1e-12;

struct EnergyReport {
    double gamma = 1.0;
    std::size_t n_cells = 0;
    double green_energy = 0.0;
    double gradient_energy = 0.0;
    double excluded_mass = 0.0;
    /// |E - gamma * grad| / max(E, tiny); present when both are finite.
    std::optional<double> ibp_relative_residual;
    /// grad / E; present when both are finite and E > 0.
    std::optional<double> equivalence_ratio;
};

double green_energy(const Kernel& k, const Measure& omega, double gamma);

struct GradientEnergy {
    double value = 0.0;
    /// Total width of cells skipped because u < floor_eps there.
    double excluded_mass = 0.0;
};

/// u sampled at the midpoints of a uniform grid on (0,1) (one value per cell).
GradientEnergy gradient_energy(const Field& u, double gamma, double floor_eps = kDefaultFloorEps);

/// Derivative of cell-midpoint samples: central differences inside, one-sided
/// at the two end cells. Needs at least 3 cells.
std::vector<double> grid_derivative(const std::vector<double>& u);

EnergyReport ibp_check(const Kernel& k, const Measure& omega, double gamma,
                       double floor_eps = kDefaultFloorEps);

} // namespace potlab
