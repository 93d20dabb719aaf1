#pragma once

// Green potentials G omega (x) = int G(x, y) d omega(y) and the iterated
// potentials G((G omega)^(s-1) d omega). Evaluation is parallel over targets;
// each target's sum runs in fixed order, so results do not depend on the
// thread count. A serial reference lives in potlab/reference.hpp.

#include "potlab/kernel.hpp"
#include "potlab/measure.hpp"

#include <span>
#include <vector>

namespace potlab {

/// Subcells used for a grid cell that contains the target (Riesz kernels).
inline constexpr std::size_t kSingularSubdivision = 16;

/// Quadrature weight matrix for one (kernel, source geometry, targets) triple:
/// G(f omega)(x_i) = sum_j entry(i, j) * f_j * coefficient_j(omega).
/// Atomic sources give entry = G(x_i, y_j); grid sources give the cell
/// integral of G(x_i, .), midpoint rule, subdivided for singular cells.
class QuadratureRule {
public:
    QuadratureRule(const Kernel& k, const Measure& source, const SiteSet& targets);

    std::size_t n_targets() const noexcept { return targets_->size(); }
    std::size_t n_sources() const noexcept { return n_sources_; }
    double entry(std::size_t i, std::size_t j) const noexcept;

    /// Skip entry (i, i); used for atomic self-interaction removal.
    bool drop_diagonal = false;

private:
    const Kernel* kernel_;
    const Measure* source_;
    const SiteSet* targets_;
    std::size_t n_sources_;
    double cell_width_ = 0.0;
    bool singular_cells_ = false;
};

/// Dense materialized QuadratureRule, for repeated application with the same
/// geometry (the solver's fixed-point sweeps).
class PotentialOperator {
public:
    PotentialOperator(const Kernel& k, const Measure& source, const SiteSet& targets);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * cols_ + j]; }

    /// Values sum_j A_ij c_j, with c the per-atom/cell coefficients of the
    /// (possibly reweighted) source measure.
    Field apply(std::span<const double> coefficients) const;

private:
    std::size_t rows_, cols_;
    std::vector<double> a_;
};

Field potential(const Kernel& k, const Measure& omega, const SiteSet& targets);

enum class SelfInteraction { Keep, Drop };

/// G omega on the atoms/cells of omega itself. With Drop, atomic sources omit
/// the y = x term (for singular kernels on atomic stand-ins of densities).
Field potential_on_support(const Kernel& k, const Measure& omega,
                           SelfInteraction self = SelfInteraction::Keep);

/// G((G omega)^(s-1) d omega) at `targets`, for s > 0.
Field iterated_potential(const Kernel& k, const Measure& omega, double s,
                         const SiteSet& targets);

/// Checks that omega's support and the targets are valid sites for k.
void check_compatible(const Kernel& k, const Measure& omega, const SiteSet& targets);

} // namespace potlab
