#include "potlab/potential.hpp"

#include "potlab/extended.hpp"

#include <cmath>

namespace potlab {

namespace {

// Below this many kernel evaluations the fork/join cost dominates.
constexpr std::size_t kParallelWork = 1u << 14;

} // namespace

void check_compatible(const Kernel& k, const Measure& omega, const SiteSet& targets)
{
    if (omega.is_grid()) {
        const bool ok = k.kind() == KernelKind::Interval1D ||
                        (k.riesz_part() && k.riesz_part()->dim == 1);
        if (!ok) throw InputError("grid measures need the interval kernel or a 1D Riesz kernel");
    } else {
        check_sites(k, omega.atomic_part()->sites);
    }
    check_sites(k, targets);
}

QuadratureRule::QuadratureRule(const Kernel& k, const Measure& source, const SiteSet& targets)
    : kernel_(&k), source_(&source), targets_(&targets), n_sources_(source.size())
{
    if (auto g = source.grid_part()) {
        cell_width_ = g->cell_width();
        singular_cells_ = k.kind() == KernelKind::Riesz;
    }
}

double QuadratureRule::entry(std::size_t i, std::size_t j) const noexcept
{
    if (drop_diagonal && i == j) return 0.0;
    if (auto g = source_->grid_part()) {
        const double x = targets_->point(i)[0];
        const double mid = g->midpoint(j);
        if (singular_cells_ && std::abs(x - mid) <= 0.5 * cell_width_) {
            const double sub = cell_width_ / static_cast<double>(kSingularSubdivision);
            const double left = mid - 0.5 * cell_width_;
            CompensatedSum acc;
            for (std::size_t s = 0; s < kSingularSubdivision; ++s) {
                const double y = left + (static_cast<double>(s) + 0.5) * sub;
                acc.add(sub * kernel_->at(std::span(&x, 1), std::span(&y, 1)));
            }
            return acc.value();
        }
        return cell_width_ * kernel_->at(std::span(&x, 1), std::span(&mid, 1));
    }
    const SiteSet& src = source_->atomic_part()->sites;
    if (targets_->is_indexed()) return kernel_->at(targets_->index(i), src.index(j));
    return kernel_->at(targets_->point(i), src.point(j));
}

PotentialOperator::PotentialOperator(const Kernel& k, const Measure& source,
                                     const SiteSet& targets)
    : rows_(targets.size()), cols_(source.size()), a_(rows_ * cols_)
{
    check_compatible(k, source, targets);
    const QuadratureRule rule(k, source, targets);
    const auto rows = static_cast<std::ptrdiff_t>(rows_);
#pragma omp parallel for schedule(static) if (rows_ * cols_ > kParallelWork)
    for (std::ptrdiff_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            a_[static_cast<std::size_t>(i) * cols_ + j] = rule.entry(static_cast<std::size_t>(i), j);
}

Field PotentialOperator::apply(std::span<const double> c) const
{
    if (c.size() != cols_)
        throw InputError("operator expects " + std::to_string(cols_) + " coefficients, got " +
                         std::to_string(c.size()));
    Field out{std::vector<double>(rows_)};
    const auto rows = static_cast<std::ptrdiff_t>(rows_);
#pragma omp parallel for schedule(static) if (rows_ * cols_ > kParallelWork)
    for (std::ptrdiff_t i = 0; i < rows; ++i) {
        const double* row = a_.data() + static_cast<std::size_t>(i) * cols_;
        CompensatedSum acc;
        for (std::size_t j = 0; j < cols_; ++j) acc.add(ext_mul(row[j], c[j]));
        out.values[static_cast<std::size_t>(i)] = acc.value();
    }
    return out;
}

namespace {

Field evaluate(const QuadratureRule& rule, const std::vector<double>& c)
{
    const std::size_t n_src = rule.n_sources();
    Field out{std::vector<double>(rule.n_targets())};
    const auto rows = static_cast<std::ptrdiff_t>(rule.n_targets());
#pragma omp parallel for schedule(static) if (rule.n_targets() * n_src > kParallelWork)
    for (std::ptrdiff_t i = 0; i < rows; ++i) {
        CompensatedSum acc;
        for (std::size_t j = 0; j < n_src; ++j)
            acc.add(ext_mul(rule.entry(static_cast<std::size_t>(i), j), c[j]));
        out.values[static_cast<std::size_t>(i)] = acc.value();
    }
    return out;
}

} // namespace

Field potential(const Kernel& k, const Measure& omega, const SiteSet& targets)
{
    check_compatible(k, omega, targets);
    return evaluate(QuadratureRule(k, omega, targets), omega.coefficients());
}

Field potential_on_support(const Kernel& k, const Measure& omega, SelfInteraction self)
{
    const SiteSet sites = omega.support_sites();
    check_compatible(k, omega, sites);
    QuadratureRule rule(k, omega, sites);
    rule.drop_diagonal = self == SelfInteraction::Drop && !omega.is_grid();
    return evaluate(rule, omega.coefficients());
}

Field iterated_potential(const Kernel& k, const Measure& omega, double s, const SiteSet& targets)
{
    if (!(s > 0.0)) throw InputError("iterated potential exponent s must be positive");
    check_compatible(k, omega, targets);
    const Field g = potential_on_support(k, omega);
    std::vector<double> f(g.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = ext_pow(g[i], s - 1.0);
    return potential(k, omega.reweighted(f), targets);
}

} // namespace potlab
