#pragma once

// Nonnegative measures (atomic or 1D grid densities), the site sets they live
// on, and fields sampled against them.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace potlab {

/// Raised for any violated precondition on user-supplied data.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A single site: a matrix index or a point in R^d.
using Site = std::variant<std::size_t, std::vector<double>>;

/// An ordered collection of sites, either all indices or all points of one
/// dimension. Points are stored row-major in one flat buffer.
class SiteSet {
public:
    SiteSet() = default;

    static SiteSet indices(std::vector<std::size_t> idx);
    static SiteSet points(std::vector<double> coords, std::size_t dim);

    bool is_indexed() const noexcept { return dim_ == 0; }
    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept
    {
        return is_indexed() ? indices_.size() : coords_.size() / dim_;
    }

    std::size_t index(std::size_t i) const { return indices_.at(i); }
    std::span<const double> point(std::size_t i) const
    {
        return std::span<const double>(coords_).subspan(i * dim_, dim_);
    }
    Site site(std::size_t i) const;

    const std::vector<std::size_t>& index_list() const noexcept { return indices_; }
    const std::vector<double>& coords() const noexcept { return coords_; }

    bool operator==(const SiteSet&) const = default;

private:
    std::vector<std::size_t> indices_;
    std::vector<double> coords_;
    std::size_t dim_ = 0;
};

/// Uniform partition of (0,1) into n cells with a density value per cell.
struct GridDensity {
    std::vector<double> values;

    std::size_t n_cells() const noexcept { return values.size(); }
    double cell_width() const noexcept { return 1.0 / static_cast<double>(values.size()); }
    double midpoint(std::size_t i) const noexcept
    {
        return (static_cast<double>(i) + 0.5) * cell_width();
    }
};

struct AtomicMeasure {
    SiteSet sites;
    std::vector<double> weights;
};

/// A nonnegative measure. Factories validate finiteness, nonnegativity and
/// distinct atoms; `reweighted` may produce +inf masses (extended arithmetic).
class Measure {
public:
    Measure() : rep_(AtomicMeasure{}) {}

    static Measure atomic(SiteSet sites, std::vector<double> weights);
    static Measure grid(std::vector<double> values);
    static Measure lebesgue(std::size_t n_cells);
    /// The zero measure (no atoms).
    static Measure zero() { return Measure(); }

    bool is_grid() const noexcept { return std::holds_alternative<GridDensity>(rep_); }
    const AtomicMeasure* atomic_part() const noexcept { return std::get_if<AtomicMeasure>(&rep_); }
    const GridDensity* grid_part() const noexcept { return std::get_if<GridDensity>(&rep_); }

    /// Number of atoms or cells.
    std::size_t size() const noexcept;
    /// Mass carried by atom/cell i: weight, or value * cell width.
    double mass(std::size_t i) const;
    /// Raw coefficient of atom/cell i: weight, or density value.
    double coefficient(std::size_t i) const;
    const std::vector<double>& coefficients() const noexcept;

    /// Atom locations, or grid midpoints as 1D points.
    SiteSet support_sites() const;

    /// The measure f * this, with 0 * inf = 0.
    Measure reweighted(std::span<const double> f) const;
    /// c * this for c >= 0.
    Measure scaled(double c) const;

    bool is_zero() const noexcept;

private:
    std::variant<AtomicMeasure, GridDensity> rep_;
};

/// Real values sampled against a measure, one per atom or cell.
struct Field {
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

/// (sum |f_i|^p mass_i)^(1/p) with +inf propagation.
double lp_norm(const Field& f, double p, const Measure& m);

/// sum |f_i|^p mass_i, the p-th power of lp_norm.
double lp_integral(const Field& f, double p, const Measure& m);

double total_mass(const Measure& m);

} // namespace potlab
