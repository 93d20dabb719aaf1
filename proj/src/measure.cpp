#include "potlab/measure.hpp"

#include "potlab/extended.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace potlab {

SiteSet SiteSet::indices(std::vector<std::size_t> idx)
{
    SiteSet s;
    s.indices_ = std::move(idx);
    return s;
}

SiteSet SiteSet::points(std::vector<double> coords, std::size_t dim)
{
    if (dim == 0) throw InputError("point sites need dimension >= 1");
    if (coords.size() % dim != 0)
        throw InputError("coordinate buffer length " + std::to_string(coords.size()) +
                         " is not a multiple of dimension " + std::to_string(dim));
    for (double c : coords)
        if (!std::isfinite(c)) throw InputError("site coordinates must be finite");
    SiteSet s;
    s.coords_ = std::move(coords);
    s.dim_ = dim;
    return s;
}

Site SiteSet::site(std::size_t i) const
{
    if (is_indexed()) return indices_.at(i);
    auto p = point(i);
    return std::vector<double>(p.begin(), p.end());
}

namespace {

void require_distinct(const SiteSet& sites)
{
    const std::size_t n = sites.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    if (sites.is_indexed()) {
        std::sort(order.begin(), order.end(),
                  [&](auto a, auto b) { return sites.index(a) < sites.index(b); });
        for (std::size_t k = 1; k < n; ++k)
            if (sites.index(order[k]) == sites.index(order[k - 1]))
                throw InputError("duplicate atom at site index " +
                                 std::to_string(sites.index(order[k])));
        return;
    }
    auto less = [&](auto a, auto b) {
        auto pa = sites.point(a), pb = sites.point(b);
        return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
    };
    std::sort(order.begin(), order.end(), less);
    for (std::size_t k = 1; k < n; ++k) {
        auto pa = sites.point(order[k - 1]), pb = sites.point(order[k]);
        if (std::equal(pa.begin(), pa.end(), pb.begin()))
            throw InputError("duplicate atom at point #" + std::to_string(order[k]));
    }
}

void require_nonnegative_finite(const std::vector<double>& v, const char* what)
{
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!(v[i] >= 0.0) || !std::isfinite(v[i]))
            throw InputError(std::string(what) + " #" + std::to_string(i) +
                             " must be finite and nonnegative");
}

} // namespace

Measure Measure::atomic(SiteSet sites, std::vector<double> weights)
{
    if (sites.size() != weights.size())
        throw InputError("atomic measure has " + std::to_string(sites.size()) + " sites but " +
                         std::to_string(weights.size()) + " weights");
    require_nonnegative_finite(weights, "weight");
    require_distinct(sites);
    Measure m;
    m.rep_ = AtomicMeasure{std::move(sites), std::move(weights)};
    return m;
}

Measure Measure::grid(std::vector<double> values)
{
    if (values.empty()) throw InputError("grid measure needs at least one cell");
    require_nonnegative_finite(values, "grid value");
    Measure m;
    m.rep_ = GridDensity{std::move(values)};
    return m;
}

Measure Measure::lebesgue(std::size_t n_cells)
{
    return grid(std::vector<double>(n_cells, 1.0));
}

std::size_t Measure::size() const noexcept
{
    if (auto g = grid_part()) return g->n_cells();
    return atomic_part()->weights.size();
}

double Measure::mass(std::size_t i) const
{
    if (auto g = grid_part()) return ext_mul(g->values.at(i), g->cell_width());
    return atomic_part()->weights.at(i);
}

double Measure::coefficient(std::size_t i) const { return coefficients().at(i); }

const std::vector<double>& Measure::coefficients() const noexcept
{
    if (auto g = grid_part()) return g->values;
    return atomic_part()->weights;
}

SiteSet Measure::support_sites() const
{
    if (auto g = grid_part()) {
        std::vector<double> mids(g->n_cells());
        for (std::size_t i = 0; i < mids.size(); ++i) mids[i] = g->midpoint(i);
        return SiteSet::points(std::move(mids), 1);
    }
    return atomic_part()->sites;
}

Measure Measure::reweighted(std::span<const double> f) const
{
    if (f.size() != size())
        throw InputError("reweighting field has " + std::to_string(f.size()) +
                         " entries, measure has " + std::to_string(size()));
    Measure out = *this;
    auto& coeffs = std::visit(
        [](auto& r) -> std::vector<double>& {
            if constexpr (std::is_same_v<std::decay_t<decltype(r)>, GridDensity>)
                return r.values;
            else
                return r.weights;
        },
        out.rep_);
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = ext_mul(f[i], coeffs[i]);
    return out;
}

Measure Measure::scaled(double c) const
{
    std::vector<double> f(size(), c);
    return reweighted(f);
}

bool Measure::is_zero() const noexcept
{
    const auto& c = coefficients();
    return std::all_of(c.begin(), c.end(), [](double x) { return x == 0.0; });
}

double lp_integral(const Field& f, double p, const Measure& m)
{
    if (!(p > 0.0)) throw InputError("L^p exponent must be positive");
    if (f.size() != m.size())
        throw InputError("field has " + std::to_string(f.size()) + " samples but measure has " +
                         std::to_string(m.size()) + " atoms/cells");
    CompensatedSum acc;
    for (std::size_t i = 0; i < f.size(); ++i)
        acc.add(ext_mul(ext_pow(std::abs(f[i]), p), m.mass(i)));
    return acc.value();
}

double lp_norm(const Field& f, double p, const Measure& m)
{
    return ext_pow(lp_integral(f, p, m), 1.0 / p);
}

double total_mass(const Measure& m)
{
    CompensatedSum acc;
    for (std::size_t i = 0; i < m.size(); ++i) acc.add(m.mass(i));
    return acc.value();
}

} // namespace potlab
