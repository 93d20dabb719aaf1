#include "potlab/kernel.hpp"

#include "potlab/extended.hpp"
#include "potlab/random.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace potlab {

Kernel Kernel::matrix(std::size_t n, std::vector<double> row_major)
{
    if (n == 0) throw InputError("matrix kernel needs at least one site");
    if (row_major.size() != n * n)
        throw InputError("matrix kernel expects " + std::to_string(n * n) + " entries, got " +
                         std::to_string(row_major.size()));
    for (std::size_t k = 0; k < row_major.size(); ++k)
        if (!(row_major[k] >= 0.0) || !std::isfinite(row_major[k]))
            throw InputError("matrix kernel entry (" + std::to_string(k / n) + "," +
                             std::to_string(k % n) + ") must be finite and nonnegative");
    return Kernel(DenseMatrixKernel{n, std::move(row_major)});
}

Kernel Kernel::matrix(const std::vector<std::vector<double>>& rows)
{
    const std::size_t n = rows.size();
    std::vector<double> flat;
    flat.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n)
            throw InputError("matrix kernel row " + std::to_string(i) + " has " +
                             std::to_string(rows[i].size()) + " entries, expected " +
                             std::to_string(n));
        flat.insert(flat.end(), rows[i].begin(), rows[i].end());
    }
    return matrix(n, std::move(flat));
}

Kernel Kernel::riesz(double alpha, std::size_t dim)
{
    if (dim < 1) throw InputError("Riesz kernel dimension must be >= 1");
    if (!(alpha > 0.0) || !(alpha < 0.5 * static_cast<double>(dim)))
        throw InputError("Riesz order alpha must lie in (0, dim/2)");
    return Kernel(RieszKernel{alpha, dim});
}

Kernel Kernel::interval1d() { return Kernel(IntervalGreenKernel{}); }

std::size_t Kernel::n_sites() const noexcept
{
    auto m = matrix_part();
    return m ? m->n : 0;
}

double Kernel::at(std::span<const double> x, std::span<const double> y) const noexcept
{
    if (auto r = riesz_part()) {
        double d2 = 0.0;
        for (std::size_t c = 0; c < x.size(); ++c) d2 += (x[c] - y[c]) * (x[c] - y[c]);
        if (d2 == 0.0) return kInf;
        return std::pow(d2, 0.5 * (2.0 * r->alpha - static_cast<double>(r->dim)));
    }
    const double lo = std::min(x[0], y[0]);
    const double hi = std::max(x[0], y[0]);
    return lo * (1.0 - hi);
}

namespace {

void check_point(const Kernel& k, std::span<const double> p)
{
    if (auto r = k.riesz_part()) {
        if (p.size() != r->dim)
            throw InputError("Riesz kernel on R^" + std::to_string(r->dim) +
                             " given a point of dimension " + std::to_string(p.size()));
        return;
    }
    if (p.size() != 1)
        throw InputError("interval kernel needs 1D points, got dimension " +
                         std::to_string(p.size()));
    if (!(p[0] > 0.0 && p[0] < 1.0))
        throw InputError("interval coordinate " + std::to_string(p[0]) + " outside (0,1)");
}

} // namespace

void check_sites(const Kernel& k, const SiteSet& sites)
{
    if (k.kind() == KernelKind::Matrix) {
        if (!sites.is_indexed() && sites.size() > 0)
            throw InputError("matrix kernel needs index sites, got points");
        for (std::size_t i : sites.index_list())
            if (i >= k.n_sites())
                throw InputError("site index " + std::to_string(i) + " out of range for " +
                                 std::to_string(k.n_sites()) + "-site kernel");
        return;
    }
    if (sites.size() == 0) return;
    if (sites.is_indexed()) throw InputError("continuous kernel needs point sites, got indices");
    for (std::size_t i = 0; i < sites.size(); ++i) check_point(k, sites.point(i));
}

double eval_kernel(const Kernel& k, const Site& x, const Site& y)
{
    if (k.kind() == KernelKind::Matrix) {
        auto xi = std::get_if<std::size_t>(&x);
        auto yi = std::get_if<std::size_t>(&y);
        if (!xi || !yi) throw InputError("matrix kernel needs index sites");
        if (*xi >= k.n_sites() || *yi >= k.n_sites())
            throw InputError("site index out of range for " + std::to_string(k.n_sites()) +
                             "-site kernel");
        return k.at(*xi, *yi);
    }
    auto xp = std::get_if<std::vector<double>>(&x);
    auto yp = std::get_if<std::vector<double>>(&y);
    if (!xp || !yp) throw InputError("continuous kernel needs point sites");
    check_point(k, *xp);
    check_point(k, *yp);
    return k.at(*xp, *yp);
}

double estimate_quasi_symmetry(const Kernel& k)
{
    auto m = k.matrix_part();
    if (!m) return 1.0;
    double a = 1.0;
    for (std::size_t i = 0; i < m->n; ++i)
        for (std::size_t j = i + 1; j < m->n; ++j) {
            const double gij = m->at(i, j), gji = m->at(j, i);
            if (gij == 0.0 && gji == 0.0) continue;
            if (gij == 0.0 || gji == 0.0) return kInf;
            a = std::max({a, gij / gji, gji / gij});
        }
    return a;
}

double single_atom_wmp_bound(const Kernel& k)
{
    auto m = k.matrix_part();
    if (!m) return 1.0;
    double h = 1.0;
    for (std::size_t i = 0; i < m->n; ++i) {
        const double gii = m->at(i, i);
        if (gii == 0.0)
            throw InputError("zero diagonal entry at site " + std::to_string(i) +
                             "; WMP ratio undefined");
        for (std::size_t j = 0; j < m->n; ++j) h = std::max(h, m->at(j, i) / gii);
    }
    return h;
}

namespace {

bool has_strong_maximum_principle(const Kernel& k)
{
    if (k.kind() == KernelKind::Interval1D) return true;
    if (auto r = k.riesz_part()) return r->alpha <= 1.0;
    return false;
}

} // namespace

double estimate_wmp_constant(const Kernel& k, std::size_t samples, std::uint64_t seed)
{
    if (has_strong_maximum_principle(k)) return 1.0;
    auto m = k.matrix_part();
    if (!m)
        throw InputError("no certified WMP constant for Riesz order alpha > 1; declare h");
    if (samples < 1) throw InputError("WMP estimate needs samples >= 1");

    double h = single_atom_wmp_bound(k);
    const std::size_t n = m->n;
    Rng rng(seed);
    std::vector<double> w(n), pot(n);
    for (std::size_t s = 0; s < samples; ++s) {
        bool any = false;
        for (std::size_t j = 0; j < n; ++j) {
            w[j] = rng.coin() ? rng.unit() : 0.0;
            any = any || w[j] > 0.0;
        }
        if (!any) w[rng.below(n)] = rng.unit();
        double sup_support = 0.0, sup_all = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            CompensatedSum acc;
            for (std::size_t j = 0; j < n; ++j) acc.add(m->at(i, j) * w[j]);
            pot[i] = acc.value();
            sup_all = std::max(sup_all, pot[i]);
            if (w[i] > 0.0) sup_support = std::max(sup_support, pot[i]);
        }
        if (sup_support > 0.0) h = std::max(h, sup_all / sup_support);
    }
    return h;
}

double resolve_wmp_constant(const Kernel& k, std::size_t samples, std::uint64_t seed)
{
    if (k.declared_h) return *k.declared_h;
    return estimate_wmp_constant(k, samples, seed);
}

Kernel discrete_green_kernel(std::size_t n, std::span<const double> conductances,
                             std::span<const double> killing)
{
    if (conductances.size() != n * n || killing.size() != n)
        throw InputError("graph Green kernel: size mismatch");
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (!(killing[i] > 0.0)) throw InputError("graph Green kernel: killing must be positive");
        double degree = killing[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double w = conductances[i * n + j];
            if (!(w >= 0.0) || w != conductances[j * n + i])
                throw InputError("graph Green kernel: conductances must be symmetric, nonnegative");
            lap(i, j) = -w;
            degree += w;
        }
        lap(i, i) = degree;
    }
    const Eigen::MatrixXd green = lap.llt().solve(Eigen::MatrixXd::Identity(lap.rows(), lap.cols()));
    std::vector<double> values(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // symmetrize away solver round-off; entries are positive on connected graphs
            const double g = 0.5 * (green(i, j) + green(j, i));
            values[i * n + j] = std::max(g, 0.0);
        }
    return Kernel::matrix(n, std::move(values));
}

} // namespace potlab
