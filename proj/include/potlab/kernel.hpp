#pragma once

// Positive kernels G(x, y) and the structural constants the potential-theory
// estimates depend on: the weak-maximum-principle constant h and the
// quasi-symmetry constant a.

#include "potlab/measure.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace potlab {

/// Nonnegative n x n matrix on the index sites {0, ..., n-1}.
struct DenseMatrixKernel {
    std::size_t n = 0;
    std::vector<double> values; // row-major

    double at(std::size_t i, std::size_t j) const noexcept { return values[i * n + j]; }
};

/// |x - y|^(2 alpha - dim) on R^dim, 0 < alpha < dim / 2.
struct RieszKernel {
    double alpha = 1.0;
    std::size_t dim = 3;
};

/// Green function of -u'' on (0,1) with zero boundary values:
/// G(x, y) = min(x, y) (1 - max(x, y)).
struct IntervalGreenKernel {};

enum class KernelKind { Matrix, Riesz, Interval1D };

class Kernel {
public:
    using Variant = std::variant<DenseMatrixKernel, RieszKernel, IntervalGreenKernel>;

    static Kernel matrix(std::size_t n, std::vector<double> row_major);
    static Kernel matrix(const std::vector<std::vector<double>>& rows);
    static Kernel riesz(double alpha, std::size_t dim);
    static Kernel interval1d();

    KernelKind kind() const noexcept { return static_cast<KernelKind>(rep_.index()); }
    const Variant& variant() const noexcept { return rep_; }
    const DenseMatrixKernel* matrix_part() const noexcept { return std::get_if<DenseMatrixKernel>(&rep_); }
    const RieszKernel* riesz_part() const noexcept { return std::get_if<RieszKernel>(&rep_); }

    /// Number of index sites for the matrix variant, 0 otherwise.
    std::size_t n_sites() const noexcept;

    std::optional<double> declared_h;
    std::optional<double> declared_a;

    /// Unchecked evaluation on index sites (matrix variant).
    double at(std::size_t i, std::size_t j) const noexcept
    {
        return std::get<DenseMatrixKernel>(rep_).at(i, j);
    }
    /// Unchecked evaluation on point sites (Riesz / interval variants).
    double at(std::span<const double> x, std::span<const double> y) const noexcept;

private:
    explicit Kernel(Variant v) : rep_(std::move(v)) {}
    Variant rep_;
};

/// Checked evaluation of G(x, y). Returns +inf only for Riesz at x == y.
double eval_kernel(const Kernel& k, const Site& x, const Site& y);

/// Throws InputError unless every site of `sites` is valid for `k`.
void check_sites(const Kernel& k, const SiteSet& sites);

/// max over off-diagonal pairs of G(x,y)/G(y,x); +inf if exactly one
/// direction vanishes. 1 for the Riesz and interval variants.
double estimate_quasi_symmetry(const Kernel& k);

/// max_{i,j} G(j,i) / G(i,i): the WMP bound probed by unit atoms.
double single_atom_wmp_bound(const Kernel& k);

/// Certified lower bound on the WMP constant h: the single-atom scan plus
/// `samples` random measures rescaled so sup_{supp} G omega = 1. Floored at 1.
/// For the interval Green function and Riesz kernels with alpha <= 1 the
/// strong maximum principle gives h = 1 without sampling.
double estimate_wmp_constant(const Kernel& k, std::size_t samples, std::uint64_t seed);

/// declared_h if present, otherwise estimate_wmp_constant(k, samples, seed).
double resolve_wmp_constant(const Kernel& k, std::size_t samples = 64, std::uint64_t seed = 0);

/// Green matrix (D - W)^{-1} of a weighted graph: W symmetric nonnegative
/// conductances (n x n, row-major, diagonal ignored), D_ii = sum_j W_ij +
/// killing_i with killing_i > 0. Such kernels are symmetric, diagonally
/// dominant and satisfy the strong maximum principle.
Kernel discrete_green_kernel(std::size_t n, std::span<const double> conductances,
                             std::span<const double> killing);

} // namespace potlab
