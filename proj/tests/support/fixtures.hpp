#pragma once

// Randomized instance generators shared by unit and acceptance tests.

#include "potlab/kernel.hpp"
#include "potlab/measure.hpp"
#include "potlab/random.hpp"

#include <vector>

namespace fixture {

/// Symmetric, diagonally dominant Green matrix of a random weighted graph,
/// rescaled so its largest entry is `scale`.
inline potlab::Kernel random_green_kernel(potlab::Rng& rng, std::size_t n, double scale = 1.0)
{
    std::vector<double> w(n * n, 0.0);
    const double density = rng.uniform(0.2, 1.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.unit() <= density) w[i * n + j] = w[j * n + i] = rng.uniform(0.1, 2.0);
    std::vector<double> killing(n);
    for (auto& k : killing) k = rng.uniform(0.05, 1.0);
    const auto g = potlab::discrete_green_kernel(n, w, killing);
    const auto* m = g.matrix_part();
    double mx = 0.0;
    for (double v : m->values) mx = std::max(mx, v);
    std::vector<double> vals = m->values;
    for (auto& v : vals) v *= scale / mx;
    return potlab::Kernel::matrix(n, std::move(vals));
}

/// Atomic measure on a random nonempty subset of the n index sites.
inline potlab::Measure random_atomic(potlab::Rng& rng, std::size_t n, double lo = 0.1, double hi = 2.0,
                                     bool full_support = false)
{
    std::vector<std::size_t> idx;
    std::vector<double> w;
    for (std::size_t i = 0; i < n; ++i) {
        if (full_support || rng.coin()) {
            idx.push_back(i);
            w.push_back(rng.uniform(lo, hi));
        }
    }
    if (idx.empty()) {
        idx.push_back(rng.below(n));
        w.push_back(rng.uniform(lo, hi));
    }
    return potlab::Measure::atomic(potlab::SiteSet::indices(std::move(idx)), std::move(w));
}

inline std::vector<std::vector<double>> rows_of(const potlab::Kernel& k)
{
    const auto* m = k.matrix_part();
    std::vector<std::vector<double>> out(m->n, std::vector<double>(m->n));
    for (std::size_t i = 0; i < m->n; ++i)
        for (std::size_t j = 0; j < m->n; ++j) out[i][j] = m->at(i, j);
    return out;
}

} // namespace fixture
