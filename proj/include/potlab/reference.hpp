#pragma once

// Single-threaded reference versions of the parallel potential kernels. They
// share the quadrature rule and summation order with the parallel path and
// must agree with it bit for bit; tests and the benchmark compare the two.

#include "potlab/potential.hpp"

namespace potlab::reference {

Field potential(const Kernel& k, const Measure& omega, const SiteSet& targets);

Field apply(const PotentialOperator& op, std::span<const double> coefficients);

} // namespace potlab::reference
