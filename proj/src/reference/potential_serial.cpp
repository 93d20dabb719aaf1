#include "potlab/reference.hpp"

#include "potlab/extended.hpp"

namespace potlab::reference {

Field potential(const Kernel& k, const Measure& omega, const SiteSet& targets)
{
    check_compatible(k, omega, targets);
    const QuadratureRule rule(k, omega, targets);
    const auto& c = omega.coefficients();
    Field out{std::vector<double>(rule.n_targets())};
    for (std::size_t i = 0; i < rule.n_targets(); ++i) {
        CompensatedSum acc;
        for (std::size_t j = 0; j < rule.n_sources(); ++j) acc.add(ext_mul(rule.entry(i, j), c[j]));
        out.values[i] = acc.value();
    }
    return out;
}

Field apply(const PotentialOperator& op, std::span<const double> c)
{
    if (c.size() != op.cols()) throw InputError("operator/coefficient size mismatch");
    Field out{std::vector<double>(op.rows())};
    for (std::size_t i = 0; i < op.rows(); ++i) {
        CompensatedSum acc;
        for (std::size_t j = 0; j < op.cols(); ++j) acc.add(ext_mul(op(i, j), c[j]));
        out.values[i] = acc.value();
    }
    return out;
}

} // namespace potlab::reference
