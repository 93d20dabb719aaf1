#pragma once

// Checkable forms of the pointwise, integral and exponent relations for Green
// potentials of sublinear problems. Each check returns a VerifyReport listing
// both sides, the constant it used and whether the relation held.

#include "potlab/kernel.hpp"
#include "potlab/measure.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace potlab {

enum class CheckStatus { Passed, Failed, HypothesisFailed };

const char* to_string(CheckStatus s) noexcept;

/// FNV-1a digest (hex) of an arbitrary byte string.
std::string digest_of(const std::string& bytes);

struct VerifyReport {
    std::string check_name;
    std::string instance_digest; // FNV-1a of the inputs, hex
    double lhs = 0.0;
    double rhs = 0.0;
    double constant_used = 1.0;
    double margin = 0.0;
    bool passed = false;
    CheckStatus status = CheckStatus::Failed;
    std::string note;
    /// Named auxiliary quantities (integrals, exponents) for auditing.
    std::vector<std::pair<std::string, double>> extras;
};

/// Relative slack for inequalities evaluated in floating point.
inline constexpr double kRelTol = 1e-12;

/// u >= (1-q)^(1/(1-q)) h^(-q/(1-q)) (G omega)^(1/(1-q)) on supp(omega), given
/// that u (sampled on supp(omega)) satisfies u >= G(u^q d omega) within 1e-9.
VerifyReport check_lower_bound(const Kernel& k, const Measure& omega, double q, const Field& u,
                               double h);

/// (G omega)^s versus s h^(s-1) G((G omega)^(s-1) d omega): <= for s >= 1,
/// >= for s <= 1. Evaluated on every index site of a matrix kernel, on
/// supp(omega) otherwise.
VerifyReport check_iterated(const Kernel& k, const Measure& omega, double s, double h);

/// Lower bound on the best C in ||G(f omega)||_{L^r(omega)} <= C ||f||_{L^p(omega)}:
/// the largest ratio over `samples` random f and the structured family
/// f = (G omega)^t.
double estimate_norm_constant(const Kernel& k, const Measure& omega, double p, double r,
                              std::size_t samples, std::uint64_t seed);

/// Ratio ||G(f omega)||_{L^r(omega)} / ||f||_{L^p(omega)} for one f.
double norm_ratio(const Kernel& k, const Measure& omega, double p, double r,
                  const std::vector<double>& f);

/// The (p, r) weighted norm inequality against finiteness of
/// int (G omega)^(pr/(p-r)) d omega. Finite instances also require
/// C_lower >= (p-r)/p h^(-r/(p-r)) E^((p-r)/(pr)).
VerifyReport check_norm_equivalence(const Kernel& k, const Measure& omega, double p, double r,
                                    std::size_t samples, std::uint64_t seed, double h);

/// The chain bounding int (G mu)^(gamma+q) d sigma by the sigma and mu
/// condition integrals, in the form matching the sign of gamma + q - 1.
VerifyReport check_relation_lemma(const Kernel& k, const Measure& sigma, const Measure& mu,
                                  double q, double gamma, double h);

/// Case-3 Hoelder parameter: midpoint of (1/(2-q), 1).
double relation_case3_parameter(double q);

struct HardyRatios {
    double ratio_a = 0.0; // int phi^2 |u'|^2/u^2 dx / int |phi'|^2 dx
    double ratio_b = 0.0; // int phi^2 / u d omega / int |phi'|^2 dx
    bool zero_denominator = false;
};

/// u, omega and phi on the same uniform grid of (0,1); phi must vanish at both
/// ends (checked by linear extrapolation of the end cells).
HardyRatios check_hardy(const Field& u, const Measure& omega, const Field& phi);

struct ExponentRow {
    int n = 3;
    double p = 2.0;
    double q = 0.5;
    double gamma = 0.0;
    double r = 0.0;
    double s = 0.0;
    double r2 = 0.0;
    double s2 = 0.0;
    double p_of_gamma = 0.0;
};

/// Sobolev-range exponents for n >= 3 and n/(n-1) < p <= 2.
ExponentRow exponent_table(int n, double p, double q);

/// Hardy-Littlewood-Sobolev sufficient condition for a Riesz kernel of order
/// 2 alpha on R^n: s = n(beta+1)/(n+2 alpha beta) > 1 and both
/// int (G omega)^beta d omega and ||omega||_{L^s} finite. Atomic omega stands in
/// for a density with `cell_volume` per atom; its self-interaction is dropped.
VerifyReport check_hls_condition(double alpha, std::size_t n, double beta, const Measure& omega,
                                 double cell_volume);

double hls_exponent(double alpha, std::size_t n, double beta);

} // namespace potlab
