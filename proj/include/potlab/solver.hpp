#pragma once

// Monotone iteration for the sublinear integral equation
//     u = G(u^q d sigma) + G mu,   0 < q < 1,
// together with the condition integrals that decide solvability, the a priori
// L^{gamma+q}(sigma) bound on the iterates, and an empirical minimality probe.

#include "potlab/kernel.hpp"
#include "potlab/measure.hpp"

#include <optional>
#include <string>
#include <vector>

namespace potlab {

struct Problem {
    Kernel kernel = Kernel::interval1d();
    Measure sigma;
    Measure mu; // zero measure for the homogeneous problem
    double q = 0.5;
    double gamma = 1.0;
    double h = 1.0; // WMP constant of the kernel

    /// Throws InputError unless 0 < q < 1, gamma > 0, h >= 1, sigma != 0 and
    /// both measures are compatible with the kernel.
    void validate() const;
};

struct ConditionIntegrals {
    double i_sigma = 0.0; // int (G sigma)^((gamma+q)/(1-q)) d sigma
    double i_mu = 0.0;    // int (G mu)^gamma d mu
    double i_cross = 0.0; // int (G mu)^(gamma+q) d sigma
};

ConditionIntegrals check_conditions(const Problem& p);

struct IterationRecord {
    std::size_t iteration = 0;
    double norm = 0.0;   // ||u_j||_{L^{gamma+q}(sigma)}
    double change = 0.0; // sup |u_{j+1} - u_j|
};

struct APrioriCheck {
    double bound_value = 0.0;
    double norm_value = 0.0;
    double c = 1.0;     // max(1, 2^((1-gamma-q)/(gamma+q)))
    double c_est = 0.0; // weighted norm constant used
    bool satisfied = false;
};

struct SolveReport {
    bool converged = false;
    std::size_t iterations = 0;
    Field u_sigma; // u on the atoms/cells of sigma
    Field u_mu;    // u on the atoms/cells of mu
    double residual_sup = 0.0;
    bool monotone_ok = true;
    ConditionIntegrals conditions;
    std::optional<APrioriCheck> a_priori;
    std::string diagnostic;
    std::vector<IterationRecord> history;
    std::vector<Field> iterates; // filled only with SolveOptions::keep_iterates
};

struct SolveOptions {
    double tol = 1e-10;
    std::size_t max_iter = 10'000;
    bool record_history = false;
    bool keep_iterates = false;
    /// When set, the a priori bound is evaluated with this weighted norm constant.
    std::optional<double> norm_constant;
};

inline constexpr double kAtomicTol = 1e-10;
inline constexpr double kGridTol = 1e-7;
inline constexpr double kDivergenceCap = 1e300;
inline constexpr double kMonotoneSlack = 1e-12;

/// Starting scale for the homogeneous iteration,
/// (1-q)^(1/(1-q)) h^(-q/(1-q)^2), which makes u_1 >= u_0.
double homogeneous_start_scale(double q, double h);

SolveReport solve_homogeneous(const Problem& p, const SolveOptions& opt = {});
SolveReport solve_inhomogeneous(const Problem& p, const SolveOptions& opt = {});
/// Dispatches on whether mu vanishes.
SolveReport solve(const Problem& p, const SolveOptions& opt = {});

/// Checks ||u||_{L^{gamma+q}(sigma)} <= (C c)^(1/(1-q)) + c/(1-q) ||G mu||_{L^{gamma+q}(sigma)}.
APrioriCheck a_priori_check(const Problem& p, const SolveReport& r, double c_est);

struct MinimalityProbe {
    bool agrees = false;
    bool converged = false;
    double gap_sup = 0.0;
    std::size_t iterations = 0;
    std::string diagnostic;
};

/// Restarts the iteration from v_0 = v0_scale * (u + 1) and measures how far
/// the limit lands from u.
MinimalityProbe minimality_probe(const Problem& p, const SolveReport& r, double v0_scale,
                                 const SolveOptions& opt = {});

} // namespace potlab
