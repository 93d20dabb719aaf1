#include "potlab/solver.hpp"

#include "potlab/extended.hpp"
#include "potlab/potential.hpp"

#include <algorithm>
#include <cmath>

namespace potlab {

void Problem::validate() const
{
    if (!(q > 0.0 && q < 1.0)) throw InputError("q must lie in (0,1)");
    if (!(gamma > 0.0)) throw InputError("gamma must be positive");
    if (!(h >= 1.0) || !std::isfinite(h)) throw InputError("WMP constant h must be finite and >= 1");
    if (sigma.is_zero()) throw InputError("sigma must not vanish identically");
    const SiteSet none;
    check_compatible(kernel, sigma, none);
    check_compatible(kernel, mu, none);
}

namespace {

Field zeros(std::size_t n) { return Field{std::vector<double>(n, 0.0)}; }

Field potential_of(const Kernel& k, const Measure& m, const SiteSet& targets)
{
    if (m.size() == 0) return zeros(targets.size());
    return potential(k, m, targets);
}

// The fixed-point map u -> G(u^q d sigma) + G mu restricted to supp(sigma).
class FixedPointMap {
public:
    explicit FixedPointMap(const Problem& p)
        : p_(p), sites_(p.sigma.support_sites()), op_(p.kernel, p.sigma, sites_),
          gmu_(potential_of(p.kernel, p.mu, sites_))
    {
    }

    Field operator()(const Field& u) const
    {
        const auto& c = p_.sigma.coefficients();
        std::vector<double> w(u.size());
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = ext_mul(ext_pow(u[i], p_.q), c[i]);
        Field out = op_.apply(w);
        for (std::size_t i = 0; i < out.size(); ++i) out.values[i] += gmu_[i];
        return out;
    }

    Field g_sigma() const { return op_.apply(p_.sigma.coefficients()); }
    const Field& g_mu() const { return gmu_; }

private:
    const Problem& p_;
    SiteSet sites_;
    PotentialOperator op_;
    Field gmu_;
};

double sup_abs_diff(const Field& a, const Field& b)
{
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::isinf(a[i]) || std::isinf(b[i])) return kInf;
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

double sup_abs(const Field& a)
{
    double m = 0.0;
    for (double v : a.values) m = std::max(m, std::abs(v));
    return m;
}

bool blew_up(const Field& a)
{
    return std::any_of(a.values.begin(), a.values.end(),
                       [](double v) { return !(v <= kDivergenceCap); });
}

struct IterationOutcome {
    Field u;
    std::size_t iterations = 0;
    bool converged = false;
    bool diverged = false;
    bool monotone_ok = true;
    double residual = kInf;
};

IterationOutcome iterate(const FixedPointMap& map, Field u, const Problem& p,
                         const SolveOptions& opt, bool track_increase, SolveReport* log)
{
    IterationOutcome out;
    const double norm_exp = p.gamma + p.q;
    for (std::size_t j = 0; j < opt.max_iter; ++j) {
        if (log && opt.keep_iterates) log->iterates.push_back(u);
        Field next = map(u);
        out.iterations = j + 1;
        if (blew_up(next)) {
            out.diverged = true;
            out.u = std::move(next);
            return out;
        }
        if (track_increase)
            for (std::size_t i = 0; i < u.size(); ++i)
                if (next[i] < u[i] - kMonotoneSlack * std::max(1.0, std::abs(u[i])))
                    out.monotone_ok = false;
        const double change = sup_abs_diff(next, u);
        if (log && opt.record_history)
            log->history.push_back({j, lp_norm(u, norm_exp, p.sigma), change});
        const double rel = change / std::max(sup_abs(next), kTiny);
        u = std::move(next);
        if (change < opt.tol && rel < opt.tol) {
            const Field check = map(u);
            out.residual = sup_abs_diff(check, u);
            if (out.residual <= opt.tol) {
                if (log && opt.keep_iterates) log->iterates.push_back(u);
                out.converged = true;
                break;
            }
        }
    }
    out.u = std::move(u);
    return out;
}

void require_options(const SolveOptions& opt)
{
    if (!(opt.tol > 0.0)) throw InputError("tol must be positive");
    if (opt.max_iter < 1) throw InputError("max_iter must be >= 1");
}

SolveReport run(const Problem& p, const SolveOptions& opt, bool homogeneous)
{
    p.validate();
    require_options(opt);
    SolveReport r;
    r.conditions = check_conditions(p);
    if (std::isinf(r.conditions.i_sigma)) {
        r.diagnostic = "necessary condition violated: int (G sigma)^((gamma+q)/(1-q)) d sigma = +inf";
        return r;
    }
    const FixedPointMap map(p);
    Field u0;
    if (homogeneous) {
        const double kappa = homogeneous_start_scale(p.q, p.h);
        const Field gs = map.g_sigma();
        u0 = zeros(gs.size());
        for (std::size_t i = 0; i < gs.size(); ++i)
            u0.values[i] = ext_mul(kappa, ext_pow(gs[i], 1.0 / (1.0 - p.q)));
    } else {
        u0 = map.g_mu();
    }

    auto it = iterate(map, std::move(u0), p, opt, true, &r);
    r.iterations = it.iterations;
    r.monotone_ok = it.monotone_ok;
    r.residual_sup = it.residual;
    r.converged = it.converged;
    r.u_sigma = std::move(it.u);
    if (it.diverged) {
        r.diagnostic = "iterate exceeded 1e300: necessary condition violated, no solution";
        return r;
    }
    if (!it.converged) {
        r.diagnostic = "max_iter reached before tolerance";
        return r;
    }

    const SiteSet mu_sites = p.mu.support_sites();
    if (p.mu.size() > 0) {
        const auto& c = p.sigma.coefficients();
        std::vector<double> w(c.size());
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = ext_pow(r.u_sigma[i], p.q);
        r.u_mu = potential(p.kernel, p.sigma.reweighted(w), mu_sites);
        const Field gmu = potential(p.kernel, p.mu, mu_sites);
        for (std::size_t i = 0; i < gmu.size(); ++i) r.u_mu.values[i] += gmu[i];
    }
    if (opt.norm_constant) r.a_priori = a_priori_check(p, r, *opt.norm_constant);
    return r;
}

} // namespace

double homogeneous_start_scale(double q, double h)
{
    const double s = 1.0 - q;
    return std::pow(s, 1.0 / s) * std::pow(h, -q / (s * s));
}

ConditionIntegrals check_conditions(const Problem& p)
{
    ConditionIntegrals c;
    const Field gs = potential_on_support(p.kernel, p.sigma);
    c.i_sigma = lp_integral(gs, (p.gamma + p.q) / (1.0 - p.q), p.sigma);
    if (p.mu.size() > 0 && !p.mu.is_zero()) {
        c.i_mu = lp_integral(potential_on_support(p.kernel, p.mu), p.gamma, p.mu);
        const Field gmu = potential(p.kernel, p.mu, p.sigma.support_sites());
        c.i_cross = lp_integral(gmu, p.gamma + p.q, p.sigma);
    }
    return c;
}

SolveReport solve_homogeneous(const Problem& p, const SolveOptions& opt)
{
    if (!p.mu.is_zero()) throw InputError("solve_homogeneous needs mu = 0; use solve_inhomogeneous");
    return run(p, opt, true);
}

SolveReport solve_inhomogeneous(const Problem& p, const SolveOptions& opt)
{
    if (p.mu.is_zero()) throw InputError("mu vanishes identically; use solve_homogeneous");
    return run(p, opt, false);
}

SolveReport solve(const Problem& p, const SolveOptions& opt)
{
    return p.mu.is_zero() ? solve_homogeneous(p, opt) : solve_inhomogeneous(p, opt);
}

APrioriCheck a_priori_check(const Problem& p, const SolveReport& r, double c_est)
{
    if (!r.converged) throw InputError("a priori check needs a converged solve report");
    const double e = p.gamma + p.q;
    APrioriCheck a;
    a.c_est = c_est;
    a.c = std::max(1.0, std::pow(2.0, (1.0 - e) / e));
    const Field gmu = potential_of(p.kernel, p.mu, p.sigma.support_sites());
    const double gmu_norm = lp_norm(gmu, e, p.sigma);
    a.bound_value = std::pow(c_est * a.c, 1.0 / (1.0 - p.q)) + a.c / (1.0 - p.q) * gmu_norm;
    a.norm_value = lp_norm(r.u_sigma, e, p.sigma);
    // The iterate is only tol-accurate; allow matching relative slack.
    a.satisfied = a.norm_value <= a.bound_value * (1.0 + 1e-9);
    return a;
}

MinimalityProbe minimality_probe(const Problem& p, const SolveReport& r, double v0_scale,
                                 const SolveOptions& opt)
{
    if (!r.converged) throw InputError("minimality probe needs a converged solve report");
    if (!(v0_scale > 1.0)) throw InputError("v0_scale must exceed 1");
    require_options(opt);
    const FixedPointMap map(p);
    Field v0 = r.u_sigma;
    for (double& v : v0.values) v = v0_scale * (v + 1.0);
    auto it = iterate(map, std::move(v0), p, opt, false, nullptr);
    MinimalityProbe m;
    m.iterations = it.iterations;
    m.converged = it.converged;
    if (!it.converged) {
        m.diagnostic = it.diverged ? "probe iterate diverged" : "probe did not converge";
        return m;
    }
    m.gap_sup = sup_abs_diff(it.u, r.u_sigma);
    m.agrees = m.gap_sup < 10.0 * opt.tol;
    return m;
}

} // namespace potlab
