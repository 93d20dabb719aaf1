#include "potlab/verify.hpp"

#include "potlab/energy.hpp"
#include "potlab/extended.hpp"
#include "potlab/potential.hpp"
#include "potlab/random.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>

namespace potlab {

const char* to_string(CheckStatus s) noexcept
{
    switch (s) {
    case CheckStatus::Passed: return "passed";
    case CheckStatus::Failed: return "failed";
    case CheckStatus::HypothesisFailed: return "hypothesis_failed";
    }
    return "unknown";
}

namespace {

// FNV-1a over a canonical byte stream of the inputs.
class Digest {
public:
    Digest& add(std::uint64_t v)
    {
        for (int b = 0; b < 8; ++b) {
            h_ ^= (v >> (8 * b)) & 0xffu;
            h_ *= 0x100000001b3ull;
        }
        return *this;
    }
    Digest& add(double x) { return add(std::bit_cast<std::uint64_t>(x)); }
    Digest& add(const std::string& s)
    {
        for (unsigned char c : s) {
            h_ ^= c;
            h_ *= 0x100000001b3ull;
        }
        return add(static_cast<std::uint64_t>(s.size()));
    }
    Digest& add(const Kernel& k)
    {
        add(static_cast<std::uint64_t>(k.kind()));
        if (auto m = k.matrix_part()) {
            add(static_cast<std::uint64_t>(m->n));
            for (double v : m->values) add(v);
        } else if (auto r = k.riesz_part()) {
            add(r->alpha).add(static_cast<std::uint64_t>(r->dim));
        }
        return *this;
    }
    Digest& add(const Measure& m)
    {
        add(static_cast<std::uint64_t>(m.is_grid()));
        add(static_cast<std::uint64_t>(m.size()));
        if (auto a = m.atomic_part()) {
            for (std::size_t i : a->sites.index_list()) add(static_cast<std::uint64_t>(i));
            for (double c : a->sites.coords()) add(c);
        }
        for (double c : m.coefficients()) add(c);
        return *this;
    }
    Digest& add(const Field& f)
    {
        for (double v : f.values) add(v);
        return *this;
    }

    std::string hex() const
    {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
        return buf;
    }

private:
    std::uint64_t h_ = 0xcbf29ce484222325ull;
};

VerifyReport make_report(std::string name, const Digest& d)
{
    VerifyReport r;
    r.check_name = std::move(name);
    r.instance_digest = d.hex();
    return r;
}

void settle(VerifyReport& r, bool ok)
{
    r.passed = ok;
    r.status = ok ? CheckStatus::Passed : CheckStatus::Failed;
}

double rel_gap(double big, double small)
{
    if (std::isinf(big) && std::isinf(small)) return 0.0;
    if (std::isinf(big)) return 1.0;
    if (std::isinf(small)) return -1.0;
    return (big - small) / std::max({std::abs(big), std::abs(small), kTiny});
}

SiteSet whole_space_sites(const Kernel& k, const Measure& omega)
{
    if (auto m = k.matrix_part()) {
        std::vector<std::size_t> all(m->n);
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        return SiteSet::indices(std::move(all));
    }
    return omega.support_sites();
}

} // namespace

std::string digest_of(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

VerifyReport check_lower_bound(const Kernel& k, const Measure& omega, double q, const Field& u,
                               double h)
{
    if (!(q > 0.0 && q < 1.0)) throw InputError("q must lie in (0,1)");
    if (!(h >= 1.0)) throw InputError("WMP constant h must be >= 1");
    if (u.size() != omega.size()) throw InputError("u must be sampled on supp(omega)");
    auto r = make_report("lower_bound", Digest().add(k).add(omega).add(q).add(u).add(h));

    std::vector<double> uq(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) uq[i] = ext_pow(u[i], q);
    const Field gu = potential(k, omega.reweighted(uq), omega.support_sites());
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] < gu[i] - 1e-9 * std::max(1.0, std::abs(gu[i]))) {
            r.status = CheckStatus::HypothesisFailed;
            r.note = "inequality hypothesis fails: u < G(u^q d omega) at site #" + std::to_string(i);
            r.lhs = gu[i];
            r.rhs = u[i];
            return r;
        }

    const double e = 1.0 / (1.0 - q);
    r.constant_used = std::pow(1.0 - q, e) * std::pow(h, -q * e);
    const Field g = potential_on_support(k, omega);
    bool ok = true;
    r.margin = kInf;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double bound = ext_mul(r.constant_used, ext_pow(g[i], e));
        const double m = std::isinf(u[i]) ? kInf : u[i] - bound;
        if (m < r.margin) {
            r.margin = m;
            r.lhs = bound;
            r.rhs = u[i];
        }
        if (!(u[i] >= bound * (1.0 - kRelTol))) ok = false;
    }
    settle(r, ok);
    return r;
}

VerifyReport check_iterated(const Kernel& k, const Measure& omega, double s, double h)
{
    if (!(s > 0.0)) throw InputError("iterated inequality needs s > 0");
    if (!(h >= 1.0)) throw InputError("WMP constant h must be >= 1");
    auto r = make_report("iterated", Digest().add(k).add(omega).add(s).add(h));
    const SiteSet targets = whole_space_sites(k, omega);
    const Field g = potential(k, omega, targets);
    const Field it = iterated_potential(k, omega, s, targets);
    r.constant_used = s * std::pow(h, s - 1.0);
    r.note = s >= 1.0 ? (s == 1.0 ? "equality" : "upper: (G w)^s <= s h^(s-1) G((G w)^(s-1) w)")
                      : "lower: (G w)^s >= s h^(s-1) G((G w)^(s-1) w)";

    bool ok = true;
    r.margin = kInf;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const double lhs = ext_pow(g[i], s);
        const double rhs = ext_mul(r.constant_used, it[i]);
        // slack in the direction the inequality asserts; for s = 1 both directions
        double slack;
        if (s > 1.0)
            slack = rel_gap(rhs, lhs);
        else if (s < 1.0)
            slack = rel_gap(lhs, rhs);
        else
            slack = -std::abs(rel_gap(lhs, rhs));
        if (slack < r.margin) {
            r.margin = slack;
            r.lhs = lhs;
            r.rhs = rhs;
        }
        if (slack < -kRelTol) ok = false;
    }
    if (targets.size() == 0) r.margin = 0.0;
    settle(r, ok);
    return r;
}

double norm_ratio(const Kernel& k, const Measure& omega, double p, double r,
                  const std::vector<double>& f)
{
    const double denom = lp_norm(Field{f}, p, omega);
    const Field pot = potential_on_support(k, omega.reweighted(f));
    const double num = lp_norm(pot, r, omega);
    if (denom == 0.0 || std::isinf(denom)) return 0.0;
    return num / denom;
}

double estimate_norm_constant(const Kernel& k, const Measure& omega, double p, double r,
                              std::size_t samples, std::uint64_t seed)
{
    if (!(p > 1.0)) throw InputError("weighted norm inequality needs p > 1");
    if (!(r > 0.0 && r < p)) throw InputError("weighted norm inequality needs 0 < r < p");
    if (omega.is_zero()) throw InputError("degenerate measure: omega vanishes identically");

    const SiteSet sites = omega.support_sites();
    const PotentialOperator op(k, omega, sites);
    const auto& c = omega.coefficients();
    auto ratio = [&](const std::vector<double>& f) {
        const double denom = lp_norm(Field{f}, p, omega);
        if (denom == 0.0 || std::isinf(denom)) return 0.0;
        std::vector<double> w(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) w[i] = ext_mul(f[i], c[i]);
        return lp_norm(op.apply(w), r, omega) / denom;
    };

    const Field g = op.apply(c);
    double best = 0.0;
    const double t_extremal = r / (p - r);
    for (double t : {t_extremal, -1.0, -0.5, 0.0, 0.25, 0.5, 1.0, 2.0}) {
        std::vector<double> f(g.size());
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = ext_pow(g[i], t);
        best = std::max(best, ratio(f));
    }
    Rng rng(seed);
    std::vector<double> f(g.size());
    for (std::size_t s = 0; s < samples; ++s) {
        for (double& v : f) v = rng.unit();
        best = std::max(best, ratio(f));
    }
    return best;
}

VerifyReport check_norm_equivalence(const Kernel& k, const Measure& omega, double p, double r,
                                    std::size_t samples, std::uint64_t seed, double h)
{
    auto rep = make_report("norm_equivalence", Digest()
                                                   .add(k)
                                                   .add(omega)
                                                   .add(p)
                                                   .add(r)
                                                   .add(static_cast<std::uint64_t>(samples))
                                                   .add(static_cast<std::uint64_t>(seed))
                                                   .add(h));
    const double c_lower = estimate_norm_constant(k, omega, p, r, samples, seed);
    const double energy_exp = p * r / (p - r);
    const double energy = lp_integral(potential_on_support(k, omega), energy_exp, omega);
    const double t = r / (p - r);
    rep.constant_used = (p - r) / p * std::pow(h, -t);
    rep.extras = {{"energy", energy}, {"energy_exponent", energy_exp}, {"c_lower", c_lower}};
    rep.rhs = c_lower;

    if (std::isinf(energy)) {
        rep.note = "infinite energy";
        rep.lhs = kInf;
        rep.margin = std::isinf(c_lower) ? 0.0 : -kInf;
        settle(rep, std::isinf(c_lower));
        return rep;
    }
    rep.lhs = rep.constant_used * std::pow(energy, (p - r) / (p * r));
    rep.margin = rel_gap(rep.rhs, rep.lhs);
    rep.note = "finite energy";
    settle(rep, std::isfinite(c_lower) && rep.margin >= -kRelTol);
    return rep;
}

double relation_case3_parameter(double q) { return 0.5 * (1.0 / (2.0 - q) + 1.0); }

VerifyReport check_relation_lemma(const Kernel& k, const Measure& sigma, const Measure& mu,
                                  double q, double gamma, double h)
{
    if (!(q > 0.0 && q < 1.0)) throw InputError("q must lie in (0,1)");
    if (!(gamma > 0.0)) throw InputError("gamma must be positive");
    if (!(h >= 1.0)) throw InputError("WMP constant h must be >= 1");
    auto rep = make_report("relation_lemma",
                           Digest().add(k).add(sigma).add(mu).add(q).add(gamma).add(h));

    const Field gs = potential_on_support(k, sigma);
    const double i_sigma = lp_integral(gs, (gamma + q) / (1.0 - q), sigma);
    double i_mu = 0.0, i_cross = 0.0;
    if (mu.size() > 0) {
        i_mu = lp_integral(potential_on_support(k, mu), gamma, mu);
        i_cross = lp_integral(potential(k, mu, sigma.support_sites()), gamma + q, sigma);
    }
    rep.extras = {{"I_sigma", i_sigma}, {"I_mu", i_mu}, {"I_cross", i_cross}};
    if (std::isinf(i_sigma) || std::isinf(i_mu)) {
        rep.status = CheckStatus::HypothesisFailed;
        rep.note = "condition integrals not finite";
        return rep;
    }

    // factor of the iterated inequality at exponent s: s h^(s-1) for the upper
    // form (s >= 1); the lower form (s <= 1) is used as G(...) <= (G w)^s / (s h^(s-1))
    auto upper = [h](double s) { return s * std::pow(h, s - 1.0); };
    auto lower = [h](double s) { return 1.0 / (s * std::pow(h, s - 1.0)); };

    const double e = gamma + q;
    double lhs_exp, mu_exp, sigma_exp, c;
    if (std::abs(e - 1.0) <= 1e-12) {
        const double a = relation_case3_parameter(q);
        const double s_sigma = (a * (2.0 - q) - 1.0) / (a * (1.0 - q));
        c = std::pow(upper(1.0 / a) * lower(s_sigma), a);
        lhs_exp = 1.0 - (a * (2.0 - q) - 1.0) / (1.0 - q);
        mu_exp = (1.0 - a) / (1.0 - q);
        sigma_exp = 1.0 - a;
        rep.note = "case gamma+q=1, a=" + std::to_string(a);
        rep.extras.emplace_back("a", a);
    } else if (e > 1.0) {
        const double s2 = gamma / (1.0 - q);
        c = upper(e) * std::pow(upper(s2), (1.0 - q) / gamma);
        lhs_exp = 1.0 - (1.0 - q) / (gamma * e);
        mu_exp = (e - 1.0) / gamma;
        sigma_exp = (e - 1.0) * (1.0 - q) / (gamma * e);
        rep.note = "case gamma+q>1";
    } else {
        const double theta = gamma / (1.0 - q);
        c = std::pow(lower(theta), e) * std::pow(lower(e), theta * e);
        lhs_exp = 1.0 - gamma * e / (1.0 - q);
        mu_exp = (1.0 - e) * e / (1.0 - q);
        sigma_exp = 1.0 - e;
        rep.note = "case gamma+q<1";
    }
    rep.constant_used = c;
    rep.lhs = ext_pow(i_cross, lhs_exp);
    rep.rhs = c * ext_pow(i_mu, mu_exp) * ext_pow(i_sigma, sigma_exp);
    rep.margin = rel_gap(rep.rhs, rep.lhs);
    rep.extras.emplace_back("lhs_exponent", lhs_exp);
    settle(rep, std::isfinite(i_cross) && rep.margin >= -kRelTol);
    return rep;
}

HardyRatios check_hardy(const Field& u, const Measure& omega, const Field& phi)
{
    if (!omega.is_grid()) throw InputError("Hardy check needs a grid measure");
    const std::size_t n = omega.size();
    if (u.size() != n || phi.size() != n) throw InputError("u, omega, phi must share one grid");
    if (n < 3) throw InputError("Hardy check needs at least 3 cells");

    double phi_max = 0.0;
    for (double v : phi.values) phi_max = std::max(phi_max, std::abs(v));
    const double left = 1.5 * phi[0] - 0.5 * phi[1];
    const double right = 1.5 * phi[n - 1] - 0.5 * phi[n - 2];
    if (std::abs(left) > 1e-3 * phi_max || std::abs(right) > 1e-3 * phi_max)
        throw InputError("phi must vanish at both endpoints");

    const double h = 1.0 / static_cast<double>(n);
    const auto du = grid_derivative(u.values);
    const auto dphi = grid_derivative(phi.values);

    CompensatedSum num_a, num_b, den;
    for (std::size_t i = 0; i < n; ++i) {
        const double p2 = phi[i] * phi[i];
        if (p2 > 0.0) {
            num_a.add(p2 * (du[i] / u[i]) * (du[i] / u[i]) * h);
            num_b.add(p2 * omega.mass(i) / u[i]);
        }
        den.add(dphi[i] * dphi[i] * h);
    }
    HardyRatios out;
    if (den.value() == 0.0) {
        out.zero_denominator = true;
        return out;
    }
    out.ratio_a = num_a.value() / den.value();
    out.ratio_b = num_b.value() / den.value();
    return out;
}

ExponentRow exponent_table(int n, double p, double q)
{
    if (n < 3) throw InputError("exponent table needs n >= 3");
    const double nd = n;
    if (!(p > nd / (nd - 1.0) && p <= 2.0)) throw InputError("p must lie in (n/(n-1), 2]");
    if (!(q > 0.0 && q < 1.0)) throw InputError("q must lie in (0,1)");
    ExponentRow row;
    row.n = n;
    row.p = p;
    row.q = q;
    row.gamma = (p * (nd - 1.0) - nd) / (nd - p);
    row.r = p * (nd - 2.0) / ((1.0 - q) * (nd - p)) - 1.0;
    row.s = row.gamma;
    row.r2 = nd * p / ((nd - p) * (1.0 - q) + 2.0 * p);
    row.s2 = nd * p / (nd + p);
    row.p_of_gamma = nd * (1.0 + row.gamma) / (nd + row.gamma - 1.0);
    return row;
}

double hls_exponent(double alpha, std::size_t n, double beta)
{
    const double nd = static_cast<double>(n);
    return nd * (beta + 1.0) / (nd + 2.0 * alpha * beta);
}

VerifyReport check_hls_condition(double alpha, std::size_t n, double beta, const Measure& omega,
                                 double cell_volume)
{
    if (n < 1) throw InputError("dimension must be >= 1");
    if (!(alpha > 0.0 && alpha < 0.5 * static_cast<double>(n)))
        throw InputError("alpha must lie in (0, n/2)");
    if (!(beta > 0.0)) throw InputError("beta must be positive");
    if (!omega.is_grid() && !(cell_volume > 0.0))
        throw InputError("atomic stand-in needs a positive cell volume");
    auto rep = make_report("hls_condition", Digest()
                                                .add(alpha)
                                                .add(static_cast<std::uint64_t>(n))
                                                .add(beta)
                                                .add(omega)
                                                .add(cell_volume));
    const Kernel k = Kernel::riesz(alpha, n);
    const double s = hls_exponent(alpha, n, beta);
    rep.constant_used = s;

    const Field g = potential_on_support(k, omega, SelfInteraction::Drop);
    const double energy = lp_integral(g, beta, omega);
    CompensatedSum acc;
    if (auto grid = omega.grid_part()) {
        for (double v : grid->values) acc.add(ext_pow(v, s) * grid->cell_width());
        rep.note = "grid density";
    } else {
        for (double w : omega.coefficients()) acc.add(ext_pow(w / cell_volume, s) * cell_volume);
        rep.note = "atomic stand-in: self-interaction dropped";
    }
    const double density_norm = ext_pow(acc.value(), 1.0 / s);
    rep.lhs = energy;
    rep.rhs = density_norm;
    rep.margin = s - 1.0;
    rep.extras = {{"s", s}, {"energy", energy}, {"density_norm", density_norm}};
    settle(rep, s > 1.0 && std::isfinite(energy) && std::isfinite(density_norm));
    return rep;
}

} // namespace potlab
