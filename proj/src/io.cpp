#include "potlab/io.hpp"

#include "potlab/extended.hpp"

#include <cmath>
#include <sstream>

namespace potlab::io {

namespace {

const json& field(const json& obj, const std::string& key, const std::string& path)
{
    if (!obj.is_object()) throw InputError(path + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw InputError(path + ": missing field '" + key + "'");
    return *it;
}

double as_number(const json& v, const std::string& path)
{
    if (v.is_number()) return v.get<double>();
    if (v.is_string() && v.get<std::string>() == "inf") return kInf;
    throw InputError(path + ": expected a number");
}

std::vector<double> number_list(const json& v, const std::string& path)
{
    if (!v.is_array()) throw InputError(path + ": expected an array");
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(as_number(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

SiteSet sites_from_json(const json& v, const std::string& path)
{
    if (!v.is_array()) throw InputError(path + ": expected an array");
    if (v.empty()) return SiteSet::indices({});
    if (v[0].is_number_integer() || v[0].is_number_unsigned()) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const auto& e = v[i];
            const auto p = path + "[" + std::to_string(i) + "]";
            if (!(e.is_number_integer() || e.is_number_unsigned()) || e.get<long long>() < 0)
                throw InputError(p + ": expected a nonnegative site index");
            idx.push_back(e.get<std::size_t>());
        }
        return SiteSet::indices(std::move(idx));
    }
    if (v[0].is_number()) return SiteSet::points(number_list(v, path), 1);
    if (!v[0].is_array() || v[0].empty()) throw InputError(path + "[0]: expected a site");
    const std::size_t dim = v[0].size();
    std::vector<double> coords;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto p = path + "[" + std::to_string(i) + "]";
        auto pt = number_list(v[i], p);
        if (pt.size() != dim) throw InputError(p + ": dimension mismatch");
        coords.insert(coords.end(), pt.begin(), pt.end());
    }
    return SiteSet::points(std::move(coords), dim);
}

json sites_to_json(const SiteSet& s)
{
    json out = json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.is_indexed())
            out.push_back(s.index(i));
        else if (s.dim() == 1)
            out.push_back(s.point(i)[0]);
        else {
            auto p = s.point(i);
            out.push_back(std::vector<double>(p.begin(), p.end()));
        }
    }
    return out;
}

} // namespace

double number(const json& obj, const std::string& key, const std::string& path)
{
    return as_number(field(obj, key, path), path + "." + key);
}

std::optional<double> optional_number(const json& obj, const std::string& key,
                                      const std::string& path)
{
    if (!obj.is_object() || !obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
    return as_number(obj.at(key), path + "." + key);
}

json ext(double x)
{
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return nullptr;
    return x;
}

Kernel kernel_from_json(const json& j, const std::string& path)
{
    const auto& variant = field(j, "variant", path);
    if (!variant.is_string()) throw InputError(path + ".variant: expected a string");
    const auto name = variant.get<std::string>();
    std::optional<Kernel> k;
    if (name == "matrix") {
        const auto& rows = field(j, "values", path);
        if (!rows.is_array()) throw InputError(path + ".values: expected an array of rows");
        std::vector<std::vector<double>> m;
        for (std::size_t i = 0; i < rows.size(); ++i)
            m.push_back(number_list(rows[i], path + ".values[" + std::to_string(i) + "]"));
        k = Kernel::matrix(m);
    } else if (name == "riesz") {
        const double dim = number(j, "dim", path);
        if (dim < 1 || dim != std::floor(dim)) throw InputError(path + ".dim: expected an integer >= 1");
        k = Kernel::riesz(number(j, "alpha", path), static_cast<std::size_t>(dim));
    } else if (name == "interval1d") {
        k = Kernel::interval1d();
    } else {
        throw InputError(path + ".variant: unknown kernel variant '" + name + "'");
    }
    k->declared_h = optional_number(j, "declared_h", path);
    k->declared_a = optional_number(j, "declared_a", path);
    if (k->declared_h && !(*k->declared_h >= 1.0)) throw InputError(path + ".declared_h: must be >= 1");
    if (k->declared_a && !(*k->declared_a >= 1.0)) throw InputError(path + ".declared_a: must be >= 1");
    return *k;
}

json to_json(const Kernel& k)
{
    json j;
    switch (k.kind()) {
    case KernelKind::Matrix: {
        j["variant"] = "matrix";
        const auto* m = k.matrix_part();
        json rows = json::array();
        for (std::size_t i = 0; i < m->n; ++i)
            rows.push_back(std::vector<double>(m->values.begin() + static_cast<std::ptrdiff_t>(i * m->n),
                                               m->values.begin() + static_cast<std::ptrdiff_t>((i + 1) * m->n)));
        j["values"] = rows;
        break;
    }
    case KernelKind::Riesz:
        j["variant"] = "riesz";
        j["alpha"] = k.riesz_part()->alpha;
        j["dim"] = k.riesz_part()->dim;
        break;
    case KernelKind::Interval1D: j["variant"] = "interval1d"; break;
    }
    if (k.declared_h) j["declared_h"] = *k.declared_h;
    if (k.declared_a) j["declared_a"] = *k.declared_a;
    return j;
}

Measure measure_from_json(const json& j, const std::string& path)
{
    const auto& variant = field(j, "variant", path);
    if (!variant.is_string()) throw InputError(path + ".variant: expected a string");
    const auto name = variant.get<std::string>();
    if (name == "atomic") {
        return Measure::atomic(sites_from_json(field(j, "sites", path), path + ".sites"),
                               number_list(field(j, "weights", path), path + ".weights"));
    }
    if (name == "grid") {
        const auto& values = field(j, "values", path);
        if (values.is_number()) {
            const double n = number(j, "n_cells", path);
            if (n < 1 || n != std::floor(n)) throw InputError(path + ".n_cells: expected an integer >= 1");
            return Measure::grid(std::vector<double>(static_cast<std::size_t>(n), values.get<double>()));
        }
        auto v = number_list(values, path + ".values");
        if (j.contains("n_cells") && number(j, "n_cells", path) != static_cast<double>(v.size()))
            throw InputError(path + ".n_cells: does not match the number of values");
        return Measure::grid(std::move(v));
    }
    throw InputError(path + ".variant: unknown measure variant '" + name + "'");
}

json to_json(const Measure& m)
{
    json j;
    if (auto g = m.grid_part()) {
        j["variant"] = "grid";
        j["n_cells"] = g->n_cells();
        j["values"] = g->values;
        return j;
    }
    j["variant"] = "atomic";
    j["sites"] = sites_to_json(m.atomic_part()->sites);
    json w = json::array();
    for (double x : m.atomic_part()->weights) w.push_back(ext(x));
    j["weights"] = w;
    return j;
}

ProblemSpec problem_from_json(const json& j, std::uint64_t seed)
{
    ProblemSpec spec;
    Problem& p = spec.problem;
    p.kernel = kernel_from_json(field(j, "kernel", "problem"), "problem.kernel");
    p.sigma = measure_from_json(field(j, "sigma", "problem"), "problem.sigma");
    if (j.contains("mu") && !j.at("mu").is_null())
        p.mu = measure_from_json(j.at("mu"), "problem.mu");
    p.q = number(j, "q", "problem");
    p.gamma = optional_number(j, "gamma", "problem").value_or(1.0);
    if (auto h = optional_number(j, "h", "problem")) {
        p.h = *h;
        spec.h_given = true;
    } else {
        p.h = resolve_wmp_constant(p.kernel, 64, seed);
    }
    p.validate();
    return spec;
}

json to_json(const Problem& p)
{
    return {{"kernel", to_json(p.kernel)}, {"sigma", to_json(p.sigma)}, {"mu", to_json(p.mu)},
            {"q", p.q}, {"gamma", p.gamma}, {"h", p.h}};
}

json to_json(const Field& f)
{
    json out = json::array();
    for (double v : f.values) out.push_back(ext(v));
    return out;
}

json to_json(const ConditionIntegrals& c)
{
    return {{"I_sigma", ext(c.i_sigma)}, {"I_mu", ext(c.i_mu)}, {"I_cross", ext(c.i_cross)}};
}

json to_json(const APrioriCheck& a)
{
    return {{"bound_value", ext(a.bound_value)}, {"norm_value", ext(a.norm_value)},
            {"c", a.c}, {"c_est", ext(a.c_est)}, {"satisfied", a.satisfied}};
}

json to_json(const SolveReport& r, bool with_history)
{
    json j = {{"converged", r.converged},
              {"iterations", r.iterations},
              {"u_sigma", to_json(r.u_sigma)},
              {"u_mu", to_json(r.u_mu)},
              {"residual_sup", ext(r.residual_sup)},
              {"monotone_ok", r.monotone_ok},
              {"condition_integrals", to_json(r.conditions)},
              {"diagnostic", r.diagnostic}};
    j["a_priori"] = r.a_priori ? to_json(*r.a_priori) : json(nullptr);
    if (with_history) {
        json h = json::array();
        for (const auto& rec : r.history)
            h.push_back({{"iteration", rec.iteration}, {"norm", ext(rec.norm)}, {"change", ext(rec.change)}});
        j["history"] = h;
    }
    return j;
}

json to_json(const EnergyReport& r)
{
    json j = {{"gamma", r.gamma},
              {"n_cells", r.n_cells},
              {"green_energy", ext(r.green_energy)},
              {"gradient_energy", ext(r.gradient_energy)},
              {"excluded_mass", r.excluded_mass}};
    j["ibp_relative_residual"] = r.ibp_relative_residual ? json(*r.ibp_relative_residual) : json(nullptr);
    j["equivalence_ratio"] = r.equivalence_ratio ? json(*r.equivalence_ratio) : json(nullptr);
    return j;
}

json to_json(const VerifyReport& r)
{
    json extras = json::object();
    for (const auto& [k, v] : r.extras) extras[k] = ext(v);
    return {{"check_name", r.check_name},
            {"instance_digest", r.instance_digest},
            {"lhs", ext(r.lhs)},
            {"rhs", ext(r.rhs)},
            {"constant_used", ext(r.constant_used)},
            {"margin", ext(r.margin)},
            {"passed", r.passed},
            {"status", to_string(r.status)},
            {"note", r.note},
            {"extras", extras}};
}

json to_json(const ExponentRow& row)
{
    return {{"n", row.n}, {"p", row.p}, {"q", row.q}, {"gamma", row.gamma}, {"r", row.r},
            {"s", row.s}, {"r2", row.r2}, {"s2", row.s2}, {"p_of_gamma", row.p_of_gamma}};
}

json to_json(const HardyRatios& h)
{
    return {{"ratio_a", ext(h.ratio_a)}, {"ratio_b", ext(h.ratio_b)},
            {"zero_denominator", h.zero_denominator}};
}

std::string history_csv(const SolveReport& r)
{
    std::ostringstream os;
    os.precision(17);
    os << "iteration,norm,change\n";
    for (const auto& rec : r.history) os << rec.iteration << ',' << rec.norm << ',' << rec.change << '\n';
    return os.str();
}

} // namespace potlab::io
