#pragma once

// JSON encodings of kernels, measures, problems and reports.
//
//   kernel  {"variant": "matrix"|"riesz"|"interval1d", "values": [[...]],
//            "alpha": a, "dim": n, "declared_h": h, "declared_a": a}
//   measure {"variant": "atomic", "sites": [...], "weights": [...]}
//           {"variant": "grid", "n_cells": N, "values": [...] | number}
//   problem {"kernel": ..., "sigma": ..., "mu": ..., "q": q, "gamma": g, "h": h}
//
// Atomic sites are integers (matrix indices), numbers (interval points) or
// arrays (points in R^n). Extended reals serialize +inf as the string "inf".

#include "potlab/energy.hpp"
#include "potlab/kernel.hpp"
#include "potlab/measure.hpp"
#include "potlab/solver.hpp"
#include "potlab/verify.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace potlab::io {

using json = nlohmann::json;

/// Reads a number at `key`, accepting "inf"; errors name the JSON path.
double number(const json& obj, const std::string& key, const std::string& path);
std::optional<double> optional_number(const json& obj, const std::string& key,
                                      const std::string& path);

json ext(double x);

Kernel kernel_from_json(const json& j, const std::string& path = "kernel");
json to_json(const Kernel& k);

Measure measure_from_json(const json& j, const std::string& path);
json to_json(const Measure& m);

struct ProblemSpec {
    Problem problem;
    bool h_given = false;
};

/// Parses a problem; when "h" is absent the kernel's WMP constant is resolved
/// with `seed`.
ProblemSpec problem_from_json(const json& j, std::uint64_t seed);
json to_json(const Problem& p);

json to_json(const Field& f);
json to_json(const ConditionIntegrals& c);
json to_json(const APrioriCheck& a);
json to_json(const SolveReport& r, bool with_history);
json to_json(const EnergyReport& r);
json to_json(const VerifyReport& r);
json to_json(const ExponentRow& row);
json to_json(const HardyRatios& h);

/// Iterate history as CSV: iteration,norm,change.
std::string history_csv(const SolveReport& r);

} // namespace potlab::io
