#pragma once

// Batch front end: `solve`, `energy`, `verify` and `exponents` subcommands
// reading JSON inputs and writing JSON reports.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace potlab::cli {

enum class Command { Solve, Energy, Verify, Exponents };

struct RunConfig {
    Command command = Command::Solve;
    std::string input_path;
    std::string output_path; // empty: write the report to `out`
    std::optional<double> tol; // default depends on the problem (atomic vs grid)
    std::size_t max_iter = 10'000;
    std::uint64_t seed = 0;
    bool history = false;
    // exponents
    int n = 3;
    double p = 2.0;
    double q = 0.5;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

/// Runs one subcommand. The JSON report goes to config.output_path (or `out`),
/// a human-readable summary to `err`. Returns the process exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (CLI11) and calls run().
int main_entry(int argc, char** argv);

} // namespace potlab::cli
