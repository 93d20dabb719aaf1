#include "potlab/cli.hpp"

#include <json.hpp>
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace potlab::cli;
using json = nlohmann::json;

namespace {
const std::filesystem::path kData = POTLAB_TEST_DATA;

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run_cli(RunConfig c)
{
    std::ostringstream out, err;
    const int code = run(c, out, err);
    return {code, out.str(), err.str()};
}

RunConfig config(Command cmd, const std::string& file)
{
    RunConfig c;
    c.command = cmd;
    c.input_path = (kData / file).string();
    return c;
}

std::string strip_timestamp(const std::string& text)
{
    auto j = json::parse(text);
    j.erase("generated_at");
    return j.dump();
}
} // namespace

TEST_CASE("solve on the scalar golden fixture")
{
    const auto r = run_cli(config(Command::Solve, "scalar_golden.json"));
    CHECK(r.code == kExitOk);
    const auto j = json::parse(r.out);
    CHECK(j["solve"]["converged"].get<bool>());
    CHECK(std::abs(j["solve"]["u_sigma"][0].get<double>() - 2.6180339887498949) < 1e-9);
    CHECK(j["config"]["seed"] == 0);
    CHECK(j.contains("generated_at"));
}

TEST_CASE("solve on a grid problem uses the grid tolerance")
{
    const auto r = run_cli(config(Command::Solve, "interval_grid.json"));
    CHECK(r.code == kExitOk);
    CHECK(json::parse(r.out)["tol"].get<double>() == 1e-7);
}

TEST_CASE("solve non-convergence exits 1")
{
    auto c = config(Command::Solve, "two_site.json");
    c.max_iter = 2;
    CHECK(run_cli(c).code == kExitCheckFailed);
}

TEST_CASE("exponents")
{
    RunConfig c;
    c.command = Command::Exponents;
    c.n = 3;
    c.p = 2;
    c.q = 0.5;
    const auto r = run_cli(c);
    CHECK(r.code == kExitOk);
    const auto e = json::parse(r.out)["exponents"];
    CHECK(e["gamma"] == 1.0);
    CHECK(e["r"] == 3.0);
    CHECK(e["s"] == 1.0);
    CHECK(e["r2"].get<double>() == doctest::Approx(4.0 / 3.0));
    CHECK(e["s2"].get<double>() == doctest::Approx(1.2));
    c.p = 2.5;
    CHECK(run_cli(c).code == kExitInputError);
}

TEST_CASE("energy")
{
    const auto r = run_cli(config(Command::Energy, "energy_lebesgue.json"));
    CHECK(r.code == kExitOk);
    const auto e = json::parse(r.out)["energy"];
    CHECK(e["ibp_relative_residual"].get<double>() <= 1e-3);
}

TEST_CASE("verify exit codes")
{
    const auto bad = run_cli(config(Command::Verify, "underdeclared_h.json"));
    CHECK(bad.code == kExitCheckFailed);
    const auto j = json::parse(bad.out);
    CHECK(j["reports"].size() == 1);
    CHECK_FALSE(j["reports"][0]["passed"].get<bool>());

    const auto good = run_cli(config(Command::Verify, "verify_manifest.json"));
    INFO(good.err);
    CHECK(good.code == kExitOk);
    const auto g = json::parse(good.out);
    CHECK(g["summary"]["passed"] == g["summary"]["total"]);
}

TEST_CASE("input errors exit 2 with a location")
{
    const auto m = run_cli(config(Command::Solve, "malformed.json"));
    CHECK(m.code == kExitInputError);
    CHECK(m.err.find("line 3") != std::string::npos);

    const auto u = run_cli(config(Command::Solve, "unknown_kernel.json"));
    CHECK(u.code == kExitInputError);
    CHECK(u.err.find("gaussian") != std::string::npos);

    CHECK(run_cli(config(Command::Solve, "does_not_exist.json")).code == kExitInputError);
    auto neg = config(Command::Solve, "scalar_golden.json");
    neg.tol = -1.0;
    CHECK(run_cli(neg).code == kExitInputError);
}

TEST_CASE("reports are deterministic modulo the timestamp")
{
    for (auto [cmd, file] : {std::pair{Command::Verify, "verify_manifest.json"},
                             std::pair{Command::Solve, "two_site.json"}}) {
        const auto a = run_cli(config(cmd, file));
        const auto b = run_cli(config(cmd, file));
        CHECK(strip_timestamp(a.out) == strip_timestamp(b.out));
    }
}

TEST_CASE("history is written as CSV next to the report")
{
    auto c = config(Command::Solve, "scalar_golden.json");
    c.history = true;
    const auto dir = std::filesystem::temp_directory_path() / "potlab_cli_test";
    std::filesystem::create_directories(dir);
    c.output_path = (dir / "report.json").string();
    CHECK(run_cli(c).code == kExitOk);
    std::ifstream csv(c.output_path + ".history.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "iteration,norm,change");
    std::ifstream rep(c.output_path);
    CHECK(json::parse(rep)["solve"].contains("history"));
}
