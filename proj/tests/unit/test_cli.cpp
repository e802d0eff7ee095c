#include "cli/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using rieszwave::cli::run_cli;
namespace cli = rieszwave::cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("rieszwave_test_" + name);
}

}  // namespace

TEST(Cli, SolveOneDimensionalWritesCsv) {
    const auto r = run({"solve1d", "--problem", "example41", "--alpha", "1.3", "--theta", "0.25",
                        "--n", "20", "--tau", "0.05"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_EQ(r.out.rfind("x,u_numeric,u_exact,error\n", 0), 0u);
    EXPECT_NE(r.out.find("# max_error="), std::string::npos);
}

TEST(Cli, SolveTwoDimensionalCustom) {
    const auto r = run({"solve2d", "--problem", "custom", "--n", "8", "--tau", "0.1",
                        "--coefficient-y", "power:1,1,0"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_EQ(r.out.rfind("x,y,u_numeric\n", 0), 0u);
}

TEST(Cli, ConfigErrorsExitTwo) {
    EXPECT_EQ(run({}).code, cli::kExitConfigError);
    EXPECT_EQ(run({"solve1d", "--problem", "example41", "--n", "20"}).code, cli::kExitConfigError);
    EXPECT_EQ(run({"solve1d", "--problem", "nope", "--n", "20", "--tau", "0.05"}).code,
              cli::kExitConfigError);
    EXPECT_EQ(run({"solve1d", "--problem", "example41", "--n", "20", "--tau", "0.3"}).code,
              cli::kExitConfigError);
    EXPECT_EQ(run({"solve2d", "--problem", "example42", "--n", "8", "--tau", "0.1", "--method", "lu"}).code,
              cli::kExitConfigError);
    EXPECT_EQ(run({"frobnicate"}).code, cli::kExitConfigError);
}

TEST(Cli, UsageOnError) {
    const auto r = run({"solve1d"});
    EXPECT_EQ(r.code, cli::kExitConfigError);
    EXPECT_NE(r.err.find("--problem"), std::string::npos);
}

TEST(Cli, HelpExitsZero) {
    const auto r = run({"--help"});
    EXPECT_EQ(r.code, cli::kExitOk);
    EXPECT_NE((r.out + r.err).find("solve1d"), std::string::npos);
}

TEST(Cli, ThetaBelowQuarterNeedsFlag) {
    const std::vector<std::string> base{"solve1d", "--problem", "constcoef-free", "--n", "16",
                                        "--tau", "0.05", "--theta", "0.1", "--final-time", "0.2"};
    EXPECT_EQ(run(base).code, cli::kExitConfigError);
    auto flagged = base;
    flagged.push_back("--allow-unstable-theta");
    const auto r = run(flagged);
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST(Cli, ConfigFileWithCommandLinePrecedence) {
    const auto ini = temp_path("config.ini");
    {
        std::ofstream f(ini);
        f << "problem = example41\nalpha = 1.6\nn = 20\ntau = 0.05\ntheta = 0.5\n";
    }
    const auto from_file = run({"--config", ini.string(), "solve1d"});
    const auto direct = run({"solve1d", "--problem", "example41", "--alpha", "1.6", "--n", "20",
                             "--tau", "0.05", "--theta", "0.5"});
    ASSERT_EQ(from_file.code, cli::kExitOk) << from_file.err;
    EXPECT_EQ(from_file.out, direct.out);

    const auto overridden = run({"solve1d", "--config", ini.string(), "--n", "10", "--tau", "0.1"});
    ASSERT_EQ(overridden.code, cli::kExitOk) << overridden.err;
    EXPECT_NE(overridden.out.find("steps=10"), std::string::npos);
    std::filesystem::remove(ini);
}

TEST(Cli, OutputIsDeterministic) {
    const std::vector<std::string> args{"converge", "--problem", "example41", "--alpha", "1.5",
                                        "--base-n", "8", "--levels", "3"};
    const auto a = run(args);
    const auto b = run(args);
    ASSERT_EQ(a.code, cli::kExitOk) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out.find("intervals,h,tau,max_error,rate"), std::string::npos);
}

TEST(Cli, NumericalFailureExitsThree) {
    const auto r = run({"solve1d", "--problem", "custom", "--coefficient", "exp:1,1000", "--n", "16",
                        "--tau", "0.1", "--final-time", "1"});
    EXPECT_EQ(r.code, cli::kExitNumericalFailure) << r.out;
}

TEST(Cli, EnergyToleranceCheck) {
    const std::vector<std::string> base{"energy", "--problem", "constcoef-free", "--n", "16",
                                        "--tau", "0.0625", "--final-time", "1"};
    auto strict = base;
    strict.insert(strict.end(), {"--check-tolerance", "1e-9"});
    const auto ok = run(strict);
    EXPECT_EQ(ok.code, cli::kExitOk) << ok.err;
    EXPECT_NE(ok.out.find("k,t,energy,balance_residual,gronwall_bound"), std::string::npos);
    auto impossible = base;
    impossible.insert(impossible.end(), {"--check-tolerance", "1e-30"});
    EXPECT_EQ(run(impossible).code, cli::kExitTestFailure);
}

TEST(Cli, SnapshotsWriteFiles) {
    const auto prefix = temp_path("snap");
    const auto r = run({"solve1d", "--problem", "example41", "--n", "10", "--tau", "0.1",
                        "--snapshot-times", "0,0.5", "--snapshot-prefix", prefix.string()});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    for (const char* k : {"_k0.csv", "_k5.csv"}) {
        const std::filesystem::path p = prefix.string() + k;
        EXPECT_TRUE(std::filesystem::exists(p)) << p;
        std::filesystem::remove(p);
    }
}

TEST(Cli, SelftestPasses) {
    const auto r = run({"selftest"});
    EXPECT_EQ(r.code, cli::kExitOk) << r.out;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}
