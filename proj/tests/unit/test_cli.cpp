#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "poafd/cli.hpp"
#include "poafd/io.hpp"

using namespace poafd;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path temp(const std::string& name)
{
    return fs::temp_directory_path() / ("poafd_cli_" + name);
}

fs::path write(const std::string& name, const std::string& text)
{
    const fs::path p = temp(name);
    std::ofstream(p) << text;
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string two_atoms()
{
    // The lighter second atom keeps the first greedy pick on 0.3.
    return io::dump(io::to_json(szego({0.3, 0}) + 1e-3 * szego({Complex(0.0, -0.4), 0})));
}

}  // namespace

TEST(Cli, HelpListsExitCodes)
{
    const Outcome r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("Exit codes"), std::string::npos);
    EXPECT_NE(r.out.find("--grid-radial"), std::string::npos);
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run({}).code, cli::kUsage);
    EXPECT_EQ(run({"bogus"}).code, cli::kUsage);
    const Outcome r = run({"expand", "--mode", "sideways"});
    EXPECT_EQ(r.code, cli::kUsage);
    EXPECT_EQ(json::parse(r.err)["error"], "usage");
}

TEST(Cli, ExpandTwoAtoms)
{
    const auto in = write("two.json", two_atoms());
    const auto csv = temp("two.csv");
    const Outcome r = run({"expand", "--input", in.string(), "--grid-radial", "20", "--refine-steps", "0", "--csv", csv.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j["expansion"]["terms"], 2);
    EXPECT_LE(j["expansion"]["residual_norms"][2].get<double>(), 1e-9);

    std::istringstream lines(slurp(csv));
    std::string line;
    int rows = -1;
    while (std::getline(lines, line)) {
        ++rows;
    }
    EXPECT_EQ(rows, 2);
}

TEST(Cli, ExpandIsByteIdentical)
{
    const auto in = write("det.json", two_atoms());
    const auto a = temp("det_a.json");
    const auto b = temp("det_b.json");
    ASSERT_EQ(run({"expand", "--input", in.string(), "--output", a.string(), "--max-terms", "8"}).code, 0);
    ASSERT_EQ(run({"expand", "--input", in.string(), "--output", b.string(), "--max-terms", "8"}).code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_FALSE(slurp(a).empty());
}

TEST(Cli, PseudoInvertNegativeFrequencies)
{
    const auto in = write("neg.json", R"({"type":"boundary","min_k":-2,"coeffs":[[3,0],[0,4],[0,0],[0,0],[0,0]]})");
    const Outcome r = run({"pseudo-invert", "--input", in.string(), "--trunc-n", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_DOUBLE_EQ(j["defect"].get<double>(), 5.0);
    EXPECT_EQ(j["expansion"]["terms"], 0);
    for (const auto& c : j["inverse"]["coeffs"]) {
        EXPECT_EQ(c[0].get<double>(), 0.0);
        EXPECT_EQ(c[1].get<double>(), 0.0);
    }
}

TEST(Cli, InvertKernel)
{
    const auto in = write("k.json", io::dump(io::to_json(szego({0.5, 0}))));
    const Outcome r = run({"invert", "--input", in.string(), "--grid-radial", "20"});
    ASSERT_EQ(r.code, 0) << r.err;
    const BoundaryFunction inv = io::boundary_from_json(json::parse(r.out)["inverse"]);
    EXPECT_LE((inv - szego_boundary({0.5, 0})).norm(), 1e-9);
}

TEST(Cli, BasisCommand)
{
    const auto in = write("bk.json", io::dump(io::to_json(szego({0.5, 0}))));
    const auto plan = write("plan.json", "[[0,0],[0.5,0]]");
    const Outcome r = run({"basis", "--input", in.string(), "--plan-file", plan.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_NEAR(j["transfer_condition"].get<double>(), 2.0 + std::sqrt(3.0), 1e-12);
    const BoundaryFunction s2 = io::boundary_from_json(j["inverse"]);
    EXPECT_LE((s2 - szego_boundary({0.5, 0})).norm(), 1e-12);
}

TEST(Cli, ErrorExitCodes)
{
    const auto in = write("e.json", two_atoms());
    const auto zero = write("zero.json", R"({"type":"disc","coeffs":[[0,0]]})");
    const auto bad = write("bad.json", "");
    const auto dup = write("dup.json", "[[0.1,0],[0.1,0]]");
    const auto far = write("far.json", "[[0.99,0]]");

    EXPECT_EQ(run({"expand", "--input", bad.string()}).code, cli::kMalformedInput);
    EXPECT_EQ(run({"expand", "--input", zero.string()}).code, cli::kZeroInput);
    EXPECT_EQ(run({"expand", "--input", in.string(), "--mode", "weak", "--rho", "1.5"}).code,
              cli::kInvalidArgument);
    EXPECT_EQ(run({"expand"}).code, cli::kInvalidArgument);
    EXPECT_EQ(run({"basis", "--input", in.string(), "--plan-file", far.string()}).code, cli::kOutOfDomain);

    const Outcome d = run({"basis", "--input", in.string(), "--plan-file", dup.string()});
    EXPECT_EQ(d.code, cli::kDegeneratePlan);
    const json err = json::parse(d.err);
    EXPECT_EQ(err["error"], "degenerate_plan");
    EXPECT_EQ(err["index"], 1);
}

TEST(Cli, ConfigFileAndEnvironmentPrecedence)
{
    const auto in = write("cfg_in.json", two_atoms());
    const auto cfg = write("cfg.json", R"({"max-terms": 1, "grid-radial": 20})");
    Outcome r = run({"expand", "--input", in.string(), "--config", cfg.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["config"]["max_terms"], 1);

    ::setenv("POAFD_MAX_TERMS", "3", 1);
    r = run({"expand", "--input", in.string(), "--config", cfg.string()});
    EXPECT_EQ(json::parse(r.out)["config"]["max_terms"], 3);
    r = run({"expand", "--input", in.string(), "--config", cfg.string(), "--max-terms", "5"});
    EXPECT_EQ(json::parse(r.out)["config"]["max_terms"], 5);
    ::unsetenv("POAFD_MAX_TERMS");
}

TEST(Cli, VerifyPasses)
{
    const Outcome r = run({"verify", "--trials", "10"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_TRUE(json::parse(r.out)["passed"].get<bool>());
}
