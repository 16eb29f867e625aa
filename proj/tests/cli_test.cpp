#include "xnet/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace xnet {
namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

struct Exec {
    int exit_code = -1;
    std::string out;
};

Exec run_cli(const std::string& args, const std::string& out_file, const std::string& env = "") {
    const std::string cmd = env + std::string(XNET_CLI_PATH) + " " + args + " --out " + out_file;
    const int status = std::system(cmd.c_str());
    Exec e;
    e.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    e.out = slurp(out_file);
    return e;
}

std::string tmp_file(const std::string& name) {
    return std::string(::testing::TempDir()) + name;
}

TEST(CliSimulate, ReportsAllSuccesses) {
    const Exec e = run_cli("simulate --scheme scheme2 --pattern \"ND,DN,PP\" --trials 2000 --seed 1",
                           tmp_file("sim.json"));
    EXPECT_EQ(e.exit_code, cli::kOk);
    const nlohmann::json doc = nlohmann::json::parse(e.out);
    EXPECT_EQ(doc["schema_version"], 1);
    EXPECT_EQ(doc["report"]["trials"], 2000);
    EXPECT_EQ(doc["report"]["successes"], 2000);
    EXPECT_EQ(doc["report"]["identifiability_failures"], 0);
    EXPECT_EQ(doc["report"]["dof_count"], "4/3");
    EXPECT_EQ(doc["config"]["seed"], 1);
}

TEST(CliSimulate, RerunIsByteIdentical) {
    const std::string args = "simulate --scheme scheme1 --trials 500 --seed 7";
    const Exec a = run_cli(args, tmp_file("rerun_a.json"));
    const Exec b = run_cli(args, tmp_file("rerun_b.json"));
    EXPECT_EQ(a.exit_code, cli::kOk);
    EXPECT_EQ(a.out, b.out);
    EXPECT_FALSE(a.out.empty());
}

TEST(CliSimulate, PatternMismatchExitCode) {
    const Exec e = run_cli("simulate --scheme scheme1 --pattern \"NN,NN,NN\" --trials 10 --seed 1",
                           tmp_file("mismatch.json"));
    EXPECT_EQ(e.exit_code, cli::kPatternMismatch);
}

TEST(CliSimulate, InvalidSweepExitCode) {
    const Exec e = run_cli("simulate --scheme scheme2 --trials 10 --seed 1 --sweep 1e2:1e3:2",
                           tmp_file("sweep_bad.json"));
    EXPECT_EQ(e.exit_code, cli::kInvalidSweep);
}

TEST(CliSimulate, SweepEmitsSlopeRecord) {
    const Exec e = run_cli("simulate --scheme scheme2 --trials 40 --seed 2 --sweep 1e2:1e6:5",
                           tmp_file("sweep.json"));
    EXPECT_EQ(e.exit_code, cli::kOk);
    const nlohmann::json doc = nlohmann::json::parse(e.out);
    ASSERT_TRUE(doc.contains("sweep"));
    EXPECT_EQ(doc["sweep"]["points"].size(), 5u);
    EXPECT_NEAR(doc["sweep"]["slope"].get<double>(), 4.0 / 3.0, 0.15);
}

TEST(CliSimulate, KUserSweepSlopeNearThreeHalves) {
    const Exec e = run_cli("simulate --scheme kuser --k 3 --sweep 1e2:1e6:5 --trials 200 --seed 3",
                           tmp_file("kuser_sweep.json"));
    EXPECT_EQ(e.exit_code, cli::kOk);
    const nlohmann::json doc = nlohmann::json::parse(e.out);
    EXPECT_NEAR(doc["sweep"]["slope"].get<double>(), 1.5, 0.1);
    EXPECT_EQ(doc["report"]["symbols"], 9);
    EXPECT_EQ(doc["report"]["slots"], 6);
}

TEST(CliSimulate, RowsFormatHasSweepRecords) {
    const Exec e = run_cli(
        "simulate --scheme scheme2 --trials 30 --seed 2 --sweep 1e2:1e6:4 --format rows",
        tmp_file("sweep_rows.csv"));
    EXPECT_EQ(e.exit_code, cli::kOk);
    EXPECT_NE(e.out.find("# xnet-rows v1"), std::string::npos);
    EXPECT_NE(e.out.find("power,mean_rate,std_rate"), std::string::npos);
    EXPECT_NE(e.out.find("slope,r_squared"), std::string::npos);
    EXPECT_NE(e.out.find("seed=2"), std::string::npos);
}

TEST(CliSimulate, UnknownSchemeIsUsageError) {
    const Exec e = run_cli("simulate --scheme nosuch --trials 10", tmp_file("bad.json"));
    EXPECT_EQ(e.exit_code, cli::kUsage);
}

TEST(CliSimulate, EnvSeedIsPickedUp) {
    const Exec e = run_cli("simulate --scheme scheme1 --trials 50", tmp_file("env.json"),
                           "XNET_SEED=77 ");
    EXPECT_EQ(e.exit_code, cli::kOk);
    const nlohmann::json doc = nlohmann::json::parse(e.out);
    EXPECT_EQ(doc["config"]["seed"], 77);
}

TEST(CliPatterns, CensusNumbers) {
    const Exec e = run_cli("patterns --slots 3", tmp_file("census.json"));
    EXPECT_EQ(e.exit_code, cli::kOk);
    const nlohmann::json doc = nlohmann::json::parse(e.out);
    EXPECT_EQ(doc["report"]["total"], 729);
    EXPECT_EQ(doc["report"]["synergistic"], 120);
    EXPECT_EQ(doc["report"]["dispatched"], 120);
    EXPECT_EQ(doc["report"]["histogram"]["scheme1"], 36);
    EXPECT_EQ(doc["report"]["histogram"]["scheme2"], 24);
    EXPECT_EQ(doc["report"]["histogram"]["none"], 609);
}

TEST(CliPatterns, OneSlotCensus) {
    const Exec e = run_cli("patterns --slots 1", tmp_file("census1.json"));
    const nlohmann::json doc = nlohmann::json::parse(e.out);
    EXPECT_EQ(doc["report"]["total"], 9);
    EXPECT_EQ(doc["report"]["synergistic"], 0);
}

TEST(CliRegion, OptimumAndVertices) {
    const Exec e = run_cli("region", tmp_file("region.json"));
    EXPECT_EQ(e.exit_code, cli::kOk);
    const nlohmann::json doc = nlohmann::json::parse(e.out);
    EXPECT_EQ(doc["report"]["vertices"].size(), 6u);
    EXPECT_NEAR(doc["report"]["max_sum"].get<double>(), 4.0 / 3.0, 1e-9);
    ASSERT_EQ(doc["report"]["argmax"].size(), 1u);
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(doc["report"]["argmax"][0][static_cast<std::size_t>(i)].get<double>(), 1.0 / 3.0, 1e-9);
    }
}

TEST(CliRegion, RowsFormat) {
    const Exec e = run_cli("region --format rows", tmp_file("region.txt"));
    EXPECT_EQ(e.exit_code, cli::kOk);
    EXPECT_NE(e.out.find("d11 + d12 + d21 <= 1"), std::string::npos);
    EXPECT_NE(e.out.find("max_sum,"), std::string::npos);
}

TEST(CliInProcess, WritesToStream) {
    cli::RunConfig cfg;
    cfg.command = "patterns";
    cfg.slots = 2;
    std::ostringstream os;
    EXPECT_EQ(cli::run_command(cfg, &os), cli::kOk);
    const nlohmann::json doc = nlohmann::json::parse(os.str());
    EXPECT_EQ(doc["report"]["total"], 81);
}

}  // namespace
}  // namespace xnet
