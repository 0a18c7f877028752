// Copyright 2026 The cavswap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cavswap/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cavswap/config.hpp"

using namespace cavswap;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "cavswap");
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path &p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / ("cavswap_cli_" + std::string(info->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write_config(const nlohmann::json &j, const std::string &name = "config.json") {
        auto path = dir_ / name;
        std::ofstream(path) << j.dump();
        return path.string();
    }
    std::string out(const std::string &sub = "out") const { return (dir_ / sub).string(); }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, usage_errors) {
    EXPECT_EQ(run({}).code, kExitInvalidInput);
    EXPECT_EQ(run({"bogus"}).code, kExitInvalidInput);
    EXPECT_EQ(run({"--help"}).code, kExitOk);
    EXPECT_EQ(run({"protocol", "--config", (dir_ / "missing.json").string()}).code, kExitInvalidInput);
    EXPECT_EQ(run({"protocol", "--l0", "3", "--out", out()}).code, kExitInvalidInput);
    EXPECT_EQ(run({"protocol", "--shots", "0", "--out", out()}).code, kExitInvalidInput);
    EXPECT_EQ(run({"protocol", "--amplitude_source", "magic", "--out", out()}).code, kExitInvalidInput);
    EXPECT_EQ(run({"sweep", "--out", out()}).code, kExitInvalidInput);
}

TEST_F(CliTest, config_validation) {
    auto unknown = write_config({{"dimensionless", {{"g", 1.0}, {"delta", 100.0}}}, {"shotz", 5}});
    EXPECT_EQ(run({"protocol", "--config", unknown}).code, kExitInvalidInput);
    auto both = write_config({{"dimensionless", {{"g", 1.0}, {"delta", 100.0}}},
                              {"physical", {{"g_rad_per_s", 1.0}, {"delta_rad_per_s", 100.0}}}});
    EXPECT_EQ(run({"protocol", "--config", both}).code, kExitInvalidInput);
    auto garbage = dir_ / "garbage.json";
    std::ofstream(garbage) << "{ not json";
    EXPECT_EQ(run({"protocol", "--config", garbage.string()}).code, kExitInvalidInput);
}

TEST_F(CliTest, physical_units_are_converted_once) {
    const double wrec = recoil_frequency(kRubidium85MassKg, kRubidiumD2WavelengthM);
    auto cfg = load_config(write_config(
        {{"physical", {{"g_rad_per_s", 2.0 * wrec}, {"delta_rad_per_s", 300.0 * wrec}}}, {"shots", 10}}));
    cfg.resolve();
    EXPECT_NEAR(cfg.params.g, 2.0, 1e-12);
    EXPECT_NEAR(cfg.params.delta, 300.0, 1e-10);
    EXPECT_NEAR(cfg.recoil_frequency_rad_per_s, 24266.078813534226, 1e-6);
    auto j = cfg.to_json();
    EXPECT_TRUE(j.contains("physical"));
    EXPECT_TRUE(j.contains("resolved"));
}

TEST_F(CliTest, oracle_compare_assertions) {
    auto strict = write_config({{"dimensionless", {{"g", 1.0}, {"delta", 100.0}}},
                                {"ladder_halfwidth", 8},
                                {"samples", 101},
                                {"output_dir", out("strict")},
                                {"assert", {{"max_error", 1e-9}}}});
    auto r = run({"oracle-compare", "--config", strict});
    EXPECT_EQ(r.code, kExitAssertionFailed) << r.err;
    EXPECT_NE(r.out.find("ASSERTION FAILED"), std::string::npos);

    auto loose = write_config({{"dimensionless", {{"g", 1.0}, {"delta", 100.0}}},
                               {"ladder_halfwidth", 8},
                               {"samples", 101},
                               {"output_dir", out("loose")},
                               {"assert", {{"max_error", 0.02}}}});
    r = run({"oracle-compare", "--config", loose});
    EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
    auto csv = slurp(dir_ / "loose" / "oracle_compare.csv");
    EXPECT_EQ(csv.rfind("# cavswap ", 0), 0u);
    EXPECT_NE(csv.find("# command: oracle-compare"), std::string::npos);
    EXPECT_NE(csv.find("# config: "), std::string::npos);
}

TEST_F(CliTest, protocol_is_reproducible) {
    std::vector<std::string> args{"protocol", "--shots", "20000"};
    auto a = args, b = args, c = args;
    a.insert(a.end(), {"--seed", "42", "--out", out("a")});
    b.insert(b.end(), {"--seed", "42", "--out", out("b")});
    c.insert(c.end(), {"--seed", "43", "--out", out("a")});
    ASSERT_EQ(run(a).code, kExitOk);
    auto csv_a = slurp(dir_ / "a" / "protocol_report.csv");
    auto json_a = slurp(dir_ / "a" / "protocol_summary.json");
    ASSERT_EQ(run(a).code, kExitOk);
    EXPECT_EQ(csv_a, slurp(dir_ / "a" / "protocol_report.csv"));
    EXPECT_EQ(json_a, slurp(dir_ / "a" / "protocol_summary.json"));
    ASSERT_EQ(run(b).code, kExitOk);
    ASSERT_EQ(run(c).code, kExitOk);
    EXPECT_NE(csv_a, slurp(dir_ / "a" / "protocol_report.csv"));

    // only the output_dir differs between a and b
    auto ja = nlohmann::json::parse(json_a);
    auto jb = nlohmann::json::parse(slurp(dir_ / "b" / "protocol_summary.json"));
    ja["config"].erase("output_dir");
    jb["config"].erase("output_dir");
    EXPECT_EQ(ja, jb);
    EXPECT_EQ(ja["command"], "protocol");
    EXPECT_EQ(ja["shots"], 20000);
    EXPECT_FALSE(ja["paper_label_mismatches"].empty());

    EXPECT_NE(csv_a.find("pattern,probability,empirical_frequency,classification,paper_label"), std::string::npos);
    EXPECT_NE(csv_a.find("D4&D2,0.125"), std::string::npos);
}

TEST_F(CliTest, protocol_assertions) {
    auto cfg = write_config({{"dimensionless", {{"g", 1.0}, {"delta", 100.0}}},
                             {"shots", 5000},
                             {"output_dir", out()},
                             {"assert", {{"min_success_rate", 0.45}, {"min_mean_fidelity", 0.99}}}});
    EXPECT_EQ(run({"protocol", "--config", cfg}).code, kExitOk);
    EXPECT_EQ(run({"protocol", "--config", cfg, "--time_scale", "1.2"}).code, kExitAssertionFailed);
}

TEST_F(CliTest, entangle_outputs) {
    auto r = run({"entangle", "--samples", "11", "--out", out()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_TRUE(fs::exists(dir_ / "out" / "populations.csv"));
    EXPECT_TRUE(fs::exists(dir_ / "out" / "pair_state.csv"));

    // no interaction time: every row is the initial state
    r = run({"entangle", "--samples", "5", "--time_scale", "0", "--out", out("frozen")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::istringstream csv(slurp(dir_ / "frozen" / "populations.csv"));
    std::string line;
    int rows = 0;
    while (std::getline(csv, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("time", 0) == 0) continue;
        EXPECT_EQ(line, "0,1,0,1,0,1,0,0");
        ++rows;
    }
    EXPECT_EQ(rows, 5);
}

TEST_F(CliTest, sweep_outputs) {
    auto cfg = write_config({{"dimensionless", {{"g", 1.0}, {"delta", 100.0}}},
                             {"shots", 2000},
                             {"output_dir", out()},
                             {"sweep", {{"axis", "delta_over_g"}, {"values", {100, 50, 5}}}}});
    auto r = run({"sweep", "--config", cfg});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("failed"), std::string::npos);
    auto manifest = nlohmann::json::parse(slurp(dir_ / "out" / "sweep_manifest.json"));
    EXPECT_EQ(manifest["rows"], 3);
    EXPECT_EQ(manifest["failed_rows"], 1);
    EXPECT_EQ(manifest["command"], "sweep");
}
