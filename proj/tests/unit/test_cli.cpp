// Copyright 2026 The stabcleanse Authors
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


#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "stabcleanse/cli.hpp"

using namespace stabcleanse;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "stabcleanse");
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string &name, const std::string &content) {
    auto path = std::filesystem::temp_directory_path() / ("stabcleanse_cli_" + name);
    std::ofstream(path) << content;
    return path;
}

size_t line_count(const std::string &s) {
    return static_cast<size_t>(std::count(s.begin(), s.end(), '\n'));
}

class Cli : public ::testing::Test {
   protected:
    void SetUp() override {
        unsetenv("STABCLEANSE_SEED");
    }
};

}  // namespace

TEST_F(Cli, PhaseCurveDefaults) {
    auto r = run({"phase-curve"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "t_over_f,g_bits,g_ratio");
    EXPECT_EQ(line_count(r.out), 62u);
}

TEST_F(Cli, PhaseCurveRejectsBadInput) {
    EXPECT_EQ(run({"phase-curve", "--f-density", "0.5"}).code, kExitUsage);
    EXPECT_EQ(run({"phase-curve", "--grid", "0,0.5,0.25"}).code, kExitUsage);
    EXPECT_EQ(run({"phase-curve", "--n", "abc"}).code, kExitUsage);
}

TEST_F(Cli, UnknownSubcommandIsUsageError) {
    EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(run({}).code, kExitUsage);
}

TEST_F(Cli, StochasticCommandsNeedASeed) {
    auto r = run({"mc-se", "--n", "8", "--f-density", "0.25", "--t-min", "1", "--t-max", "2", "--samples", "4"});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("seed"), std::string::npos);
}

TEST_F(Cli, SeedFromEnvironment) {
    const std::vector<std::string> args = {"mc-se", "--n", "8", "--f-density", "0.25", "--t-min", "1", "--t-max", "2",
                                           "--samples", "4"};
    setenv("STABCLEANSE_SEED", "31", 1);
    auto from_env = run(args);
    unsetenv("STABCLEANSE_SEED");
    auto with_flag = args;
    with_flag.insert(with_flag.end(), {"--seed", "31"});
    auto from_flag = run(with_flag);
    ASSERT_EQ(from_env.code, kExitOk) << from_env.err;
    EXPECT_EQ(from_env.out, from_flag.out);
    setenv("STABCLEANSE_SEED", "x1", 1);
    EXPECT_EQ(run(args).code, kExitUsage);
}

TEST_F(Cli, MalformedCircuitReportsLine) {
    auto path = temp_file("bad.txt", "H 0\nCX 0 1\nFOO 2\n");
    auto r = run({"cleanse", "--circuit", path.string(), "--f-density", "0.5"});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST_F(Cli, CircuitFileIsCleansed) {
    auto path = temp_file("good.txt", "H 0\nT 0\nCX 0 1\nH 2\nT 2\nCX 2 3\n");
    auto r = run({"cleanse", "--circuit", path.string(), "--f-density", "0.5"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j.contains("phi_bar"));
    EXPECT_TRUE(j.contains("rho"));
}

TEST_F(Cli, FlagsOverrideConfig) {
    auto cfg = temp_file("cfg.json", R"({"n": 30, "f_density": 0.25, "grid": [0, 2, 4]})");
    auto from_config = run({"phase-curve", "--config", cfg.string()});
    ASSERT_EQ(from_config.code, kExitOk) << from_config.err;
    EXPECT_EQ(line_count(from_config.out), 4u);
    auto direct = run({"phase-curve", "--n", "30", "--f-density", "0.25", "--grid", "0,2,4"});
    EXPECT_EQ(from_config.out, direct.out);
    auto overridden = run({"phase-curve", "--config", cfg.string(), "--n", "60"});
    auto direct60 = run({"phase-curve", "--n", "60", "--f-density", "0.25", "--grid", "0,2,4"});
    EXPECT_EQ(overridden.out, direct60.out);
    EXPECT_NE(overridden.out, direct.out);
    auto bad = temp_file("bad.json", "{not json");
    EXPECT_EQ(run({"phase-curve", "--config", bad.string()}).code, kExitUsage);
}

TEST_F(Cli, OutputDoesNotDependOnWorkers) {
    const std::vector<std::vector<std::string>> commands = {
        {"mc-se", "--n", "8", "--f-density", "0.25", "--t-min", "1", "--t-max", "4", "--samples", "6", "--seed", "9"},
        {"prop1", "--n", "4", "--samples", "60", "--seed", "9"},
        {"lambda-check", "--n", "4", "--t", "2", "--f-density", "0.5", "--instances", "3", "--seed", "9"},
    };
    for (const auto &base : commands) {
        std::string reference;
        for (const char *w : {"1", "2", "8"}) {
            auto args = base;
            args.insert(args.end(), {"--workers", w});
            auto r = run(args);
            ASSERT_EQ(r.code, kExitOk) << base[0] << ": " << r.err;
            if (reference.empty()) {
                reference = r.out;
            }
            EXPECT_EQ(r.out, reference) << base[0] << " workers=" << w;
        }
    }
}

TEST_F(Cli, OutputFileMatchesStdout) {
    auto path = std::filesystem::temp_directory_path() / "stabcleanse_cli_out.json";
    const std::vector<std::string> base = {"purity-estimate", "--n", "6", "--t", "2", "--f-density", "0.5", "--seed", "3"};
    auto to_stdout = run(base);
    auto args = base;
    args.insert(args.end(), {"--output", path.string()});
    ASSERT_EQ(run(args).code, kExitOk);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), to_stdout.out);
}

TEST_F(Cli, ExhaustiveProp1MatchesExactly) {
    auto r = run({"prop1", "--n", "2", "--nE", "1", "--mode", "exhaustive"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["exact_match"].get<bool>());
}
