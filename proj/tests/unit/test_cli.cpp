// Copyright 2026 The qopt Authors
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

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

struct Result {
    int code = -1;
    std::string out;
};

Result run_cli(const std::string &args) {
    const std::string cmd = std::string(QOPT_CLI_PATH) + " " + args + " 2>/dev/null";
    Result r;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        return r;
    }
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.out.append(buf.data(), got);
    }
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string temp_path(const std::string &name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

TEST(Cli, VerifyLemmasPasses) {
    const Result r = run_cli("verify-lemmas --trials 5");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(nlohmann::json::parse(r.out)["passed"].get<bool>());
}

TEST(Cli, VerifyLemmasSingleSample) {
    EXPECT_EQ(run_cli("verify-lemmas --n-max 0 --trials 5").code, 0);
}

TEST(Cli, CorruptedLemmaCheckFails) {
    EXPECT_EQ(run_cli("verify-lemmas --trials 3 --corrupt").code, 1);
}

TEST(Cli, RunCounterexamplePstc) {
    const Result r = run_cli("run --algorithm pstc --problem counterexample --seed 4 --ell-threshold 2");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["chosen_index"], 1);
    EXPECT_EQ(j["algorithm"], "pstc");
}

TEST(Cli, RunCounterexampleAvgOverSeeds) {
    int hits = 0;
    for (int seed = 0; seed < 100; ++seed) {
        const Result r =
            run_cli("run --algorithm avg --problem counterexample --seed " + std::to_string(seed));
        ASSERT_EQ(r.code, 0);
        hits += nlohmann::json::parse(r.out)["chosen_index"] == 8 ? 1 : 0;
    }
    EXPECT_GE(hits, 45);
}

TEST(Cli, RunIsDeterministic) {
    const std::string args = "run --algorithm pstc --problem basin:32:4:7 --seed 9";
    auto a = nlohmann::json::parse(run_cli(args).out);
    auto b = nlohmann::json::parse(run_cli(args).out);
    a.erase("wall_time_ms");
    b.erase("wall_time_ms");
    EXPECT_EQ(a, b);
}

TEST(Cli, RunFromJsonFile) {
    const std::string path = temp_path("qopt_cli_problem.json");
    {
        std::ofstream f(path);
        f << R"({"theta_values":[0,1,2,3],"loss_table":[[3,3],[1,1],[2,0],[4,4]]})";
    }
    const Result r = run_cli("run --algorithm avg --problem " + path + " --seed 1");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out)["M"], 4);
    std::filesystem::remove(path);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run_cli("run --algorithm pstc --problem nosuchbuiltin --seed 1").code, 2);
    EXPECT_EQ(run_cli("run --algorithm sgd --problem counterexample").code, 2);
    EXPECT_EQ(run_cli("run --problem counterexample").code, 2);
    EXPECT_EQ(run_cli("frobnicate").code, 2);
    EXPECT_EQ(run_cli("").code, 2);
    EXPECT_EQ(run_cli("run --algorithm pstc --problem counterexample:6").code, 2);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run_cli("--help").code, 0); }

TEST(Cli, ScalingWritesCsvAndFit) {
    const std::string path = temp_path("qopt_cli_scaling.csv");
    const Result r = run_cli("scaling --algorithm avg --m-list 16,32,64 --n 4 --seeds 4 --out " + path);
    ASSERT_EQ(r.code, 0);
    const auto fit = nlohmann::json::parse(r.out);
    EXPECT_TRUE(fit.contains("slope"));
    EXPECT_TRUE(fit.contains("r2"));
    std::ifstream f(path);
    std::string header;
    std::getline(f, header);
    EXPECT_EQ(header, "algorithm,M,N,seed,cost,success");
    int lines = 0;
    for (std::string line; std::getline(f, line);) {
        ++lines;
    }
    EXPECT_EQ(lines, 12);
    std::filesystem::remove(path);
}

TEST(Cli, ScalingSingleMIsUsageError) {
    EXPECT_EQ(run_cli("scaling --algorithm avg --m-list 64 --n 4 --seeds 2 --out " +
                      temp_path("qopt_cli_single.csv"))
                  .code,
              2);
}

} // namespace
