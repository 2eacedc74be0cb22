// SPDX-License-Identifier: Apache-2.0
//
// faa - flexible antenna array channel modelling and optimization
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// End-to-end checks of the faa executable: exit codes, CSV shape and config round-trips.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <gtest/gtest.h>

namespace
{
    struct CliResult
    {
        int status = -1;
        std::string output;  // stdout and stderr
    };

    CliResult invoke(const std::string &args)
    {
        const std::string cmd = std::string(FAA_CLI_PATH) + " " + args + " 2>&1";
        CliResult r;
        FILE *p = popen(cmd.c_str(), "r");
        if (!p)
            return r;
        char buf[4096];
        std::size_t n;
        while ((n = std::fread(buf, 1, sizeof buf, p)) > 0)
            r.output.append(buf, n);
        const int raw = pclose(p);
        r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
        return r;
    }

    std::filesystem::path temp_file(const std::string &name)
    {
        return std::filesystem::temp_directory_path() / ("faa_cli_" + std::to_string(::getpid()) + "_" + name);
    }

    std::string slurp(const std::filesystem::path &p)
    {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    int data_rows(const std::string &csv)
    {
        std::istringstream in(csv);
        std::string line;
        int rows = 0;
        bool header = false;
        while (std::getline(in, line))
        {
            if (line.empty() || line[0] == '#')
                continue;
            if (!header)
            {
                header = true;
                continue;
            }
            ++rows;
        }
        return rows;
    }
}

TEST(Cli, VersionFlag)
{
    const CliResult r = invoke("--version");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.output.find("faa "), std::string::npos);
}

TEST(Cli, PatternGridRows)
{
    const CliResult r = invoke("pattern --kind cosine --kappa 2 --grid 10");
    ASSERT_EQ(r.status, 0) << r.output;
    EXPECT_EQ(data_rows(r.output), 100);
    EXPECT_NE(r.output.find("# config-hash: "), std::string::npos);
}

TEST(Cli, GeometryWritesFile)
{
    const auto out = temp_file("geom.csv");
    const CliResult r = invoke("geometry --model fold --psi 0.4 --nh 4 --nv 2 -o " + out.string());
    ASSERT_EQ(r.status, 0) << r.output;
    EXPECT_EQ(data_rows(slurp(out)), 8);
    std::filesystem::remove(out);
}

TEST(Cli, MissingRequiredFlagNamesIt)
{
    const CliResult r = invoke("power-sweep");
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.output.find("--model"), std::string::npos) << r.output;
}

TEST(Cli, UnknownValueIsUsageError)
{
    EXPECT_EQ(invoke("geometry --model twist").status, 2);
    EXPECT_EQ(invoke("pattern --kind cosine --kappa -1").status, 2);
    EXPECT_EQ(invoke("sumrate --strategy nope").status, 2);
}

TEST(Cli, RunWithoutConfigFails)
{
    const CliResult r = invoke("run");
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.output.find("--config"), std::string::npos) << r.output;
}

TEST(Cli, UnknownConfigKeyFails)
{
    const auto cfg = temp_file("bad.ini");
    std::ofstream(cfg) << "[geometry]\nmodel=\"rotate\"\nbogus=3\n";
    EXPECT_EQ(invoke("--config " + cfg.string() + " run").status, 2);
    std::filesystem::remove(cfg);
}

TEST(Cli, DumpConfigRoundTrip)
{
    const auto cfg = temp_file("dump.ini");
    const std::string args = "sumrate --strategy sfp --snr-db 10 --trials 2 --users 2 --nh 4 --budget 5 --seed 11";
    ASSERT_EQ(invoke(args + " --dump-config > " + cfg.string()).status, 0);
    const CliResult direct = invoke(args);
    ASSERT_EQ(direct.status, 0) << direct.output;
    const CliResult replay = invoke("--config " + cfg.string() + " run");
    ASSERT_EQ(replay.status, 0) << replay.output << slurp(cfg);
    EXPECT_EQ(direct.output, replay.output);
    EXPECT_EQ(data_rows(direct.output), 2);
    std::filesystem::remove(cfg);
}

TEST(Cli, OutputPathDoesNotChangeConfigHash)
{
    const auto out = temp_file("hash.csv");
    const std::string args = "pattern --kind omni --grid 3";
    ASSERT_EQ(invoke(args + " -o " + out.string()).status, 0);
    EXPECT_EQ(slurp(out), invoke(args).output);
    std::filesystem::remove(out);
}

TEST(Cli, SampleConfigRuns)
{
    const CliResult r = invoke(std::string("--config ") + FAA_SAMPLES_DIR + "/sumrate.ini run");
    ASSERT_EQ(r.status, 0) << r.output;
    EXPECT_NE(r.output.find("trial,snr_db,rate_fixed,rate_flex"), std::string::npos);
    EXPECT_EQ(data_rows(r.output), 8);
}

TEST(Cli, NumericalFailureExitCode)
{
    const auto paths = temp_file("zero.csv");
    std::ofstream(paths) << "theta,phi,beta_re,beta_im\n1.5,0.1,0,0\n1.2,-0.3,0,0\n";
    const CliResult r = invoke("power-sweep --model rotate --scenario-file " + paths.string());
    EXPECT_EQ(r.status, 3) << r.output;
    std::filesystem::remove(paths);
}

TEST(Cli, MissingScenarioFileIsConfigError)
{
    EXPECT_EQ(invoke("power-sweep --model rotate --scenario-file /nonexistent/paths.csv").status, 2);
}
