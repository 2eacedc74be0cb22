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

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace faa;
using faa_test::pi;

namespace
{
    bool same(const PathSet &a, const PathSet &b)
    {
        return a.theta == b.theta && a.phi == b.phi && a.beta == b.beta;
    }

    SumrateParams small_sumrate(Strategy s)
    {
        SumrateParams p;
        p.strategy = s;
        p.trials = 3;
        p.budget = 4;
        p.seed = 5;
        return p;
    }
}

TEST(Harness, SeedStreamsAreDistinctAndStable)
{
    EXPECT_EQ(splitmix64(0), splitmix64(0));
    EXPECT_NE(stream_seed(1, 0), stream_seed(1, 1));
    EXPECT_NE(stream_seed(1, 0), stream_seed(2, 0));
    EXPECT_NE(stream_seed(1, 2, 3), stream_seed(1, 3, 2));
    EXPECT_EQ(stream_seed(7, 4, 1, 1), stream_seed(7, 4, 1, 1));
}

TEST(Harness, Fnv1aReferenceValues)
{
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
    EXPECT_EQ(hex64(0xabcull), "0000000000000abc");
}

TEST(Harness, ScenarioIsDeterministic)
{
    const Scenario a = generate_scenario(ScenarioParams{}, 99), b = generate_scenario(ScenarioParams{}, 99);
    const Scenario c = generate_scenario(ScenarioParams{}, 100);
    bool all_same = true, any_diff = false;
    for (int m = 0; m < 3; ++m)
        for (int s = 0; s < 3; ++s)
            for (std::size_t k = 0; k < a.links[m][s].size(); ++k)
            {
                all_same = all_same && same(a.links[m][s][k], b.links[m][s][k]);
                any_diff = any_diff || !same(a.links[m][s][k], c.links[m][s][k]);
            }
    EXPECT_TRUE(all_same);
    EXPECT_TRUE(any_diff);
    EXPECT_EQ(a.user_distance, b.user_distance);
}

TEST(Harness, ScenarioSectorRanges)
{
    ScenarioParams p;
    p.users_per_sector = 6;
    const Scenario sc = generate_scenario(p, 3);
    const double centres[3] = {0.0, 2.0 * pi / 3.0, 4.0 * pi / 3.0};
    for (int m = 0; m < 3; ++m)
        for (int s = 0; s < 3; ++s)
        {
            ASSERT_EQ(sc.links[m][s].size(), 6u);
            for (std::size_t k = 0; k < 6; ++k)
            {
                const PathSet &ps = sc.links[m][s][k];
                ASSERT_EQ(ps.size(), 5u);
                for (std::size_t l = 0; l < ps.size(); ++l)
                {
                    EXPECT_GE(ps.theta[l], pi / 3.0);
                    EXPECT_LE(ps.theta[l], 2.0 * pi / 3.0);
                    EXPECT_GT(ps.phi[l], -pi);
                    EXPECT_LE(ps.phi[l], pi);
                    const double global = ps.phi[l] + sc.mounts[m];
                    EXPECT_LE(std::abs(wrap_angle(global - centres[s])), pi / 3.0 + 1e-12);
                    // every array sees the same physical path
                    EXPECT_EQ(ps.theta[l], sc.links[0][s][k].theta[l]);
                    EXPECT_EQ(ps.beta[l], sc.links[0][s][k].beta[l]);
                }
            }
        }
    // sector 1 azimuths are stored unshifted in array 1's frame
    for (const PathSet &ps : sc.links[0][0])
        for (double phi : ps.phi)
        {
            EXPECT_GE(phi, -pi / 3.0);
            EXPECT_LE(phi, pi / 3.0);
        }
    for (double r : sc.user_distance[1])
    {
        EXPECT_GE(r, 0.0);
        EXPECT_LE(r, 100.0);
    }
}

TEST(Harness, PathGainsHaveUnitPower)
{
    ScenarioParams p;
    p.users_per_sector = 100;
    p.paths_per_user = 34;
    const Scenario sc = generate_scenario(p, 1);
    double sum = 0.0;
    std::size_t n = 0;
    for (int s = 0; s < 3; ++s)
        for (const PathSet &ps : sc.links[0][s])
            for (cplx b : ps.beta)
            {
                sum += std::norm(b);
                ++n;
            }
    ASSERT_GE(n, 10000u);
    EXPECT_NEAR(sum / static_cast<double>(n), 1.0, 0.05);
}

TEST(Harness, ScenarioParamsValidated)
{
    ScenarioParams p;
    p.users_per_sector = 0;
    EXPECT_THROW(generate_scenario(p, 1), ConfigError);
    p = {};
    p.pattern = PatternSpec::cosine(0.2);
    EXPECT_THROW(generate_scenario(p, 1), ConfigError);
}

TEST(Harness, StrategyNames)
{
    for (Strategy s : {Strategy::SingleSector, Strategy::Sfp, Strategy::Jfp, Strategy::Sjfp})
        EXPECT_EQ(parse_strategy(to_string(s)), s);
    EXPECT_THROW(parse_strategy("mmse"), ConfigError);
}

TEST(Harness, RankFailureCountsAsZeroRate)
{
    EXPECT_EQ(rate_or_zero([]() -> double
                           { throw NumericalError("singular", 1e20); }),
              0.0);
    EXPECT_EQ(rate_or_zero([]
                           { return 4.5; }),
              4.5);
}

TEST(Harness, OptimizedNeverBelowFlat)
{
    for (Strategy s : {Strategy::SingleSector, Strategy::Sfp, Strategy::Jfp, Strategy::Sjfp})
    {
        const std::vector<SumrateRow> rows = sumrate_experiment(small_sumrate(s));
        ASSERT_EQ(rows.size(), 3u);
        for (const SumrateRow &r : rows)
        {
            EXPECT_GE(r.rate_flex, r.rate_fixed) << to_string(s);
            for (double psi : r.psi)
                EXPECT_LE(std::abs(psi), pi / 4.0 + 1e-12);
        }
    }
}

TEST(Harness, SfpFallbackKeepsFlatRate)
{
    for (std::uint64_t seed = 0; seed < 6; ++seed)
    {
        const Scenario sc = generate_scenario(ScenarioParams{}, seed);
        BoOptions o = default_bo_options(1, seed);
        o.budget = 3;
        const StrategyOutcome r = optimize_strategy(Strategy::Sfp, sc, o);
        EXPECT_GE(r.rate_flex, r.rate_fixed);
        EXPECT_EQ(r.rate_flex, strategy_sumrate(Strategy::Sfp, sc, r.psi));
        if (r.fell_back)
            EXPECT_EQ(r.psi, (Psi3{0.0, 0.0, 0.0}));
    }
}

TEST(Harness, SingleTrialEqualsDirectCall)
{
    SumrateParams p = small_sumrate(Strategy::Jfp);
    p.trials = 1;
    const SumrateRow row = sumrate_experiment(p).front();
    const Scenario sc = generate_scenario(p.scenario, stream_seed(p.seed, 0));
    const StrategyOutcome direct = optimize_strategy(Strategy::Jfp, sc, strategy_bo_options(Strategy::Jfp, p.budget, p.n_init, true,
                                                                                            stream_seed(p.seed, 0, 1, 1)));
    EXPECT_EQ(row.rate_flex, direct.rate_flex);
    EXPECT_EQ(row.rate_fixed, direct.rate_fixed);
    EXPECT_EQ(row.psi, direct.psi);
}

TEST(Harness, ResultsIndependentOfThreadCount)
{
    SumrateParams p = small_sumrate(Strategy::Sjfp);
    p.snr_db = {5.0, 15.0};
    p.threads = 1;
    const std::string a = to_table(sumrate_experiment(p)).csv();
    p.threads = 3;
    const std::string b = to_table(sumrate_experiment(p)).csv();
    EXPECT_EQ(a, b);
}

TEST(Harness, ParallelForRethrows)
{
    EXPECT_THROW(parallel_for(8, [](std::size_t i)
                              { if (i == 5) throw ConfigError("boom"); }, 3),
                 ConfigError);
    std::vector<int> hit(50, 0);
    parallel_for(hit.size(), [&](std::size_t i)
                 { hit[i] += 1; }, 4);
    EXPECT_TRUE(std::all_of(hit.begin(), hit.end(), [](int h)
                            { return h == 1; }));
}

TEST(Harness, PowerSweepReferencePoint)
{
    PowerSweepParams p;
    p.steps = 181;
    const auto curve = power_sweep(p);
    ASSERT_EQ(curve.size(), 181u);
    EXPECT_DOUBLE_EQ(curve[90].psi, 0.0);
    EXPECT_EQ(curve[90].power_db, 0.0);
    for (FlexModel m : faa_test::flex_models)
    {
        p.model = m;
        EXPECT_EQ(power_sweep(p)[90].power_db, 0.0);
    }
}

TEST(Harness, PowerSweepRejectsDeadChannel)
{
    PowerSweepParams p;
    std::fill(p.paths.beta.begin(), p.paths.beta.end(), cplx(0.0));
    EXPECT_THROW(power_sweep(p), NumericalError);
}

TEST(Harness, PathFileRoundTrip)
{
    const auto path = std::filesystem::temp_directory_path() / "faa_paths_test.csv";
    {
        std::ofstream f(path);
        f << "theta,phi,beta_re,beta_im\n1.0,0.5,1,0\n# comment\n2.0,-0.25,0.5,-0.5\n";
    }
    const PathSet p = read_path_file(path.string());
    ASSERT_EQ(p.size(), 2u);
    EXPECT_EQ(p.phi[1], -0.25);
    EXPECT_EQ(p.beta[1], cplx(0.5, -0.5));
    {
        std::ofstream f(path);
        f << "theta,phi\n1.0\n";
    }
    EXPECT_THROW(read_path_file(path.string()), ConfigError);
    std::filesystem::remove(path);
    EXPECT_THROW(read_path_file(path.string()), ConfigError);
}

TEST(Harness, CrbSweepSmall)
{
    CrbSweepParams p;
    p.array = ArrayConfig::half_wavelength(4, 4);
    p.l_max = 2;
    p.draws = 4;
    p.grid = 31;
    const auto rows = crb_sweep(p);
    ASSERT_EQ(rows.size(), 6u);
    for (const CrbSweepRow &r : rows)
        EXPECT_LE(r.mean_crb_optimized, r.mean_crb_fixed);
    EXPECT_EQ(to_table(rows).header.front(), "L");
}

TEST(Harness, CsvRendering)
{
    ResultTable t;
    t.comments = {"config-hash: 00", "seed: 3"};
    t.header = {"a", "b"};
    t.rows = {{fmt(1.5), fmt(-0.0)}, {fmt(1.0 / 3.0), fmt(7)}};
    EXPECT_EQ(t.csv(), "# config-hash: 00\n# seed: 3\na,b\n1.5,0\n0.333333333333,7\n");
}

TEST(Harness, BoTraceTableShapes)
{
    BoTraceParams p;
    p.budget = 3;
    p.objective = Strategy::SingleSector;
    ResultTable t = to_table(p.objective, bo_trace(p));
    EXPECT_EQ(t.header, (std::vector<std::string>{"iter", "psi", "value", "incumbent"}));
    EXPECT_EQ(t.rows.size(), 8u);
    p.objective = Strategy::Jfp;
    t = to_table(p.objective, bo_trace(p));
    EXPECT_EQ(t.header.size(), 6u);
    p.objective = Strategy::Sfp;
    t = to_table(p.objective, bo_trace(p));
    EXPECT_EQ(t.header[1], "sector");
    EXPECT_EQ(t.rows.size(), 24u);
}
