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

// faa command line: geometry / pattern dumps and the Monte Carlo experiments, CSV out.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "faa/faa.hpp"

#ifndef FAA_VERSION
#define FAA_VERSION "0.0.0"
#endif

namespace
{
    constexpr int exit_config = 2;
    constexpr int exit_numerical = 3;

    const std::vector<std::string> model_names{"planar", "rotate", "bend", "fold"};
    const std::vector<std::string> pattern_names{"omni", "cosine"};

    struct ArrayFlags
    {
        int nh = 8;
        int nv = 2;
        double lambda = 0.03;
        double spacing = 0.0;  // 0: lambda / 2

        void add(CLI::App *app, int default_nv)
        {
            nv = default_nv;
            app->add_option("--nh", nh, "Elements per row (horizontal)")->check(CLI::PositiveNumber);
            app->add_option("--nv", nv, "Elements per column (vertical)")->check(CLI::PositiveNumber);
            app->add_option("--lambda", lambda, "Wavelength [m]")->check(CLI::PositiveNumber);
            app->add_option("--spacing", spacing, "Element spacing [m], 0 for lambda/2")->check(CLI::NonNegativeNumber);
        }

        faa::ArrayConfig config() const
        {
            faa::ArrayConfig c = faa::ArrayConfig::half_wavelength(nh, nv, lambda);
            if (spacing > 0.0)
                c.d = spacing;
            c.validate();
            return c;
        }
    };

    struct PatternFlags
    {
        std::string kind = "omni";
        double kappa = 1.0;

        void add(CLI::App *app, const std::string &flag = "--pattern")
        {
            app->add_option(flag, kind, "Element pattern")->check(CLI::IsMember(pattern_names));
            app->add_option("--kappa", kappa, "Directivity exponent of the cosine pattern")->check(CLI::PositiveNumber);
        }

        faa::PatternSpec spec() const
        {
            faa::PatternSpec s = faa::parse_pattern_kind(kind) == faa::PatternKind::Omni ? faa::PatternSpec::omni()
                                                                                          : faa::PatternSpec::cosine(kappa);
            s.validate();
            return s;
        }
    };

    struct ScenarioFlags
    {
        std::string model = "rotate";
        int users = 4;
        int paths = 5;
        bool paper_scale = false;

        void add(CLI::App *app)
        {
            app->add_option("--model", model, "Flexible array model")->check(CLI::IsMember(model_names));
            app->add_option("--users", users, "Users per sector (K)")->check(CLI::PositiveNumber);
            app->add_option("--paths", paths, "Paths per user (L)")->check(CLI::PositiveNumber);
            app->add_flag("--paper-scale", paper_scale, "Serve K = 16 users per sector (overrides --users)");
        }

        faa::ScenarioParams params(const ArrayFlags &a, const PatternFlags &p) const
        {
            faa::ScenarioParams s;
            s.array = a.config();
            s.model = faa::parse_flex_model(model);
            s.pattern = p.spec();
            s.users_per_sector = paper_scale ? faa::ScenarioParams::paper_scale_users : users;
            s.paths_per_user = paths;
            return s;
        }
    };

    struct BoFlags
    {
        int budget = -1;
        int n_init = 4;
        bool no_zero = false;

        void add(CLI::App *app)
        {
            app->add_option("--budget", budget, "BO rounds after initialization (-1: 30 in 1-D, 60 in 3-D)");
            app->add_option("--n-init", n_init, "Random initial measurements")->check(CLI::PositiveNumber);
            app->add_flag("--no-zero", no_zero, "Do not measure the flat configuration first");
        }
    };

    struct Command
    {
        CLI::App *app = nullptr;
        std::string out;
        bool dump = false;
        std::uint64_t seed = 1;
    };

    void add_common(Command &c, bool seeded)
    {
        c.app->configurable();
        c.app->add_option("--out,-o", c.out, "Output CSV file (default stdout)")->configurable(false);
        if (seeded)
            c.app->add_option("--seed", c.seed, "Master seed");
        c.app->add_flag("--dump-config", c.dump, "Print the effective configuration and exit")->configurable(false);
    }

    std::string effective_config(const Command &c)
    {
        return "[" + c.app->get_name() + "]\n" + c.app->config_to_str(true, false);
    }

    void emit(const Command &c, faa::ResultTable t, bool seeded)
    {
        std::vector<std::string> head{"config-hash: " + faa::hex64(faa::fnv1a64(effective_config(c)))};
        if (seeded)
            head.push_back("seed: " + std::to_string(c.seed));
        t.comments.insert(t.comments.begin(), head.begin(), head.end());
        if (c.out.empty() || c.out == "-")
        {
            t.write_csv(std::cout);
            return;
        }
        std::ofstream f(c.out);
        if (!f)
            throw faa::ConfigError("cannot open output file '" + c.out + "'");
        t.write_csv(f);
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Flexible antenna array channel modelling and optimization", "faa"};
    app.set_version_flag("--version", std::string("faa ") + FAA_VERSION + " (C++" + std::to_string(__cplusplus / 100 % 100) +
                                          ", Eigen " + std::to_string(EIGEN_WORLD_VERSION) + "." +
                                          std::to_string(EIGEN_MAJOR_VERSION) + "." + std::to_string(EIGEN_MINOR_VERSION) +
                                          ", built " + __DATE__ + ")");
    app.set_config("--config", "", "INI/TOML configuration with one [subcommand] section");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.option_defaults()->always_capture_default();
    app.fallthrough();
    app.require_subcommand(1, 2);

    // geometry
    Command geo{app.add_subcommand("geometry", "Element positions and orientation offsets")};
    add_common(geo, false);
    ArrayFlags geo_array;
    std::string geo_model;
    double geo_psi = 0.0, geo_mount = 0.0;
    geo.app->add_option("--model", geo_model, "Flexible array model")->required()->check(CLI::IsMember(model_names));
    geo_array.add(geo.app, 2);
    geo.app->add_option("--psi", geo_psi, "Flexible DoF [rad]");
    geo.app->add_option("--mount", geo_mount, "Mount azimuth [rad]");

    // pattern
    Command pat{app.add_subcommand("pattern", "Element gain on a theta x phi grid")};
    add_common(pat, false);
    PatternFlags pat_flags;
    int pat_grid = 91;
    pat.app->add_option("--kind", pat_flags.kind, "Element pattern")->required()->check(CLI::IsMember(pattern_names));
    pat.app->add_option("--kappa", pat_flags.kappa, "Directivity exponent of the cosine pattern")->check(CLI::PositiveNumber);
    pat.app->add_option("--grid", pat_grid, "Points per axis (grid x grid rows)")->check(CLI::Range(2, 100000));

    // power-sweep
    Command pws{app.add_subcommand("power-sweep", "Channel power gain over the flexible DoF")};
    add_common(pws, false);
    ArrayFlags pws_array;
    PatternFlags pws_pattern;
    std::string pws_model, pws_file;
    faa::PowerSweepParams pws_p;
    pws.app->add_option("--model", pws_model, "Flexible array model")->required()->check(CLI::IsMember(model_names));
    pws_pattern.add(pws.app);
    pws_array.add(pws.app, 2);
    pws.app->add_option("--psi-min", pws_p.psi_min, "Sweep start [rad]");
    pws.app->add_option("--psi-max", pws_p.psi_max, "Sweep end [rad]");
    pws.app->add_option("--steps", pws_p.steps, "Sweep points")->check(CLI::PositiveNumber);
    pws.app->add_option("--scenario-file", pws_file, "Path CSV (theta,phi,beta_re,beta_im); default is the five-path reference");

    // crb-sweep
    Command crs{app.add_subcommand("crb-sweep", "Mean angle CRB of optimized vs. flat arrays over the path count")};
    add_common(crs, true);
    ArrayFlags crs_array;
    PatternFlags crs_pattern;
    std::vector<std::string> crs_models{"rotate", "bend", "fold"};
    faa::CrbSweepParams crs_p;
    crs.app->add_option("--model", crs_models, "Flexible array models")->check(CLI::IsMember(model_names));
    crs_pattern.add(crs.app);
    crs_array.add(crs.app, 8);
    crs.app->add_option("--L-min", crs_p.l_min, "Smallest path count")->check(CLI::PositiveNumber);
    crs.app->add_option("--L-max", crs_p.l_max, "Largest path count")->check(CLI::PositiveNumber);
    crs.app->add_option("--draws", crs_p.draws, "Random path sets per L")->check(CLI::PositiveNumber);
    crs.app->add_option("--grid", crs_p.grid, "psi grid points")->check(CLI::Range(2, 100000));
    crs.app->add_option("--snr-db", crs_p.snr_db, "Pilot SNR, sigma^2 = 10^(-snr/10)");
    crs.app->add_option("--threads", crs_p.threads, "Worker threads (0: hardware concurrency)");

    // sumrate
    Command sum{app.add_subcommand("sumrate", "Multi-sector zero-forcing sum-rate, flexible vs. flat")};
    add_common(sum, true);
    ArrayFlags sum_array;
    PatternFlags sum_pattern;
    ScenarioFlags sum_scenario;
    BoFlags sum_bo;
    std::string sum_strategy;
    faa::SumrateParams sum_p;
    sum.app->add_option("--strategy", sum_strategy, "Precoding strategy")
        ->required()
        ->check(CLI::IsMember({"single-sector", "sfp", "jfp", "sjfp"}));
    sum_scenario.add(sum.app);
    sum_pattern.add(sum.app);
    sum_array.add(sum.app, 2);
    sum_bo.add(sum.app);
    sum.app->add_option("--snr-db", sum_p.snr_db, "SNR grid [dB]");
    sum.app->add_option("--trials", sum_p.trials, "Random scenarios")->check(CLI::PositiveNumber);
    sum.app->add_option("--threads", sum_p.threads, "Worker threads (0: hardware concurrency)");

    // bo-trace
    Command bot{app.add_subcommand("bo-trace", "Measurement sequence of one BO run")};
    add_common(bot, true);
    ArrayFlags bot_array;
    PatternFlags bot_pattern;
    ScenarioFlags bot_scenario;
    BoFlags bot_bo;
    std::string bot_objective;
    double bot_snr = 15.0;
    bot.app->add_option("--objective", bot_objective, "Objective being optimized")
        ->required()
        ->check(CLI::IsMember({"single-sector", "sfp", "jfp", "sjfp"}));
    bot_scenario.add(bot.app);
    bot_pattern.add(bot.app);
    bot_array.add(bot.app, 2);
    bot_bo.add(bot.app);
    bot.app->add_option("--snr-db", bot_snr, "SNR [dB]");

    CLI::App *run = app.add_subcommand("run", "Run the experiment named by the [section] of --config");

    const std::vector<Command *> commands{&geo, &pat, &pws, &crs, &sum, &bot};

    try
    {
        app.parse(argc, argv);

        std::vector<Command *> chosen;
        for (Command *c : commands)
            if (c->app->parsed())
                chosen.push_back(c);
        if (run->parsed() && app.get_option("--config")->count() == 0)
            throw CLI::RequiredError("--config");
        if (chosen.size() != 1)
            throw CLI::ValidationError(chosen.empty() ? "the configuration names no experiment section"
                                                      : "exactly one subcommand may be given");
        Command &c = *chosen.front();
        if (c.dump)
        {
            std::cout << effective_config(c);
            return 0;
        }

        faa::ResultTable table;
        bool seeded = false;
        if (&c == &geo)
        {
            const faa::ArrayGeometry g = faa::flex_geometry(faa::parse_flex_model(geo_model), geo_array.config(), geo_psi, geo_mount);
            table.header = {"n", "x", "y", "z", "orient"};
            for (Eigen::Index n = 0; n < g.size(); ++n)
                table.rows.push_back({faa::fmt(static_cast<std::size_t>(n)), faa::fmt(g.positions(0, n)), faa::fmt(g.positions(1, n)),
                                      faa::fmt(g.positions(2, n)), faa::fmt(g.orientation(n))});
        }
        else if (&c == &pat)
        {
            const faa::PatternSpec spec = pat_flags.spec();
            table.header = {"theta", "phi", "gain"};
            constexpr double pi = std::numbers::pi;
            for (int i = 0; i < pat_grid; ++i)
                for (int j = 0; j < pat_grid; ++j)
                {
                    const double theta = pi * i / (pat_grid - 1);
                    const double phi = -pi + 2.0 * pi * j / (pat_grid - 1);
                    table.rows.push_back({faa::fmt(theta), faa::fmt(phi), faa::fmt(faa::pattern_gain(spec, theta, phi))});
                }
        }
        else if (&c == &pws)
        {
            pws_p.model = faa::parse_flex_model(pws_model);
            pws_p.pattern = pws_pattern.spec();
            pws_p.array = pws_array.config();
            if (!pws_file.empty())
                pws_p.paths = faa::read_path_file(pws_file);
            table = faa::to_table(faa::power_sweep(pws_p));
        }
        else if (&c == &crs)
        {
            crs_p.models.clear();
            for (const std::string &m : crs_models)
                crs_p.models.push_back(faa::parse_flex_model(m));
            crs_p.pattern = crs_pattern.spec();
            crs_p.array = crs_array.config();
            crs_p.seed = c.seed;
            table = faa::to_table(faa::crb_sweep(crs_p));
            seeded = true;
        }
        else if (&c == &sum)
        {
            sum_p.strategy = faa::parse_strategy(sum_strategy);
            sum_p.scenario = sum_scenario.params(sum_array, sum_pattern);
            sum_p.seed = c.seed;
            sum_p.budget = sum_bo.budget;
            sum_p.n_init = sum_bo.n_init;
            sum_p.include_zero = !sum_bo.no_zero;
            table = faa::to_table(faa::sumrate_experiment(sum_p));
            table.comments.push_back("strategy: " + sum_strategy);
            seeded = true;
        }
        else
        {
            faa::BoTraceParams p;
            p.objective = faa::parse_strategy(bot_objective);
            p.scenario = bot_scenario.params(bot_array, bot_pattern);
            p.scenario.snr_db = bot_snr;
            p.seed = c.seed;
            p.budget = bot_bo.budget;
            p.n_init = bot_bo.n_init;
            p.include_zero = !bot_bo.no_zero;
            const faa::StrategyOutcome r = faa::bo_trace(p);
            table = faa::to_table(p.objective, r);
            table.comments.push_back("rate_fixed: " + faa::fmt(r.rate_fixed));
            table.comments.push_back("rate_flex: " + faa::fmt(r.rate_flex));
            seeded = true;
        }
        emit(c, std::move(table), seeded);
        return 0;
    }
    catch (const CLI::Success &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return exit_config;
    }
    catch (const faa::NumericalError &e)
    {
        std::cerr << "numerical failure: " << e.what() << " (condition number " << e.condition_number() << ")\n";
        return exit_numerical;
    }
    catch (const faa::ConfigError &e)
    {
        std::cerr << "configuration error: " << e.what() << '\n';
        return exit_config;
    }
    catch (const faa::DomainError &e)
    {
        std::cerr << "configuration error: " << e.what() << '\n';
        return exit_config;
    }
}
