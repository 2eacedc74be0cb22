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

#ifndef FAA_HARNESS_HPP
#define FAA_HARNESS_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "faa/bayesopt.hpp"
#include "faa/channel.hpp"
#include "faa/estimation.hpp"
#include "faa/geometry.hpp"
#include "faa/precoding.hpp"
#include "faa/radiation.hpp"
#include "faa/scenario.hpp"

/*!MD
# harness
Scenario generation, strategy drivers and Monte Carlo experiments

## Description:
- One master seed; every trial (and every draw of a CRB sweep) gets its own `mt19937_64` stream
  seeded by a splitmix64 hash of `(master, stream index)`, so results do not depend on execution order.
- Trials run on a small thread pool and are merged by trial index.
- All experiments return a `ResultTable` that renders as CSV with `#` comment lines in front.
MD!*/

namespace faa
{
    // ---------------------------------------------------------------- RNG discipline

    inline std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    // Seed of an independent stream derived from the master seed and up to three counters.
    inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0)
    {
        std::uint64_t s = splitmix64(master);
        s = splitmix64(s ^ a);
        s = splitmix64(s ^ (b * 0xD1B54A32D192ED03ull));
        return splitmix64(s ^ (c * 0x8CB92BA72F3D8DD7ull));
    }

    inline cplx complex_normal(std::mt19937_64 &rng)
    {
        std::normal_distribution<double> n(0.0, std::sqrt(0.5));
        const double re = n(rng);
        const double im = n(rng);
        return {re, im};
    }

    inline std::uint64_t fnv1a64(std::string_view s)
    {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char c : s)
        {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        return h;
    }

    inline std::string hex64(std::uint64_t v)
    {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
        return buf;
    }

    // Runs body(i) for i in [0, n) on up to `threads` workers (0 = hardware concurrency).
    // The first exception thrown by any task is rethrown after all workers have joined.
    template <typename Body>
    void parallel_for(std::size_t n, Body &&body, unsigned threads = 0)
    {
        if (threads == 0)
            threads = std::max(1u, std::thread::hardware_concurrency());
        threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
        if (threads <= 1)
        {
            for (std::size_t i = 0; i < n; ++i)
                body(i);
            return;
        }
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        auto worker = [&]
        {
            for (;;)
            {
                const std::size_t i = next.fetch_add(1);
                if (i >= n)
                    return;
                try
                {
                    body(i);
                }
                catch (...)
                {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    next = n;
                }
            }
        };
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        pool.clear();
        if (error)
            std::rethrow_exception(error);
    }

    // ---------------------------------------------------------------- scenarios

    struct ScenarioParams
    {
        ArrayConfig array = ArrayConfig::half_wavelength(8, 2);
        FlexModel model = FlexModel::Rotatable;
        PatternSpec pattern = PatternSpec::omni();
        int users_per_sector = 4;
        int paths_per_user = 5;
        double snr_db = 15.0;
        double sigma2 = 1.0;
        double cell_radius = 100.0;

        // K = N users per sector.
        static constexpr int paper_scale_users = 16;

        void validate() const
        {
            array.validate();
            pattern.validate();
            if (users_per_sector < 1)
                throw ConfigError("users per sector must be positive");
            if (paths_per_user < 1)
                throw ConfigError("paths per user must be positive");
            if (!(sigma2 > 0.0))
                throw ConfigError("noise power must be positive");
            if (!std::isfinite(snr_db))
                throw ConfigError("SNR must be finite");
        }
    };

    // Draws users and their multipath. Each user has L physical paths with elevation uniform in
    // [pi/3, 2pi/3], azimuth uniform in the user's sector, and beta ~ CN(0, 1). The three co-located
    // arrays observe the same paths; each array's PathSet stores azimuths in its own frame.
    inline Scenario generate_scenario(const ScenarioParams &p, std::uint64_t seed)
    {
        p.validate();
        Scenario sc;
        sc.array = p.array;
        sc.model = p.model;
        sc.pattern = p.pattern;
        sc.users_per_sector = p.users_per_sector;
        sc.paths_per_user = p.paths_per_user;
        sc.snr_db = p.snr_db;
        sc.sigma2 = p.sigma2;
        sc.psi_bounds = default_psi_bounds(p.model);

        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const auto L = static_cast<std::size_t>(p.paths_per_user);
        for (int s = 0; s < sector_count; ++s)
        {
            const Interval az = sc.sector_azimuths[s];
            for (int k = 0; k < p.users_per_sector; ++k)
            {
                sc.user_distance[s].push_back(p.cell_radius * std::sqrt(unit(rng)));
                PathSet global;
                for (std::size_t l = 0; l < L; ++l)
                {
                    global.theta.push_back(sc.elevation.lo + sc.elevation.width() * unit(rng));
                    global.phi.push_back(az.lo + az.width() * unit(rng));
                    global.beta.push_back(complex_normal(rng));
                }
                for (int m = 0; m < sector_count; ++m)
                {
                    PathSet local = global;
                    for (double &phi : local.phi)
                        phi = wrap_angle(phi - sc.mounts[m]);
                    sc.links[m][s].push_back(std::move(local));
                }
            }
        }
        return sc;
    }

    // Scenario with the flex model replaced, all paths kept (common random numbers across models).
    inline Scenario with_model(Scenario sc, FlexModel model)
    {
        sc.model = model;
        sc.psi_bounds = default_psi_bounds(model);
        return sc;
    }

    inline Scenario with_pattern(Scenario sc, const PatternSpec &pattern)
    {
        sc.pattern = pattern;
        return sc;
    }

    // ---------------------------------------------------------------- strategies

    enum class Strategy
    {
        SingleSector,
        Sfp,
        Jfp,
        Sjfp
    };

    inline std::string_view to_string(Strategy s)
    {
        switch (s)
        {
        case Strategy::SingleSector:
            return "single-sector";
        case Strategy::Sfp:
            return "sfp";
        case Strategy::Jfp:
            return "jfp";
        case Strategy::Sjfp:
            return "sjfp";
        }
        return "unknown";
    }

    inline Strategy parse_strategy(std::string_view s)
    {
        if (s == "single-sector" || s == "single")
            return Strategy::SingleSector;
        if (s == "sfp")
            return Strategy::Sfp;
        if (s == "jfp")
            return Strategy::Jfp;
        if (s == "sjfp")
            return Strategy::Sjfp;
        throw ConfigError("unknown strategy '" + std::string(s) + "' (expected single-sector|sfp|jfp|sjfp)");
    }

    // Rank failures count as a zero sum-rate so that the optimizer routes around degenerate psi.
    template <typename F>
    double rate_or_zero(F &&f)
    {
        try
        {
            return f();
        }
        catch (const NumericalError &)
        {
            return 0.0;
        }
    }

    // Sum-rate of a strategy at a given DoF vector (single-sector uses psi[0] only).
    inline double strategy_sumrate(Strategy s, const Scenario &sc, const Psi3 &psi)
    {
        switch (s)
        {
        case Strategy::SingleSector:
            return rate_or_zero([&]
                                { return single_sector_sumrate(sc, psi[0]); });
        case Strategy::Sfp:
        case Strategy::Sjfp:
            return rate_or_zero([&]
                                { return sfp_sumrate(sc, psi).total; });
        case Strategy::Jfp:
            return rate_or_zero([&]
                                { return jfp_sumrate(sc, psi); });
        }
        return 0.0;
    }

    inline BoOptions default_bo_options(int dims, std::uint64_t seed = 1)
    {
        BoOptions o;
        o.budget = dims == 1 ? 30 : 60;
        o.seed = seed;
        return o;
    }

    struct StrategyTraceRow
    {
        int sector = -1;        // SFP sub-run index, -1 for joint searches
        Psi3 psi{};
        double value = 0.0;
        double incumbent = 0.0;
    };

    struct StrategyOutcome
    {
        double rate_fixed = 0.0;    // flat arrays, psi = 0
        double rate_flex = 0.0;     // optimized flexible arrays
        Psi3 psi{};
        bool fell_back = false;     // SFP only: per-sector optima lost to the flat baseline
        std::vector<StrategyTraceRow> trace;
    };

    // Optimizes the flexible DoFs of a scenario with Bayesian optimization.
    //  - single-sector, JFP, SJFP: one search over the sum-rate (1-D or 3-D).
    //  - SFP: three independent 1-D searches, array m maximizing its own sector's rate with the other
    //    arrays flat. If the resulting joint configuration rates below the flat deployment the flat
    //    deployment is kept.
    // `budget` and `seed` of `opt` are used per search.
    inline StrategyOutcome optimize_strategy(Strategy s, const Scenario &sc, const BoOptions &opt)
    {
        StrategyOutcome out;
        const Psi3 zero{};
        const Interval b = sc.psi_bounds;

        if (s == Strategy::Sfp)
        {
            out.rate_fixed = strategy_sumrate(Strategy::Sfp, sc, zero);
            for (int m = 0; m < sector_count; ++m)
            {
                auto objective = [&](const Point &p)
                {
                    Psi3 psi{};
                    psi[m] = p(0);
                    return rate_or_zero([&]
                                        { return sfp_sumrate(sc, psi).per_sector[m]; });
                };
                BoOptions o = opt;
                o.seed = stream_seed(opt.seed, static_cast<std::uint64_t>(m) + 1);
                const BoResult r = optimize(objective, {b}, o);
                out.psi[m] = r.best_point(0);
                for (const TraceEntry &t : r.trace)
                {
                    Psi3 psi{};
                    psi[m] = t.point(0);
                    out.trace.push_back({m, psi, t.value, t.incumbent});
                }
            }
            out.rate_flex = strategy_sumrate(Strategy::Sfp, sc, out.psi);
            if (out.rate_flex < out.rate_fixed)
            {
                out.fell_back = true;
                out.rate_flex = out.rate_fixed;
                out.psi = zero;
            }
            return out;
        }

        const int dims = s == Strategy::SingleSector ? 1 : sector_count;
        auto to_psi = [&](const Point &p)
        {
            Psi3 psi{};
            for (int d = 0; d < dims; ++d)
                psi[d] = p(d);
            return psi;
        };
        auto objective = [&](const Point &p)
        { return strategy_sumrate(s, sc, to_psi(p)); };

        out.rate_fixed = objective(Point::Zero(dims));
        const std::vector<Interval> bounds(static_cast<std::size_t>(dims), b);
        const BoResult r = optimize(objective, bounds, opt);
        out.rate_flex = r.best_value;
        out.psi = to_psi(r.best_point);
        for (const TraceEntry &t : r.trace)
            out.trace.push_back({-1, to_psi(t.point), t.value, t.incumbent});
        return out;
    }

    // ---------------------------------------------------------------- result tables

    struct ResultTable
    {
        std::vector<std::string> comments;              // rendered as "# ..." lines
        std::vector<std::string> header;
        std::vector<std::vector<std::string>> rows;

        void write_csv(std::ostream &os) const
        {
            for (const std::string &c : comments)
                os << "# " << c << '\n';
            for (std::size_t i = 0; i < header.size(); ++i)
                os << (i ? "," : "") << header[i];
            os << '\n';
            for (const auto &r : rows)
            {
                for (std::size_t i = 0; i < r.size(); ++i)
                    os << (i ? "," : "") << r[i];
                os << '\n';
            }
        }

        std::string csv() const
        {
            std::ostringstream os;
            write_csv(os);
            return os.str();
        }
    };

    inline std::string fmt(double v)
    {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
        return buf;
    }

    inline std::string fmt(long long v) { return std::to_string(v); }
    inline std::string fmt(int v) { return std::to_string(v); }
    inline std::string fmt(std::size_t v) { return std::to_string(v); }

    // ---------------------------------------------------------------- experiments

    // Five-path single-user example: 8 x 2 array, lambda = 3 cm, unit gains.
    inline PathSet reference_power_paths()
    {
        constexpr double pi = std::numbers::pi;
        PathSet p;
        p.theta = {pi / 2.0, 2.0 * pi / 3.0, pi / 6.0, pi / 3.0, pi / 2.0};
        p.phi = {-pi / 2.0, -pi / 3.0, pi / 4.0, pi / 6.0, pi / 2.0};
        p.beta.assign(5, cplx(1.0, 0.0));
        return p;
    }

    // Path CSV: header "theta,phi,beta_re,beta_im", one path per row, angles in radians.
    inline PathSet read_path_file(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot open scenario file '" + path + "'");
        PathSet p;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line))
        {
            ++lineno;
            if (line.empty() || line[0] == '#' || line.rfind("theta", 0) == 0)
                continue;
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream ss(line);
            double t, f, br, bi = 0.0;
            if (!(ss >> t >> f >> br))
                throw ConfigError("scenario file '" + path + "' line " + std::to_string(lineno) +
                                  ": expected theta,phi,beta_re,beta_im");
            ss >> bi;
            p.theta.push_back(t);
            p.phi.push_back(f);
            p.beta.emplace_back(br, bi);
        }
        p.validate();
        return p;
    }

    struct PowerSweepParams
    {
        FlexModel model = FlexModel::Rotatable;
        PatternSpec pattern = PatternSpec::omni();
        ArrayConfig array = ArrayConfig::half_wavelength(8, 2);
        PathSet paths = reference_power_paths();
        double psi_min = -std::numbers::pi / 2.0;
        double psi_max = std::numbers::pi / 2.0;
        int steps = 181;
    };

    struct PowerSweepPoint
    {
        double psi;
        double power_db;    // 10 log10(||h(psi)||^2 / ||h_flat||^2)
    };

    inline std::vector<PowerSweepPoint> power_sweep(const PowerSweepParams &p)
    {
        if (p.steps < 1)
            throw ConfigError("power sweep needs at least one step");
        const double flat = channel_power(flexible_channel(FlexModel::Planar, p.array, p.pattern, p.paths, 0.0));
        if (!(flat > 0.0))
            throw NumericalError("reference channel has zero power", std::numeric_limits<double>::infinity());
        std::vector<PowerSweepPoint> out;
        for (int i = 0; i < p.steps; ++i)
        {
            const double psi = p.steps == 1 ? p.psi_min : p.psi_min + (p.psi_max - p.psi_min) * i / (p.steps - 1);
            const double pw = channel_power(flexible_channel(p.model, p.array, p.pattern, p.paths, psi));
            out.push_back({psi, 10.0 * std::log10(pw / flat)});
        }
        return out;
    }

    struct CrbSweepParams
    {
        std::vector<FlexModel> models{FlexModel::Rotatable, FlexModel::Bendable, FlexModel::Foldable};
        PatternSpec pattern = PatternSpec::omni();
        ArrayConfig array = ArrayConfig::half_wavelength(8, 8);
        int l_min = 1;
        int l_max = 6;
        int draws = 200;
        std::uint64_t seed = 1;
        int grid = 181;
        Interval psi_range{-std::numbers::pi / 2.0, std::numbers::pi / 2.0};
        Interval theta_range{std::numbers::pi / 3.0, 2.0 * std::numbers::pi / 3.0};
        Interval phi_range{-std::numbers::pi / 3.0, std::numbers::pi / 3.0};
        double snr_db = 0.0;    // sigma^2 = 10^(-snr/10) with E|beta|^2 = 1
        unsigned threads = 0;
    };

    struct CrbSweepRow
    {
        int paths;
        FlexModel model;
        double mean_crb_optimized;
        double mean_crb_fixed;
    };

    namespace detail
    {
        inline bool any_near_boundary(const PatternSpec &spec, const PathSet &p)
        {
            for (std::size_t l = 0; l < p.size(); ++l)
                if (near_pattern_boundary(spec, p.theta[l], p.phi[l]))
                    return true;
            return false;
        }
    }

    // Draw of a CRB sweep: random paths whose flat-array Fisher matrix is invertible.
    // Draws in the pattern boundary band or with an unidentifiable flat array are redrawn.
    inline PathSet draw_crb_paths(const CrbSweepParams &p, int paths, std::mt19937_64 &rng)
    {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const double sigma2 = std::pow(10.0, -p.snr_db / 10.0);
        for (int attempt = 0; attempt < 1000; ++attempt)
        {
            PathSet ps;
            for (int l = 0; l < paths; ++l)
            {
                ps.theta.push_back(p.theta_range.lo + p.theta_range.width() * unit(rng));
                ps.phi.push_back(p.phi_range.lo + p.phi_range.width() * unit(rng));
                ps.beta.push_back(complex_normal(rng));
            }
            if (detail::any_near_boundary(p.pattern, ps))
                continue;
            try
            {
                mean_angle_crb(fisher_matrix(FlexModel::Planar, p.array, p.pattern, ps, 0.0, 0.0, sigma2));
            }
            catch (const NumericalError &)
            {
                continue;
            }
            return ps;
        }
        throw NumericalError("could not draw an identifiable path set", std::numeric_limits<double>::infinity());
    }

    // Mean angle CRB per path count: optimized flexible array vs. flat array, averaged over draws.
    inline std::vector<CrbSweepRow> crb_sweep(const CrbSweepParams &p)
    {
        p.array.validate();
        p.pattern.validate();
        if (p.l_min < 1 || p.l_max < p.l_min)
            throw ConfigError("CRB sweep needs 1 <= L-min <= L-max");
        if (p.draws < 1)
            throw ConfigError("CRB sweep needs at least one draw");
        const double sigma2 = std::pow(10.0, -p.snr_db / 10.0);
        std::vector<CrbSweepRow> out;
        for (int L = p.l_min; L <= p.l_max; ++L)
        {
            const auto nd = static_cast<std::size_t>(p.draws);
            std::vector<double> fixed(nd);
            std::vector<std::vector<double>> opt(p.models.size(), std::vector<double>(nd));
            parallel_for(nd, [&](std::size_t d)
                         {
                             std::mt19937_64 rng(stream_seed(p.seed, static_cast<std::uint64_t>(L), d));
                             const PathSet ps = draw_crb_paths(p, L, rng);
                             fixed[d] = mean_angle_crb(fisher_matrix(FlexModel::Planar, p.array, p.pattern, ps, 0.0, 0.0, sigma2));
                             for (std::size_t m = 0; m < p.models.size(); ++m)
                                 opt[m][d] = optimal_psi_for_crb(p.models[m], p.array, p.pattern, ps, 0.0, sigma2,
                                                                 p.psi_range, p.grid).crb; }, p.threads);
            double mean_fixed = 0.0;
            for (double v : fixed)
                mean_fixed += v / static_cast<double>(nd);
            for (std::size_t m = 0; m < p.models.size(); ++m)
            {
                double mean_opt = 0.0;
                for (double v : opt[m])
                    mean_opt += v / static_cast<double>(nd);
                out.push_back({L, p.models[m], mean_opt, mean_fixed});
            }
        }
        return out;
    }

    struct SumrateParams
    {
        Strategy strategy = Strategy::Jfp;
        ScenarioParams scenario{};
        std::vector<double> snr_db{15.0};
        int trials = 10;
        std::uint64_t seed = 1;
        int budget = -1;        // < 0: 30 for 1-D searches, 60 for 3-D
        int n_init = 4;
        bool include_zero = true;
        unsigned threads = 0;
    };

    struct SumrateRow
    {
        int trial;
        double snr_db;
        double rate_fixed;
        double rate_flex;
        Psi3 psi;
    };

    inline BoOptions strategy_bo_options(Strategy s, int budget, int n_init, bool include_zero, std::uint64_t seed)
    {
        const int dims = (s == Strategy::SingleSector || s == Strategy::Sfp) ? 1 : sector_count;
        BoOptions o = default_bo_options(dims, seed);
        if (budget >= 0)
            o.budget = budget;
        o.n_init = n_init;
        o.include_zero = include_zero;
        return o;
    }

    // One scenario per trial, shared across the SNR grid.
    inline std::vector<SumrateRow> sumrate_experiment(const SumrateParams &p)
    {
        p.scenario.validate();
        if (p.trials < 1)
            throw ConfigError("sumrate needs at least one trial");
        if (p.snr_db.empty())
            throw ConfigError("sumrate needs at least one SNR point");
        const std::size_t n_snr = p.snr_db.size();
        std::vector<SumrateRow> rows(static_cast<std::size_t>(p.trials) * n_snr);
        parallel_for(static_cast<std::size_t>(p.trials), [&](std::size_t t)
                     {
                         const Scenario base = generate_scenario(p.scenario, stream_seed(p.seed, t));
                         for (std::size_t i = 0; i < n_snr; ++i)
                         {
                             Scenario sc = base;
                             sc.snr_db = p.snr_db[i];
                             const BoOptions o = strategy_bo_options(p.strategy, p.budget, p.n_init, p.include_zero,
                                                                     stream_seed(p.seed, t, i + 1, 1));
                             const StrategyOutcome r = optimize_strategy(p.strategy, sc, o);
                             rows[t * n_snr + i] = {static_cast<int>(t), p.snr_db[i], r.rate_fixed, r.rate_flex, r.psi};
                         } }, p.threads);
        return rows;
    }

    struct BoTraceParams
    {
        Strategy objective = Strategy::SingleSector;
        ScenarioParams scenario{};
        std::uint64_t seed = 1;
        int budget = -1;
        int n_init = 4;
        bool include_zero = true;
    };

    inline StrategyOutcome bo_trace(const BoTraceParams &p)
    {
        const Scenario sc = generate_scenario(p.scenario, stream_seed(p.seed, 0));
        const BoOptions o = strategy_bo_options(p.objective, p.budget, p.n_init, p.include_zero,
                                                stream_seed(p.seed, 0, 1, 1));
        return optimize_strategy(p.objective, sc, o);
    }

    // ---------------------------------------------------------------- tables

    inline ResultTable to_table(const std::vector<PowerSweepPoint> &pts)
    {
        ResultTable t;
        t.header = {"psi", "power_db_vs_fixed"};
        for (const auto &p : pts)
            t.rows.push_back({fmt(p.psi), fmt(p.power_db)});
        return t;
    }

    inline ResultTable to_table(const std::vector<CrbSweepRow> &rows)
    {
        ResultTable t;
        t.header = {"L", "model", "mean_crb_optimized", "mean_crb_fixed"};
        for (const auto &r : rows)
            t.rows.push_back({fmt(r.paths), std::string(to_string(r.model)), fmt(r.mean_crb_optimized), fmt(r.mean_crb_fixed)});
        return t;
    }

    inline ResultTable to_table(const std::vector<SumrateRow> &rows)
    {
        ResultTable t;
        t.header = {"trial", "snr_db", "rate_fixed", "rate_flex", "psi1", "psi2", "psi3"};
        for (const auto &r : rows)
            t.rows.push_back({fmt(r.trial), fmt(r.snr_db), fmt(r.rate_fixed), fmt(r.rate_flex),
                              fmt(r.psi[0]), fmt(r.psi[1]), fmt(r.psi[2])});
        return t;
    }

    // BO trace; SFP traces carry the sub-run (sector) index and the per-sector objective.
    inline ResultTable to_table(Strategy s, const StrategyOutcome &r)
    {
        ResultTable t;
        if (s == Strategy::SingleSector)
            t.header = {"iter", "psi", "value", "incumbent"};
        else if (s == Strategy::Sfp)
            t.header = {"iter", "sector", "psi1", "psi2", "psi3", "value", "incumbent"};
        else
            t.header = {"iter", "psi1", "psi2", "psi3", "value", "incumbent"};
        for (std::size_t i = 0; i < r.trace.size(); ++i)
        {
            const StrategyTraceRow &row = r.trace[i];
            std::vector<std::string> cells{fmt(i)};
            if (s == Strategy::Sfp)
                cells.push_back(fmt(row.sector + 1));
            if (s == Strategy::SingleSector)
                cells.push_back(fmt(row.psi[0]));
            else
                for (double v : row.psi)
                    cells.push_back(fmt(v));
            cells.push_back(fmt(row.value));
            cells.push_back(fmt(row.incumbent));
            t.rows.push_back(std::move(cells));
        }
        return t;
    }
}

#endif
