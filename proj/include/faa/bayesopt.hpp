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

#ifndef FAA_BAYESOPT_HPP
#define FAA_BAYESOPT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "faa/error.hpp"
#include "faa/geometry.hpp"

/*!MD
# bayesopt
Gaussian-process Bayesian optimization with expected improvement

## Description:
- Zero-mean GP prior with squared-exponential kernel `k(a, b) = eta0 exp(-eta1/2 ||a - b||^2)`.
- Posterior at a query `q`: `mu = k*^T K^-1 f`, `sigma^2 = k(q, q) - k*^T K^-1 k*`.
- `optimize` maximizes a black-box objective over a box: an initial random design (plus the
  all-zero point when requested) followed by `budget` rounds of "fit GP, maximize EI over a candidate
  set, measure". Objective values are standardized before fitting.
- Candidate sets: a dense grid in 1-D, a randomly shifted Halton set in higher dimension.
MD!*/

namespace faa
{
    using Point = Eigen::VectorXd;

    struct Kernel
    {
        double eta0 = 1.0;      // output scale
        double eta1 = 1.0;      // inverse squared length-scale
        double jitter = 1e-10;  // added to the Gram diagonal
    };

    inline double kernel_eval(const Kernel &k, const Point &a, const Point &b)
    {
        if (a.size() != b.size())
            throw ConfigError("kernel arguments differ in dimension (" + std::to_string(a.size()) + " vs " +
                              std::to_string(b.size()) + ")");
        return k.eta0 * std::exp(-0.5 * k.eta1 * (a - b).squaredNorm());
    }

    struct GpDataset
    {
        std::vector<Point> points;
        std::vector<double> values;

        std::size_t size() const { return points.size(); }
        Eigen::Index dims() const { return points.empty() ? 0 : points.front().size(); }

        bool contains(const Point &p, double tol = 1e-12) const
        {
            return std::any_of(points.begin(), points.end(), [&](const Point &q)
                               { return q.size() == p.size() && (q - p).norm() <= tol; });
        }

        void add(Point p, double v)
        {
            if (!points.empty() && p.size() != dims())
                throw ConfigError("dataset point has wrong dimension");
            if (contains(p))
                throw ConfigError("duplicate point in GP dataset");
            points.push_back(std::move(p));
            values.push_back(v);
        }
    };

    struct GpPosterior
    {
        double mu = 0.0;
        double sigma2 = 0.0;

        double sigma() const { return std::sqrt(sigma2); }
    };

    inline constexpr double gp_max_jitter = 1e-6;
    inline constexpr double gp_condition_limit = 1e12;

    // Factorized GP posterior over a fixed dataset.
    class GaussianProcess
    {
    public:
        GaussianProcess(const Kernel &kernel, const GpDataset &data) : kernel_(kernel)
        {
            const auto t = static_cast<Eigen::Index>(data.size());
            if (t == 0)
                throw ConfigError("GP posterior needs at least one measurement");
            x_.resize(data.dims(), t);
            Eigen::VectorXd f(t);
            for (Eigen::Index i = 0; i < t; ++i)
            {
                x_.col(i) = data.points[static_cast<std::size_t>(i)];
                f(i) = data.values[static_cast<std::size_t>(i)];
            }
            Eigen::MatrixXd gram(t, t);
            for (Eigen::Index i = 0; i < t; ++i)
                for (Eigen::Index j = 0; j <= i; ++j)
                    gram(i, j) = gram(j, i) = kernel_eval(kernel_, x_.col(i), x_.col(j));

            double jitter = kernel_.jitter;
            double cond = std::numeric_limits<double>::infinity();
            for (;;)
            {
                Eigen::MatrixXd k = gram;
                k.diagonal().array() += jitter;
                const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(k, Eigen::EigenvaluesOnly);
                const double lmin = eig.eigenvalues().minCoeff(), lmax = eig.eigenvalues().maxCoeff();
                cond = lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();
                if (cond < gp_condition_limit)
                {
                    llt_.compute(k);
                    if (llt_.info() == Eigen::Success)
                        break;
                }
                if (jitter >= gp_max_jitter)
                    throw NumericalError("GP Gram matrix is ill-conditioned; increase the kernel jitter", cond);
                jitter = std::min(jitter > 0.0 ? jitter * 10.0 : 1e-12, gp_max_jitter);
            }
            jitter_ = jitter;
            alpha_ = llt_.solve(f);
        }

        double jitter_used() const { return jitter_; }

        GpPosterior predict(const Point &q) const
        {
            if (q.size() != x_.rows())
                throw ConfigError("query point has wrong dimension");
            Eigen::VectorXd ks(x_.cols());
            for (Eigen::Index i = 0; i < x_.cols(); ++i)
                ks(i) = kernel_eval(kernel_, x_.col(i), q);
            const Eigen::VectorXd v = llt_.matrixL().solve(ks);
            return {ks.dot(alpha_), clamp_variance(kernel_.eta0 - v.squaredNorm())};
        }

        // Batched prediction; candidates as columns.
        std::vector<GpPosterior> predict(const Eigen::MatrixXd &queries) const
        {
            if (queries.rows() != x_.rows())
                throw ConfigError("query points have wrong dimension");
            Eigen::MatrixXd ks(x_.cols(), queries.cols());
            for (Eigen::Index c = 0; c < queries.cols(); ++c)
                for (Eigen::Index i = 0; i < x_.cols(); ++i)
                    ks(i, c) = kernel_.eta0 * std::exp(-0.5 * kernel_.eta1 * (x_.col(i) - queries.col(c)).squaredNorm());
            const Eigen::VectorXd mu = ks.transpose() * alpha_;
            const Eigen::MatrixXd v = llt_.matrixL().solve(ks);
            const Eigen::VectorXd explained = v.colwise().squaredNorm().transpose();
            std::vector<GpPosterior> out(static_cast<std::size_t>(queries.cols()));
            for (Eigen::Index c = 0; c < queries.cols(); ++c)
                out[static_cast<std::size_t>(c)] = {mu(c), clamp_variance(kernel_.eta0 - explained(c))};
            return out;
        }

    private:
        // Variance at or below the jitter level is round-off of a measured point.
        double clamp_variance(double v) const
        {
            return v > 10.0 * jitter_ + 1e-12 * kernel_.eta0 ? v : 0.0;
        }

        Kernel kernel_;
        Eigen::MatrixXd x_;
        Eigen::LLT<Eigen::MatrixXd> llt_;
        Eigen::VectorXd alpha_;
        double jitter_ = 0.0;
    };

    inline GpPosterior gp_posterior(const Kernel &k, const GpDataset &data, const Point &query)
    {
        return GaussianProcess(k, data).predict(query);
    }

    inline double standard_normal_pdf(double z)
    {
        return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
    }

    inline double standard_normal_cdf(double z)
    {
        return 0.5 * std::erfc(-z / std::numbers::sqrt2);
    }

    // E[max(0, f - f_best)] for f ~ N(mu, sigma^2); zero when sigma = 0.
    inline double expected_improvement(double mu, double sigma, double f_best)
    {
        if (!(sigma > 0.0))
            return 0.0;
        const double z = (mu - f_best) / sigma;
        return std::max((mu - f_best) * standard_normal_cdf(z) + sigma * standard_normal_pdf(z), 0.0);
    }

    namespace detail
    {
        inline Eigen::MatrixXd as_columns(std::span<const Point> pts)
        {
            Eigen::MatrixXd m(pts.empty() ? 0 : pts.front().size(), static_cast<Eigen::Index>(pts.size()));
            for (std::size_t i = 0; i < pts.size(); ++i)
                m.col(static_cast<Eigen::Index>(i)) = pts[i];
            return m;
        }

        inline double incumbent(const GpDataset &data)
        {
            return *std::max_element(data.values.begin(), data.values.end());
        }

        // EI at every candidate column, with f* the best measured value of `data`.
        inline Eigen::VectorXd expected_improvements(const GaussianProcess &gp, const GpDataset &data,
                                                     const Eigen::MatrixXd &candidates)
        {
            const double f_best = incumbent(data);
            const std::vector<GpPosterior> post = gp.predict(candidates);
            Eigen::VectorXd ei(candidates.cols());
            for (Eigen::Index c = 0; c < candidates.cols(); ++c)
                ei(c) = expected_improvement(post[static_cast<std::size_t>(c)].mu, post[static_cast<std::size_t>(c)].sigma(), f_best);
            return ei;
        }

        // argmax with ties to the lowest index; skips masked entries. Returns -1 when all are masked.
        inline Eigen::Index argmax(const Eigen::VectorXd &v, const std::vector<bool> &skip)
        {
            Eigen::Index best = -1;
            for (Eigen::Index i = 0; i < v.size(); ++i)
            {
                if (skip[static_cast<std::size_t>(i)])
                    continue;
                if (best < 0 || v(i) > v(best))
                    best = i;
            }
            return best;
        }
    }

    inline std::size_t propose_next_index(const Kernel &k, const GpDataset &data, std::span<const Point> candidates)
    {
        if (candidates.empty())
            throw ConfigError("propose_next needs at least one candidate");
        const GaussianProcess gp(k, data);
        const Eigen::VectorXd ei = detail::expected_improvements(gp, data, detail::as_columns(candidates));
        return static_cast<std::size_t>(detail::argmax(ei, std::vector<bool>(candidates.size(), false)));
    }

    inline Point propose_next(const Kernel &k, const GpDataset &data, std::span<const Point> candidates)
    {
        return candidates[propose_next_index(k, data, candidates)];
    }

    // i-th element of the van der Corput sequence in the given base.
    inline double radical_inverse(std::uint64_t i, unsigned base)
    {
        double inv = 1.0 / base, f = inv, r = 0.0;
        while (i > 0)
        {
            r += f * static_cast<double>(i % base);
            i /= base;
            f *= inv;
        }
        return r;
    }

    // Halton points in [0,1)^D, skipping the origin.
    inline Eigen::MatrixXd halton_points(Eigen::Index dims, Eigen::Index count)
    {
        static constexpr unsigned primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
        if (dims > static_cast<Eigen::Index>(std::size(primes)))
            throw ConfigError("Halton candidates support at most 12 dimensions");
        Eigen::MatrixXd h(dims, count);
        for (Eigen::Index c = 0; c < count; ++c)
            for (Eigen::Index d = 0; d < dims; ++d)
                h(d, c) = radical_inverse(static_cast<std::uint64_t>(c + 1), primes[d]);
        return h;
    }

    struct BoOptions
    {
        int budget = 30;
        int n_init = 4;
        std::uint64_t seed = 1;
        bool include_zero = true;
        Kernel kernel{};
        int grid_1d = 361;          // candidates in 1-D
        int candidates_nd = 2048;   // quasi-random candidates per round in >1-D
    };

    struct TraceEntry
    {
        Point point;
        double value = 0.0;
        double incumbent = 0.0;
    };

    struct BoResult
    {
        Point best_point;
        double best_value = -std::numeric_limits<double>::infinity();
        std::vector<TraceEntry> trace;
    };

    using Objective = std::function<double(const Point &)>;

    inline BoResult optimize(const Objective &objective, std::span<const Interval> bounds, const BoOptions &opt)
    {
        if (bounds.empty())
            throw ConfigError("optimize needs at least one dimension");
        if (opt.budget < 0 || opt.n_init < 1)
            throw ConfigError("optimize needs budget >= 0 and n_init >= 1");
        for (const Interval &b : bounds)
            if (!(b.hi >= b.lo))
                throw ConfigError("empty search interval");

        const auto dims = static_cast<Eigen::Index>(bounds.size());
        std::mt19937_64 rng(opt.seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);

        BoResult res;
        GpDataset raw;
        auto measure = [&](const Point &p)
        {
            const double v = objective(p);
            raw.add(p, v);
            if (v > res.best_value || res.trace.empty())
            {
                res.best_value = v;
                res.best_point = p;
            }
            res.trace.push_back({p, v, res.best_value});
        };

        if (opt.include_zero && std::all_of(bounds.begin(), bounds.end(), [](const Interval &b)
                                            { return b.contains(0.0); }))
            measure(Point::Zero(dims));
        for (int i = 0; i < opt.n_init; ++i)
        {
            Point p(dims);
            for (Eigen::Index d = 0; d < dims; ++d)
                p(d) = bounds[static_cast<std::size_t>(d)].lo + bounds[static_cast<std::size_t>(d)].width() * unit(rng);
            if (!raw.contains(p))
                measure(p);
        }

        Eigen::MatrixXd grid;
        if (dims == 1)
        {
            const int n = std::max(opt.grid_1d, 2);
            grid.resize(1, n);
            for (int i = 0; i < n; ++i)
                grid(0, i) = bounds[0].lo + bounds[0].width() * i / (n - 1);
        }
        const Eigen::MatrixXd halton = dims > 1 ? halton_points(dims, opt.candidates_nd) : Eigen::MatrixXd();

        for (int round = 0; round < opt.budget; ++round)
        {
            Eigen::MatrixXd cand;
            if (dims == 1)
                cand = grid;
            else
            {
                // Cranley-Patterson rotation refreshes the candidate set every round.
                cand.resize(dims, halton.cols());
                for (Eigen::Index d = 0; d < dims; ++d)
                {
                    const double shift = unit(rng);
                    const Interval &b = bounds[static_cast<std::size_t>(d)];
                    for (Eigen::Index c = 0; c < halton.cols(); ++c)
                    {
                        double u = halton(d, c) + shift;
                        u -= std::floor(u);
                        cand(d, c) = b.lo + b.width() * u;
                    }
                }
            }

            // Standardize the observations so the unit-scale kernel fits any objective range.
            GpDataset std_data;
            std_data.points = raw.points;
            const Eigen::Map<const Eigen::VectorXd> vals(raw.values.data(), static_cast<Eigen::Index>(raw.values.size()));
            const double mean = vals.mean();
            double sd = vals.size() > 1 ? std::sqrt((vals.array() - mean).square().sum() / (vals.size() - 1)) : 1.0;
            if (!(sd > 0.0))
                sd = 1.0;
            std_data.values.resize(raw.values.size());
            for (std::size_t i = 0; i < raw.values.size(); ++i)
                std_data.values[i] = (raw.values[i] - mean) / sd;

            const GaussianProcess gp(opt.kernel, std_data);
            const Eigen::VectorXd ei = detail::expected_improvements(gp, std_data, cand);
            std::vector<bool> skip(static_cast<std::size_t>(cand.cols()));
            for (Eigen::Index c = 0; c < cand.cols(); ++c)
                skip[static_cast<std::size_t>(c)] = raw.contains(cand.col(c));
            const Eigen::Index pick = detail::argmax(ei, skip);
            if (pick < 0)
                break;
            measure(cand.col(pick));
        }
        return res;
    }

    inline BoResult optimize(const Objective &objective, std::initializer_list<Interval> bounds, const BoOptions &opt)
    {
        const std::vector<Interval> b(bounds);
        return optimize(objective, std::span<const Interval>(b), opt);
    }
}

#endif
