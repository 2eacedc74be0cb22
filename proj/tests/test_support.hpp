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

#ifndef FAA_TEST_SUPPORT_HPP
#define FAA_TEST_SUPPORT_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "faa/faa.hpp"

namespace faa_test
{
    constexpr double pi = std::numbers::pi;

    inline double rel_err(double a, double b)
    {
        return std::abs(a - b) / std::max(std::abs(b), 1e-300);
    }

    template <typename A, typename B>
    double rel_err_norm(const A &a, const B &b)
    {
        return (a - b).norm() / std::max(b.norm(), 1e-300);
    }

    inline double uniform(std::mt19937_64 &rng, double lo, double hi)
    {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }

    inline Eigen::MatrixXcd random_complex(std::mt19937_64 &rng, Eigen::Index rows, Eigen::Index cols)
    {
        std::normal_distribution<double> n(0.0, 1.0);
        Eigen::MatrixXcd m(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j)
                m(i, j) = {n(rng), n(rng)};
        return m;
    }

    // Random interior paths: elevations and azimuths kept away from the cosine support edges.
    inline faa::PathSet random_paths(std::mt19937_64 &rng, int L, double phi_max = pi / 3.0)
    {
        faa::PathSet p;
        std::normal_distribution<double> n(0.0, 1.0);
        for (int l = 0; l < L; ++l)
        {
            p.theta.push_back(uniform(rng, pi / 4.0, 3.0 * pi / 4.0));
            p.phi.push_back(uniform(rng, -phi_max, phi_max));
            p.beta.emplace_back(n(rng), n(rng));
        }
        return p;
    }

    // Central difference of a complex-vector valued function of one real parameter.
    template <typename F>
    Eigen::VectorXcd central_difference(F &&f, double x, double h = 1e-6)
    {
        return (f(x + h) - f(x - h)) / (2.0 * h);
    }

    inline const faa::FlexModel flex_models[] = {faa::FlexModel::Rotatable, faa::FlexModel::Bendable,
                                                 faa::FlexModel::Foldable};
}

#endif
