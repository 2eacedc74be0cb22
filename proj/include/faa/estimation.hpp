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

#ifndef FAA_ESTIMATION_HPP
#define FAA_ESTIMATION_HPP

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "faa/channel.hpp"
#include "faa/error.hpp"
#include "faa/geometry.hpp"
#include "faa/radiation.hpp"

/*!MD
# estimation
Cramer-Rao bounds of the multipath channel parameters under a single-pilot uplink `u = h(psi) + n`

## Description:
- Parameter vector `xi = [theta; phi; beta_re; beta_im]`, length `4L`.
- Fisher matrix `J = (2 / sigma^2) Re{D^H D}` with `D = [dh/dtheta, dh/dphi, dh/dbeta_re, dh/dbeta_im]` (`N x 4L`).
- `crb(J, i) = [J^-1]_{ii}` with the 1-based parameter index `i` in `1..4L`.
MD!*/

namespace faa
{
    struct ChannelDerivatives
    {
        Eigen::VectorXcd d_theta;
        Eigen::VectorXcd d_phi;
        Eigen::VectorXcd d_beta_re;
        Eigen::VectorXcd d_beta_im;
    };

    // Derivatives of h with respect to the four parameters of path l, on a prebuilt geometry.
    inline ChannelDerivatives channel_param_derivatives(const ArrayGeometry &geometry, double lambda,
                                                        const PatternSpec &spec, const PathSet &paths, std::size_t l)
    {
        paths.validate();
        if (l >= paths.size())
            throw ConfigError("path index " + std::to_string(l) + " out of range");
        const double theta = paths.theta[l], phi = paths.phi[l];
        const double scale = std::sqrt(1.0 / static_cast<double>(paths.size()));
        const Eigen::Index n = geometry.size();

        Eigen::VectorXd e(n), de_theta(n), de_phi(n);
        if (spec.kind == PatternKind::Omni)
        {
            e.setOnes();
            de_theta.setZero();
            de_phi.setZero();
        }
        else
        {
            for (Eigen::Index i = 0; i < n; ++i)
            {
                const double local = phi - geometry.orientation(i);
                const PatternGradient grad = pattern_derivatives(spec, theta, local);
                e(i) = pattern_coefficient(spec, theta, local);
                de_theta(i) = grad.d_theta;
                de_phi(i) = grad.d_phi;
            }
        }

        const Eigen::VectorXcd g = array_manifold(geometry, lambda, theta, phi);
        const ManifoldGradient dg = manifold_derivatives(geometry, lambda, theta, phi);
        const Eigen::VectorXcd eg = e.cast<cplx>().cwiseProduct(g);
        const cplx b = scale * paths.beta[l];

        ChannelDerivatives out;
        out.d_theta = b * (de_theta.cast<cplx>().cwiseProduct(g) + dg.d_theta.cwiseProduct(e.cast<cplx>()));
        out.d_phi = b * (de_phi.cast<cplx>().cwiseProduct(g) + dg.d_phi.cwiseProduct(e.cast<cplx>()));
        out.d_beta_re = scale * eg;
        out.d_beta_im = cplx(0.0, scale) * eg;
        return out;
    }

    inline ChannelDerivatives channel_param_derivatives(FlexModel model, const ArrayConfig &cfg, const PatternSpec &spec,
                                                        const PathSet &paths, double psi, double mount, std::size_t l)
    {
        return channel_param_derivatives(flex_geometry(model, cfg, psi, mount), cfg.lambda, spec, paths, l);
    }

    struct FisherMatrix
    {
        Eigen::MatrixXd j;      // 4L x 4L
        double sigma2 = 1.0;

        Eigen::Index paths() const { return j.rows() / 4; }
    };

    inline FisherMatrix fisher_matrix(const ArrayGeometry &geometry, double lambda, const PatternSpec &spec,
                                      const PathSet &paths, double sigma2)
    {
        if (!(sigma2 > 0.0))
            throw ConfigError("noise power must be positive");
        paths.validate();
        const Eigen::Index L = static_cast<Eigen::Index>(paths.size());
        Eigen::MatrixXcd D(geometry.size(), 4 * L);
        for (Eigen::Index l = 0; l < L; ++l)
        {
            const ChannelDerivatives d = channel_param_derivatives(geometry, lambda, spec, paths, static_cast<std::size_t>(l));
            D.col(l) = d.d_theta;
            D.col(L + l) = d.d_phi;
            D.col(2 * L + l) = d.d_beta_re;
            D.col(3 * L + l) = d.d_beta_im;
        }
        Eigen::MatrixXd j = (2.0 / sigma2) * (D.adjoint() * D).real();
        j = 0.5 * (j + j.transpose()).eval();
        return {std::move(j), sigma2};
    }

    inline FisherMatrix fisher_matrix(FlexModel model, const ArrayConfig &cfg, const PatternSpec &spec,
                                      const PathSet &paths, double psi, double mount, double sigma2)
    {
        return fisher_matrix(flex_geometry(model, cfg, psi, mount), cfg.lambda, spec, paths, sigma2);
    }

    inline constexpr double fisher_condition_limit = 1e12;

    // Diagonal of J^-1. Throws NumericalError when J is singular or its condition number exceeds 1e12.
    inline Eigen::VectorXd crb_diagonal(const FisherMatrix &f)
    {
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(f.j);
        if (eig.info() != Eigen::Success)
            throw NumericalError("Fisher eigen-decomposition failed", std::numeric_limits<double>::infinity());
        const Eigen::VectorXd &lam = eig.eigenvalues();
        const double lmax = lam.maxCoeff(), lmin = lam.minCoeff();
        const double cond = lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();
        if (!(cond < fisher_condition_limit))
            throw NumericalError("Fisher matrix is singular; channel parameters are not identifiable", cond);
        const Eigen::MatrixXd &v = eig.eigenvectors();
        return v.cwiseAbs2() * lam.cwiseInverse();
    }

    inline double crb(const FisherMatrix &f, Eigen::Index index)
    {
        if (index < 1 || index > f.j.rows())
            throw ConfigError("CRB index " + std::to_string(index) + " out of range 1.." + std::to_string(f.j.rows()));
        return crb_diagonal(f)(index - 1);
    }

    // Mean over the 2L angle CRBs (all elevations and azimuths).
    inline double mean_angle_crb(const FisherMatrix &f)
    {
        const Eigen::VectorXd c = crb_diagonal(f);
        return c.head(2 * f.paths()).mean();
    }

    struct CrbOptimum
    {
        double psi = 0.0;
        double crb = std::numeric_limits<double>::infinity();
    };

    // Exhaustive grid search of the mean angle CRB over psi. Grid points whose Fisher matrix is
    // singular or whose paths hit the pattern boundary band are skipped. Among equal minima the
    // non-negative, smallest-magnitude psi wins.
    inline CrbOptimum optimal_psi_for_crb(FlexModel model, const ArrayConfig &cfg, const PatternSpec &spec,
                                          const PathSet &paths, double mount, double sigma2, Interval psi_range,
                                          int grid_size = 181)
    {
        if (grid_size < 2)
            throw ConfigError("CRB grid needs at least two points");
        constexpr double tie = 1e-9;
        auto preferred = [](double a, double b)
        {
            if ((a >= 0.0) != (b >= 0.0))
                return a >= 0.0;
            return std::abs(a) < std::abs(b);
        };

        CrbOptimum best;
        bool found = false;
        for (int i = 0; i < grid_size; ++i)
        {
            double psi = psi_range.lo + psi_range.width() * i / (grid_size - 1);
            if (std::abs(psi) < 1e-14 * std::max(1.0, psi_range.width()))
                psi = 0.0;
            double value;
            try
            {
                value = mean_angle_crb(fisher_matrix(model, cfg, spec, paths, psi, mount, sigma2));
            }
            catch (const NumericalError &)
            {
                continue;
            }
            catch (const DomainError &)
            {
                continue;
            }
            if (!std::isfinite(value))
                continue;
            const bool better = !found || value < best.crb * (1.0 - tie) ||
                                (std::abs(value - best.crb) <= tie * best.crb && preferred(psi, best.psi));
            if (better)
            {
                best = {psi, value};
                found = true;
            }
        }
        if (!found)
            throw NumericalError("every CRB grid point failed", std::numeric_limits<double>::infinity());
        return best;
    }
}

#endif
