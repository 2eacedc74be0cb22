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

#ifndef FAA_CHANNEL_HPP
#define FAA_CHANNEL_HPP

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "faa/error.hpp"
#include "faa/geometry.hpp"
#include "faa/radiation.hpp"

/*!MD
# channel
Far-field multipath channels of flexible arrays

## Description:
- `h(psi) = sqrt(1/L) sum_l beta_l e(theta_l, phi_l, psi) .* g(theta_l, phi_l, psi)`
- `g` is the plane-wave manifold `exp(-j 2pi/lambda (x sin(theta) cos(phi) + y sin(theta) sin(phi) + z cos(theta)))`,
  `e` the per-element pattern coefficients under each element's orientation offset.
- Path gains are stored unnormalized; the `sqrt(1/L)` factor is applied once, in `synthesize_channel`.
MD!*/

namespace faa
{
    using cplx = std::complex<double>;

    struct PathSet
    {
        std::vector<double> theta;     // elevations [rad], in [0, pi]
        std::vector<double> phi;       // azimuths [rad], local frame of the receiving array
        std::vector<cplx> beta;        // complex path gains

        std::size_t size() const { return theta.size(); }

        void validate() const
        {
            if (theta.empty())
                throw ConfigError("path set must contain at least one path");
            if (phi.size() != theta.size() || beta.size() != theta.size())
                throw ConfigError("path set arrays differ in length (theta " + std::to_string(theta.size()) +
                                  ", phi " + std::to_string(phi.size()) + ", beta " + std::to_string(beta.size()) + ")");
        }
    };

    inline Eigen::VectorXcd array_manifold(const ArrayGeometry &geometry, double lambda, double theta, double phi)
    {
        const double k = 2.0 * std::numbers::pi / lambda;
        const Eigen::Vector3d dir(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
        const Eigen::VectorXd phase = k * (geometry.positions.transpose() * dir);
        Eigen::VectorXcd g(phase.size());
        for (Eigen::Index n = 0; n < phase.size(); ++n)
            g(n) = std::polar(1.0, -phase(n));
        return g;
    }

    struct ManifoldGradient
    {
        Eigen::VectorXcd d_theta;
        Eigen::VectorXcd d_phi;
    };

    inline ManifoldGradient manifold_derivatives(const ArrayGeometry &geometry, double lambda, double theta, double phi)
    {
        const double k = 2.0 * std::numbers::pi / lambda;
        const double st = std::sin(theta), ct = std::cos(theta);
        const double sp = std::sin(phi), cp = std::cos(phi);
        const Eigen::Vector3d dir_theta(ct * cp, ct * sp, -st);
        const Eigen::Vector3d dir_phi(-st * sp, st * cp, 0.0);

        const Eigen::VectorXcd g = array_manifold(geometry, lambda, theta, phi);
        const Eigen::VectorXd a_theta = geometry.positions.transpose() * dir_theta;
        const Eigen::VectorXd a_phi = geometry.positions.transpose() * dir_phi;
        const cplx mj(0.0, -k);
        return {(mj * a_theta.cast<cplx>()).cwiseProduct(g), (mj * a_phi.cast<cplx>()).cwiseProduct(g)};
    }

    // Per-path steering term e .* g of path l (without beta and the 1/sqrt(L) factor).
    inline Eigen::VectorXcd path_response(const ArrayGeometry &geometry, double lambda, const PatternSpec &spec,
                                          double theta, double phi)
    {
        const Eigen::VectorXcd g = array_manifold(geometry, lambda, theta, phi);
        if (spec.kind == PatternKind::Omni)
            return g;
        return element_pattern_vector(spec, geometry, theta, phi).cast<cplx>().cwiseProduct(g);
    }

    inline Eigen::VectorXcd synthesize_channel(const ArrayGeometry &geometry, double lambda, const PatternSpec &spec,
                                               const PathSet &paths)
    {
        paths.validate();
        Eigen::VectorXcd h = Eigen::VectorXcd::Zero(geometry.size());
        for (std::size_t l = 0; l < paths.size(); ++l)
        {
            if (paths.beta[l] == cplx(0.0))
                continue;
            h += paths.beta[l] * path_response(geometry, lambda, spec, paths.theta[l], paths.phi[l]);
        }
        return h * std::sqrt(1.0 / static_cast<double>(paths.size()));
    }

    inline Eigen::VectorXcd flexible_channel(FlexModel model, const ArrayConfig &cfg, const PatternSpec &spec,
                                             const PathSet &paths, double psi, double mount = 0.0)
    {
        return synthesize_channel(flex_geometry(model, cfg, psi, mount), cfg.lambda, spec, paths);
    }

    inline double channel_power(const Eigen::VectorXcd &h)
    {
        return h.squaredNorm();
    }

    // Channel power via its path expansion: diagonal path energies plus pairwise real cross terms,
    //   (1/L) sum_l |beta_l|^2 ||e_l .* g_l||^2 + (1/L) sum_{l1} sum_{l2>l1} 2 Re{beta_l1 beta_l2^* (e_l2 .* e_l1)^T (g_l2^* .* g_l1)}.
    inline double channel_power_expansion(const ArrayGeometry &geometry, double lambda, const PatternSpec &spec,
                                          const PathSet &paths)
    {
        paths.validate();
        const std::size_t L = paths.size();
        std::vector<Eigen::VectorXd> e(L);
        std::vector<Eigen::VectorXcd> g(L);
        for (std::size_t l = 0; l < L; ++l)
        {
            e[l] = element_pattern_vector(spec, geometry, paths.theta[l], paths.phi[l]);
            g[l] = array_manifold(geometry, lambda, paths.theta[l], paths.phi[l]);
        }
        double diag = 0.0, cross = 0.0;
        for (std::size_t l1 = 0; l1 < L; ++l1)
        {
            diag += std::norm(paths.beta[l1]) * e[l1].cwiseProduct(e[l1]).sum();
            for (std::size_t l2 = l1 + 1; l2 < L; ++l2)
            {
                const Eigen::VectorXd ee = e[l2].cwiseProduct(e[l1]);
                const cplx gg = (ee.cast<cplx>().cwiseProduct(g[l2].conjugate()).cwiseProduct(g[l1])).sum();
                cross += 2.0 * std::real(paths.beta[l1] * std::conj(paths.beta[l2]) * gg);
            }
        }
        return (diag + cross) / static_cast<double>(L);
    }

    // Columns are the channels of the given users towards one array.
    inline Eigen::MatrixXcd sector_channel_matrix(const ArrayGeometry &geometry, double lambda, const PatternSpec &spec,
                                                  std::span<const PathSet> users)
    {
        Eigen::MatrixXcd H(geometry.size(), static_cast<Eigen::Index>(users.size()));
        for (std::size_t k = 0; k < users.size(); ++k)
            H.col(static_cast<Eigen::Index>(k)) = synthesize_channel(geometry, lambda, spec, users[k]);
        return H;
    }

    inline constexpr int sector_count = 3;

    // blocks[m][s] = H_{m,s}: channel from array m to the K users of sector s.
    struct MultiSectorChannel
    {
        std::array<std::array<Eigen::MatrixXcd, sector_count>, sector_count> blocks;

        Eigen::Index antennas() const { return blocks[0][0].rows(); }
        Eigen::Index users() const { return blocks[0][0].cols(); }

        void validate() const
        {
            for (const auto &row : blocks)
                for (const auto &b : row)
                    if (b.rows() != antennas() || b.cols() != users())
                        throw ConfigError("multi-sector channel blocks disagree in shape");
        }

        // 3N x 3K block matrix [H_{m,s}], array index along rows.
        Eigen::MatrixXcd stacked() const
        {
            validate();
            const Eigen::Index n = antennas(), k = users();
            Eigen::MatrixXcd H(sector_count * n, sector_count * k);
            for (int m = 0; m < sector_count; ++m)
                for (int s = 0; s < sector_count; ++s)
                    H.block(m * n, s * k, n, k) = blocks[m][s];
            return H;
        }
    };
}

#endif
