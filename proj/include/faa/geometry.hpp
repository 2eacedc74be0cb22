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

#ifndef FAA_GEOMETRY_HPP
#define FAA_GEOMETRY_HPP

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "faa/error.hpp"

/*!MD
# geometry
Element positions and azimuth orientations of flexible antenna arrays

## Description:
- The flat reference array lies in the y-z plane with its boresight along +x.
- A single flexible degree of freedom `psi` rotates, bends or folds the array in the x-y plane;
  z-coordinates never change.
- Elements are vectorized column-major over the `n_h x n_v` grid: element `n = iv * n_h + ih`
  (0-based), i.e. the horizontal index runs fastest. Channel and pattern vectors use the same order.
MD!*/

namespace faa
{
    enum class FlexModel
    {
        Planar,
        Rotatable,
        Bendable,
        Foldable
    };

    inline std::string_view to_string(FlexModel m)
    {
        switch (m)
        {
        case FlexModel::Planar:
            return "planar";
        case FlexModel::Rotatable:
            return "rotate";
        case FlexModel::Bendable:
            return "bend";
        case FlexModel::Foldable:
            return "fold";
        }
        return "unknown";
    }

    inline FlexModel parse_flex_model(std::string_view s)
    {
        if (s == "planar" || s == "upa")
            return FlexModel::Planar;
        if (s == "rotate" || s == "rotatable")
            return FlexModel::Rotatable;
        if (s == "bend" || s == "bendable")
            return FlexModel::Bendable;
        if (s == "fold" || s == "foldable")
            return FlexModel::Foldable;
        throw ConfigError("unknown flex model '" + std::string(s) + "' (expected planar|rotate|bend|fold)");
    }

    struct Interval
    {
        double lo = 0.0;
        double hi = 0.0;

        double width() const { return hi - lo; }
        bool contains(double v) const { return v >= lo && v <= hi; }
    };

    // Search range of the flexible DoF used by the optimizers.
    inline Interval default_psi_bounds(FlexModel m)
    {
        constexpr double pi = std::numbers::pi;
        switch (m)
        {
        case FlexModel::Rotatable:
        case FlexModel::Foldable:
            return {-pi / 4.0, pi / 4.0};
        case FlexModel::Bendable:
            return {-pi / 2.0, pi / 2.0};
        case FlexModel::Planar:
            break;
        }
        return {0.0, 0.0};
    }

    struct ArrayConfig
    {
        int n_h = 8;
        int n_v = 2;
        double lambda = 0.03;       // carrier wavelength [m]
        double d = 0.015;           // inter-element spacing [m]

        int size() const { return n_h * n_v; }

        static ArrayConfig half_wavelength(int n_h, int n_v, double lambda = 0.03)
        {
            return ArrayConfig{n_h, n_v, lambda, lambda / 2.0};
        }

        void validate() const
        {
            if (n_h < 1 || n_v < 1)
                throw ConfigError("array dimensions must be positive (n_h=" + std::to_string(n_h) +
                                  ", n_v=" + std::to_string(n_v) + ")");
            if (!(d > 0.0) || !std::isfinite(d))
                throw ConfigError("inter-element spacing d must be positive");
            if (!(lambda > 0.0) || !std::isfinite(lambda))
                throw ConfigError("wavelength must be positive");
        }
    };

    struct ArrayGeometry
    {
        Eigen::Matrix3Xd positions;         // [3, N], meters
        Eigen::VectorXd orientation;        // [N], azimuth offset of each element boresight from +x

        Eigen::Index size() const { return positions.cols(); }
    };

    // Below this bending angle the planar limit is returned (R = H / (2 psi) blows up).
    inline constexpr double bend_epsilon = 1e-6;

    namespace detail
    {
        // Centered grid coordinate (2n - N - 1) / 2 for 1-based n, here with 0-based index i.
        inline double centered(int i, int count)
        {
            return (2.0 * (i + 1) - count - 1.0) / 2.0;
        }

        template <typename PerColumn>
        ArrayGeometry build(const ArrayConfig &cfg, PerColumn &&column)
        {
            cfg.validate();
            const int n = cfg.size();
            ArrayGeometry g{Eigen::Matrix3Xd(3, n), Eigen::VectorXd(n)};
            for (int iv = 0; iv < cfg.n_v; ++iv)
            {
                const double z = centered(iv, cfg.n_v) * cfg.d;
                for (int ih = 0; ih < cfg.n_h; ++ih)
                {
                    const int idx = iv * cfg.n_h + ih;
                    const auto [x, y, o] = column(ih);
                    g.positions(0, idx) = x;
                    g.positions(1, idx) = y;
                    g.positions(2, idx) = z;
                    g.orientation(idx) = o;
                }
            }
            return g;
        }

        struct ColumnPose
        {
            double x, y, orient;
        };
    }

    inline ArrayGeometry planar_positions(const ArrayConfig &cfg)
    {
        return detail::build(cfg, [&](int ih)
                             { return detail::ColumnPose{0.0, detail::centered(ih, cfg.n_h) * cfg.d, 0.0}; });
    }

    // Rigid rotation of the whole array about the z-axis; every element pattern turns with it.
    inline ArrayGeometry rotated_geometry(const ArrayConfig &cfg, double psi)
    {
        if (!std::isfinite(psi))
            throw DomainError("rotation angle must be finite");
        const double s = std::sin(psi), c = std::cos(psi);
        return detail::build(cfg, [&](int ih)
                             {
                                 const double u = detail::centered(ih, cfg.n_h) * cfg.d;
                                 return detail::ColumnPose{-u * s, u * c, psi}; });
    }

    // Bends the horizontal axis onto an arc of length (n_h - 1) d subtending 2 psi.
    // Element columns sit at arc angles psi_n = -psi + 2 psi (n - 1) / (n_h - 1) and face the local normal.
    inline ArrayGeometry bent_geometry(const ArrayConfig &cfg, double psi)
    {
        constexpr double pi = std::numbers::pi;
        if (!std::isfinite(psi) || std::abs(psi) > pi)
            throw DomainError("bending angle must satisfy |psi| <= pi (got " + std::to_string(psi) + ")");
        cfg.validate();
        if (cfg.n_h == 1 && psi != 0.0)
            throw DomainError("bending is undefined for a single horizontal element");
        if (std::abs(psi) < bend_epsilon)
            return planar_positions(cfg);

        const double radius = (cfg.n_h - 1) * cfg.d / (2.0 * psi);
        return detail::build(cfg, [&](int ih)
                             {
                                 const double t = -psi + 2.0 * psi * ih / (cfg.n_h - 1);
                                 return detail::ColumnPose{radius * (std::cos(t) - 1.0), radius * std::sin(t), t}; });
    }

    // Single fold line through the array center. The left side (negative y) rotates by +psi,
    // the right side by -psi; a center column stays on the fold line with zero offset.
    inline ArrayGeometry folded_geometry(const ArrayConfig &cfg, double psi)
    {
        constexpr double pi = std::numbers::pi;
        if (!std::isfinite(psi) || std::abs(psi) > pi / 2.0)
            throw DomainError("folding angle must satisfy |psi| <= pi/2 (got " + std::to_string(psi) + ")");
        const double s = std::sin(psi), c = std::cos(psi);
        return detail::build(cfg, [&](int ih)
                             {
                                 const double u = detail::centered(ih, cfg.n_h);
                                 const double orient = u < 0.0 ? psi : (u > 0.0 ? -psi : 0.0);
                                 return detail::ColumnPose{-std::abs(u) * cfg.d * s, u * cfg.d * c, orient}; });
    }

    // Places an array around the base station by rotating it about z.
    inline ArrayGeometry mounted_geometry(ArrayGeometry g, double mount_azimuth)
    {
        if (mount_azimuth == 0.0)
            return g;
        const double s = std::sin(mount_azimuth), c = std::cos(mount_azimuth);
        for (Eigen::Index n = 0; n < g.size(); ++n)
        {
            const double x = g.positions(0, n), y = g.positions(1, n);
            g.positions(0, n) = c * x - s * y;
            g.positions(1, n) = s * x + c * y;
        }
        g.orientation.array() += mount_azimuth;
        return g;
    }

    inline ArrayGeometry flex_geometry(FlexModel model, const ArrayConfig &cfg, double psi)
    {
        switch (model)
        {
        case FlexModel::Planar:
            return planar_positions(cfg);
        case FlexModel::Rotatable:
            return rotated_geometry(cfg, psi);
        case FlexModel::Bendable:
            return bent_geometry(cfg, psi);
        case FlexModel::Foldable:
            return folded_geometry(cfg, psi);
        }
        throw ConfigError("unknown flex model");
    }

    inline ArrayGeometry flex_geometry(FlexModel model, const ArrayConfig &cfg, double psi, double mount_azimuth)
    {
        return mounted_geometry(flex_geometry(model, cfg, psi), mount_azimuth);
    }
}

#endif
