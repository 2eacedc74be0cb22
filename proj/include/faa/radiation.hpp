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

#ifndef FAA_RADIATION_HPP
#define FAA_RADIATION_HPP

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "faa/error.hpp"
#include "faa/geometry.hpp"

namespace faa
{
    enum class PatternKind
    {
        Omni,
        Cosine
    };

    // Element radiation pattern. Cosine: G_E = 2(1+kappa) sin^kappa(theta) cos^kappa(phi) on the
    // front half-space |phi| <= pi/2 (boresight +x), zero behind.
    struct PatternSpec
    {
        PatternKind kind = PatternKind::Omni;
        double kappa = 1.0;

        static PatternSpec omni() { return {PatternKind::Omni, 1.0}; }
        static PatternSpec cosine(double kappa) { return {PatternKind::Cosine, kappa}; }

        double peak_gain() const { return kind == PatternKind::Omni ? 1.0 : 2.0 * (1.0 + kappa); }

        void validate() const
        {
            if (kind == PatternKind::Cosine && !(kappa >= 1.0))
                throw ConfigError("cosine pattern sharpness kappa must be >= 1 (got " + std::to_string(kappa) + ")");
        }
    };

    inline std::string to_string(const PatternSpec &p)
    {
        if (p.kind == PatternKind::Omni)
            return "omni";
        std::string k = std::to_string(p.kappa);
        k.erase(k.find_last_not_of('0') + 1);
        if (!k.empty() && k.back() == '.')
            k.pop_back();
        return "cosine(kappa=" + k + ")";
    }

    inline PatternKind parse_pattern_kind(std::string_view s)
    {
        if (s == "omni")
            return PatternKind::Omni;
        if (s == "cosine" || s == "cos")
            return PatternKind::Cosine;
        throw ConfigError("unknown pattern '" + std::string(s) + "' (expected omni|cosine)");
    }

    // Wraps an angle to (-pi, pi].
    inline double wrap_angle(double a)
    {
        constexpr double pi = std::numbers::pi;
        constexpr double two_pi = 2.0 * std::numbers::pi;
        if (a > -pi && a <= pi)
            return a;
        double r = std::fmod(a + pi, two_pi);
        if (r <= 0.0)
            r += two_pi;
        return r - pi;
    }

    namespace detail
    {
        inline void check_elevation(double theta)
        {
            if (!(theta >= 0.0 && theta <= std::numbers::pi))
                throw DomainError("elevation must lie in [0, pi] (got " + std::to_string(theta) + ")");
        }
    }

    inline double pattern_gain(const PatternSpec &spec, double theta, double phi)
    {
        detail::check_elevation(theta);
        if (spec.kind == PatternKind::Omni)
            return 1.0;
        const double p = wrap_angle(phi);
        if (std::abs(p) > std::numbers::pi / 2.0)
            return 0.0;
        const double s = std::max(std::sin(theta), 0.0);
        const double c = std::max(std::cos(p), 0.0);
        return spec.peak_gain() * std::pow(s, spec.kappa) * std::pow(c, spec.kappa);
    }

    inline double pattern_coefficient(const PatternSpec &spec, double theta, double phi)
    {
        detail::check_elevation(theta);
        if (spec.kind == PatternKind::Omni)
            return 1.0;
        const double p = wrap_angle(phi);
        if (std::abs(p) > std::numbers::pi / 2.0)
            return 0.0;
        const double s = std::max(std::sin(theta), 0.0);
        const double c = std::max(std::cos(p), 0.0);
        return std::sqrt(spec.peak_gain()) * std::pow(s * c, 0.5 * spec.kappa);
    }

    // Pattern vector e(theta, phi): element n sees the wave at azimuth phi - orientation[n].
    inline Eigen::VectorXd element_pattern_vector(const PatternSpec &spec, const ArrayGeometry &geometry,
                                                  double theta, double phi)
    {
        const Eigen::Index n = geometry.size();
        if (spec.kind == PatternKind::Omni)
        {
            detail::check_elevation(theta);
            return Eigen::VectorXd::Ones(n);
        }
        Eigen::VectorXd e(n);
        for (Eigen::Index i = 0; i < n; ++i)
            e(i) = pattern_coefficient(spec, theta, phi - geometry.orientation(i));
        return e;
    }

    struct PatternGradient
    {
        double d_theta = 0.0;
        double d_phi = 0.0;
    };

    // Minimum distance to the cosine support boundary at which derivatives are still evaluated.
    inline constexpr double pattern_boundary_band = 1e-6;

    // True when (theta, phi) lies in the excluded band around the cosine support boundary.
    inline bool near_pattern_boundary(const PatternSpec &spec, double theta, double phi)
    {
        if (spec.kind == PatternKind::Omni)
            return false;
        constexpr double half_pi = std::numbers::pi / 2.0;
        const double p = std::abs(wrap_angle(phi));
        if (std::abs(p - half_pi) < pattern_boundary_band)
            return true;
        // The elevation edge only matters where the element radiates at all.
        return p < half_pi && (theta < pattern_boundary_band || theta > std::numbers::pi - pattern_boundary_band);
    }

    // Partial derivatives of A_E = sqrt(G_E). On the open support:
    //   dA/dtheta =  (kappa/2) A cot(theta),  dA/dphi = -(kappa/2) A tan(phi).
    inline PatternGradient pattern_derivatives(const PatternSpec &spec, double theta, double phi)
    {
        detail::check_elevation(theta);
        if (spec.kind == PatternKind::Omni)
            return {};
        if (near_pattern_boundary(spec, theta, phi))
            throw DomainError("pattern derivative requested within " + std::to_string(pattern_boundary_band) +
                              " rad of the cosine support boundary (theta=" + std::to_string(theta) +
                              ", phi=" + std::to_string(phi) + ")");
        const double p = wrap_angle(phi);
        if (std::abs(p) > std::numbers::pi / 2.0)
            return {};
        const double a = pattern_coefficient(spec, theta, p);
        const double half_k = 0.5 * spec.kappa;
        return {half_k * a * std::cos(theta) / std::sin(theta), -half_k * a * std::tan(p)};
    }

    // Integral of the gain over the unit sphere by a tensor-product midpoint rule.
    inline double normalization_integral(const PatternSpec &spec, int n_theta = 720, int n_phi = 1440)
    {
        spec.validate();
        constexpr double pi = std::numbers::pi;
        const double dt = pi / n_theta;
        const double dp = 2.0 * pi / n_phi;

        double sum = 0.0;
        for (int i = 0; i < n_theta; ++i)
        {
            const double t = (i + 0.5) * dt;
            const double w = std::sin(t);
            double row = 0.0;
            for (int j = 0; j < n_phi; ++j)
                row += pattern_gain(spec, t, -pi + (j + 0.5) * dp);
            sum += w * row;
        }
        return sum * dt * dp;
    }
}

#endif
