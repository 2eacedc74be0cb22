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

#ifndef FAA_SCENARIO_HPP
#define FAA_SCENARIO_HPP

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "faa/channel.hpp"
#include "faa/geometry.hpp"
#include "faa/radiation.hpp"

namespace faa
{
    using Psi3 = std::array<double, sector_count>;

    // Three-sector base station: one flexible array per sector, K single-antenna users per sector.
    struct Scenario
    {
        ArrayConfig array = ArrayConfig::half_wavelength(8, 2);
        FlexModel model = FlexModel::Rotatable;
        PatternSpec pattern = PatternSpec::omni();
        int users_per_sector = 4;
        int paths_per_user = 5;
        double snr_db = 15.0;
        double sigma2 = 1.0;
        std::array<double, sector_count> mounts{0.0, 2.0 * std::numbers::pi / 3.0, 4.0 * std::numbers::pi / 3.0};
        std::array<Interval, sector_count> sector_azimuths{
            Interval{-std::numbers::pi / 3.0, std::numbers::pi / 3.0},
            Interval{std::numbers::pi / 3.0, std::numbers::pi},
            Interval{std::numbers::pi, 5.0 * std::numbers::pi / 3.0}};
        Interval elevation{std::numbers::pi / 3.0, 2.0 * std::numbers::pi / 3.0};
        Interval psi_bounds = default_psi_bounds(FlexModel::Rotatable);

        // links[m][s][k]: paths from array m to user k of sector s, azimuths in array m's frame
        // (global azimuth minus mounts[m]), so the arrays themselves are built unmounted.
        std::array<std::array<std::vector<PathSet>, sector_count>, sector_count> links;
        // Distance of each user from the base station [m]; informational only (far field).
        std::array<std::vector<double>, sector_count> user_distance;

        // SNR = P / sigma^2.
        double total_power() const { return sigma2 * std::pow(10.0, snr_db / 10.0); }
    };

    inline Eigen::MatrixXcd sector_channel_matrix(const Scenario &sc, int array, int sector, double psi)
    {
        const ArrayGeometry g = flex_geometry(sc.model, sc.array, psi);
        return sector_channel_matrix(g, sc.array.lambda, sc.pattern, sc.links[array][sector]);
    }

    // H_{m,s}(psi_m) for all nine (array, sector) pairs.
    inline MultiSectorChannel full_channel(const Scenario &sc, const Psi3 &psi)
    {
        MultiSectorChannel out;
        for (int m = 0; m < sector_count; ++m)
        {
            const ArrayGeometry g = flex_geometry(sc.model, sc.array, psi[m]);
            for (int s = 0; s < sector_count; ++s)
                out.blocks[m][s] = sector_channel_matrix(g, sc.array.lambda, sc.pattern, sc.links[m][s]);
        }
        out.validate();
        return out;
    }
}

#endif
