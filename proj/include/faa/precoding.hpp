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

#ifndef FAA_PRECODING_HPP
#define FAA_PRECODING_HPP

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "faa/channel.hpp"
#include "faa/error.hpp"
#include "faa/scenario.hpp"

/*!MD
# precoding
Zero-forcing precoding and multi-sector sum-rates with equal power allocation

## Description:
- ZF: `F = H (H^H H)^-1`, effective gain `gamma_k = 1 / [(H^H H)^-1]_kk = ||F_:,k||^-2`.
- The total power `P` is shared by all served streams: `P/K` per stream for one sector,
  `P/(3K)` per stream in every multi-sector strategy.
- SFP: each array zero-forces its own sector; users also receive the other arrays' streams as
  interference. The interfering streams are the unit-norm ZF columns scaled to `sqrt(P/(3K))`.
- JFP: one ZF over the stacked `3N x 3K` channel.
- SJFP: the SFP sum-rate viewed as a joint function of all three DoFs; it differs from SFP only
  in how the optimizer searches (see harness).
MD!*/

namespace faa
{
    inline constexpr double gram_condition_limit = 1e12;

    struct ZeroForcing
    {
        Eigen::MatrixXcd precoder;          // N x K, H^H F = I
        Eigen::VectorXd gram_inverse_diag;  // [(H^H H)^-1]_kk
        double condition = 1.0;             // condition number of H^H H

        Eigen::VectorXd gains() const { return gram_inverse_diag.cwiseInverse(); }
    };

    inline ZeroForcing zero_forcing(const Eigen::MatrixXcd &h)
    {
        const Eigen::Index n = h.rows(), k = h.cols();
        if (k == 0 || k > n)
            throw ConfigError("zero-forcing needs 1 <= K <= N (K=" + std::to_string(k) + ", N=" + std::to_string(n) + ")");
        const Eigen::MatrixXcd gram = h.adjoint() * h;
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram, Eigen::EigenvaluesOnly);
        const double lmax = eig.eigenvalues().maxCoeff(), lmin = eig.eigenvalues().minCoeff();
        const double cond = lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();
        if (!(cond < gram_condition_limit))
            throw NumericalError("channel matrix is rank deficient", cond);

        const Eigen::LLT<Eigen::MatrixXcd> llt(gram);
        if (llt.info() != Eigen::Success)
            throw NumericalError("Gram matrix factorization failed", cond);
        const Eigen::MatrixXcd gram_inv = llt.solve(Eigen::MatrixXcd::Identity(k, k));
        return {h * gram_inv, gram_inv.diagonal().real(), cond};
    }

    inline Eigen::MatrixXcd zf_precoder(const Eigen::MatrixXcd &h)
    {
        return zero_forcing(h).precoder;
    }

    inline Eigen::VectorXd effective_gain(const Eigen::MatrixXcd &h)
    {
        return zero_forcing(h).gains();
    }

    // gamma_k from the precoder columns, 1 / ||F_:,k||^2.
    inline Eigen::VectorXd effective_gain_from_precoder(const Eigen::MatrixXcd &f)
    {
        return f.colwise().squaredNorm().transpose().cwiseInverse();
    }

    namespace detail
    {
        inline double zf_rate(const Eigen::VectorXd &gram_inverse_diag, double stream_power, double sigma2)
        {
            double r = 0.0;
            for (Eigen::Index k = 0; k < gram_inverse_diag.size(); ++k)
                r += std::log2(1.0 + stream_power / (sigma2 * gram_inverse_diag(k)));
            return r;
        }
    }

    // sum_k log2(1 + P / (K sigma^2 [(H^H H)^-1]_kk)).
    inline double single_sector_sumrate(const Eigen::MatrixXcd &h, double p_total, double sigma2)
    {
        const ZeroForcing zf = zero_forcing(h);
        return detail::zf_rate(zf.gram_inverse_diag, p_total / static_cast<double>(h.cols()), sigma2);
    }

    struct SectorPrecoding
    {
        std::array<Eigen::MatrixXcd, sector_count> streams;  // N x K, columns of norm sqrt(P/(3K))
        std::array<Eigen::VectorXd, sector_count> gains;     // gamma_{m_k}
    };

    inline SectorPrecoding sector_precoders(const MultiSectorChannel &ch, double p_total)
    {
        ch.validate();
        const double stream_power = p_total / static_cast<double>(sector_count * ch.users());
        SectorPrecoding out;
        for (int m = 0; m < sector_count; ++m)
        {
            const ZeroForcing zf = zero_forcing(ch.blocks[m][m]);
            Eigen::MatrixXcd f = zf.precoder;
            for (Eigen::Index i = 0; i < f.cols(); ++i)
                f.col(i) *= std::sqrt(stream_power) / f.col(i).norm();
            out.streams[m] = std::move(f);
            out.gains[m] = zf.gains();
        }
        return out;
    }

    // leakage[m](k) = sum_{m' != m} sum_i |h_{m',m_k}^H f_{m'_i}|^2.
    inline std::array<Eigen::VectorXd, sector_count> cross_sector_leakage(const MultiSectorChannel &ch,
                                                                          const SectorPrecoding &pre)
    {
        std::array<Eigen::VectorXd, sector_count> out;
        for (int m = 0; m < sector_count; ++m)
        {
            out[m] = Eigen::VectorXd::Zero(ch.users());
            for (int mp = 0; mp < sector_count; ++mp)
            {
                if (mp == m)
                    continue;
                out[m] += (ch.blocks[mp][m].adjoint() * pre.streams[mp]).cwiseAbs2().rowwise().sum();
            }
        }
        return out;
    }

    struct SectorRates
    {
        double total = 0.0;
        std::array<double, sector_count> per_sector{};
    };

    inline SectorRates sfp_sumrate(const MultiSectorChannel &ch, double p_total, double sigma2)
    {
        const SectorPrecoding pre = sector_precoders(ch, p_total);
        const auto leakage = cross_sector_leakage(ch, pre);
        const double stream_power = p_total / static_cast<double>(sector_count * ch.users());
        SectorRates out;
        for (int m = 0; m < sector_count; ++m)
        {
            double r = 0.0;
            for (Eigen::Index k = 0; k < ch.users(); ++k)
                r += std::log2(1.0 + stream_power * pre.gains[m](k) / (leakage[m](k) + sigma2));
            out.per_sector[m] = r;
            out.total += r;
        }
        return out;
    }

    inline SectorRates sfp_sumrate(const Scenario &sc, const Psi3 &psi)
    {
        return sfp_sumrate(full_channel(sc, psi), sc.total_power(), sc.sigma2);
    }

    inline double jfp_sumrate(const MultiSectorChannel &ch, double p_total, double sigma2)
    {
        const Eigen::MatrixXcd h = ch.stacked();
        const ZeroForcing zf = zero_forcing(h);
        return detail::zf_rate(zf.gram_inverse_diag, p_total / static_cast<double>(h.cols()), sigma2);
    }

    inline double jfp_sumrate(const Scenario &sc, const Psi3 &psi)
    {
        return jfp_sumrate(full_channel(sc, psi), sc.total_power(), sc.sigma2);
    }

    inline double sjfp_sumrate(const MultiSectorChannel &ch, double p_total, double sigma2)
    {
        return sfp_sumrate(ch, p_total, sigma2).total;
    }

    inline double sjfp_sumrate(const Scenario &sc, const Psi3 &psi)
    {
        return sfp_sumrate(sc, psi).total;
    }

    // Single-sector objective: array 1 serving its own K users with the whole power budget.
    inline double single_sector_sumrate(const Scenario &sc, double psi)
    {
        return single_sector_sumrate(sector_channel_matrix(sc, 0, 0, psi), sc.total_power(), sc.sigma2);
    }
}

#endif
