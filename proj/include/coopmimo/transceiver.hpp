// SPDX-License-Identifier: Apache-2.0
//
// coopmimo - cascaded precoding with D2D receiver cooperation
// Copyright (C) 2026 The coopmimo authors
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


#ifndef COOPMIMO_TRANSCEIVER_HPP
#define COOPMIMO_TRANSCEIVER_HPP

#include "decoding_matrix.hpp"
#include "precoding.hpp"
#include "quantization.hpp"
#include "random.hpp"
#include "types.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace coopmimo
{
    struct link_measurement
    {
        std::vector<double> sinr;  // per user, linear
        double overload_rate = 0.0;
    };

    /// Symbol-level simulation of y = H_e^H V x + z followed by cooperative
    /// decoding x_hat_p = q_p^H y^(p), where y^(p) holds user p's own sample
    /// and, if a quantizer is given, the other users' samples after
    /// quantization. Unit-power complex Gaussian symbols. The SINR of each
    /// user is measured by projecting x_hat_p onto x_p.
    inline link_measurement simulate_link(const effective_channel &he, const decoding_matrix &q, const CMatrix &v,
                                          double n0, std::size_t symbols, rng_type &rng,
                                          std::optional<quantizer_config> quantizer = std::nullopt)
    {
        check_noise_power(n0);
        const auto users = static_cast<Eigen::Index>(he.users());
        if (static_cast<Eigen::Index>(q.users()) != users || v.rows() != he.entries.rows() || v.cols() != users)
            throw std::invalid_argument("simulate_link: dimension mismatch");
        if (symbols == 0)
            throw std::invalid_argument("simulate_link: need at least one symbol");

        const CMatrix response = he.entries.adjoint() * v; // P x P
        std::optional<uniform_quantizer> quant;
        if (quantizer)
            quant.emplace(*quantizer);

        std::vector<cx> cross(static_cast<std::size_t>(users), cx{});
        std::vector<double> sym_power(static_cast<std::size_t>(users), 0.0);
        std::vector<double> out_power(static_cast<std::size_t>(users), 0.0);

        CVector x(users), y(users), yq(users);
        for (std::size_t n = 0; n < symbols; ++n)
        {
            for (Eigen::Index k = 0; k < users; ++k)
                x[k] = complex_gaussian(rng);
            y = response * x;
            for (Eigen::Index k = 0; k < users; ++k)
                y[k] += complex_gaussian(rng, n0);
            if (quant)
                for (Eigen::Index k = 0; k < users; ++k)
                    yq[k] = (*quant)(y[k]);

            for (Eigen::Index p = 0; p < users; ++p)
            {
                cx xhat{};
                for (Eigen::Index k = 0; k < users; ++k)
                {
                    const cx sample = (quant && k != p) ? yq[k] : y[k];
                    xhat += std::conj(q.matrix()(k, p)) * sample;
                }
                const auto i = static_cast<std::size_t>(p);
                cross[i] += xhat * std::conj(x[p]);
                sym_power[i] += std::norm(x[p]);
                out_power[i] += std::norm(xhat);
            }
        }

        link_measurement m;
        m.sinr.resize(static_cast<std::size_t>(users));
        for (std::size_t p = 0; p < m.sinr.size(); ++p)
        {
            // Least-squares gain; the residual is everything uncorrelated with x_p.
            const cx gain = cross[p] / sym_power[p];
            const double signal = std::norm(gain) * sym_power[p];
            const double residual = out_power[p] - signal;
            m.sinr[p] = signal / residual;
        }
        if (quant)
            m.overload_rate = quant->overload_rate();
        return m;
    }
}

#endif
