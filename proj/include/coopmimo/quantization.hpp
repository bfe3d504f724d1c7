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


#ifndef COOPMIMO_QUANTIZATION_HPP
#define COOPMIMO_QUANTIZATION_HPP

#include "decoding_matrix.hpp"
#include "precoding.hpp"
#include "types.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace coopmimo
{
    /// c total bits per complex sample (c/2 per real component) over the
    /// clipping range [-tau, tau].
    struct quantizer_config
    {
        unsigned total_bits = 2;
        double clip_level = 30.0;

        void validate() const
        {
            if (total_bits < 2 || total_bits % 2 != 0 || total_bits > 104)
                throw std::invalid_argument("quantizer_config: total bits must be even and in [2, 104]");
            if (!(clip_level > 0.0) || !std::isfinite(clip_level))
                throw std::invalid_argument("quantizer_config: clip level must be positive");
        }

        double levels_per_component() const { return std::exp2(static_cast<double>(total_bits / 2)); }
        double step() const { return 2.0 * clip_level / levels_per_component(); }
    };

    /// D2D sharing link: bandwidth ratio W_c/W and linear link SNR gamma.
    struct cooperation_link
    {
        double bandwidth_ratio = 1.0;
        double link_snr = 1.0;

        void validate() const
        {
            if (!(bandwidth_ratio > 0.0) || !std::isfinite(bandwidth_ratio))
                throw std::invalid_argument("cooperation_link: bandwidth ratio must be positive and finite");
            if (!(link_snr > 0.0) || !std::isfinite(link_snr))
                throw std::invalid_argument("cooperation_link: link SNR must be positive and finite");
        }
    };

    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

    /// Midrise uniform quantizer applied separately to Re and Im, saturating
    /// at the outermost level. Counts every clipped component.
    class uniform_quantizer
    {
    public:
        explicit uniform_quantizer(quantizer_config cfg) : cfg_(cfg)
        {
            cfg_.validate();
            step_ = cfg_.step();
            half_levels_ = cfg_.levels_per_component() / 2.0;
        }

        cx operator()(cx y)
        {
            return {component(y.real()), component(y.imag())};
        }

        const quantizer_config &config() const noexcept { return cfg_; }
        std::size_t components() const noexcept { return components_; }
        std::size_t overloads() const noexcept { return overloads_; }
        double overload_rate() const noexcept
        {
            return components_ == 0 ? 0.0 : static_cast<double>(overloads_) / static_cast<double>(components_);
        }

    private:
        double component(double x)
        {
            ++components_;
            if (std::abs(x) > cfg_.clip_level)
                ++overloads_;
            const double cell = std::clamp(std::floor(x / step_), -half_levels_, half_levels_ - 1.0);
            return (cell + 0.5) * step_;
        }

        quantizer_config cfg_;
        double step_ = 0.0;
        double half_levels_ = 0.0;
        std::size_t components_ = 0;
        std::size_t overloads_ = 0;
    };

    // sigma_Q^2 = 2 tau^2 / (3 2^c): Re and Im errors each tau^2/(3 2^c).
    inline double quantization_noise_variance(const quantizer_config &q)
    {
        q.validate();
        return 2.0 * q.clip_level * q.clip_level / (3.0 * std::exp2(static_cast<double>(q.total_bits)));
    }

    // Continuous relaxation in c, used to study the decay with bandwidth.
    inline double quantization_noise_variance(double bits, double clip_level)
    {
        return 2.0 * clip_level * clip_level / (3.0 * std::exp2(bits));
    }

    /// Largest even c with c W <= W_c log2(1 + gamma). Zero means the link
    /// cannot carry even one bit per component.
    inline unsigned bits_from_bandwidth(const cooperation_link &link)
    {
        link.validate();
        const double budget = link.bandwidth_ratio * std::log2(1.0 + link.link_snr);
        // Absorb round-off so that exact budgets such as 2 * log2(16) = 8 are not lost.
        const double pairs = std::floor(budget / 2.0 * (1.0 + 1e-12));
        return 2u * static_cast<unsigned>(std::min(pairs, 52.0));
    }

    struct effective_noise
    {
        double exact;               // N0 + (1 - |q_p[p]|^2) sigma_Q^2
        double constant_amplitude;  // N0 + sigma_Q^2 (P - 1)/P
    };

    /// Noise power seen by user p after combining its own exact sample with
    /// the other users' quantized samples through decoding vector q_p.
    inline effective_noise effective_noise_power(double n0, double sigma_q2, const Eigen::Ref<const CVector> &q_p,
                                                 std::size_t p)
    {
        check_noise_power(n0);
        if (!(sigma_q2 >= 0.0))
            throw std::invalid_argument("effective_noise_power: quantization variance must be nonnegative");
        if (p >= static_cast<std::size_t>(q_p.size()))
            throw std::out_of_range("effective_noise_power: user index out of range");
        const double own = std::norm(q_p[static_cast<Eigen::Index>(p)]);
        const double users = static_cast<double>(q_p.size());
        return {n0 + std::max(0.0, 1.0 - own) * sigma_q2, n0 + sigma_q2 * (users - 1.0) / users};
    }

    struct quantized_snr_result
    {
        std::vector<double> snrs;
        unsigned bits;          // c granted by the link budget
        double noise_variance;  // sigma_Q^2, zero when cooperation is off
        bool cooperative;       // false: c = 0, users fall back to Q = I
    };

    /// Per-user SNR when the other users' samples arrive quantized with the
    /// bit budget the cooperation link affords.
    inline quantized_snr_result quantized_snr(const gram_inverse &g, const decoding_matrix &q, double n0,
                                              const cooperation_link &link, double clip_level)
    {
        check_noise_power(n0);
        detail::check_compatible(g, q);
        const unsigned c = bits_from_bandwidth(link);
        if (c == 0)
            return {noncooperative_baseline_snr(g, n0), 0, 0.0, false};

        const double sigma_q2 = quantization_noise_variance(quantizer_config{c, clip_level});
        std::vector<double> snrs(q.users());
        for (std::size_t p = 0; p < snrs.size(); ++p)
        {
            const double na = effective_noise_power(n0, sigma_q2, q.column(p), p).exact;
            snrs[p] = 1.0 / (na * g.quadratic_form(q.column(p)));
        }
        return {std::move(snrs), c, sigma_q2, true};
    }
}

#endif
