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


#ifndef COOPMIMO_PRECODING_HPP
#define COOPMIMO_PRECODING_HPP

#include "channel.hpp"
#include "decoding_matrix.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "types.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace coopmimo
{
    /// D x P channel seen through the inner precoder, H_e = W^H H.
    struct effective_channel
    {
        CMatrix entries;

        std::size_t dim() const noexcept { return static_cast<std::size_t>(entries.rows()); }
        std::size_t users() const noexcept { return static_cast<std::size_t>(entries.cols()); }
        CMatrix gram() const { return entries.adjoint() * entries; }
    };

    inline effective_channel make_effective_channel(const CMatrix &inner_basis, const CMatrix &channel)
    {
        if (inner_basis.rows() != channel.rows())
            throw std::invalid_argument("effective_channel: W and H must have the same number of rows");
        if (inner_basis.cols() < channel.cols())
            throw std::invalid_argument("effective_channel: need D >= P");
        return {inner_basis.adjoint() * channel};
    }

    inline effective_channel make_effective_channel(const inner_precoder &w, const CMatrix &channel)
    {
        return make_effective_channel(w.basis, channel);
    }

    /// A^{-1} for A = H_e^H H_e together with A's spectrum. Building one is the
    /// only O(P^3) step per channel; every SNR evaluation afterwards is a
    /// quadratic form against `inverse`.
    struct gram_inverse
    {
        CMatrix inverse;
        hermitian_eigen spectrum; // of A, descending
        double condition_number;

        explicit gram_inverse(const effective_channel &he)
        {
            if (he.users() == 0 || he.dim() < he.users())
                throw std::invalid_argument("gram_inverse: need D >= P >= 1");
            const CMatrix a = he.gram();
            spectrum = eigh(a);
            const double hi = spectrum.values[0];
            const double lo = spectrum.values[spectrum.values.size() - 1];
            condition_number = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
            if (!(condition_number < max_gram_condition))
                throw ill_conditioned_channel(condition_number);
            inverse = a.llt().solve(CMatrix::Identity(a.rows(), a.cols()));
            inverse = 0.5 * (inverse + inverse.adjoint()).eval();
        }

        std::size_t users() const noexcept { return static_cast<std::size_t>(inverse.rows()); }

        // q^H A^{-1} q
        double quadratic_form(const Eigen::Ref<const CVector> &q) const
        {
            return (q.adjoint() * inverse * q)(0, 0).real();
        }
    };

    inline void check_noise_power(double n0)
    {
        if (!(n0 > 0.0) || !std::isfinite(n0))
            throw std::invalid_argument("noise power must be positive and finite");
    }

    namespace detail
    {
        inline void check_compatible(const gram_inverse &g, const decoding_matrix &q)
        {
            if (q.users() != g.users())
                throw std::invalid_argument("decoding matrix size does not match number of users");
        }
    }

    /// Zero-forcing outer precoder for the overall channel H_e Q with every
    /// column scaled to unit norm. Q^H H_e^H V is then diagonal with entries
    /// 1/sqrt([(Q^H A Q)^{-1}]_pp).
    inline CMatrix zf_outer_precoder(const effective_channel &he, const decoding_matrix &q)
    {
        const gram_inverse g(he);
        detail::check_compatible(g, q);
        const CMatrix overall = he.entries * q.matrix();
        const CMatrix b = overall.adjoint() * overall;
        CMatrix v = overall * b.ldlt().solve(CMatrix::Identity(b.rows(), b.cols()));
        for (Eigen::Index p = 0; p < v.cols(); ++p)
            v.col(p).normalize();
        return v;
    }

    /// Linear SNR of user p (0-based) under decoding matrix Q:
    /// 1 / (N0 q_p^H (H_e^H H_e)^{-1} q_p).
    inline double per_user_snr(const gram_inverse &g, const decoding_matrix &q, double n0, std::size_t p)
    {
        check_noise_power(n0);
        detail::check_compatible(g, q);
        if (p >= q.users())
            throw std::out_of_range("per_user_snr: user index out of range");
        return 1.0 / (n0 * g.quadratic_form(q.column(p)));
    }

    inline double per_user_snr(const effective_channel &he, const decoding_matrix &q, double n0, std::size_t p)
    {
        return per_user_snr(gram_inverse(he), q, n0, p);
    }

    /// Same quantity through the diagonal of (Q^H A Q)^{-1}; kept as a
    /// cross-check of the quadratic-form path.
    inline double per_user_snr_matrix_form(const effective_channel &he, const decoding_matrix &q, double n0,
                                           std::size_t p)
    {
        check_noise_power(n0);
        const gram_inverse g(he);
        detail::check_compatible(g, q);
        if (p >= q.users())
            throw std::out_of_range("per_user_snr: user index out of range");
        const CMatrix b = q.matrix().adjoint() * he.gram() * q.matrix();
        const CMatrix b_inv = b.fullPivLu().inverse();
        const auto i = static_cast<Eigen::Index>(p);
        return 1.0 / (n0 * b_inv(i, i).real());
    }

    inline std::vector<double> per_user_snrs(const gram_inverse &g, const decoding_matrix &q, double n0)
    {
        std::vector<double> out(q.users());
        for (std::size_t p = 0; p < out.size(); ++p)
            out[p] = per_user_snr(g, q, n0, p);
        return out;
    }

    // Traditional ZF: Q = I.
    inline std::vector<double> noncooperative_baseline_snr(const gram_inverse &g, double n0)
    {
        check_noise_power(n0);
        std::vector<double> out(g.users());
        for (std::size_t p = 0; p < out.size(); ++p)
        {
            const auto i = static_cast<Eigen::Index>(p);
            out[p] = 1.0 / (n0 * g.inverse(i, i).real());
        }
        return out;
    }

    inline std::vector<double> noncooperative_baseline_snr(const effective_channel &he, double n0)
    {
        return noncooperative_baseline_snr(gram_inverse(he), n0);
    }
}

#endif
